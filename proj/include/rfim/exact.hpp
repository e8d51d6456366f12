#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "rfim/lattice.hpp"
#include "rfim/model.hpp"

namespace rfim {

struct EnumerationLimits {
  int max_free_vertices = 24;
  /// Bound on 2^(free vertices + edges) for extended enumeration.
  std::size_t max_extended_configs = std::size_t{1} << 26;
  /// Bound on enumerated configuration pairs (or vertex pairs times
  /// mid-edge patterns for the factored engine).
  std::size_t max_pairs = 10'000'000;
};

/// An enumeration would exceed its configured size.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Streaming log-sum-exp with optional weighted sums of observables.
class LogAccumulator {
 public:
  explicit LogAccumulator(std::size_t num_values = 0) : sums_(num_values, 0.0) {}

  void add(double log_weight, std::span<const double> values = {});
  double log_total() const { return max_ + std::log(total_); }
  double mean(std::size_t i) const { return sums_[i] / total_; }
  bool empty() const { return total_ == 0.0; }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double total_ = 0.0;
  std::vector<double> sums_;
};

/// Gray-code walk over the free vertices of a region with vertex boundary
/// values fixed.  Free vertex j corresponds to bit j of a configuration mask
/// (bit set = +1).
class GibbsEnumerator {
 public:
  /// Throws std::invalid_argument for mid-edge entries in bc and CapExceeded
  /// above the free-vertex cap.
  GibbsEnumerator(const Region& r, const CouplingParams& p, const FieldRealization& f,
                  const BoundarySpec& bc = {}, const EnumerationLimits& lim = {});

  int num_free() const { return static_cast<int>(free_.size()); }
  const std::vector<int>& free_vertices() const { return free_; }
  const Region& region() const { return *region_; }

  /// visit(const SpinConfig&, double log_weight, std::uint64_t mask) for
  /// every configuration, log_weight = -beta H.
  template <class Visit>
  void for_each(Visit&& visit) const;

  double log_partition() const;

 private:
  double full_log_weight(const SpinConfig& cfg) const;

  const Region* region_;
  std::vector<double> fields_;
  double beta_;
  double J_;
  SpinConfig start_;
  std::vector<int> free_;
};

template <class Visit>
void GibbsEnumerator::for_each(Visit&& visit) const {
  SpinConfig cfg = start_;
  std::uint64_t mask = 0;
  double lw = full_log_weight(cfg);
  visit(static_cast<const SpinConfig&>(cfg), lw, mask);
  const std::uint64_t count = std::uint64_t{1} << free_.size();
  for (std::uint64_t i = 1; i < count; ++i) {
    const int bit = std::countr_zero(i);
    const int v = free_[static_cast<std::size_t>(bit)];
    const auto vi = static_cast<std::size_t>(v);
    double nbr = 0.0;
    for (int e : region_->incident_edges(v)) nbr += cfg[static_cast<std::size_t>(region_->other_end(e, v))];
    const double s = cfg[vi];
    cfg[vi] = static_cast<Spin>(-cfg[vi]);
    mask ^= std::uint64_t{1} << bit;
    // Re-anchor periodically so rounding in the running sum cannot drift.
    lw = (i & 1023u) == 0 ? full_log_weight(cfg) : lw - 2.0 * beta_ * s * (J_ * nbr + fields_[vi]);
    visit(static_cast<const SpinConfig&>(cfg), lw, mask);
  }
}

double log_partition_function(const Region& r, const CouplingParams& p, const FieldRealization& f,
                              const BoundarySpec& bc = {}, const EnumerationLimits& lim = {});
double partition_function(const Region& r, const CouplingParams& p, const FieldRealization& f,
                          const BoundarySpec& bc = {}, const EnumerationLimits& lim = {});

double thermal_expectation(const std::function<double(const SpinConfig&)>& obs, const Region& r,
                           const CouplingParams& p, const FieldRealization& f,
                           const BoundarySpec& bc = {}, const EnumerationLimits& lim = {});

/// <sigma_v> for every vertex in canonical order (boundary vertices report
/// their fixed value).
std::vector<double> one_point_means(const Region& r, const CouplingParams& p,
                                    const FieldRealization& f, const BoundarySpec& bc = {},
                                    const EnumerationLimits& lim = {});

/// <s_u s_v> - <s_u><s_v>; for u == v this is 1 - <s_u>^2.
double truncated_correlation(Vertex u, Vertex v, const Region& r, const CouplingParams& p,
                             const FieldRealization& f, const BoundarySpec& bc = {},
                             const EnumerationLimits& lim = {});

/// Gibbs probabilities indexed by free-vertex mask.
std::vector<double> gibbs_probabilities(const Region& r, const CouplingParams& p,
                                        const FieldRealization& f, const BoundarySpec& bc = {},
                                        const EnumerationLimits& lim = {});

/// visit(const ExtendedConfig&, double log_weight) for every extended
/// configuration agreeing with bc and obeying the hard constraints.  Throws
/// std::invalid_argument when bc is not allowed and CapExceeded above the
/// extended cap.
void for_each_extended(const ExtendedGraph& g, const CouplingParams& p, const FieldRealization& f,
                       const BoundarySpec& bc,
                       const std::function<void(const ExtendedConfig&, double)>& visit,
                       const ExtendedWeights& w, const EnumerationLimits& lim = {});

double log_extended_partition_function(const ExtendedGraph& g, const CouplingParams& p,
                                       const FieldRealization& f, const BoundarySpec& bc = {},
                                       const EnumerationLimits& lim = {});
double log_extended_partition_function(const ExtendedGraph& g, const CouplingParams& p,
                                       const FieldRealization& f, const BoundarySpec& bc,
                                       const ExtendedWeights& w, const EnumerationLimits& lim = {});
double extended_partition_function(const ExtendedGraph& g, const CouplingParams& p,
                                   const FieldRealization& f, const BoundarySpec& bc = {},
                                   const EnumerationLimits& lim = {});

/// Vertex marginal of the extended measure, indexed like gibbs_probabilities
/// (free vertices are those without a vertex entry in bc).
std::vector<double> extended_vertex_marginal(const ExtendedGraph& g, const CouplingParams& p,
                                             const FieldRealization& f, const BoundarySpec& bc,
                                             const ExtendedWeights& w,
                                             const EnumerationLimits& lim = {});

/// (1/beta) log(Z^{++} Z^{--} / Z^{+-} Z^{-+}) on the outer region, spins
/// fixed on the inner and outer vertex boundaries.  Throws
/// std::invalid_argument unless inner lies in outer with disjoint boundaries.
double surface_tension_exact(const Region& inner, const Region& outer, const CouplingParams& p,
                             const FieldRealization& f, const EnumerationLimits& lim = {});

struct DisagreementCount {
  /// (1/2) sum over inner of <s_v>^+ - <s_v>^-.
  double from_means = 0.0;
  /// Expected |inner ∩ C_{outer boundary}| under the +/- pair measure.
  double from_clusters = 0.0;
};

/// Both forms of the expected disagreement count, with +/- on the outer
/// boundary only.  Throws std::logic_error if they differ by more than 1e-10
/// relative.
DisagreementCount disagreement_count_exact(const Region& inner, const Region& outer,
                                           const CouplingParams& p, const FieldRealization& f,
                                           const EnumerationLimits& lim = {});

/// Only the one-point form; cheap enough for quadrature nodes.
double disagreement_count_means(const Region& inner, const Region& outer, const CouplingParams& p,
                                const FieldRealization& f, const EnumerationLimits& lim = {});

}  // namespace rfim
