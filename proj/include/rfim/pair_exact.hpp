#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "rfim/disagreement.hpp"
#include "rfim/exact.hpp"

namespace rfim {

struct WeightedConfig {
  ExtendedConfig config;
  double log_prob = 0.0;
};

/// Every extended configuration consistent with bc, with normalised log
/// probabilities.
std::vector<WeightedConfig> enumerate_extended(const ExtendedGraph& g, const CouplingParams& p,
                                               const FieldRealization& f, const BoundarySpec& bc,
                                               const EnumerationLimits& lim = {});

/// Explicit list of all pairs under the product of the two restricted
/// extended measures.
class PairEnumeration {
 public:
  /// Throws CapExceeded when |plus| * |minus| exceeds lim.max_pairs.
  PairEnumeration(const ExtendedGraph& g, const CouplingParams& p, const FieldRealization& f,
                  const BoundarySpec& bc_plus, const BoundarySpec& bc_minus,
                  const EnumerationLimits& lim = {});

  const std::vector<WeightedConfig>& plus() const { return plus_; }
  const std::vector<WeightedConfig>& minus() const { return minus_; }
  std::size_t num_pairs() const { return plus_.size() * minus_.size(); }

  double expectation(const std::function<double(const DisagreementGeometry&)>& F) const;

 private:
  const ExtendedGraph* g_;
  std::vector<WeightedConfig> plus_;
  std::vector<WeightedConfig> minus_;
};

/// Which uncertain mid-edges the factored engine resolves.
enum class EdgeResolution {
  /// Every mid-edge whose disagreement status is random.
  Full,
  /// Only those joining two disagreeing vertices, plus any listed as
  /// relevant; the rest are treated as agreeing.  Exact for connectivity
  /// events between vertex sets and for counts of vertex sites.
  VertexConnectivity,
};

/// Pair measure with mid-edges integrated out analytically.
///
/// Given the vertex spins of both copies, mid-edges are independent; each
/// contributes a disagreement probability 1 - sum_k P+(k) P-(k).  Vertex
/// pairs are enumerated exactly, then every pattern of uncertain mid-edges.
class FactoredPairMeasure {
 public:
  FactoredPairMeasure(const ExtendedGraph& g, const CouplingParams& p, const FieldRealization& f,
                      const BoundarySpec& bc_plus, const BoundarySpec& bc_minus,
                      const EnumerationLimits& lim = {});

  double expectation(const std::function<double(const DisagreementGeometry&)>& F,
                     EdgeResolution resolution = EdgeResolution::Full,
                     std::span<const SiteId> relevant_midedges = {}) const;

  struct Copy {
    std::vector<SpinConfig> sigma;
    std::vector<double> prob;
    /// prob of kappa = -1, 0, +1 per edge, flattened [config][edge][3].
    std::vector<double> kappa;
  };

 private:
  const ExtendedGraph* g_;
  EnumerationLimits lim_;
  Copy plus_;
  Copy minus_;
};

enum class PairEngine { Auto, Brute, Factored };

double pair_expectation(const ExtendedGraph& g, const CouplingParams& p, const FieldRealization& f,
                        const BoundarySpec& bc_plus, const BoundarySpec& bc_minus,
                        const std::function<double(const DisagreementGeometry&)>& F,
                        PairEngine engine = PairEngine::Auto, const EnumerationLimits& lim = {});

/// Probability that source and target are joined inside the disagreement set.
double pair_connection_probability_exact(const ExtendedGraph& g, std::span<const SiteId> source,
                                         std::span<const SiteId> target, const CouplingParams& p,
                                         const FieldRealization& f, const BoundarySpec& bc_plus,
                                         const BoundarySpec& bc_minus,
                                         PairEngine engine = PairEngine::Auto,
                                         const EnumerationLimits& lim = {});

/// Probability that the inner and outer vertex boundaries are not joined,
/// with + on both in one copy and - on both in the other.
double boundary_separation_probability(const Region& inner, const Region& outer,
                                       const CouplingParams& p, const FieldRealization& f,
                                       PairEngine engine = PairEngine::Auto,
                                       const EnumerationLimits& lim = {});

/// Exchange the two configurations on the disagreement clusters meeting S,
/// unless those clusters reach A.
std::pair<ExtendedConfig, ExtendedConfig> swap_clusters(const ExtendedGraph& g,
                                                        const ExtendedConfig& a,
                                                        const ExtendedConfig& b,
                                                        std::span<const SiteId> S,
                                                        std::span<const SiteId> A);

}  // namespace rfim
