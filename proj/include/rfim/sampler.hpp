#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rfim/lattice.hpp"
#include "rfim/model.hpp"
#include "rfim/rng.hpp"

namespace rfim {

/// I.i.d. standard normals on r's vertices, drawn in canonical order.
FieldRealization gaussian_field(const Region& r, const RandomSource& rng);

/// eta + t on `inner`, unchanged elsewhere.
FieldRealization tilt_field(const FieldRealization& f, const Region& inner, double t);

/// (1/sqrt|r|) sum_{v in r} eta_v.
double normalized_field_sum(const FieldRealization& f, const Region& r);

struct ChainState {
  SpinConfig cfg;
  std::size_t sweep_count = 0;
};

/// Single-site heat-bath updates in raster order over the free vertices.
///
/// The conditional probability of +1 at each free vertex is tabulated by
/// neighbour sum, so an update is one table lookup and one comparison.
class HeatBath {
 public:
  /// bc must be vertex-only with values +-1.
  HeatBath(const Region& r, const CouplingParams& p, const FieldRealization& f,
           const BoundarySpec& bc);

  /// Configuration with boundary values applied and free vertices set to s.
  SpinConfig uniform_start(Spin s) const;
  /// Free vertices set to the boundary value (+1 when none or mixed).
  SpinConfig boundary_start() const { return uniform_start(start_value_); }
  /// One sweep using uniforms rng.uniform(time, vertex index).
  void sweep(SpinConfig& cfg, const RandomSource& rng, std::uint64_t time) const;
  void run(ChainState& state, const RandomSource& rng, std::size_t sweeps) const;

  const Region& region() const { return *region_; }
  const std::vector<int>& free_vertices() const { return free_; }

 private:
  const Region* region_;
  std::vector<int> free_;
  std::vector<int> neighbor_offsets_;
  std::vector<int> neighbors_;
  /// P(+1) per free vertex, indexed by neighbour sum + 4.
  std::vector<double> prob_plus_;
  Spin start_value_ = 1;
};

/// Heat-bath chain from the all-boundary-value start (all +1 when bc is
/// empty or mixed).  Throws std::invalid_argument when sweeps < 1.
SpinConfig glauber_sample(const Region& r, const CouplingParams& p, const FieldRealization& f,
                          const BoundarySpec& bc, std::size_t sweeps, const RandomSource& rng);

class CftpNonCoalescence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CftpStats {
  std::size_t epochs = 0;
  std::size_t horizon = 0;
};

/// Monotone coupling from the past with doubling horizons; the update at
/// time -s reuses rng.uniform(s, vertex) across epochs.  Throws
/// CftpNonCoalescence after max_epochs doublings.
SpinConfig cftp_sample(const Region& r, const CouplingParams& p, const FieldRealization& f,
                       const BoundarySpec& bc, const RandomSource& rng, int max_epochs = 24,
                       CftpStats* stats = nullptr);

/// Mid-edge values drawn given the vertex spins: kappa = 0 across a
/// disagreeing edge; across an agreeing edge with common value s, kappa = s
/// with probability 1 - e^{-2 beta J}, else 0.
ExtendedConfig attach_midedges(const ExtendedGraph& g, const SpinConfig& cfg,
                               const CouplingParams& p, const RandomSource& rng);

enum class SamplerMode { Glauber, Cftp };

/// Independent plus and minus draws (streams Plus and Minus of rng) with
/// +1 / -1 fixed on `boundary`, each given mid-edges.  sweeps = 0 selects the
/// default burn-in of 100 |V| sweeps in Glauber mode.
PairSample sample_pair(const ExtendedGraph& g, const CouplingParams& p, const FieldRealization& f,
                       std::span<const Vertex> boundary, SamplerMode mode, const RandomSource& rng,
                       std::size_t sweeps = 0);

}  // namespace rfim
