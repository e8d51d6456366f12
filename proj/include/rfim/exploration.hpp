#pragma once

#include <span>
#include <vector>

#include "rfim/disagreement.hpp"

namespace rfim {

/// Layered exploration of the outer disagreement cluster of an annulus.
///
/// With A = closure(Lambda(outer)) minus closure(Lambda(k)) and C the sites of
/// A joined to the outer vertex layer by disagreement paths inside A, layer n
/// holds B_n = {u in A : d_C(u, outer layer) <= 2n - 1}, and S_n is the set of
/// sites of closure(Lambda(outer)) outside B_n adjacent to B_n.  Each S_n
/// separates the centre from the outer layer and is determined by the pair
/// restricted to its backward side.
struct ExplorationResult {
  /// |S_n ∩ D| for n = 1..N, N = |A|.
  std::vector<int> counts;
  /// S_n (sorted) for n = 1..n_stable; S_n for n > n_stable equals the last.
  std::vector<std::vector<SiteId>> sets;
  /// Backward sets were nested across consecutive layers.
  bool nested = true;
};

/// Throws std::logic_error if the backward sets fail to nest.  Requires
/// 1 <= k < outer and closure(Lambda(outer)) inside the geometry's region.
ExplorationResult explore_nonanticipatory(const DisagreementGeometry& geom, Vertex center, int k,
                                          int outer);

/// Backward set of S: sites of closure(Lambda(outer)) not reachable from the
/// centre without touching S (S itself included).
std::vector<char> backward_set(const ExtendedGraph& g, std::span<const SiteId> S, Vertex center,
                               int outer);

/// Every mid-edge in every exploration set carries kappa = 0 in both copies.
bool good_sets_hold(const ExtendedGraph& g, const ExtendedConfig& plus, const ExtendedConfig& minus,
                    const ExplorationResult& result);

}  // namespace rfim
