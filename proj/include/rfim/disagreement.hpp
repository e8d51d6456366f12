#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rfim/lattice.hpp"
#include "rfim/model.hpp"

namespace rfim {

/// Sites where two extended configurations differ, split into connected
/// components of the extended graph.
///
/// Holds a pointer to the graph; the graph must outlive the geometry.
class DisagreementGeometry {
 public:
  DisagreementGeometry(const ExtendedGraph& g, std::vector<char> membership);

  const ExtendedGraph& graph() const { return *graph_; }
  bool contains(SiteId s) const { return in_[static_cast<std::size_t>(s)] != 0; }
  /// Component index of s, or -1 when s is not a disagreement site.
  int component(SiteId s) const { return comp_[static_cast<std::size_t>(s)]; }
  int num_components() const { return num_components_; }
  const std::vector<SiteId>& sites() const { return sites_; }
  const std::vector<char>& membership() const { return in_; }
  std::vector<SiteId> component_sites(int c) const;

 private:
  const ExtendedGraph* graph_;
  std::vector<char> in_;
  std::vector<int> comp_;
  std::vector<SiteId> sites_;
  int num_components_ = 0;
};

/// Throws std::invalid_argument when the configurations do not fit `g`.
DisagreementGeometry disagreement_set(const ExtendedGraph& g, const ExtendedConfig& a,
                                      const ExtendedConfig& b);
DisagreementGeometry disagreement_set(const ExtendedGraph& g, const PairSample& pair);

/// Union of the components meeting S (sorted).
std::vector<SiteId> cluster_of(const DisagreementGeometry& geom, std::span<const SiteId> S);

/// Whether some disagreement path joins A and B.
bool connected(const DisagreementGeometry& geom, std::span<const SiteId> A,
               std::span<const SiteId> B);

/// |C_S ∩ T| without materialising C_S.
std::size_t cluster_intersection_size(const DisagreementGeometry& geom,
                                      std::span<const SiteId> S, std::span<const SiteId> T);

/// Sites of the region's internal vertex boundary.
std::vector<SiteId> boundary_sites(const ExtendedGraph& g);

/// Within each component, plus - minus has one sign throughout.
bool sign_coherent(const DisagreementGeometry& geom, const ExtendedConfig& plus,
                   const ExtendedConfig& minus);

/// Origin-to-boundary connection for a pair sampled on Lambda(L) around `center`.
bool order_parameter_event(const DisagreementGeometry& geom, Vertex center, int L);

struct CrossingReport {
  bool crossed = false;
  /// Extended-graph steps of the shortest crossing; set iff crossed.
  std::optional<int> shortest_length;
};

/// Disagreement crossing of the extended annulus {l1 < d(center, v) <= l2}
/// from its inner vertex layer to its outer one.
CrossingReport annulus_crossing(const DisagreementGeometry& geom, Vertex center, int l1, int l2);

/// Whether the designated cluster (the boundary cluster, or all of D) holds a
/// circuit inside the annulus {l1 < d <= l2} that winds around `center`.
/// Decided by planar duality: the circuit exists iff the plaquettes around
/// `center` cannot reach the far field without crossing a cluster edge.
bool lasso_present(const DisagreementGeometry& geom, Vertex center, int l1, int l2,
                   bool boundary_component_only);

/// Real-coordinate axis-aligned rectangle.
struct Rectangle {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;
};

/// Lattice vertices of R after rounding each corner to the nearest
/// half-integer; membership is strict, so it is half-open in effect.
std::vector<Vertex> rasterize(const Rectangle& R);

/// The rectangle centred at (cx, cy) with the long side along x, and its
/// rotation by pi/2.
std::vector<Rectangle> rotated_rectangles(double cx, double cy, double length, double width);

/// Whether the boundary cluster joins the two short sides of R within R.
/// For squares the x direction is taken as the long one.
bool rectangle_crossing(const DisagreementGeometry& geom, const Rectangle& R);

struct MomentEstimate {
  std::size_t n = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double second_moment = 0.0;
};

/// Running first/second moments; merge() is associative so replica blocks
/// can be reduced in any grouping.
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);
  MomentEstimate result() const;

 private:
  std::size_t n_ = 0;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
};

/// |inner ∩ C_{∂ outer}| for one pair; `g` is the outer region's graph.
std::size_t boundary_cluster_count(const DisagreementGeometry& geom, const Region& inner);

/// Monte Carlo mean, standard error and second moment of |inner ∩ C_{∂ outer}|.
MomentEstimate disagreement_count_mc(const ExtendedGraph& g, std::span<const PairSample> pairs,
                                     const Region& inner);

}  // namespace rfim
