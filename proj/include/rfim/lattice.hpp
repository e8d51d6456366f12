#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rfim {

struct Vertex {
  int x = 0;
  int y = 0;

  auto operator<=>(const Vertex&) const = default;
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept {
    auto ux = static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.x));
    auto uy = static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.y));
    std::uint64_t h = (ux << 32) | uy;
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

/// Graph (l1) distance on Z^2.
inline int distance(Vertex a, Vertex b) {
  int dx = a.x - b.x;
  int dy = a.y - b.y;
  return (dx < 0 ? -dx : dx) + (dy < 0 ? -dy : dy);
}

/// Undirected nearest-neighbour edge between vertex indices a < b.
struct Edge {
  int a = 0;
  int b = 0;

  auto operator<=>(const Edge&) const = default;
};

/// Finite subset of Z^2 with its induced nearest-neighbour edges.
///
/// Vertices are kept in canonical (x, then y) order; edges are sorted by
/// their endpoint indices.  All enumeration and random-number consumption
/// downstream walks vertices in this order.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<Vertex> vertices);

  /// Graph-distance ball {v : d(center, v) <= radius}.
  static Region box(Vertex center, int radius);
  /// {v : inner < d(center, v) <= outer}; throws unless 0 <= inner < outer.
  static Region annulus(Vertex center, int inner, int outer);
  /// Axis-aligned block [x0, x1] x [y0, y1] (inclusive).
  static Region block(int x0, int y0, int x1, int y1);

  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<int> index_of(Vertex v) const;
  bool contains(Vertex v) const { return index_.count(v) != 0; }
  bool contains(const Region& other) const;

  /// Edge indices incident to vertex i.
  const std::vector<int>& incident_edges(int i) const {
    return incident_[static_cast<std::size_t>(i)];
  }
  int other_end(int edge, int i) const {
    const Edge& e = edges_[static_cast<std::size_t>(edge)];
    return e.a == i ? e.b : e.a;
  }
  std::optional<int> edge_between(int i, int j) const;

  /// Vertex indices of `vs` in this region; throws if any is missing.
  std::vector<int> indices_of(std::span<const Vertex> vs) const;

  friend bool operator==(const Region& a, const Region& b) {
    return a.vertices_ == b.vertices_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::unordered_map<Vertex, int, VertexHash> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

/// Vertices of `r` with a Z^2 neighbour outside `r`.
std::vector<Vertex> internal_boundary(const Region& r);
/// Vertices of `r` with a neighbour in `ambient` that is not in `r`.
std::vector<Vertex> internal_boundary(const Region& r, const Region& ambient);

Region region_union(const Region& a, const Region& b);
Region region_difference(const Region& a, const Region& b);

using SiteId = int;

/// Vertices plus one mid-edge site per edge; sites [0, V) are the region's
/// vertices, site V + e is the midpoint of edge e.
class ExtendedGraph {
 public:
  ExtendedGraph() = default;
  explicit ExtendedGraph(Region region);

  const Region& region() const { return region_; }
  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(region_.edges().size()); }
  int num_sites() const { return num_vertices_ + num_edges(); }

  bool is_vertex(SiteId s) const { return s < num_vertices_; }
  bool is_midedge(SiteId s) const { return s >= num_vertices_; }
  int edge_of(SiteId s) const { return s - num_vertices_; }
  SiteId midedge(int edge) const { return num_vertices_ + edge; }

  const std::vector<SiteId>& neighbors(SiteId s) const {
    return adjacency_[static_cast<std::size_t>(s)];
  }
  std::size_t num_adjacencies() const;

  /// Vertex sites for the given lattice vertices (throws if outside).
  std::vector<SiteId> sites_of(std::span<const Vertex> vs) const;

 private:
  Region region_;
  int num_vertices_ = 0;
  std::vector<std::vector<SiteId>> adjacency_;
};

/// Fixed values on a set of extended sites: +-1 on vertices, {-1,0,+1} on
/// mid-edges.  Kept sorted by site.
class BoundarySpec {
 public:
  BoundarySpec() = default;

  static BoundarySpec uniform(const Region& r, std::span<const Vertex> vs, int value);

  void set(SiteId site, int value);
  std::optional<int> value(SiteId site) const;
  const std::vector<std::pair<SiteId, int>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  bool vertex_only(const ExtendedGraph& g) const;

  /// Per-site array, `kFree` where unconstrained.
  std::vector<std::int8_t> dense(int num_sites) const;
  static constexpr std::int8_t kFree = 2;

  BoundarySpec merged(const BoundarySpec& other) const;

 private:
  std::vector<std::pair<SiteId, int>> entries_;
};

/// True iff some extended configuration equals `bc` on its sites and obeys
/// the hard constraints.
bool is_allowed(const ExtendedGraph& g, const BoundarySpec& bc);

}  // namespace rfim
