#include "rfim/lattice.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace rfim {

namespace {

constexpr std::array<Vertex, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

Vertex shifted(Vertex v, Vertex d) { return {v.x + d.x, v.y + d.y}; }

}  // namespace

Region::Region(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  index_.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    index_.emplace(vertices_[i], static_cast<int>(i));
  }
  // Only +x and +y neighbours, so each edge is produced once.
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vertex v = vertices_[i];
    for (Vertex d : {Vertex{1, 0}, Vertex{0, 1}}) {
      auto it = index_.find(shifted(v, d));
      if (it != index_.end()) {
        int a = static_cast<int>(i);
        int b = it->second;
        edges_.push_back({std::min(a, b), std::max(a, b)});
      }
    }
  }
  std::sort(edges_.begin(), edges_.end());
  incident_.assign(vertices_.size(), {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    incident_[static_cast<std::size_t>(edges_[e].a)].push_back(static_cast<int>(e));
    incident_[static_cast<std::size_t>(edges_[e].b)].push_back(static_cast<int>(e));
  }
}

Region Region::box(Vertex center, int radius) {
  if (radius < 0) throw std::invalid_argument("box: negative radius");
  std::vector<Vertex> vs;
  for (int dx = -radius; dx <= radius; ++dx) {
    int rest = radius - (dx < 0 ? -dx : dx);
    for (int dy = -rest; dy <= rest; ++dy) vs.push_back({center.x + dx, center.y + dy});
  }
  return Region(std::move(vs));
}

Region Region::annulus(Vertex center, int inner, int outer) {
  if (inner < 0 || inner >= outer) {
    throw std::invalid_argument("annulus: need 0 <= inner < outer, got " + std::to_string(inner) +
                                ", " + std::to_string(outer));
  }
  const Region disk = box(center, outer);
  std::vector<Vertex> vs;
  for (const Vertex& v : disk.vertices()) {
    if (distance(center, v) > inner) vs.push_back(v);
  }
  return Region(std::move(vs));
}

Region Region::block(int x0, int y0, int x1, int y1) {
  std::vector<Vertex> vs;
  for (int x = x0; x <= x1; ++x)
    for (int y = y0; y <= y1; ++y) vs.push_back({x, y});
  return Region(std::move(vs));
}

std::optional<int> Region::index_of(Vertex v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Region::contains(const Region& other) const {
  return std::all_of(other.vertices().begin(), other.vertices().end(),
                     [&](const Vertex& v) { return contains(v); });
}

std::optional<int> Region::edge_between(int i, int j) const {
  for (int e : incident_edges(i)) {
    if (other_end(e, i) == j) return e;
  }
  return std::nullopt;
}

std::vector<int> Region::indices_of(std::span<const Vertex> vs) const {
  std::vector<int> out;
  out.reserve(vs.size());
  for (const Vertex& v : vs) {
    auto i = index_of(v);
    if (!i) {
      throw std::out_of_range("vertex (" + std::to_string(v.x) + "," + std::to_string(v.y) +
                              ") not in region");
    }
    out.push_back(*i);
  }
  return out;
}

std::vector<Vertex> internal_boundary(const Region& r) {
  std::vector<Vertex> out;
  for (const Vertex& v : r.vertices()) {
    bool edge = std::any_of(kSteps.begin(), kSteps.end(),
                            [&](Vertex d) { return !r.contains(shifted(v, d)); });
    if (edge) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> internal_boundary(const Region& r, const Region& ambient) {
  std::vector<Vertex> out;
  for (const Vertex& v : r.vertices()) {
    bool edge = std::any_of(kSteps.begin(), kSteps.end(), [&](Vertex d) {
      Vertex w = shifted(v, d);
      return ambient.contains(w) && !r.contains(w);
    });
    if (edge) out.push_back(v);
  }
  return out;
}

Region region_union(const Region& a, const Region& b) {
  std::vector<Vertex> vs = a.vertices();
  vs.insert(vs.end(), b.vertices().begin(), b.vertices().end());
  return Region(std::move(vs));
}

Region region_difference(const Region& a, const Region& b) {
  std::vector<Vertex> vs;
  for (const Vertex& v : a.vertices())
    if (!b.contains(v)) vs.push_back(v);
  return Region(std::move(vs));
}

ExtendedGraph::ExtendedGraph(Region region)
    : region_(std::move(region)), num_vertices_(static_cast<int>(region_.size())) {
  adjacency_.assign(static_cast<std::size_t>(num_sites()), {});
  for (int v = 0; v < num_vertices_; ++v) {
    for (int e : region_.incident_edges(v)) {
      adjacency_[static_cast<std::size_t>(v)].push_back(midedge(e));
    }
  }
  for (int e = 0; e < num_edges(); ++e) {
    const Edge& ed = region_.edges()[static_cast<std::size_t>(e)];
    adjacency_[static_cast<std::size_t>(midedge(e))] = {ed.a, ed.b};
  }
}

std::size_t ExtendedGraph::num_adjacencies() const {
  return 2 * static_cast<std::size_t>(num_edges());
}

std::vector<SiteId> ExtendedGraph::sites_of(std::span<const Vertex> vs) const {
  return region_.indices_of(vs);
}

BoundarySpec BoundarySpec::uniform(const Region& r, std::span<const Vertex> vs, int value) {
  BoundarySpec bc;
  for (int i : r.indices_of(vs)) bc.set(i, value);
  return bc;
}

void BoundarySpec::set(SiteId site, int value) {
  if (value < -1 || value > 1) throw std::invalid_argument("boundary value outside {-1,0,1}");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), site,
                             [](const auto& p, SiteId s) { return p.first < s; });
  if (it != entries_.end() && it->first == site) {
    it->second = value;
  } else {
    entries_.insert(it, {site, value});
  }
}

std::optional<int> BoundarySpec::value(SiteId site) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), site,
                             [](const auto& p, SiteId s) { return p.first < s; });
  if (it != entries_.end() && it->first == site) return it->second;
  return std::nullopt;
}

bool BoundarySpec::vertex_only(const ExtendedGraph& g) const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [&](const auto& p) { return g.is_vertex(p.first); });
}

std::vector<std::int8_t> BoundarySpec::dense(int num_sites) const {
  std::vector<std::int8_t> out(static_cast<std::size_t>(num_sites), kFree);
  for (const auto& [s, v] : entries_) {
    if (s < 0 || s >= num_sites) throw std::out_of_range("boundary site outside graph");
    out[static_cast<std::size_t>(s)] = static_cast<std::int8_t>(v);
  }
  return out;
}

BoundarySpec BoundarySpec::merged(const BoundarySpec& other) const {
  BoundarySpec out = *this;
  for (const auto& [s, v] : other.entries_) out.set(s, v);
  return out;
}

bool is_allowed(const ExtendedGraph& g, const BoundarySpec& bc) {
  std::vector<std::int8_t> forced(static_cast<std::size_t>(g.num_vertices()), 0);
  auto force = [&](int v, int value) {
    auto& f = forced[static_cast<std::size_t>(v)];
    if (f != 0 && f != value) return false;
    f = static_cast<std::int8_t>(value);
    return true;
  };
  for (const auto& [s, v] : bc.entries()) {
    if (s < 0 || s >= g.num_sites()) return false;
    if (g.is_vertex(s)) {
      if (v == 0 || !force(s, v)) return false;
    }
  }
  // Mid-edge values +-1 pin both endpoints; 0 is compatible with anything.
  for (const auto& [s, v] : bc.entries()) {
    if (g.is_midedge(s) && v != 0) {
      const Edge& e = g.region().edges()[static_cast<std::size_t>(g.edge_of(s))];
      if (!force(e.a, v) || !force(e.b, v)) return false;
    }
  }
  return true;
}

}  // namespace rfim
