#include "rfim/disagreement.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace rfim {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    auto& ra = rank_[static_cast<std::size_t>(a)];
    auto& rb = rank_[static_cast<std::size_t>(b)];
    if (ra < rb) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    if (ra == rb) ++rank_[static_cast<std::size_t>(a)];
  }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

/// Sites of the extended annulus {l1 < d <= l2}: vertices in range and
/// mid-edges whose endpoints both are.
std::vector<char> annulus_membership(const ExtendedGraph& g, Vertex center, int l1, int l2) {
  const Region& r = g.region();
  std::vector<char> in(static_cast<std::size_t>(g.num_sites()), 0);
  for (int v = 0; v < g.num_vertices(); ++v) {
    int d = distance(center, r.vertex(v));
    if (d > l1 && d <= l2) in[static_cast<std::size_t>(v)] = 1;
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = r.edges()[static_cast<std::size_t>(e)];
    if (in[static_cast<std::size_t>(ed.a)] && in[static_cast<std::size_t>(ed.b)]) {
      in[static_cast<std::size_t>(g.midedge(e))] = 1;
    }
  }
  return in;
}

std::vector<char> designated_cluster(const DisagreementGeometry& geom, bool boundary_only) {
  if (!boundary_only) return geom.membership();
  std::vector<char> in(geom.membership().size(), 0);
  for (SiteId s : cluster_of(geom, boundary_sites(geom.graph()))) in[static_cast<std::size_t>(s)] = 1;
  return in;
}

double nearest_half_integer(double x) { return std::floor(x) + 0.5; }

}  // namespace

DisagreementGeometry::DisagreementGeometry(const ExtendedGraph& g, std::vector<char> membership)
    : graph_(&g), in_(std::move(membership)) {
  if (in_.size() != static_cast<std::size_t>(g.num_sites())) {
    throw std::invalid_argument("membership size does not match extended graph");
  }
  UnionFind uf(in_.size());
  for (int e = 0; e < g.num_edges(); ++e) {
    SiteId m = g.midedge(e);
    if (!contains(m)) continue;
    for (SiteId v : g.neighbors(m))
      if (contains(v)) uf.unite(m, v);
  }
  comp_.assign(in_.size(), -1);
  std::vector<int> root_label(in_.size(), -1);
  for (SiteId s = 0; s < g.num_sites(); ++s) {
    if (!contains(s)) continue;
    sites_.push_back(s);
    int root = uf.find(s);
    auto& label = root_label[static_cast<std::size_t>(root)];
    if (label < 0) label = num_components_++;
    comp_[static_cast<std::size_t>(s)] = label;
  }
}

std::vector<SiteId> DisagreementGeometry::component_sites(int c) const {
  std::vector<SiteId> out;
  for (SiteId s : sites_)
    if (component(s) == c) out.push_back(s);
  return out;
}

DisagreementGeometry disagreement_set(const ExtendedGraph& g, const ExtendedConfig& a,
                                      const ExtendedConfig& b) {
  const auto nv = static_cast<std::size_t>(g.num_vertices());
  const auto ne = static_cast<std::size_t>(g.num_edges());
  if (a.sigma.size() != nv || b.sigma.size() != nv || a.kappa.size() != ne ||
      b.kappa.size() != ne) {
    throw std::invalid_argument("pair configurations do not match the extended graph");
  }
  std::vector<char> in(nv + ne, 0);
  for (std::size_t v = 0; v < nv; ++v) in[v] = a.sigma[v] != b.sigma[v];
  for (std::size_t e = 0; e < ne; ++e) in[nv + e] = a.kappa[e] != b.kappa[e];
  return DisagreementGeometry(g, std::move(in));
}

DisagreementGeometry disagreement_set(const ExtendedGraph& g, const PairSample& pair) {
  return disagreement_set(g, pair.plus, pair.minus);
}

std::vector<SiteId> cluster_of(const DisagreementGeometry& geom, std::span<const SiteId> S) {
  std::vector<char> hit(static_cast<std::size_t>(geom.num_components()), 0);
  for (SiteId s : S) {
    int c = geom.component(s);
    if (c >= 0) hit[static_cast<std::size_t>(c)] = 1;
  }
  std::vector<SiteId> out;
  for (SiteId s : geom.sites())
    if (hit[static_cast<std::size_t>(geom.component(s))]) out.push_back(s);
  return out;
}

bool connected(const DisagreementGeometry& geom, std::span<const SiteId> A,
               std::span<const SiteId> B) {
  std::vector<char> hit(static_cast<std::size_t>(geom.num_components()), 0);
  for (SiteId s : A) {
    int c = geom.component(s);
    if (c >= 0) hit[static_cast<std::size_t>(c)] = 1;
  }
  return std::any_of(B.begin(), B.end(), [&](SiteId s) {
    int c = geom.component(s);
    return c >= 0 && hit[static_cast<std::size_t>(c)];
  });
}

std::size_t cluster_intersection_size(const DisagreementGeometry& geom,
                                      std::span<const SiteId> S, std::span<const SiteId> T) {
  std::vector<char> hit(static_cast<std::size_t>(geom.num_components()), 0);
  for (SiteId s : S) {
    int c = geom.component(s);
    if (c >= 0) hit[static_cast<std::size_t>(c)] = 1;
  }
  return static_cast<std::size_t>(std::count_if(T.begin(), T.end(), [&](SiteId s) {
    int c = geom.component(s);
    return c >= 0 && hit[static_cast<std::size_t>(c)];
  }));
}

std::vector<SiteId> boundary_sites(const ExtendedGraph& g) {
  return g.sites_of(internal_boundary(g.region()));
}

bool sign_coherent(const DisagreementGeometry& geom, const ExtendedConfig& plus,
                   const ExtendedConfig& minus) {
  const ExtendedGraph& g = geom.graph();
  std::vector<int> sign(static_cast<std::size_t>(geom.num_components()), 0);
  for (SiteId s : geom.sites()) {
    int d = plus.at(g, s) > minus.at(g, s) ? 1 : -1;
    int& c = sign[static_cast<std::size_t>(geom.component(s))];
    if (c == 0) {
      c = d;
    } else if (c != d) {
      return false;
    }
  }
  return true;
}

bool order_parameter_event(const DisagreementGeometry& geom, Vertex center, int L) {
  const ExtendedGraph& g = geom.graph();
  auto origin = g.region().index_of(center);
  if (!origin) throw std::invalid_argument("order_parameter_event: center outside region");
  std::vector<SiteId> boundary;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (distance(center, g.region().vertex(v)) == L) boundary.push_back(v);
  const SiteId o = *origin;
  return connected(geom, std::span<const SiteId>(&o, 1), boundary);
}

CrossingReport annulus_crossing(const DisagreementGeometry& geom, Vertex center, int l1, int l2) {
  if (l1 < 0 || l1 >= l2) throw std::invalid_argument("annulus_crossing: need 0 <= l1 < l2");
  const ExtendedGraph& g = geom.graph();
  const Region& r = g.region();
  std::vector<char> in = annulus_membership(g, center, l1, l2);
  std::vector<int> dist(in.size(), -1);
  std::deque<SiteId> queue;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (in[static_cast<std::size_t>(v)] && geom.contains(v) && distance(center, r.vertex(v)) == l1 + 1) {
      dist[static_cast<std::size_t>(v)] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    SiteId s = queue.front();
    queue.pop_front();
    if (g.is_vertex(s) && distance(center, r.vertex(s)) == l2) {
      return {true, dist[static_cast<std::size_t>(s)]};
    }
    for (SiteId n : g.neighbors(s)) {
      auto ni = static_cast<std::size_t>(n);
      if (in[ni] && geom.contains(n) && dist[ni] < 0) {
        dist[ni] = dist[static_cast<std::size_t>(s)] + 1;
        queue.push_back(n);
      }
    }
  }
  return {false, std::nullopt};
}

bool lasso_present(const DisagreementGeometry& geom, Vertex center, int l1, int l2,
                   bool boundary_component_only) {
  if (l1 < 0 || l1 >= l2) throw std::invalid_argument("lasso_present: need 0 <= l1 < l2");
  const ExtendedGraph& g = geom.graph();
  const Region& r = g.region();
  std::vector<char> cluster = designated_cluster(geom, boundary_component_only);
  std::vector<char> ann = annulus_membership(g, center, l1, l2);

  // A primal lattice edge is "open" when both endpoints and its mid-edge are
  // cluster sites inside the annulus.
  auto open_edge = [&](Vertex p, Vertex q) {
    auto a = r.index_of(p);
    auto b = r.index_of(q);
    if (!a || !b) return false;
    auto e = r.edge_between(*a, *b);
    if (!e) return false;
    SiteId m = g.midedge(*e);
    auto ok = [&](SiteId s) {
      auto i = static_cast<std::size_t>(s);
      return ann[i] && cluster[i];
    };
    return ok(*a) && ok(*b) && ok(m);
  };

  // Plaquette (x, y) is the unit square with lower-left corner (x, y).
  const int xmin = center.x - l2 - 1;
  const int xmax = center.x + l2;
  const int ymin = center.y - l2 - 1;
  const int ymax = center.y + l2;
  const int width = xmax - xmin + 1;
  const int height = ymax - ymin + 1;
  std::vector<char> seen(static_cast<std::size_t>(width * height), 0);
  auto id = [&](int x, int y) { return static_cast<std::size_t>((y - ymin) * width + (x - xmin)); };
  std::deque<Vertex> queue;
  for (int dx : {-1, 0})
    for (int dy : {-1, 0}) {
      Vertex p{center.x + dx, center.y + dy};
      seen[id(p.x, p.y)] = 1;
      queue.push_back(p);
    }
  while (!queue.empty()) {
    Vertex p = queue.front();
    queue.pop_front();
    if (p.x == xmin || p.x == xmax || p.y == ymin || p.y == ymax) return false;
    struct Move {
      int dx, dy;
      Vertex a, b;  // the shared primal edge
    };
    const Move moves[4] = {
        {1, 0, {p.x + 1, p.y}, {p.x + 1, p.y + 1}},
        {-1, 0, {p.x, p.y}, {p.x, p.y + 1}},
        {0, 1, {p.x, p.y + 1}, {p.x + 1, p.y + 1}},
        {0, -1, {p.x, p.y}, {p.x + 1, p.y}},
    };
    for (const Move& m : moves) {
      Vertex q{p.x + m.dx, p.y + m.dy};
      if (seen[id(q.x, q.y)] || open_edge(m.a, m.b)) continue;
      seen[id(q.x, q.y)] = 1;
      queue.push_back(q);
    }
  }
  return true;
}

std::vector<Vertex> rasterize(const Rectangle& R) {
  double x0 = nearest_half_integer(std::min(R.x0, R.x1));
  double x1 = nearest_half_integer(std::max(R.x0, R.x1));
  double y0 = nearest_half_integer(std::min(R.y0, R.y1));
  double y1 = nearest_half_integer(std::max(R.y0, R.y1));
  std::vector<Vertex> out;
  for (int x = static_cast<int>(std::ceil(x0)); x < x1; ++x)
    for (int y = static_cast<int>(std::ceil(y0)); y < y1; ++y) out.push_back({x, y});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rectangle> rotated_rectangles(double cx, double cy, double length, double width) {
  const double a = length / 2.0;
  const double b = width / 2.0;
  return {{cx - a, cy - b, cx + a, cy + b}, {cx - b, cy - a, cx + b, cy + a}};
}

bool rectangle_crossing(const DisagreementGeometry& geom, const Rectangle& R) {
  const ExtendedGraph& g = geom.graph();
  const Region& r = g.region();
  std::vector<Vertex> cells = rasterize(R);
  if (cells.empty()) return false;
  int xlo = cells.front().x, xhi = cells.front().x, ylo = cells.front().y, yhi = cells.front().y;
  for (const Vertex& v : cells) {
    xlo = std::min(xlo, v.x);
    xhi = std::max(xhi, v.x);
    ylo = std::min(ylo, v.y);
    yhi = std::max(yhi, v.y);
  }
  const bool along_x = (xhi - xlo) >= (yhi - ylo);
  std::vector<char> inside(static_cast<std::size_t>(g.num_sites()), 0);
  for (const Vertex& v : cells) {
    auto i = r.index_of(v);
    if (!i) throw std::invalid_argument("rectangle_crossing: rectangle leaves the region");
    inside[static_cast<std::size_t>(*i)] = 1;
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = r.edges()[static_cast<std::size_t>(e)];
    if (inside[static_cast<std::size_t>(ed.a)] && inside[static_cast<std::size_t>(ed.b)])
      inside[static_cast<std::size_t>(g.midedge(e))] = 1;
  }
  std::vector<char> cluster = designated_cluster(geom, true);
  auto usable = [&](SiteId s) {
    auto i = static_cast<std::size_t>(s);
    return inside[i] && cluster[i];
  };
  auto coord = [&](SiteId v) { return along_x ? r.vertex(v).x : r.vertex(v).y; };
  const int lo = along_x ? xlo : ylo;
  const int hi = along_x ? xhi : yhi;

  std::vector<char> seen(inside.size(), 0);
  std::deque<SiteId> queue;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (usable(v) && coord(v) == lo) {
      seen[static_cast<std::size_t>(v)] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    SiteId s = queue.front();
    queue.pop_front();
    if (g.is_vertex(s) && coord(s) == hi) return true;
    for (SiteId n : g.neighbors(s)) {
      if (!seen[static_cast<std::size_t>(n)] && usable(n)) {
        seen[static_cast<std::size_t>(n)] = 1;
        queue.push_back(n);
      }
    }
  }
  return false;
}

void MomentAccumulator::add(double x) {
  ++n_;
  sum_ += x;
  sum_sq_ += x * x;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  n_ += other.n_;
  sum_ += other.sum_;
  sum_sq_ += other.sum_sq_;
}

MomentEstimate MomentAccumulator::result() const {
  MomentEstimate m;
  m.n = n_;
  if (n_ == 0) return m;
  const double n = static_cast<double>(n_);
  m.mean = sum_ / n;
  m.second_moment = sum_sq_ / n;
  if (n_ > 1) {
    double var = std::max(0.0, (sum_sq_ - n * m.mean * m.mean) / (n - 1.0));
    m.std_error = std::sqrt(var / n);
  }
  return m;
}

std::size_t boundary_cluster_count(const DisagreementGeometry& geom, const Region& inner) {
  const ExtendedGraph& g = geom.graph();
  std::vector<SiteId> inner_sites = g.sites_of(inner.vertices());
  return cluster_intersection_size(geom, boundary_sites(g), inner_sites);
}

MomentEstimate disagreement_count_mc(const ExtendedGraph& g, std::span<const PairSample> pairs,
                                     const Region& inner) {
  MomentAccumulator acc;
  for (const PairSample& pair : pairs) {
    acc.add(static_cast<double>(boundary_cluster_count(disagreement_set(g, pair), inner)));
  }
  return acc.result();
}

}  // namespace rfim
