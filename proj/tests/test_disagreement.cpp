#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "oracle.hpp"
#include "rfim/disagreement.hpp"

using namespace rfim;

namespace {

/// Pair differing exactly on the vertices in `marked` and the mid-edges
/// between two marked vertices (plus all +1, minus -1 there, +1 elsewhere).
PairSample marked_pair(const ExtendedGraph& g, const std::vector<Vertex>& marked) {
  const Region& r = g.region();
  PairSample s;
  s.plus.sigma.assign(r.size(), 1);
  s.minus.sigma.assign(r.size(), 1);
  for (Vertex v : marked) s.minus.sigma[*r.index_of(v)] = -1;
  s.plus.kappa.assign(r.edges().size(), 0);
  s.minus.kappa.assign(r.edges().size(), 0);
  for (std::size_t e = 0; e < r.edges().size(); ++e) {
    const auto& ed = r.edges()[e];
    if (s.minus.sigma[ed.a] == -1 && s.minus.sigma[ed.b] == -1) {
      s.plus.kappa[e] = 1;
      s.minus.kappa[e] = -1;
    }
  }
  return s;
}

std::vector<Vertex> ring(int d) {
  std::vector<Vertex> out;
  for (int x = -d; x <= d; ++x)
    for (int y = -d; y <= d; ++y)
      if (std::abs(x) + std::abs(y) == d) out.push_back({x, y});
  return out;
}

}  // namespace

TEST_CASE("components match a naive flood fill") {
  const Region r = Region::block(0, 0, 4, 4);
  const ExtendedGraph g(r);
  std::mt19937_64 eng(1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<char> in(static_cast<std::size_t>(g.num_sites()));
    for (auto& c : in) c = (eng() % 3) == 0;
    const DisagreementGeometry geom(g, in);
    const auto ref = oracle::components(r, in);
    for (SiteId a = 0; a < g.num_sites(); ++a) {
      CHECK((geom.component(a) < 0) == (ref[a] < 0));
      for (SiteId b = 0; b < g.num_sites(); ++b)
        if (ref[a] >= 0 && ref[b] >= 0) REQUIRE((geom.component(a) == geom.component(b)) == (ref[a] == ref[b]));
    }
  }
}

TEST_CASE("connection, clusters and counts on a hand-built pair") {
  const Region r = Region::block(0, 0, 4, 0);
  const ExtendedGraph g(r);
  const auto pair = marked_pair(g, {{0, 0}, {1, 0}, {3, 0}});
  const auto geom = disagreement_set(g, pair);
  CHECK(geom.num_components() == 2);
  const SiteId a[] = {0};
  const SiteId b[] = {1};
  const SiteId c[] = {3};
  CHECK(connected(geom, a, b));
  CHECK_FALSE(connected(geom, a, c));
  CHECK(cluster_of(geom, a).size() == 3);
  const SiteId all[] = {0, 1, 2, 3, 4};
  CHECK(cluster_intersection_size(geom, a, all) == 2);
  CHECK(sign_coherent(geom, pair.plus, pair.minus));
  CHECK_THROWS_AS(disagreement_set(g, pair.plus, ExtendedConfig{{1}, {}}), std::invalid_argument);
}

TEST_CASE("order parameter event") {
  const ExtendedGraph g(Region::box({0, 0}, 3));
  const auto none = disagreement_set(g, marked_pair(g, {}));
  CHECK_FALSE(order_parameter_event(none, {0, 0}, 3));
  const auto arm = disagreement_set(g, marked_pair(g, {{0, 0}, {1, 0}, {2, 0}, {3, 0}}));
  CHECK(order_parameter_event(arm, {0, 0}, 3));
  const auto gap = disagreement_set(g, marked_pair(g, {{0, 0}, {1, 0}, {3, 0}}));
  CHECK_FALSE(order_parameter_event(gap, {0, 0}, 3));
  const ExtendedGraph g0(Region::box({0, 0}, 0));
  CHECK(order_parameter_event(disagreement_set(g0, marked_pair(g0, {{0, 0}})), {0, 0}, 0));
}

TEST_CASE("annulus crossing reports the shortest extended path") {
  const ExtendedGraph g(Region::annulus({0, 0}, 2, 6));
  std::vector<Vertex> marked;
  for (int x = 3; x <= 6; ++x) marked.push_back({x, 0});
  auto rep = annulus_crossing(disagreement_set(g, marked_pair(g, marked)), {0, 0}, 2, 6);
  REQUIRE(rep.crossed);
  CHECK(*rep.shortest_length == 6);

  std::vector<Vertex> bent{{3, 0}, {4, 0}, {4, 1}, {5, 1}, {5, 0}, {6, 0}};
  rep = annulus_crossing(disagreement_set(g, marked_pair(g, bent)), {0, 0}, 2, 6);
  REQUIRE(rep.crossed);
  CHECK(*rep.shortest_length == 6);

  marked.pop_back();
  rep = annulus_crossing(disagreement_set(g, marked_pair(g, marked)), {0, 0}, 2, 6);
  CHECK_FALSE(rep.crossed);
  CHECK_FALSE(rep.shortest_length.has_value());
}

TEST_CASE("lasso detects a closed circuit around the centre") {
  // Region boundary: the rings d = 1 and d = 5.  The square d_inf = 2 touches neither.
  const ExtendedGraph g(Region::annulus({0, 0}, 0, 5));
  std::vector<Vertex> square;
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y)
      if (std::abs(x) == 2 || std::abs(y) == 2) square.push_back({x, y});
  std::vector<Vertex> with_arm = square;
  for (int x = 3; x <= 5; ++x) with_arm.push_back({x, 0});
  CHECK(lasso_present(disagreement_set(g, marked_pair(g, with_arm)), {0, 0}, 1, 5, true));
  CHECK(lasso_present(disagreement_set(g, marked_pair(g, square)), {0, 0}, 1, 5, false));
  CHECK_FALSE(lasso_present(disagreement_set(g, marked_pair(g, square)), {0, 0}, 1, 5, true));

  std::vector<Vertex> broken = with_arm;
  broken.erase(std::find(broken.begin(), broken.end(), Vertex{-2, 0}));
  CHECK_FALSE(lasso_present(disagreement_set(g, marked_pair(g, broken)), {0, 0}, 1, 5, true));
  // Diamond rings are not joined by nearest-neighbour steps.
  CHECK_FALSE(lasso_present(disagreement_set(g, marked_pair(g, ring(3))), {0, 0}, 1, 5, false));
}

TEST_CASE("rectangles rasterise and rotate") {
  const auto v = rasterize({0.0, 0.0, 4.0, 2.0});
  CHECK(v.size() == 8);
  const auto rs = rotated_rectangles(0.0, 0.0, 6.0, 2.0);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].x1 - rs[0].x0 == doctest::Approx(6.0));
  CHECK(rs[1].y1 - rs[1].y0 == doctest::Approx(6.0));
}

TEST_CASE("rectangle crossing uses the boundary cluster") {
  const ExtendedGraph g(Region::box({0, 0}, 4));
  std::vector<Vertex> row;
  for (int x = -4; x <= 4; ++x) row.push_back({x, 0});
  const auto geom = disagreement_set(g, marked_pair(g, row));
  CHECK(rectangle_crossing(geom, {-2.0, -0.5, 2.0, 0.5}));
  CHECK_FALSE(rectangle_crossing(geom, {-0.5, -2.0, 0.5, 2.0}));
}

TEST_CASE("moment accumulator merges in any grouping") {
  MomentAccumulator all, a, b, c;
  for (int i = 0; i < 30; ++i) {
    const double x = i * 0.37 - 2;
    all.add(x);
    (i < 10 ? a : i < 20 ? b : c).add(x);
  }
  MomentAccumulator left = a;
  left.merge(b);
  left.merge(c);
  MomentAccumulator right = b;
  right.merge(c);
  MomentAccumulator right2 = a;
  right2.merge(right);
  CHECK(left.result().mean == doctest::Approx(all.result().mean));
  CHECK(right2.result().std_error == doctest::Approx(all.result().std_error));
  CHECK(left.result().n == 30);
}

TEST_CASE("boundary cluster count") {
  const Region outer = Region::box({0, 0}, 2);
  const ExtendedGraph g(outer);
  const Region inner = Region::box({0, 0}, 1);
  const auto geom = disagreement_set(g, marked_pair(g, {{0, 0}, {1, 0}, {2, 0}, {0, -1}}));
  CHECK(boundary_cluster_count(geom, inner) == 3);
  const auto island = disagreement_set(g, marked_pair(g, {{0, 0}, {1, 0}}));
  CHECK(boundary_cluster_count(island, inner) == 0);
}
