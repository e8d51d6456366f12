#include <doctest.h>

#include <algorithm>
#include <set>

#include "rfim/lattice.hpp"
#include "rfim/region_io.hpp"

using namespace rfim;

TEST_CASE("box sizes follow 2L^2 + 2L + 1") {
  for (int L = 0; L <= 6; ++L) CHECK(Region::box({3, -2}, L).size() == static_cast<std::size_t>(2 * L * L + 2 * L + 1));
}

TEST_CASE("annulus holds the shells between its radii") {
  const Region a = Region::annulus({0, 0}, 2, 4);
  CHECK(a.size() == static_cast<std::size_t>(4 * 3 + 4 * 4));
  for (Vertex v : a.vertices()) {
    CHECK(distance({0, 0}, v) > 2);
    CHECK(distance({0, 0}, v) <= 4);
  }
  CHECK_THROWS_AS(Region::annulus({0, 0}, 3, 3), std::invalid_argument);
}

TEST_CASE("edges are exactly the nearest-neighbour pairs") {
  const Region r = Region::block(0, 0, 3, 2);
  std::size_t expected = 0;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j)
      if (distance(r.vertices()[i], r.vertices()[j]) == 1) ++expected;
  CHECK(r.edges().size() == expected);
  CHECK(expected == 3 * 3 + 4 * 2);
  for (const Edge& e : r.edges()) CHECK(e.a < e.b);
  CHECK(std::is_sorted(r.vertices().begin(), r.vertices().end()));
}

TEST_CASE("internal boundary of a box is its outer shell") {
  const Region b = Region::box({0, 0}, 2);
  const auto bd = internal_boundary(b);
  CHECK(bd.size() == 8);
  for (Vertex v : bd) CHECK(distance({0, 0}, v) == 2);
  const Region inner = Region::box({0, 0}, 1);
  const auto rel = internal_boundary(inner, b);
  CHECK(rel.size() == 4);
}

TEST_CASE("set operations") {
  const Region a = Region::box({0, 0}, 1);
  const Region b = Region::block(1, 0, 2, 0);
  CHECK(region_union(a, b).size() == 6);
  CHECK(region_difference(a, b).size() == 4);
  CHECK(a.contains(Region::box({0, 0}, 0)));
  CHECK_FALSE(a.contains(b));
}

TEST_CASE("extended graph alternates vertices and mid-edges") {
  const ExtendedGraph g(Region::box({0, 0}, 2));
  CHECK(g.num_sites() == g.num_vertices() + g.num_edges());
  for (SiteId s = 0; s < g.num_sites(); ++s) {
    for (SiteId n : g.neighbors(s)) CHECK(g.is_vertex(n) != g.is_vertex(s));
    if (g.is_midedge(s)) CHECK(g.neighbors(s).size() == 2);
  }
  CHECK(g.num_adjacencies() == static_cast<std::size_t>(2 * g.num_edges()));
}

TEST_CASE("boundary specs and allowed constraints") {
  const Region r = Region::block(0, 0, 1, 0);
  const ExtendedGraph g(r);
  BoundarySpec bc;
  bc.set(0, 1);
  bc.set(1, -1);
  CHECK(is_allowed(g, bc));
  bc.set(g.midedge(0), 1);
  CHECK_FALSE(is_allowed(g, bc));

  BoundarySpec ok;
  ok.set(g.midedge(0), -1);
  CHECK(is_allowed(g, ok));
  CHECK_FALSE(ok.vertex_only(g));
  const auto dense = ok.dense(g.num_sites());
  CHECK(dense[0] == BoundarySpec::kFree);
  CHECK(dense[2] == -1);
}

TEST_CASE("region descriptions round trip") {
  const Region regions[] = {Region::box({1, 2}, 3), Region::annulus({0, 0}, 1, 3), Region::block(0, 0, 2, 1)};
  for (const Region& r : regions) CHECK(region_from_json(region_to_json(r)) == r);
  CHECK_THROWS(region_from_json(nlohmann::json{{"kind", "hexagon"}}));
}
