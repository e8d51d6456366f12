#include <doctest.h>

#include "oracle.hpp"
#include "rfim/exploration.hpp"
#include "rfim/sampler.hpp"

using namespace rfim;

namespace {

/// Whether D minus S still joins the ball of radius k to the outer layer.
bool leaks(const DisagreementGeometry& geom, const std::vector<SiteId>& S, Vertex center, int k, int outer) {
  const ExtendedGraph& g = geom.graph();
  std::vector<char> in = geom.membership();
  for (SiteId s : S) in[static_cast<std::size_t>(s)] = 0;
  const auto comp = oracle::components(g.region(), in);
  std::vector<int> inside, far;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const int d = distance(center, g.region().vertex(v));
    if (d <= k) inside.push_back(v);
    if (d == outer) far.push_back(v);
  }
  return oracle::joined(comp, inside, far);
}

}  // namespace

TEST_CASE("exploration of a straight arm") {
  const Region r = Region::box({0, 0}, 4);
  const ExtendedGraph g(r);
  PairSample s;
  s.plus.sigma.assign(r.size(), 1);
  s.minus.sigma.assign(r.size(), 1);
  s.plus.kappa.assign(r.edges().size(), 0);
  s.minus.kappa.assign(r.edges().size(), 0);
  for (int x = 2; x <= 4; ++x) s.minus.sigma[*r.index_of({x, 0})] = -1;
  for (int x = 2; x < 4; ++x) {
    const int e = *r.edge_between(*r.index_of({x, 0}), *r.index_of({x + 1, 0}));
    s.plus.kappa[e] = 1;
    s.minus.kappa[e] = -1;
  }
  const auto geom = disagreement_set(g, s);
  const auto res = explore_nonanticipatory(geom, {0, 0}, 1, 4);
  REQUIRE(res.counts.size() >= 3);
  CHECK(res.counts[0] == 1);
  CHECK(res.counts[1] == 1);
  CHECK(res.counts[2] == 0);
  CHECK(res.counts.back() == 0);
  CHECK(res.nested);
  CHECK(good_sets_hold(g, s.plus, s.minus, res));
  for (const auto& S : res.sets) CHECK_FALSE(leaks(geom, S, {0, 0}, 1, 4));
  CHECK_THROWS_AS(explore_nonanticipatory(geom, {0, 0}, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(explore_nonanticipatory(geom, {0, 0}, 1, 5), std::invalid_argument);
}

TEST_CASE("backward sets grow with the separating set") {
  const Region r = Region::box({0, 0}, 3);
  const ExtendedGraph g(r);
  std::vector<SiteId> ring2, ring3;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const int d = distance({0, 0}, r.vertex(v));
    if (d == 2) ring2.push_back(v);
    if (d == 3) ring3.push_back(v);
  }
  const auto b2 = backward_set(g, ring2, {0, 0}, 3);
  const auto b3 = backward_set(g, ring3, {0, 0}, 3);
  for (int v = 0; v < g.num_vertices(); ++v) {
    const int d = distance({0, 0}, r.vertex(v));
    CHECK(static_cast<bool>(b2[v]) == (d >= 2));
    CHECK(static_cast<bool>(b3[v]) == (d == 3));
    if (b3[v]) CHECK(b2[v]);
  }
}

TEST_CASE("exploration sets on sampled pairs separate, nest and carry zero mid-edges") {
  const Region r = Region::box({0, 0}, 4);
  const ExtendedGraph g(r);
  const auto bd = internal_boundary(r);
  const CouplingParams p{1.0, 1.0, 0.0, 1.0};
  for (std::uint64_t i = 0; i < 60; ++i) {
    const RandomSource base(77, i);
    const auto f = gaussian_field(r, base.child(Stream::Field));
    const PairSample s = sample_pair(g, p, f, bd, SamplerMode::Cftp, base);
    const auto geom = disagreement_set(g, s);
    const auto res = explore_nonanticipatory(geom, {0, 0}, 1, 4);
    CHECK(res.nested);
    CHECK(good_sets_hold(g, s.plus, s.minus, res));
    for (const auto& S : res.sets) REQUIRE_FALSE(leaks(geom, S, {0, 0}, 1, 4));
  }
}
