#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "rfim/exact.hpp"
#include "rfim/pair_exact.hpp"

using namespace rfim;

namespace {

std::vector<double> normals(std::size_t n, unsigned seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> out(n);
  for (auto& x : out) x = nd(eng);
  return out;
}

double component_count(const DisagreementGeometry& geom) { return geom.num_components(); }

double sites_in_D(const DisagreementGeometry& geom) { return static_cast<double>(geom.sites().size()); }

}  // namespace

TEST_CASE("connection probability matches the brute pair oracle") {
  const Region r = Region::block(0, 0, 1, 1);
  const ExtendedGraph g(r);
  const CouplingParams p{0.9, 1.0, 0.1, 1.2};
  const auto eta = normals(r.size(), 21);
  const auto f = FieldRealization::from_values(r, eta);
  const std::vector<Vertex> pinned{{0, 0}};
  const auto bp = BoundarySpec::uniform(r, pinned, 1);
  const auto bm = BoundarySpec::uniform(r, pinned, -1);
  const auto plus = oracle::extended(r, p, eta, oracle::fix(r, pinned, 1));
  const auto minus = oracle::extended(r, p, eta, oracle::fix(r, pinned, -1));
  const int src = *r.index_of({0, 0});
  const int dst = *r.index_of({1, 1});
  const double ref = oracle::pair_expectation(plus, minus, r, [&](const std::vector<int>& comp) {
    return oracle::joined(comp, {src}, {dst}) ? 1.0 : 0.0;
  });
  const SiteId s[] = {src};
  const SiteId t[] = {dst};
  for (PairEngine e : {PairEngine::Brute, PairEngine::Factored, PairEngine::Auto}) {
    CHECK(pair_connection_probability_exact(g, s, t, p, f, bp, bm, e) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("factored engine agrees with brute enumeration on arbitrary observables") {
  const Region r = Region::box({0, 0}, 1);
  const ExtendedGraph g(r);
  const auto bd = internal_boundary(r);
  const auto f = FieldRealization::from_values(r, normals(r.size(), 4));
  const CouplingParams p{1.1, 1.0, -0.2, 0.9};
  const auto bp = BoundarySpec::uniform(r, bd, 1);
  const auto bm = BoundarySpec::uniform(r, bd, -1);
  for (auto F : {component_count, sites_in_D}) {
    const double brute = pair_expectation(g, p, f, bp, bm, F, PairEngine::Brute);
    const double fact = pair_expectation(g, p, f, bp, bm, F, PairEngine::Factored);
    CHECK(fact == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("vertex-connectivity resolution is exact for vertex connection events") {
  const Region r = Region::block(0, 0, 2, 1);
  const ExtendedGraph g(r);
  const CouplingParams p{0.8, 1.0, 0.0, 1.5};
  const auto f = FieldRealization::from_values(r, normals(r.size(), 6));
  BoundarySpec bp, bm;
  bp.set(0, 1);
  bm.set(0, -1);
  const FactoredPairMeasure m(g, p, f, bp, bm);
  const SiteId far = g.num_vertices() - 1;
  auto event = [&](const DisagreementGeometry& geom) {
    const SiteId a[] = {0};
    const SiteId b[] = {far};
    return connected(geom, a, b) ? 1.0 : 0.0;
  };
  auto count = [&](const DisagreementGeometry& geom) {
    const SiteId a[] = {0};
    double n = 0;
    for (SiteId s : cluster_of(geom, a))
      if (g.is_vertex(s)) n += 1;
    return n;
  };
  for (const auto& F : {std::function<double(const DisagreementGeometry&)>(event), std::function<double(const DisagreementGeometry&)>(count)}) {
    const double full = m.expectation(F, EdgeResolution::Full);
    const double vc = m.expectation(F, EdgeResolution::VertexConnectivity);
    CHECK(vc == doctest::Approx(full).epsilon(1e-12));
  }
}

TEST_CASE("pair cap raises CapExceeded") {
  const Region r = Region::block(0, 0, 2, 1);
  const ExtendedGraph g(r);
  EnumerationLimits lim;
  lim.max_pairs = 10;
  CHECK_THROWS_AS(PairEnumeration(g, {}, FieldRealization::zeros(r), {}, {}, lim), CapExceeded);
}

TEST_CASE("enumerated extended law is normalised and respects hard constraints") {
  const Region r = Region::block(0, 0, 2, 0);
  const ExtendedGraph g(r);
  const auto ws = enumerate_extended(g, {1.0, 1.0, 0.0, 1.0}, FieldRealization::from_values(r, normals(3, 2)), {});
  double total = 0;
  for (const auto& w : ws) {
    total += std::exp(w.log_prob);
    CHECK(satisfies_hard_constraints(g, w.config));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // Each agreeing edge allows two mid-edge values, each disagreeing edge one.
  CHECK(ws.size() == 18);
}

TEST_CASE("cluster swap is an involution and respects A") {
  const Region r = Region::block(0, 0, 2, 0);
  const ExtendedGraph g(r);
  ExtendedConfig a{{1, 1, -1}, {1, 0}};
  ExtendedConfig b{{-1, 1, -1}, {0, 0}};
  const SiteId S[] = {0};
  const auto [a2, b2] = swap_clusters(g, a, b, S, {});
  CHECK(a2.sigma[0] == -1);
  CHECK(b2.sigma[0] == 1);
  CHECK(a2.kappa[0] == 0);
  CHECK(b2.kappa[0] == 1);
  const auto [a3, b3] = swap_clusters(g, a2, b2, S, {});
  CHECK(a3 == a);
  CHECK(b3 == b);
  const SiteId A[] = {g.midedge(0)};
  const auto [a4, b4] = swap_clusters(g, a, b, S, A);
  CHECK(a4 == a);
  CHECK(b4 == b);
}

TEST_CASE("boundary separation equals exp(-beta T)") {
  const Region inner = Region::box({0, 0}, 0);
  const Region outer = Region::box({0, 0}, 1);
  const CouplingParams p{0.6, 1.0, 0.3, 1.0};
  const auto f = FieldRealization::from_values(outer, normals(outer.size(), 13));
  const double T = surface_tension_exact(inner, outer, p, f);
  CHECK(boundary_separation_probability(inner, outer, p, f) == doctest::Approx(std::exp(-p.beta * T)).epsilon(1e-10));
}
