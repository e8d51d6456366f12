#include <doctest.h>

#include <cmath>
#include <set>

#include "rfim/disagreement.hpp"
#include "rfim/exact.hpp"
#include "rfim/sampler.hpp"

using namespace rfim;

TEST_CASE("random streams are deterministic and separated") {
  const RandomSource a(7, 3, 1);
  const RandomSource b(7, 3, 1);
  const RandomSource c(7, 4, 1);
  CHECK(a.key() == b.key());
  CHECK(a.key() != c.key());
  CHECK(a.child(Stream::Plus).key() != a.child(Stream::Minus).key());
  CHECK(a.uniform(5, 9) == b.uniform(5, 9));
  CHECK(a.uniform(5, 9) != a.uniform(9, 5));
  std::set<std::uint64_t> keys;
  for (std::uint64_t r = 0; r < 1000; ++r) keys.insert(RandomSource(1, r).child(Stream::Field).key());
  CHECK(keys.size() == 1000);
}

TEST_CASE("counter uniforms lie in (0,1) with the right moments") {
  const RandomSource r(11);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform(static_cast<std::uint64_t>(i), 0);
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    s += u;
    s2 += u * u;
  }
  CHECK(s / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(s2 / n - (s / n) * (s / n) == doctest::Approx(1.0 / 12).epsilon(0.02));
}

TEST_CASE("gaussian fields are standard normal and reproducible") {
  const Region r = Region::box({0, 0}, 20);
  const auto f = gaussian_field(r, RandomSource(3));
  const auto g = gaussian_field(r, RandomSource(3));
  double s = 0, s2 = 0;
  for (Vertex v : r.vertices()) {
    CHECK(f.at(v) == g.at(v));
    s += f.at(v);
    s2 += f.at(v) * f.at(v);
  }
  const double n = static_cast<double>(r.size());
  CHECK(std::abs(s / n) < 4.0 / std::sqrt(n));
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("tilt moves only the inner region") {
  const Region outer = Region::box({0, 0}, 2);
  const Region inner = Region::box({0, 0}, 0);
  const auto f = gaussian_field(outer, RandomSource(5));
  const auto t = tilt_field(f, inner, 1.5);
  for (Vertex v : outer.vertices()) CHECK(t.at(v) == doctest::Approx(f.at(v) + (inner.contains(v) ? 1.5 : 0.0)));
  CHECK(normalized_field_sum(t, inner) == doctest::Approx(f.at({0, 0}) + 1.5));
}

namespace {

struct Estimate {
  std::vector<double> mean;
  std::vector<double> se;
};

template <class Draw>
Estimate sample_means(const Region& r, int n, Draw&& draw) {
  std::vector<double> s(r.size(), 0.0), s2(r.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    const SpinConfig c = draw(i);
    for (std::size_t v = 0; v < r.size(); ++v) {
      s[v] += c[v];
      s2[v] += 1.0;
    }
  }
  Estimate e;
  for (std::size_t v = 0; v < r.size(); ++v) {
    const double m = s[v] / n;
    e.mean.push_back(m);
    e.se.push_back(std::sqrt(std::max(1e-12, 1.0 - m * m) / (n - 1)));
  }
  return e;
}

}  // namespace

TEST_CASE("coupling from the past reproduces exact one-point means") {
  const Region r = Region::box({0, 0}, 1);
  const CouplingParams p{0.8, 1.0, 0.1, 1.0};
  const auto f = gaussian_field(r, RandomSource(17));
  BoundarySpec bc;
  bc.set(*r.index_of({1, 0}), 1);
  const auto exact = one_point_means(r, p, f, bc);
  const auto est = sample_means(r, 20000, [&](int i) { return cftp_sample(r, p, f, bc, RandomSource(23, static_cast<std::uint64_t>(i))); });
  for (std::size_t v = 0; v < r.size(); ++v) CHECK(std::abs(est.mean[v] - exact[v]) <= 4 * est.se[v] + 1e-12);
}

TEST_CASE("burned-in heat bath reproduces exact one-point means") {
  const Region r = Region::block(0, 0, 1, 1);
  const CouplingParams p{0.5, 1.0, -0.3, 0.7};
  const auto f = gaussian_field(r, RandomSource(19));
  const auto exact = one_point_means(r, p, f);
  const auto est = sample_means(r, 20000, [&](int i) { return glauber_sample(r, p, f, {}, 30, RandomSource(29, static_cast<std::uint64_t>(i))); });
  for (std::size_t v = 0; v < r.size(); ++v) CHECK(std::abs(est.mean[v] - exact[v]) <= 4 * est.se[v] + 1e-12);
  CHECK_THROWS_AS(glauber_sample(r, p, f, {}, 0, RandomSource(1)), std::invalid_argument);
}

TEST_CASE("heat-bath updates preserve order between coupled chains") {
  const Region r = Region::box({0, 0}, 3);
  const CouplingParams p{1.0, 1.0, 0.0, 1.0};
  const auto f = gaussian_field(r, RandomSource(2));
  const HeatBath hb(r, p, f, {});
  SpinConfig top = hb.uniform_start(1);
  SpinConfig bottom = hb.uniform_start(-1);
  const RandomSource rng(31);
  for (std::uint64_t t = 0; t < 50; ++t) {
    hb.sweep(top, rng, t);
    hb.sweep(bottom, rng, t);
    for (std::size_t v = 0; v < r.size(); ++v) REQUIRE(top[v] >= bottom[v]);
  }
}

TEST_CASE("cftp is a deterministic function of its stream") {
  const Region r = Region::box({0, 0}, 3);
  const CouplingParams p{1.0, 1.0, 0.0, 4.0};
  const auto f = gaussian_field(r, RandomSource(2));
  CftpStats stats;
  const auto a = cftp_sample(r, p, f, {}, RandomSource(8), 24, &stats);
  const auto b = cftp_sample(r, p, f, {}, RandomSource(8));
  CHECK(a == b);
  CHECK(stats.epochs >= 1);
  CHECK(stats.horizon >= 1);
  CHECK_THROWS_AS(cftp_sample(Region::box({0, 0}, 6), {3.0, 1.0, 0.0, 0.0}, FieldRealization::zeros(Region::box({0, 0}, 6)), {}, RandomSource(1), 1),
                  CftpNonCoalescence);
}

TEST_CASE("mid-edge attachment follows the conditional law") {
  const Region r = Region::block(0, 0, 1, 0);
  const ExtendedGraph g(r);
  const CouplingParams p{0.4, 1.0, 0.0, 0.0};
  const SpinConfig agree{1, 1};
  const SpinConfig split{1, -1};
  int hits = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const auto c = attach_midedges(g, agree, p, RandomSource(3, static_cast<std::uint64_t>(i)));
    REQUIRE((c.kappa[0] == 0 || c.kappa[0] == 1));
    hits += c.kappa[0] == 1;
    CHECK(attach_midedges(g, split, p, RandomSource(3, static_cast<std::uint64_t>(i))).kappa[0] == 0);
  }
  const double q = 1.0 - std::exp(-2 * p.beta * p.J);
  CHECK(std::abs(static_cast<double>(hits) / n - q) < 4 * std::sqrt(q * (1 - q) / n));
}

TEST_CASE("sampled pairs obey boundary values and hard constraints") {
  const Region r = Region::box({0, 0}, 3);
  const ExtendedGraph g(r);
  const auto bd = internal_boundary(r);
  const CouplingParams p{1.0, 1.0, 0.0, 2.0};
  const auto f = gaussian_field(r, RandomSource(4));
  for (SamplerMode mode : {SamplerMode::Cftp, SamplerMode::Glauber}) {
    for (std::uint64_t i = 0; i < 20; ++i) {
      const PairSample s = sample_pair(g, p, f, bd, mode, RandomSource(9, i), 50);
      CHECK(satisfies_hard_constraints(g, s.plus));
      CHECK(satisfies_hard_constraints(g, s.minus));
      for (Vertex v : bd) {
        CHECK(s.plus.sigma[*r.index_of(v)] == 1);
        CHECK(s.minus.sigma[*r.index_of(v)] == -1);
      }
      CHECK(sign_coherent(disagreement_set(g, s), s.plus, s.minus));
      const PairSample again = sample_pair(g, p, f, bd, mode, RandomSource(9, i), 50);
      CHECK(again.plus == s.plus);
      CHECK(again.minus == s.minus);
    }
  }
}
