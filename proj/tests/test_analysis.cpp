#include <doctest.h>

#include <cmath>
#include <random>

#include "rfim/analysis.hpp"
#include "rfim/sampler.hpp"

using namespace rfim;

TEST_CASE("quadrature rules integrate low-degree polynomials exactly") {
  std::vector<double> y;
  const int n = 11;
  for (int i = 0; i < n; ++i) {
    const double x = -1.0 + 3.0 * i / (n - 1);
    y.push_back(x * x * x - 2 * x + 1);
  }
  // integral of x^3 - 2x + 1 over [-1, 2] = 15/4 - 3 + 3
  CHECK(integrate_samples(y, -1.0, 2.0, QuadratureRule::Simpson) == doctest::Approx(3.75).epsilon(1e-13));
  std::vector<double> lin;
  for (int i = 0; i < 4; ++i) lin.push_back(2.0 * i);
  CHECK(integrate_samples(lin, 0.0, 3.0, QuadratureRule::Trapezoid) == doctest::Approx(9.0));
  CHECK_THROWS_AS(integrate_samples(lin, 0.0, 3.0, QuadratureRule::Simpson), std::invalid_argument);
}

TEST_CASE("quadrature settings validation") {
  QuadratureSpec q;
  CHECK_NOTHROW(q.validate());
  q.n_points = 800;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  q.rule = QuadratureRule::Trapezoid;
  CHECK_NOTHROW(q.validate());
  q.t_max = -1;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
}

TEST_CASE("chi is the two-sided normal tail") {
  CHECK(chi(0.0) == doctest::Approx(1.0));
  CHECK(chi(1.959963984540054) == doctest::Approx(0.05).epsilon(1e-10));
  CHECK(chi(1.0) == doctest::Approx(0.31731050786291415).epsilon(1e-12));
  CHECK_THROWS_AS(chi(-0.1), std::invalid_argument);
}

TEST_CASE("integral form of the surface tension matches the exact ratio") {
  const Region inner = Region::box({0, 0}, 0);
  const Region outer = Region::box({0, 0}, 2);
  const CouplingParams p{1.0, 1.0, 0.0, 2.0};
  for (std::uint64_t i = 0; i < 3; ++i) {
    const auto f = gaussian_field(outer, RandomSource(55, i).child(Stream::Field));
    const double exact = surface_tension_exact(inner, outer, p, f);
    const auto est = surface_tension_integral(inner, outer, p, f);
    CHECK(std::abs(est.value - exact) <= 1e-4);
    CHECK(std::abs(est.value - exact) <= est.truncation_bound + est.discretization_error + 1e-9);
    CHECK(est.t_max == doctest::Approx(default_t_max(inner, p, f)));
  }
  const auto f = gaussian_field(outer, RandomSource(1));
  CouplingParams zero = p;
  zero.eps = 0.0;
  CHECK(surface_tension_integral(inner, outer, zero, f).value == 0.0);
}

namespace {

/// Brute-force check of both selector properties for every candidate.
bool verified(const std::vector<double>& p, double gamma, int k, int n) {
  for (int j = 0; j <= n; ++j) {
    if (p[n] > p[j]) return false;
    if (p[j] > p[n] * std::pow((n + 1.0) / (j + 1.0), 1.0 + gamma) * (1 + 1e-12)) return false;
  }
  return (k + 1.0) * std::pow(p[k], 1.0 / (1.0 + gamma)) - 1.0 <= n + 1e-12 * (k + 1);
}

std::vector<double> random_monotone(std::mt19937_64& eng, int len) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(static_cast<std::size_t>(len));
  double cur = u(eng) < 0.2 ? 1.0 : u(eng);
  for (auto& x : p) {
    const double r = u(eng);
    if (r < 0.3) cur *= u(eng);
    else if (r < 0.35) cur = 0.0;
    x = cur;
  }
  return p;
}

}  // namespace

TEST_CASE("regular stretch selector satisfies both inequalities") {
  std::mt19937_64 eng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int len = 1 + static_cast<int>(eng() % 200);
    const auto p = random_monotone(eng, len);
    const int k = static_cast<int>(eng() % static_cast<unsigned>(len));
    for (double gamma : {0.05, 0.5, 1.0}) {
      const int n = regular_stretch(p, gamma, k);
      REQUIRE(n >= 0);
      REQUIRE(n <= k);
      REQUIRE(verified(p, gamma, k, n));
      REQUIRE(regular_stretch_holds(p, gamma, k, n));
    }
  }
  const std::vector<double> up{0.1, 0.5};
  CHECK_THROWS_AS(regular_stretch(up, 0.5, 1), std::invalid_argument);
  const std::vector<double> ok{1.0, 0.5};
  CHECK_THROWS_AS(regular_stretch(ok, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(regular_stretch(ok, 0.5, 2), std::invalid_argument);
}

TEST_CASE("exponential fit recovers exact parameters") {
  std::vector<DecayPoint> pts;
  for (double L : {2.0, 4.0, 8.0, 12.0}) pts.push_back({L, 0.8 * std::exp(-0.3 * L), 0.01 * std::exp(-0.3 * L)});
  const DecayFit fit = fit_exponential(pts);
  CHECK(fit.c == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(fit.C == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(fit.r2 == doctest::Approx(1.0));
  CHECK(fit.points_used == 4);
  CHECK(fit.rate_std_error > 0.0);
  CHECK(fit.predict(12.0) == doctest::Approx(0.8 * std::exp(-3.6)));
  CHECK_THROWS_AS(fit.predict(13.0), std::domain_error);

  pts.push_back({16.0, 0.0, 0.0});
  const DecayFit dropped = fit_exponential(pts);
  CHECK(dropped.dropped == 1);
  CHECK(dropped.max_L == 12.0);
  const std::vector<DecayPoint> few{{1, 0.5, 0.1}, {2, 0.0, 0.0}, {3, 0.1, 0.01}};
  CHECK_THROWS_AS(fit_exponential(few), std::invalid_argument);
}

TEST_CASE("exponential fit matches closed-form weighted least squares") {
  const std::vector<DecayPoint> pts{{1, 0.6, 0.05}, {2, 0.35, 0.04}, {3, 0.22, 0.03}, {5, 0.07, 0.02}};
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    const double w = (p.estimate / p.std_error) * (p.estimate / p.std_error);
    const double y = std::log(p.estimate);
    sw += w;
    sx += w * p.L;
    sy += w * y;
    sxx += w * p.L * p.L;
    sxy += w * p.L * y;
  }
  const double det = sw * sxx - sx * sx;
  const double slope = (sw * sxy - sx * sy) / det;
  const DecayFit fit = fit_exponential(pts);
  CHECK(fit.c == doctest::Approx(-slope).epsilon(1e-12));
  CHECK(fit.rate_std_error == doctest::Approx(std::sqrt(sw / det)).epsilon(1e-12));
}

TEST_CASE("quantiles interpolate linearly") {
  CHECK(quantile({3, 1, 2, 4}, 0.5) == doctest::Approx(2.5));
  CHECK(quantile({1, 2, 3, 4, 5}, 0.1) == doctest::Approx(1.4));
  CHECK(quantile({7}, 0.9) == 7);
  CHECK_THROWS_AS(quantile({}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(quantile({1}, 1.5), std::invalid_argument);
}

TEST_CASE("tortuosity summary and exponent on synthetic lengths") {
  std::vector<TortuositySummary> s;
  for (int l : {4, 8, 16, 32}) {
    std::vector<CrossingReport> reps{{false, std::nullopt}};
    for (int i = 1; i <= 9; ++i) reps.push_back({true, i * l * l});
    s.push_back(tortuosity_summary(reps, l));
    CHECK(s.back().crossing_probability == doctest::Approx(0.9));
    CHECK(s.back().samples == 10);
    CHECK(s.back().normalized_quantiles[2] == doctest::Approx(5.0 * l));
  }
  const auto fit = tortuosity_exponent(s, 2);
  REQUIRE(fit.has_value());
  CHECK(fit->exponent == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit->scales == 4);
  const std::vector<CrossingReport> none{{false, std::nullopt}};
  const std::vector<TortuositySummary> one{tortuosity_summary(none, 4)};
  CHECK_FALSE(tortuosity_exponent(one).has_value());
}
