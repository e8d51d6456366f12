#include "rfim/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rfim/sampler.hpp"

namespace rfim {

void QuadratureSpec::validate() const {
  if (n_points < 3) throw std::invalid_argument("quadrature needs at least 3 points");
  if (rule == QuadratureRule::Simpson && n_points % 2 == 0) {
    throw std::invalid_argument("Simpson quadrature needs an odd number of points");
  }
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be >= 0");
}

double default_t_max(const Region& inner, const CouplingParams& p, const FieldRealization& f) {
  double eta = 0.0;
  for (const Vertex& v : inner.vertices()) eta = std::max(eta, std::abs(f.at(v)));
  return eta + (std::abs(p.h) + 4.0 * p.J) / p.eps + 20.0 / (p.beta * p.eps);
}

double integrate_samples(std::span<const double> y, double a, double b, QuadratureRule rule) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  const double h = (b - a) / static_cast<double>(n - 1);
  if (rule == QuadratureRule::Trapezoid) {
    double s = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < n; ++i) s += y[i];
    return h * s;
  }
  if (n % 2 == 0) throw std::invalid_argument("Simpson quadrature needs an odd number of points");
  double s = y.front() + y.back();
  for (std::size_t i = 1; i + 1 < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
  return h * s / 3.0;
}

namespace {

double tail_mass(double last, double previous, double h) {
  if (last <= 0.0) return 0.0;
  if (!(previous > last)) return std::numeric_limits<double>::infinity();
  return last * h / (1.0 - last / previous);
}

}  // namespace

IntegralEstimate surface_tension_integral(const Region& inner, const Region& outer,
                                          const CouplingParams& p, const FieldRealization& f,
                                          const QuadratureSpec& q, const EnumerationLimits& lim) {
  q.validate();
  IntegralEstimate out;
  out.n_points = q.n_points;
  if (p.eps == 0.0) return out;
  const double T = q.t_max > 0.0 ? q.t_max : default_t_max(inner, p, f);
  out.t_max = T;
  const auto n = static_cast<std::size_t>(q.n_points);
  const double h = 2.0 * T / static_cast<double>(n - 1);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -T + h * static_cast<double>(i);
    y[i] = 2.0 * p.eps * disagreement_count_means(inner, outer, p, tilt_field(f, inner, t), lim);
  }
  out.value = integrate_samples(y, -T, T, q.rule);
  out.truncation_bound = tail_mass(y[0], y[1], h) + tail_mass(y[n - 1], y[n - 2], h);

  const bool coarse_ok = q.rule == QuadratureRule::Simpson ? (n - 1) % 4 == 0 : (n - 1) % 2 == 0;
  if (coarse_ok) {
    std::vector<double> coarse;
    for (std::size_t i = 0; i < n; i += 2) coarse.push_back(y[i]);
    const double order_gain = q.rule == QuadratureRule::Simpson ? 15.0 : 3.0;
    out.discretization_error = std::abs(out.value - integrate_samples(coarse, -T, T, q.rule)) / order_gain;
  }
  return out;
}

double chi(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("chi is defined for t >= 0");
  return std::erfc(t / std::sqrt(2.0));
}

namespace {

void mean_and_error(std::span<const double> x, double& mean, double& err) {
  const double n = static_cast<double>(x.size());
  mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  err = x.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
}

}  // namespace

AntiConcentrationReport anti_concentration_from_samples(std::span<const double> T,
                                                        std::span<const double> D, double eps,
                                                        std::size_t inner_size) {
  if (T.size() != D.size() || T.empty()) throw std::invalid_argument("need matching nonempty samples");
  AntiConcentrationReport r;
  r.replicas = T.size();
  mean_and_error(T, r.mean_T, r.mean_T_std_error);
  mean_and_error(D, r.mean_D, r.mean_D_std_error);
  std::size_t below = 0;
  for (double d : D) below += d < 0.5 * r.mean_D ? 1 : 0;
  const double n = static_cast<double>(r.replicas);
  r.lhs = static_cast<double>(below) / n;
  r.lhs_std_error = std::sqrt(r.lhs * (1.0 - r.lhs) / n);
  const double size = static_cast<double>(inner_size);
  r.argument = (1.0 / (2.0 * eps)) * (r.mean_T / std::sqrt(size)) * (size / r.mean_D);
  r.rhs = chi(std::max(0.0, r.argument));
  r.pass = r.lhs >= r.rhs - 4.0 * r.lhs_std_error;
  return r;
}

AntiConcentrationReport anti_concentration_check(const Region& inner, const Region& outer,
                                                 const CouplingParams& p, std::size_t replicas,
                                                 std::uint64_t seed, const EnumerationLimits& lim) {
  std::vector<double> T(replicas);
  std::vector<double> D(replicas);
  for (std::size_t i = 0; i < replicas; ++i) {
    const FieldRealization f = gaussian_field(outer, RandomSource(seed, i).child(Stream::Field));
    T[i] = surface_tension_exact(inner, outer, p, f, lim);
    D[i] = disagreement_count_means(inner, outer, p, f, lim);
  }
  return anti_concentration_from_samples(T, D, p.eps, inner.size());
}

int regular_stretch(std::span<const double> p, double gamma, int k) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
  if (k < 0 || p.size() < static_cast<std::size_t>(k) + 1) {
    throw std::invalid_argument("sequence shorter than k + 1");
  }
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!(p[j] >= 0.0 && p[j] <= 1.0)) throw std::invalid_argument("values must lie in [0, 1]");
    if (j > 0 && p[j] > p[j - 1]) throw std::invalid_argument("sequence must be non-increasing");
  }
  int best = 0;
  double best_score = -1.0;
  for (int j = 0; j <= k; ++j) {
    const double score = p[static_cast<std::size_t>(j)] * std::pow(j + 1.0, 1.0 + gamma);
    if (score > best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

bool regular_stretch_holds(std::span<const double> p, double gamma, int k, int n) {
  constexpr double tol = 1e-12;
  if (n < 0 || n > k || p.size() < static_cast<std::size_t>(k) + 1) return false;
  const double pn = p[static_cast<std::size_t>(n)];
  for (int j = 0; j <= n; ++j) {
    const double pj = p[static_cast<std::size_t>(j)];
    if (pn > pj) return false;
    if (pj > pn * std::pow((n + 1.0) / (j + 1.0), 1.0 + gamma) * (1.0 + tol)) return false;
  }
  const double lower = (k + 1.0) * std::pow(p[static_cast<std::size_t>(k)], 1.0 / (1.0 + gamma)) - 1.0;
  return lower <= n + tol * (k + 1.0);
}

double DecayFit::predict(double L) const {
  if (L > max_L) throw std::domain_error("refusing to extrapolate beyond the largest fitted L");
  return C * std::exp(-c * L);
}

DecayFit fit_exponential(std::span<const DecayPoint> points) {
  std::vector<DecayPoint> kept;
  DecayFit fit;
  for (const DecayPoint& pt : points) {
    if (pt.estimate > 0.0 && std::isfinite(pt.estimate)) {
      kept.push_back(pt);
    } else {
      ++fit.dropped;
    }
  }
  if (kept.size() < 3) throw std::invalid_argument("fit_exponential needs at least 3 positive estimates");
  const auto n = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd y(n);
  Eigen::VectorXd w(n);
  bool known_errors = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    const DecayPoint& pt = kept[static_cast<std::size_t>(i)];
    X(i, 0) = 1.0;
    X(i, 1) = pt.L;
    y(i) = std::log(pt.estimate);
    known_errors = known_errors && pt.std_error > 0.0;
    fit.max_L = std::max(fit.max_L, pt.L);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const DecayPoint& pt = kept[static_cast<std::size_t>(i)];
    w(i) = known_errors ? (pt.estimate / pt.std_error) * (pt.estimate / pt.std_error) : 1.0;
  }
  const Eigen::MatrixXd XtW = X.transpose() * w.asDiagonal();
  const Eigen::Matrix2d normal = XtW * X;
  const Eigen::Vector2d beta = normal.ldlt().solve(XtW * y);
  const Eigen::VectorXd resid = y - X * beta;
  const double rss = resid.dot(w.asDiagonal() * resid);
  const double ybar = w.dot(y) / w.sum();
  const Eigen::VectorXd centered = y.array() - ybar;
  const double tss = centered.dot(w.asDiagonal() * centered);

  Eigen::Matrix2d cov = normal.inverse();
  if (!known_errors) cov *= n > 2 ? rss / static_cast<double>(n - 2) : 0.0;
  fit.C = std::exp(beta(0));
  fit.c = -beta(1);
  fit.rate_std_error = std::sqrt(std::max(0.0, cov(1, 1)));
  fit.r2 = tss > 0.0 ? 1.0 - rss / tss : 0.0;
  fit.points_used = kept.size();
  return fit;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of empty data");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

TortuositySummary tortuosity_summary(std::span<const CrossingReport> reports, int scale) {
  TortuositySummary s;
  s.scale = scale;
  s.samples = reports.size();
  std::vector<double> lengths;
  for (const CrossingReport& r : reports)
    if (r.crossed && r.shortest_length) lengths.push_back(*r.shortest_length);
  if (!reports.empty()) s.crossing_probability = static_cast<double>(lengths.size()) / static_cast<double>(reports.size());
  if (lengths.empty()) return s;
  for (double level : kTortuosityLevels) {
    const double qv = quantile(lengths, level);
    s.length_quantiles.push_back(qv);
    s.normalized_quantiles.push_back(qv / scale);
  }
  return s;
}

std::optional<ExponentFit> tortuosity_exponent(std::span<const TortuositySummary> summaries,
                                               std::size_t level_index) {
  std::vector<double> x;
  std::vector<double> y;
  for (const TortuositySummary& s : summaries) {
    if (s.scale <= 0 || s.length_quantiles.size() <= level_index) continue;
    const double qv = s.length_quantiles[level_index];
    if (!(qv > 0.0)) continue;
    x.push_back(std::log(static_cast<double>(s.scale)));
    y.push_back(std::log(qv));
  }
  if (x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  ExponentFit fit;
  fit.exponent = sxy / sxx;
  fit.scales = x.size();
  if (x.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - my - fit.exponent * (x[i] - mx);
      rss += r * r;
    }
    fit.std_error = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return fit;
}

}  // namespace rfim
