#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rfim/disagreement.hpp"
#include "rfim/exact.hpp"
#include "rfim/lattice.hpp"
#include "rfim/model.hpp"
#include "rfim/rng.hpp"

namespace rfim {

enum class QuadratureRule { Trapezoid, Simpson };

struct QuadratureSpec {
  /// 0 selects the default radius, see default_t_max.
  double t_max = 0.0;
  int n_points = 801;
  QuadratureRule rule = QuadratureRule::Simpson;

  /// Throws std::invalid_argument unless n_points >= 3 (odd for Simpson)
  /// and t_max >= 0.
  void validate() const;
};

/// Radius beyond which the tilt dominates every local field in the inner
/// region by a margin of 20 / (beta eps):
/// max |eta_inner| + (|h| + 4J) / eps + 20 / (beta eps).
double default_t_max(const Region& inner, const CouplingParams& p, const FieldRealization& f);

/// Composite rule over equally spaced samples y on [a, b].
double integrate_samples(std::span<const double> y, double a, double b, QuadratureRule rule);

struct IntegralEstimate {
  double value = 0.0;
  /// Estimated mass beyond +-t_max from the geometric decay of the last nodes.
  double truncation_bound = 0.0;
  /// Richardson estimate of the discretisation error (0 when unavailable).
  double discretization_error = 0.0;
  double t_max = 0.0;
  int n_points = 0;
};

/// 2 eps * integral of D(eta tilted by t on inner) over [-t_max, t_max],
/// with D evaluated exactly at every node.
IntegralEstimate surface_tension_integral(const Region& inner, const Region& outer,
                                          const CouplingParams& p, const FieldRealization& f,
                                          const QuadratureSpec& q = {},
                                          const EnumerationLimits& lim = {});

/// Two-sided standard Gaussian tail 2 * (1 - Phi(t)); throws for t < 0.
double chi(double t);

struct AntiConcentrationReport {
  std::size_t replicas = 0;
  double lhs = 0.0;
  double lhs_std_error = 0.0;
  double mean_T = 0.0;
  double mean_T_std_error = 0.0;
  double mean_D = 0.0;
  double mean_D_std_error = 0.0;
  double argument = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// Summary of per-replica exact (T, D) values for a fixed geometry.
AntiConcentrationReport anti_concentration_from_samples(std::span<const double> T,
                                                        std::span<const double> D, double eps,
                                                        std::size_t inner_size);

/// Draws `replicas` Gaussian fields on `outer` (stream Field of replica i)
/// and evaluates T and D exactly for each.
AntiConcentrationReport anti_concentration_check(const Region& inner, const Region& outer,
                                                 const CouplingParams& p, std::size_t replicas,
                                                 std::uint64_t seed,
                                                 const EnumerationLimits& lim = {});

/// argmax over 0 <= j <= k of p_j (j+1)^{1+gamma}, smallest index on ties.
/// Throws std::invalid_argument unless p is non-increasing in [0,1] with
/// length >= k + 1 and gamma in (0, 1].
int regular_stretch(std::span<const double> p, double gamma, int k);

/// Checks p_n <= p_j <= p_n ((n+1)/(j+1))^{1+gamma} for all j <= n and
/// (k+1) p_k^{1/(1+gamma)} - 1 <= n <= k.
bool regular_stretch_holds(std::span<const double> p, double gamma, int k, int n);

struct DecayPoint {
  double L = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
};

struct DecayFit {
  double C = 0.0;
  double c = 0.0;
  double rate_std_error = 0.0;
  double r2 = 0.0;
  double max_L = 0.0;
  std::size_t points_used = 0;
  std::size_t dropped = 0;

  /// C e^{-c L}; throws std::domain_error for L beyond max_L.
  double predict(double L) const;
};

/// Weighted least squares of log estimate against L with weights
/// (estimate / std_error)^2 (unit weights when any std_error is zero).
/// Nonpositive estimates are dropped; throws std::invalid_argument when
/// fewer than three remain.
DecayFit fit_exponential(std::span<const DecayPoint> points);

/// Linear-interpolation quantile of unsorted data; q in [0, 1].
double quantile(std::vector<double> values, double q);

struct TortuositySummary {
  int scale = 0;
  std::size_t samples = 0;
  double crossing_probability = 0.0;
  /// Quantiles of shortest_length / scale over crossed samples at the
  /// levels of kTortuosityLevels; empty when nothing crossed.
  std::vector<double> normalized_quantiles;
  /// Same quantiles of shortest_length itself.
  std::vector<double> length_quantiles;
};

inline constexpr double kTortuosityLevels[] = {0.1, 0.25, 0.5, 0.75, 0.9};

TortuositySummary tortuosity_summary(std::span<const CrossingReport> reports, int scale);

struct ExponentFit {
  double exponent = 0.0;
  double std_error = 0.0;
  std::size_t scales = 0;
};

/// Slope of log(quantile of shortest_length) against log(scale) across
/// scales, at the given entry of kTortuosityLevels.  Empty when fewer than
/// two scales have crossings.
std::optional<ExponentFit> tortuosity_exponent(std::span<const TortuositySummary> summaries,
                                               std::size_t level_index = 0);

}  // namespace rfim
