#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfim/exact.hpp"
#include "rfim/lattice.hpp"
#include "rfim/model.hpp"

namespace rfim {

struct IdentityReport {
  std::string identity;
  std::size_t instances = 0;
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::vector<std::string> notes;

  void record(double abs_error, double rel_error);
};

nlohmann::json to_json(const IdentityReport& r);

struct VerifyOptions {
  int max_vertices = 10;
  double tolerance = 1e-10;
  std::size_t instances = 200;
  std::uint64_t seed = 1;
  /// Replace lambda by 2 sinh(beta J) in the extended weights.
  bool corrupt_lambda = false;
  EnumerationLimits limits;
};

/// Connected lattice animal of `size` vertices grown from the origin.
Region random_region(int size, std::mt19937_64& eng);

/// beta in [0.2, 3], J in {0.5, 1, 2}, h in [-1, 1], eps in [0, 3].
CouplingParams random_params(std::mt19937_64& eng);

/// random_params restricted to beta * J <= 3.
CouplingParams sampling_params(std::mt19937_64& eng);

/// Extended vs plain partition function and vertex marginals.
IdentityReport check_extended_equivalence(const VerifyOptions& opt);
/// Truncated correlation and one-point differences as connection probabilities.
IdentityReport check_disagreement_representation(const VerifyOptions& opt);
/// Exact pushforward of the pair measure under the cluster swap.
IdentityReport check_swap_pushforward(const VerifyOptions& opt);
/// swap o swap = identity and hard constraints on fuzzed pairs.
IdentityReport check_swap_involution(const VerifyOptions& opt);
/// exp(-beta T) against the boundary separation probability.
IdentityReport check_partition_ratio(const VerifyOptions& opt);
/// Exact T against the tilt integral on box(0,0) in box(0,2).
IdentityReport check_surface_tension_integral(const VerifyOptions& opt);
/// T <= 16 J <|S ∩ D|> for deterministic separating sets.
IdentityReport check_separating_set_bound(const VerifyOptions& opt);
/// Same bound for exploration sets, exactly, on small annuli.
IdentityReport check_exploration_bound(const VerifyOptions& opt);

/// Exploration sets nest and carry kappa = 0 on both copies, on pairs
/// sampled by coupling from the past.
IdentityReport check_exploration_sampling(const VerifyOptions& opt);

struct RefinementRatio {
  double coarse_error = 0.0;
  double fine_error = 0.0;
  double ratio = 0.0;
};

/// Summed |T_exact - T_integral| over replicas at coarse_points and at the
/// halved step, on box(0,0) in box(0,2) with beta = J = 1, eps = 2.
RefinementRatio integral_refinement_ratio(std::size_t replicas, std::uint64_t seed,
                                          int coarse_points = 101);

/// All of the above; instances are scaled from opt.instances per check.
std::vector<IdentityReport> run_verify_suite(const VerifyOptions& opt);

}  // namespace rfim
