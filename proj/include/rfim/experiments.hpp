#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "rfim/analysis.hpp"
#include "rfim/identities.hpp"
#include "rfim/lattice.hpp"
#include "rfim/model.hpp"
#include "rfim/sampler.hpp"

namespace rfim {

/// Everything a run depends on; the manifest records it verbatim.
struct ExperimentConfig {
  std::string command;
  CouplingParams params{1.0, 1.0, 0.0, 4.0};
  std::uint64_t seed = 1;
  std::size_t replicas = 1000;
  unsigned workers = 1;
  std::string out_dir = "out";
  SamplerMode mode = SamplerMode::Cftp;
  /// Glauber sweeps; 0 selects 100 |V|.
  std::size_t sweeps = 0;

  std::vector<int> L_list{0, 1, 2, 4, 8};
  std::vector<int> l_list{2, 4, 8};

  Region inner = Region::box({0, 0}, 0);
  Region outer = Region::box({0, 0}, 2);
  QuadratureSpec quadrature;

  int max_vertices = 10;
  double tolerance = 1e-10;
  std::size_t instances = 200;
  bool mutate_lambda = false;

  /// Input table for `fit`.
  std::string input;
};

nlohmann::json to_json(const ExperimentConfig& c);
/// Applies the keys present in j on top of base.  Accepts a manifest too
/// (its "config" member is used).  Throws std::invalid_argument on bad values.
ExperimentConfig merge_config(const ExperimentConfig& base, const nlohmann::json& j);

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string format_double(double x);

/// Runs fn(i) for i in [0, n) on `workers` threads; results land at index i.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned workers, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

struct MLRow {
  int L = 0;
  double m = 0.0;
  double std_error = 0.0;
  std::size_t replicas = 0;
};

/// Per replica: one field on Lambda(max L) shared by every L, and an
/// independent +/- pair per L.
std::vector<MLRow> run_mL(const ExperimentConfig& c);

struct TortuosityRow {
  TortuositySummary summary;
  double crossing_std_error = 0.0;
  double lasso_frequency = 0.0;
};

/// Per scale l: pairs on the annulus l < d <= 2l with +/- on both rings;
/// disagreement crossing and boundary-cluster lasso within it.
std::vector<TortuosityRow> run_tortuosity(const ExperimentConfig& c);

struct SurfaceTensionRow {
  std::size_t replica = 0;
  double T_exact = 0.0;
  double T_integral = 0.0;
  double bound = 0.0;
  double D = 0.0;
  double eta_hat = 0.0;
};

struct SurfaceTensionRun {
  std::vector<SurfaceTensionRow> rows;
  AntiConcentrationReport anti_concentration;
  std::size_t within_bound = 0;
};

SurfaceTensionRun run_surface_tension(const ExperimentConfig& c);

/// Reads (L, m, std_error) columns from a results table.
std::vector<DecayPoint> read_decay_points(const std::string& path);

/// Full command: writes manifest.json (before and after), results.csv and
/// summary.json under c.out_dir.  Returns the process exit code.
int run_command(const ExperimentConfig& c);

}  // namespace rfim
