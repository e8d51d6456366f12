#include "rfim/experiments.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "rfim/disagreement.hpp"
#include "rfim/region_io.hpp"
#include "rfim/version.hpp"

namespace rfim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* mode_name(SamplerMode m) { return m == SamplerMode::Cftp ? "cftp" : "glauber"; }

SamplerMode parse_mode(const std::string& s) {
  if (s == "cftp") return SamplerMode::Cftp;
  if (s == "glauber") return SamplerMode::Glauber;
  throw std::invalid_argument("mode must be glauber or cftp, got '" + s + "'");
}

const char* rule_name(QuadratureRule r) { return r == QuadratureRule::Simpson ? "simpson" : "trapezoid"; }

QuadratureRule parse_rule(const std::string& s) {
  if (s == "simpson") return QuadratureRule::Simpson;
  if (s == "trapezoid") return QuadratureRule::Trapezoid;
  throw std::invalid_argument("quadrature rule must be simpson or trapezoid, got '" + s + "'");
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

double mean_std_error(double mean, std::size_t n) {
  if (n < 2) return 0.0;
  const double nd = static_cast<double>(n);
  return std::sqrt(std::max(0.0, mean * (1.0 - mean)) / (nd - 1.0));
}

}  // namespace

json to_json(const ExperimentConfig& c) {
  return json{
      {"command", c.command},
      {"params", {{"beta", c.params.beta}, {"J", c.params.J}, {"h", c.params.h}, {"eps", c.params.eps}}},
      {"seed", c.seed},
      {"replicas", c.replicas},
      {"workers", c.workers},
      {"out", c.out_dir},
      {"mode", mode_name(c.mode)},
      {"sweeps", c.sweeps},
      {"L_list", c.L_list},
      {"l_list", c.l_list},
      {"inner", region_to_json(c.inner)},
      {"outer", region_to_json(c.outer)},
      {"quadrature", {{"t_max", c.quadrature.t_max}, {"n_points", c.quadrature.n_points}, {"rule", rule_name(c.quadrature.rule)}}},
      {"verify", {{"max_vertices", c.max_vertices}, {"tolerance", c.tolerance}, {"instances", c.instances}, {"mutate_lambda", c.mutate_lambda}}},
      {"input", c.input},
  };
}

ExperimentConfig merge_config(const ExperimentConfig& base, const json& raw) {
  const json& j = raw.contains("config") && raw["config"].is_object() ? raw["config"] : raw;
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  ExperimentConfig c = base;
  try {
    if (j.contains("command")) c.command = j["command"].get<std::string>();
    const json* params = j.contains("params") ? &j["params"] : nullptr;
    for (const json* src : {params, &j}) {
      if (!src) continue;
      if (src->contains("beta")) c.params.beta = (*src)["beta"].get<double>();
      if (src->contains("J")) c.params.J = (*src)["J"].get<double>();
      if (src->contains("h")) c.params.h = (*src)["h"].get<double>();
      if (src->contains("eps")) c.params.eps = (*src)["eps"].get<double>();
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("replicas")) c.replicas = j["replicas"].get<std::size_t>();
    if (j.contains("workers")) c.workers = j["workers"].get<unsigned>();
    if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
    if (j.contains("mode")) c.mode = parse_mode(j["mode"].get<std::string>());
    if (j.contains("sweeps")) c.sweeps = j["sweeps"].get<std::size_t>();
    if (j.contains("L_list")) c.L_list = j["L_list"].get<std::vector<int>>();
    if (j.contains("l_list")) c.l_list = j["l_list"].get<std::vector<int>>();
    if (j.contains("inner")) c.inner = region_from_json(j["inner"]);
    if (j.contains("outer")) c.outer = region_from_json(j["outer"]);
    if (j.contains("quadrature")) {
      const json& q = j["quadrature"];
      if (q.contains("t_max")) c.quadrature.t_max = q["t_max"].get<double>();
      if (q.contains("n_points")) c.quadrature.n_points = q["n_points"].get<int>();
      if (q.contains("rule")) c.quadrature.rule = parse_rule(q["rule"].get<std::string>());
    }
    if (j.contains("verify")) {
      const json& v = j["verify"];
      if (v.contains("max_vertices")) c.max_vertices = v["max_vertices"].get<int>();
      if (v.contains("tolerance")) c.tolerance = v["tolerance"].get<double>();
      if (v.contains("instances")) c.instances = v["instances"].get<std::size_t>();
      if (v.contains("mutate_lambda")) c.mutate_lambda = v["mutate_lambda"].get<bool>();
    }
    if (j.contains("input")) c.input = j["input"].get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad config value: ") + e.what());
  }
  return c;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<MLRow> run_mL(const ExperimentConfig& c) {
  if (c.L_list.empty()) throw std::invalid_argument("L_list is empty");
  const Vertex center{0, 0};
  int L_max = 0;
  for (int L : c.L_list) {
    if (L < 0) throw std::invalid_argument("L must be >= 0");
    L_max = std::max(L_max, L);
  }
  const Region field_region = Region::box(center, L_max);
  std::vector<ExtendedGraph> graphs;
  std::vector<std::vector<Vertex>> boundaries;
  for (int L : c.L_list) {
    graphs.emplace_back(Region::box(center, L));
    boundaries.push_back(internal_boundary(graphs.back().region()));
  }
  const auto hits = parallel_map<std::vector<std::uint8_t>>(c.replicas, c.workers, [&](std::size_t i) {
    const RandomSource base(c.seed, i);
    const FieldRealization f = gaussian_field(field_region, base.child(Stream::Field));
    std::vector<std::uint8_t> out;
    for (std::size_t j = 0; j < graphs.size(); ++j) {
      const RandomSource stream = base.child(1000 + static_cast<std::uint64_t>(c.L_list[j]));
      const PairSample pair = sample_pair(graphs[j], c.params, f, boundaries[j], c.mode, stream, c.sweeps);
      out.push_back(order_parameter_event(disagreement_set(graphs[j], pair), center, c.L_list[j]) ? 1 : 0);
    }
    return out;
  });
  std::vector<MLRow> rows;
  for (std::size_t j = 0; j < c.L_list.size(); ++j) {
    std::size_t count = 0;
    for (const auto& h : hits) count += h[j];
    MLRow row;
    row.L = c.L_list[j];
    row.replicas = c.replicas;
    row.m = c.replicas ? static_cast<double>(count) / static_cast<double>(c.replicas) : 0.0;
    row.std_error = mean_std_error(row.m, c.replicas);
    rows.push_back(row);
  }
  return rows;
}

std::vector<TortuosityRow> run_tortuosity(const ExperimentConfig& c) {
  if (c.l_list.empty()) throw std::invalid_argument("l_list is empty");
  const Vertex center{0, 0};
  int l_max = 1;
  for (int l : c.l_list) {
    if (l < 1) throw std::invalid_argument("tortuosity scales must be >= 1");
    l_max = std::max(l_max, l);
  }
  const Region field_region = Region::box(center, 2 * l_max);
  std::vector<ExtendedGraph> graphs;
  std::vector<std::vector<Vertex>> boundaries;
  for (int l : c.l_list) {
    graphs.emplace_back(Region::annulus(center, l, 2 * l));
    boundaries.push_back(internal_boundary(graphs.back().region()));
  }
  struct Outcome {
    std::vector<CrossingReport> crossings;
    std::vector<std::uint8_t> lassos;
  };
  const auto outcomes = parallel_map<Outcome>(c.replicas, c.workers, [&](std::size_t i) {
    const RandomSource base(c.seed, i);
    const FieldRealization f = gaussian_field(field_region, base.child(Stream::Field));
    Outcome out;
    for (std::size_t j = 0; j < graphs.size(); ++j) {
      const int l = c.l_list[j];
      const RandomSource stream = base.child(2000 + static_cast<std::uint64_t>(l));
      const PairSample pair = sample_pair(graphs[j], c.params, f, boundaries[j], c.mode, stream, c.sweeps);
      const DisagreementGeometry geom = disagreement_set(graphs[j], pair);
      out.crossings.push_back(annulus_crossing(geom, center, l, 2 * l));
      out.lassos.push_back(lasso_present(geom, center, l, 2 * l, true) ? 1 : 0);
    }
    return out;
  });
  std::vector<TortuosityRow> rows;
  for (std::size_t j = 0; j < c.l_list.size(); ++j) {
    std::vector<CrossingReport> reports;
    std::size_t lassos = 0;
    for (const Outcome& o : outcomes) {
      reports.push_back(o.crossings[j]);
      lassos += o.lassos[j];
    }
    TortuosityRow row;
    row.summary = tortuosity_summary(reports, c.l_list[j]);
    row.crossing_std_error = mean_std_error(row.summary.crossing_probability, reports.size());
    row.lasso_frequency = reports.empty() ? 0.0 : static_cast<double>(lassos) / static_cast<double>(reports.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

SurfaceTensionRun run_surface_tension(const ExperimentConfig& c) {
  c.quadrature.validate();
  SurfaceTensionRun run;
  run.rows = parallel_map<SurfaceTensionRow>(c.replicas, c.workers, [&](std::size_t i) {
    const FieldRealization f = gaussian_field(c.outer, RandomSource(c.seed, i).child(Stream::Field));
    SurfaceTensionRow row;
    row.replica = i;
    row.T_exact = surface_tension_exact(c.inner, c.outer, c.params, f);
    const IntegralEstimate est = surface_tension_integral(c.inner, c.outer, c.params, f, c.quadrature);
    row.T_integral = est.value;
    row.bound = est.truncation_bound + est.discretization_error;
    row.D = disagreement_count_means(c.inner, c.outer, c.params, f);
    row.eta_hat = normalized_field_sum(f, c.inner);
    return row;
  });
  std::vector<double> T;
  std::vector<double> D;
  for (const auto& row : run.rows) {
    T.push_back(row.T_exact);
    D.push_back(row.D);
    // Rounding in the exact log-ratio sits far below this slack.
    if (std::abs(row.T_exact - row.T_integral) <= row.bound + 1e-9) ++run.within_bound;
  }
  if (!run.rows.empty() && c.params.eps > 0.0) {
    run.anti_concentration = anti_concentration_from_samples(T, D, c.params.eps, c.inner.size());
  }
  return run;
}

std::vector<DecayPoint> read_decay_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument(path + " is empty");
  const auto header = split(line);
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::invalid_argument(path + " has no column '" + name + "'");
  };
  const std::size_t iL = column("L");
  const std::size_t im = column("m");
  const std::size_t is = column("std_error");
  std::vector<DecayPoint> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() < header.size()) throw std::invalid_argument("short row in " + path);
    points.push_back({std::stod(cells[iL]), std::stod(cells[im]), std::stod(cells[is])});
  }
  return points;
}

namespace {

struct CommandOutput {
  std::string results;
  json summary;
  bool pass = true;
};

json fit_json(const DecayFit& f) {
  return json{{"C", f.C}, {"c", f.c}, {"rate_std_error", f.rate_std_error}, {"r2", f.r2},
              {"points_used", f.points_used}, {"dropped", f.dropped}, {"max_L", f.max_L}};
}

CommandOutput command_mL(const ExperimentConfig& c) {
  const std::vector<MLRow> rows = run_mL(c);
  CommandOutput out;
  std::vector<std::vector<std::string>> cells;
  json jrows = json::array();
  for (const MLRow& r : rows) {
    cells.push_back({std::to_string(r.L), format_double(r.m), format_double(r.std_error), std::to_string(r.replicas)});
    jrows.push_back({{"L", r.L}, {"m", r.m}, {"std_error", r.std_error}});
  }
  out.results = csv({"L", "m", "std_error", "replicas"}, cells);

  std::vector<MLRow> sorted = rows;
  std::sort(sorted.begin(), sorted.end(), [](const MLRow& a, const MLRow& b) { return a.L < b.L; });
  bool monotone = true;
  for (std::size_t j = 1; j < sorted.size(); ++j) {
    const double slack = 4.0 * std::hypot(sorted[j].std_error, sorted[j - 1].std_error);
    if (sorted[j].m - sorted[j - 1].m > slack) monotone = false;
  }
  out.summary = {{"rows", jrows}, {"non_increasing_within_4se", monotone}};
  std::vector<DecayPoint> points;
  for (const MLRow& r : sorted)
    if (r.L > 0) points.push_back({static_cast<double>(r.L), r.m, r.std_error});
  try {
    out.summary["fit"] = fit_json(fit_exponential(points));
  } catch (const std::invalid_argument& e) {
    out.summary["fit_error"] = e.what();
  }
  out.pass = monotone;
  return out;
}

CommandOutput command_tortuosity(const ExperimentConfig& c) {
  const std::vector<TortuosityRow> rows = run_tortuosity(c);
  CommandOutput out;
  std::vector<std::string> header{"l", "samples", "crossing_probability", "crossing_std_error", "lasso_frequency"};
  for (double q : kTortuosityLevels) header.push_back("length_q" + std::to_string(static_cast<int>(std::lround(q * 100))));
  for (double q : kTortuosityLevels) header.push_back("length_over_l_q" + std::to_string(static_cast<int>(std::lround(q * 100))));
  std::vector<std::vector<std::string>> cells;
  std::vector<TortuositySummary> summaries;
  for (const TortuosityRow& r : rows) {
    std::vector<std::string> line{std::to_string(r.summary.scale), std::to_string(r.summary.samples),
                                  format_double(r.summary.crossing_probability),
                                  format_double(r.crossing_std_error), format_double(r.lasso_frequency)};
    for (std::size_t k = 0; k < std::size(kTortuosityLevels); ++k)
      line.push_back(r.summary.length_quantiles.empty() ? "" : format_double(r.summary.length_quantiles[k]));
    for (std::size_t k = 0; k < std::size(kTortuosityLevels); ++k)
      line.push_back(r.summary.normalized_quantiles.empty() ? "" : format_double(r.summary.normalized_quantiles[k]));
    cells.push_back(std::move(line));
    summaries.push_back(r.summary);
  }
  out.results = csv(header, cells);
  out.summary = {{"scales", c.l_list}};
  if (auto fit = tortuosity_exponent(summaries)) {
    out.summary["exponent"] = {{"value", fit->exponent}, {"std_error", fit->std_error}, {"scales", fit->scales}, {"quantile", kTortuosityLevels[0]}};
  } else {
    out.summary["exponent"] = nullptr;
  }
  return out;
}

CommandOutput command_surface_tension(const ExperimentConfig& c) {
  const SurfaceTensionRun run = run_surface_tension(c);
  CommandOutput out;
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : run.rows) {
    cells.push_back({std::to_string(r.replica), format_double(r.T_exact), format_double(r.T_integral),
                     format_double(r.T_exact - r.T_integral), format_double(r.bound), format_double(r.D),
                     format_double(r.eta_hat)});
  }
  out.results = csv({"replica", "T_exact", "T_integral", "difference", "bound", "D", "eta_hat"}, cells);
  const auto& a = run.anti_concentration;
  const bool eps_positive = c.params.eps > 0.0;
  out.summary = {{"replicas", run.rows.size()}, {"within_bound", run.within_bound}};
  if (eps_positive) {
    out.summary["anti_concentration"] = {
        {"lhs", a.lhs}, {"lhs_std_error", a.lhs_std_error}, {"mean_T", a.mean_T}, {"mean_T_std_error", a.mean_T_std_error},
        {"mean_D", a.mean_D}, {"mean_D_std_error", a.mean_D_std_error}, {"argument", a.argument}, {"rhs", a.rhs}, {"pass", a.pass}};
    out.pass = a.pass && run.within_bound == run.rows.size();
  } else {
    out.summary["anti_concentration"] = {{"pass", nullptr}, {"note", "eps = 0: integral form vanishes by its prefactor"}};
  }
  return out;
}

CommandOutput command_fit(const ExperimentConfig& c) {
  if (c.input.empty()) throw std::invalid_argument("fit needs --input");
  const DecayFit fit = fit_exponential(read_decay_points(c.input));
  CommandOutput out;
  out.results = csv({"C", "c", "rate_std_error", "r2", "points_used", "dropped", "max_L"},
                    {{format_double(fit.C), format_double(fit.c), format_double(fit.rate_std_error), format_double(fit.r2),
                      std::to_string(fit.points_used), std::to_string(fit.dropped), format_double(fit.max_L)}});
  out.summary = {{"fit", fit_json(fit)}};
  return out;
}

CommandOutput command_verify(const ExperimentConfig& c) {
  VerifyOptions opt;
  opt.max_vertices = c.max_vertices;
  opt.tolerance = c.tolerance;
  opt.instances = c.instances;
  opt.seed = c.seed;
  opt.corrupt_lambda = c.mutate_lambda;
  if (opt.max_vertices < 1 || opt.max_vertices > opt.limits.max_free_vertices) {
    throw std::invalid_argument("max_vertices must lie in [1, " + std::to_string(opt.limits.max_free_vertices) + "]");
  }
  const auto reports = run_verify_suite(opt);
  CommandOutput out;
  std::vector<std::vector<std::string>> cells;
  json list = json::array();
  for (const auto& r : reports) {
    cells.push_back({r.identity, std::to_string(r.instances), format_double(r.max_abs_error),
                     format_double(r.max_rel_error), r.pass ? "true" : "false"});
    list.push_back(to_json(r));
    out.pass = out.pass && r.pass;
  }
  out.results = csv({"identity", "instances", "max_abs_error", "max_rel_error", "pass"}, cells);
  out.summary = {{"reports", list}, {"pass", out.pass}};
  if (c.instances == 0) out.summary["warning"] = "instance count 0: every check passes vacuously";
  return out;
}

}  // namespace

int run_command(const ExperimentConfig& c) {
  c.params.validate();
  if (c.workers < 1) throw std::invalid_argument("workers must be >= 1");
  const fs::path dir(c.out_dir);
  fs::create_directories(dir);
  json manifest{{"status", "running"},
                {"version", kVersion},
                {"command", c.command},
                {"config", to_json(c)},
                {"started_at", utc_now()},
                {"files", json::array()}};
  write_atomically(dir / "manifest.json", manifest.dump(2) + "\n");

  CommandOutput out;
  if (c.command == "mL") {
    out = command_mL(c);
  } else if (c.command == "tortuosity") {
    out = command_tortuosity(c);
  } else if (c.command == "surface-tension") {
    out = command_surface_tension(c);
  } else if (c.command == "fit") {
    out = command_fit(c);
  } else if (c.command == "verify") {
    out = command_verify(c);
  } else {
    throw std::invalid_argument("unknown command '" + c.command + "'");
  }
  out.summary["command"] = c.command;
  out.summary["pass"] = out.pass;
  write_atomically(dir / "results.csv", out.results);
  write_atomically(dir / "summary.json", out.summary.dump(2) + "\n");

  manifest["status"] = "complete";
  manifest["finished_at"] = utc_now();
  manifest["files"] = {"results.csv", "summary.json"};
  manifest["exit_code"] = out.pass ? 0 : 1;
  write_atomically(dir / "manifest.json", manifest.dump(2) + "\n");
  return out.pass ? 0 : 1;
}

}  // namespace rfim
