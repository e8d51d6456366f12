#include "rfim/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <unordered_map>

#include "rfim/analysis.hpp"
#include "rfim/disagreement.hpp"
#include "rfim/exploration.hpp"
#include "rfim/pair_exact.hpp"
#include "rfim/rng.hpp"
#include "rfim/sampler.hpp"

namespace rfim {

void IdentityReport::record(double abs_error, double rel_error) {
  ++instances;
  max_abs_error = std::max(max_abs_error, abs_error);
  max_rel_error = std::max(max_rel_error, rel_error);
  if (!(abs_error <= tolerance) && !(rel_error <= tolerance)) pass = false;
}

nlohmann::json to_json(const IdentityReport& r) {
  nlohmann::json j{{"identity", r.identity},
                   {"instances", r.instances},
                   {"max_abs_error", r.max_abs_error},
                   {"max_rel_error", r.max_rel_error},
                   {"pass", r.pass}};
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

Region random_region(int size, std::mt19937_64& eng) {
  if (size < 1) throw std::invalid_argument("random_region: size must be positive");
  constexpr std::array<Vertex, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  std::vector<Vertex> vs{{0, 0}};
  std::set<Vertex> seen{{0, 0}};
  while (static_cast<int>(vs.size()) < size) {
    const Vertex& from = vs[std::uniform_int_distribution<std::size_t>(0, vs.size() - 1)(eng)];
    const Vertex d = steps[std::uniform_int_distribution<std::size_t>(0, 3)(eng)];
    const Vertex v{from.x + d.x, from.y + d.y};
    if (seen.insert(v).second) vs.push_back(v);
  }
  return Region(std::move(vs));
}

CouplingParams random_params(std::mt19937_64& eng) {
  constexpr std::array<double, 3> couplings{0.5, 1.0, 2.0};
  CouplingParams p;
  p.beta = std::uniform_real_distribution<double>(0.2, 3.0)(eng);
  p.J = couplings[std::uniform_int_distribution<std::size_t>(0, 2)(eng)];
  p.h = std::uniform_real_distribution<double>(-1.0, 1.0)(eng);
  p.eps = std::uniform_real_distribution<double>(0.0, 3.0)(eng);
  return p;
}

CouplingParams sampling_params(std::mt19937_64& eng) {
  CouplingParams p = random_params(eng);
  while (p.beta * p.J > 3.0) p = random_params(eng);
  return p;
}

namespace {

std::mt19937_64 instance_engine(std::uint64_t seed, std::size_t i, std::uint64_t check) {
  return RandomSource(seed, i, check).child(Stream::Test).engine();
}

FieldRealization normal_field(const Region& r, std::mt19937_64& eng) {
  std::normal_distribution<double> normal;
  FieldRealization f;
  for (const Vertex& v : r.vertices()) f.set(v, normal(eng));
  return f;
}

bool coin(std::mt19937_64& eng, double p = 0.5) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(eng) < p;
}

int pick(std::mt19937_64& eng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(eng); }

/// Random +-1 values on a random proper subset of the vertices.
BoundarySpec random_vertex_boundary(const Region& r, std::mt19937_64& eng) {
  BoundarySpec bc;
  for (int v = 0; v < static_cast<int>(r.size()); ++v)
    if (coin(eng, 0.3)) bc.set(v, coin(eng) ? 1 : -1);
  if (bc.entries().size() == r.size()) bc = BoundarySpec{};
  return bc;
}

IdentityReport start(const std::string& name, double tol, std::size_t planned) {
  IdentityReport r;
  r.identity = name;
  r.tolerance = tol;
  if (planned == 0) r.notes.push_back("no instances requested; pass is vacuous");
  return r;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

IdentityReport check_extended_equivalence(const VerifyOptions& opt) {
  IdentityReport rep = start("extended_model_equivalence", opt.tolerance, opt.instances);
  for (std::size_t i = 0; i < opt.instances; ++i) {
    auto eng = instance_engine(opt.seed, i, 1);
    const Region r = random_region(1 + pick(eng, std::max(1, opt.max_vertices)), eng);
    const CouplingParams p = random_params(eng);
    const FieldRealization f = normal_field(r, eng);
    const BoundarySpec bc = coin(eng, 0.3) ? random_vertex_boundary(r, eng) : BoundarySpec{};
    const ExtendedGraph g(r);
    const ExtendedWeights w = opt.corrupt_lambda ? ExtendedWeights::corrupted_lambda(p) : ExtendedWeights::from(p);

    const double lz = log_partition_function(r, p, f, bc, opt.limits);
    const std::vector<double> plain = gibbs_probabilities(r, p, f, bc, opt.limits);
    std::vector<int> free;
    for (int v = 0; v < g.num_vertices(); ++v)
      if (!bc.value(v)) free.push_back(v);
    std::vector<LogAccumulator> per_mask(plain.size());
    LogAccumulator total;
    for_each_extended(
        g, p, f, bc,
        [&](const ExtendedConfig& c, double lw) {
          std::size_t mask = 0;
          for (std::size_t j = 0; j < free.size(); ++j)
            if (c.sigma[static_cast<std::size_t>(free[j])] == 1) mask |= std::size_t{1} << j;
          per_mask[mask].add(lw);
          total.add(lw);
        },
        w, opt.limits);
    const double lzbar = total.log_total();
    double tv = 0.0;
    for (std::size_t m = 0; m < plain.size(); ++m) {
      const double q = per_mask[m].empty() ? 0.0 : std::exp(per_mask[m].log_total() - lzbar);
      tv += 0.5 * std::abs(plain[m] - q);
    }
    const double ratio_error = std::abs(std::expm1(lzbar - lz));
    // Both the partition-function ratio and the marginal must match.
    rep.record(std::max(tv, ratio_error), std::max(tv, ratio_error));
  }
  return rep;
}

IdentityReport check_disagreement_representation(const VerifyOptions& opt) {
  IdentityReport rep = start("disagreement_representation", opt.tolerance, opt.instances);
  const int max_v = std::clamp(opt.max_vertices, 2, 6);
  for (std::size_t i = 0; i < opt.instances; ++i) {
    auto eng = instance_engine(opt.seed, i, 2);
    const Region r = random_region(2 + pick(eng, max_v - 1), eng);
    const CouplingParams p = random_params(eng);
    const FieldRealization f = normal_field(r, eng);
    const ExtendedGraph g(r);
    const int n = static_cast<int>(r.size());

    // Same boundary values in both copies: truncated correlation.
    const BoundarySpec bc = coin(eng) ? random_vertex_boundary(r, eng) : BoundarySpec{};
    const int u = pick(eng, n);
    const int v = pick(eng, n);
    const double tc = truncated_correlation(r.vertex(u), r.vertex(v), r, p, f, bc, opt.limits);
    const std::array<SiteId, 1> su{u};
    const std::array<SiteId, 1> sv{v};
    const double conn = pair_connection_probability_exact(g, su, sv, p, f, bc, bc, PairEngine::Auto, opt.limits);
    const double err1 = std::abs(tc - 2.0 * conn);

    // Opposite values on A: half the one-point difference.
    std::vector<Vertex> A;
    const int w = pick(eng, n);
    for (int k = 0; k < n; ++k)
      if (k != w && (A.empty() || coin(eng, 0.3))) A.push_back(r.vertex(k));
    const BoundarySpec plus = BoundarySpec::uniform(r, A, 1);
    const BoundarySpec minus = BoundarySpec::uniform(r, A, -1);
    const double mp = one_point_means(r, p, f, plus, opt.limits)[static_cast<std::size_t>(w)];
    const double mm = one_point_means(r, p, f, minus, opt.limits)[static_cast<std::size_t>(w)];
    const std::array<SiteId, 1> sw{w};
    const std::vector<SiteId> sa = g.sites_of(A);
    const double conn_a = pair_connection_probability_exact(g, sw, sa, p, f, plus, minus, PairEngine::Auto, opt.limits);
    const double err2 = std::abs(0.5 * (mp - mm) - conn_a);
    rep.record(std::max(err1, err2), std::max(rel(2.0 * conn, tc), rel(conn_a, 0.5 * (mp - mm))));
  }
  return rep;
}

namespace {

std::string config_key(const ExtendedConfig& c) {
  std::string key(c.sigma.begin(), c.sigma.end());
  key.push_back('|');
  key.append(c.kappa.begin(), c.kappa.end());
  return key;
}

std::vector<SiteId> random_sites(const ExtendedGraph& g, std::mt19937_64& eng, int min_count, int max_count) {
  std::set<SiteId> out;
  const int count = min_count + pick(eng, max_count - min_count + 1);
  while (static_cast<int>(out.size()) < std::min(count, g.num_sites())) out.insert(pick(eng, g.num_sites()));
  return {out.begin(), out.end()};
}

}  // namespace

IdentityReport check_swap_pushforward(const VerifyOptions& opt) {
  IdentityReport rep = start("swap_pushforward", 1e-12, opt.instances);
  const int max_v = std::clamp(opt.max_vertices, 1, 4);
  for (std::size_t i = 0; i < opt.instances; ++i) {
    auto eng = instance_engine(opt.seed, i, 3);
    const Region r = random_region(1 + pick(eng, max_v), eng);
    const CouplingParams p = random_params(eng);
    const FieldRealization f = normal_field(r, eng);
    const ExtendedGraph g(r);

    std::vector<SiteId> A;
    BoundarySpec bc_plus;
    BoundarySpec bc_minus;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (!coin(eng, 0.3)) continue;
      A.push_back(v);
      bc_plus.set(v, coin(eng) ? 1 : -1);
      bc_minus.set(v, coin(eng) ? 1 : -1);
    }
    const std::vector<SiteId> S = random_sites(g, eng, 1, 2);

    const PairEnumeration pairs(g, p, f, bc_plus, bc_minus, opt.limits);
    std::unordered_map<std::string, std::size_t> index_plus;
    std::unordered_map<std::string, std::size_t> index_minus;
    for (std::size_t k = 0; k < pairs.plus().size(); ++k) index_plus[config_key(pairs.plus()[k].config)] = k;
    for (std::size_t k = 0; k < pairs.minus().size(); ++k) index_minus[config_key(pairs.minus()[k].config)] = k;

    double worst = 0.0;
    double worst_rel = 0.0;
    for (const auto& a : pairs.plus()) {
      for (const auto& b : pairs.minus()) {
        const auto [x, y] = swap_clusters(g, a.config, b.config, S, A);
        const auto ix = index_plus.find(config_key(x));
        const auto iy = index_minus.find(config_key(y));
        if (ix == index_plus.end() || iy == index_minus.end()) {
          worst = std::numeric_limits<double>::infinity();
          continue;
        }
        const auto back = swap_clusters(g, x, y, S, A);
        if (!(back.first == a.config) || !(back.second == b.config)) worst = std::numeric_limits<double>::infinity();
        const double before = std::exp(a.log_prob + b.log_prob);
        const double after = std::exp(pairs.plus()[ix->second].log_prob + pairs.minus()[iy->second].log_prob);
        worst = std::max(worst, std::abs(before - after));
        worst_rel = std::max(worst_rel, rel(after, before));
      }
    }
    rep.record(worst, worst_rel);
  }
  return rep;
}

IdentityReport check_swap_involution(const VerifyOptions& opt) {
  IdentityReport rep = start("swap_involution", 0.0, opt.instances);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < opt.instances; ++i) {
    auto eng = instance_engine(opt.seed, i, 4);
    const Region r = random_region(1 + pick(eng, std::max(1, opt.max_vertices)), eng);
    const ExtendedGraph g(r);
    auto random_config = [&] {
      ExtendedConfig c;
      for (int v = 0; v < g.num_vertices(); ++v) c.sigma.push_back(coin(eng) ? Spin{1} : Spin{-1});
      for (const Edge& e : r.edges()) {
        const Spin a = c.sigma[static_cast<std::size_t>(e.a)];
        c.kappa.push_back(a == c.sigma[static_cast<std::size_t>(e.b)] && coin(eng) ? a : Spin{0});
      }
      return c;
    };
    const ExtendedConfig a = random_config();
    const ExtendedConfig b = coin(eng, 0.1) ? a : random_config();
    const std::vector<SiteId> S = random_sites(g, eng, 1, 3);
    const std::vector<SiteId> A = random_sites(g, eng, 0, 3);
    const auto [x, y] = swap_clusters(g, a, b, S, A);
    const auto back = swap_clusters(g, x, y, S, A);
    const bool ok = satisfies_hard_constraints(g, x) && satisfies_hard_constraints(g, y) &&
                    back.first == a && back.second == b;
    if (!ok) ++violations;
    rep.record(ok ? 0.0 : 1.0, ok ? 0.0 : 1.0);
  }
  if (violations > 0) rep.notes.push_back(std::to_string(violations) + " violations");
  return rep;
}

namespace {

struct NestedGeometry {
  Region inner;
  Region outer;
};

std::vector<NestedGeometry> nested_geometries() {
  return {
      {Region::box({0, 0}, 0), Region::box({0, 0}, 1)},
      {Region::box({0, 0}, 0), Region::block(-1, -1, 1, 1)},
      {Region::box({0, 0}, 0), Region::block(-2, -1, 2, 1)},
      {Region::block(1, 1, 2, 1), Region::block(0, 0, 3, 2)},
      {Region::box({0, 0}, 0), Region::box({0, 0}, 2)},
  };
}

}  // namespace

IdentityReport check_partition_ratio(const VerifyOptions& opt) {
  IdentityReport rep = start("partition_ratio", opt.tolerance, opt.instances);
  const auto geoms = nested_geometries();
  for (std::size_t i = 0; i < opt.instances; ++i) {
    auto eng = instance_engine(opt.seed, i, 5);
    const NestedGeometry& geo = geoms[i % geoms.size()];
    const CouplingParams p = random_params(eng);
    const FieldRealization f = normal_field(geo.outer, eng);
    const double T = surface_tension_exact(geo.inner, geo.outer, p, f, opt.limits);
    const double sep = boundary_separation_probability(geo.inner, geo.outer, p, f, PairEngine::Auto, opt.limits);
    const double lhs = std::exp(-p.beta * T);
    rep.record(std::abs(lhs - sep), rel(sep, lhs));
  }
  return rep;
}

namespace {

CouplingParams integral_params() {
  CouplingParams p;
  p.beta = 1.0;
  p.J = 1.0;
  p.h = 0.0;
  p.eps = 2.0;
  return p;
}

}  // namespace

IdentityReport check_surface_tension_integral(const VerifyOptions& opt) {
  IdentityReport rep = start("surface_tension_integral", 1e-4, opt.instances);
  const Region inner = Region::box({0, 0}, 0);
  const Region outer = Region::box({0, 0}, 2);
  const CouplingParams p = integral_params();
  double worst_bound_ratio = 0.0;
  for (std::size_t i = 0; i < opt.instances; ++i) {
    const FieldRealization f = gaussian_field(outer, RandomSource(opt.seed, i, 6).child(Stream::Field));
    const double exact = surface_tension_exact(inner, outer, p, f, opt.limits);
    const IntegralEstimate est = surface_tension_integral(inner, outer, p, f, {}, opt.limits);
    const double err = std::abs(exact - est.value);
    rep.record(err, rel(est.value, exact));
    const double bound = est.truncation_bound + est.discretization_error;
    if (bound > 0.0) worst_bound_ratio = std::max(worst_bound_ratio, err / bound);
  }
  rep.notes.push_back("max |error| / reported bound = " + std::to_string(worst_bound_ratio));
  return rep;
}

RefinementRatio integral_refinement_ratio(std::size_t replicas, std::uint64_t seed, int coarse_points) {
  const Region inner = Region::box({0, 0}, 0);
  const Region outer = Region::box({0, 0}, 2);
  const CouplingParams p = integral_params();
  RefinementRatio out;
  for (std::size_t i = 0; i < replicas; ++i) {
    const FieldRealization f = gaussian_field(outer, RandomSource(seed, i, 6).child(Stream::Field));
    const double exact = surface_tension_exact(inner, outer, p, f);
    QuadratureSpec coarse;
    coarse.n_points = coarse_points;
    QuadratureSpec fine = coarse;
    fine.n_points = 2 * coarse_points - 1;
    out.coarse_error += std::abs(exact - surface_tension_integral(inner, outer, p, f, coarse).value);
    out.fine_error += std::abs(exact - surface_tension_integral(inner, outer, p, f, fine).value);
  }
  out.ratio = out.coarse_error > 0.0 ? out.fine_error / out.coarse_error : 0.0;
  return out;
}

namespace {

struct SeparatedGeometry {
  Region inner;
  Region outer;
  std::vector<Vertex> S;
};

std::vector<Vertex> sphere(Vertex c, int radius) {
  const Region disk = Region::box(c, radius);
  std::vector<Vertex> out;
  for (const Vertex& v : disk.vertices())
    if (distance(c, v) == radius) out.push_back(v);
  return out;
}

BoundarySpec both_boundaries(const Region& inner, const Region& outer, int value) {
  return BoundarySpec::uniform(outer, internal_boundary(inner), value)
      .merged(BoundarySpec::uniform(outer, internal_boundary(outer), value));
}

}  // namespace

IdentityReport check_separating_set_bound(const VerifyOptions& opt) {
  IdentityReport rep = start("separating_set_bound", opt.tolerance, opt.instances);
  const std::vector<SeparatedGeometry> geoms{
      {Region::box({0, 0}, 0), Region::box({0, 0}, 2), sphere({0, 0}, 1)},
      {Region::box({0, 0}, 0), Region::box({0, 0}, 3), sphere({0, 0}, 2)},
      {Region::box({0, 0}, 1), Region::box({0, 0}, 3), sphere({0, 0}, 2)},
      {Region::box({0, 0}, 0), Region::box({0, 0}, 3), sphere({0, 0}, 1)},
  };
  double min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < opt.instances; ++i) {
    auto eng = instance_engine(opt.seed, i, 7);
    const SeparatedGeometry& geo = geoms[i % geoms.size()];
    const CouplingParams p = random_params(eng);
    const FieldRealization f = normal_field(geo.outer, eng);
    const double T = surface_tension_exact(geo.inner, geo.outer, p, f, opt.limits);
    const auto plus = one_point_means(geo.outer, p, f, both_boundaries(geo.inner, geo.outer, 1), opt.limits);
    const auto minus = one_point_means(geo.outer, p, f, both_boundaries(geo.inner, geo.outer, -1), opt.limits);
    // The copies are independent, so P(v in D) = P+(+)P-(-) + P+(-)P-(+).
    double expected = 0.0;
    for (int v : geo.outer.indices_of(geo.S)) {
      const double a = 0.5 * (1.0 + plus[static_cast<std::size_t>(v)]);
      const double b = 0.5 * (1.0 + minus[static_cast<std::size_t>(v)]);
      expected += a * (1.0 - b) + (1.0 - a) * b;
    }
    const double slack = 16.0 * p.J * expected - T;
    min_slack = std::min(min_slack, slack);
    rep.record(std::max(0.0, -slack), std::max(0.0, -slack) / std::max(std::abs(T), 1e-300));
  }

  // Mid-edge cut forced to zero in both copies: the forced set never
  // disagrees and the conditioned surface tension must vanish.
  const std::size_t cut_instances = std::min<std::size_t>(opt.instances, 3);
  const Region inner = Region::box({0, 0}, 0);
  const Region outer = Region::box({0, 0}, 2);
  const ExtendedGraph g(outer);
  BoundarySpec cut;
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = outer.edges()[static_cast<std::size_t>(e)];
    const int da = distance({0, 0}, outer.vertex(ed.a));
    const int db = distance({0, 0}, outer.vertex(ed.b));
    if (std::min(da, db) == 1 && std::max(da, db) == 2) cut.set(g.midedge(e), 0);
  }
  for (std::size_t i = 0; i < cut_instances; ++i) {
    auto eng = instance_engine(opt.seed, i, 8);
    const CouplingParams p = random_params(eng);
    const FieldRealization f = normal_field(outer, eng);
    auto lz = [&](int a, int b) {
      const BoundarySpec bc = BoundarySpec::uniform(outer, internal_boundary(inner), a)
                                  .merged(BoundarySpec::uniform(outer, internal_boundary(outer), b))
                                  .merged(cut);
      return log_extended_partition_function(g, p, f, bc, opt.limits);
    };
    const double T = (lz(1, 1) + lz(-1, -1) - lz(1, -1) - lz(-1, 1)) / p.beta;
    const double slack = -T;
    min_slack = std::min(min_slack, slack);
    rep.record(std::max(0.0, -slack), std::max(0.0, -slack));
  }
  rep.notes.push_back("min slack = " + std::to_string(min_slack));
  return rep;
}

IdentityReport check_exploration_bound(const VerifyOptions& opt) {
  IdentityReport rep = start("exploration_bound", opt.tolerance, opt.instances);
  const Region inner = Region::box({0, 0}, 0);
  const Region outer = Region::box({0, 0}, 2);
  const ExtendedGraph g(outer);
  const std::array<double, 3> thresholds{0.5, 1.0, 2.0};
  double min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < opt.instances; ++i) {
    auto eng = instance_engine(opt.seed, i, 9);
    const CouplingParams p = random_params(eng);
    const FieldRealization f = normal_field(outer, eng);
    const double T = surface_tension_exact(inner, outer, p, f, opt.limits);
    const FactoredPairMeasure measure(g, p, f, both_boundaries(inner, outer, 1),
                                      both_boundaries(inner, outer, -1), opt.limits);
    const double last = measure.expectation(
        [](const DisagreementGeometry& geom) {
          return static_cast<double>(explore_nonanticipatory(geom, {0, 0}, 1, 2).counts.back());
        },
        EdgeResolution::VertexConnectivity);
    double slack = 16.0 * p.J * last - T;
    for (double M : thresholds) {
      const double tail = measure.expectation(
          [M](const DisagreementGeometry& geom) {
            const auto counts = explore_nonanticipatory(geom, {0, 0}, 1, 2).counts;
            const bool always_large = std::all_of(counts.begin(), counts.end(), [M](int c) { return c > M; });
            return always_large ? static_cast<double>(counts.back()) : 0.0;
          },
          EdgeResolution::VertexConnectivity);
      slack = std::min(slack, 16.0 * p.J * (M + tail) - T);
    }
    min_slack = std::min(min_slack, slack);
    rep.record(std::max(0.0, -slack), std::max(0.0, -slack) / std::max(std::abs(T), 1e-300));
  }
  rep.notes.push_back("min slack = " + std::to_string(min_slack));
  return rep;
}

IdentityReport check_exploration_sampling(const VerifyOptions& opt) {
  IdentityReport rep = start("exploration_sets_sampled", 0.0, opt.instances);
  const Vertex center{0, 0};
  constexpr int k = 1;
  constexpr int outer_radius = 4;
  const Region outer = Region::box(center, outer_radius);
  const ExtendedGraph g(outer);
  std::vector<Vertex> boundary = internal_boundary(outer);
  boundary.push_back(center);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < opt.instances; ++i) {
    auto eng = instance_engine(opt.seed, i, 10);
    const CouplingParams p = sampling_params(eng);
    const RandomSource rng(opt.seed, i, 10);
    const FieldRealization f = gaussian_field(outer, rng.child(Stream::Field));
    const PairSample pair = sample_pair(g, p, f, boundary, SamplerMode::Cftp, rng);
    bool ok = satisfies_hard_constraints(g, pair.plus) && satisfies_hard_constraints(g, pair.minus);
    try {
      const DisagreementGeometry geom = disagreement_set(g, pair);
      const ExplorationResult ex = explore_nonanticipatory(geom, center, k, outer_radius);
      ok = ok && ex.nested && good_sets_hold(g, pair.plus, pair.minus, ex);
    } catch (const std::logic_error&) {
      ok = false;
    }
    if (!ok) ++violations;
    rep.record(ok ? 0.0 : 1.0, ok ? 0.0 : 1.0);
  }
  if (violations > 0) rep.notes.push_back(std::to_string(violations) + " violations");
  return rep;
}

std::vector<IdentityReport> run_verify_suite(const VerifyOptions& opt) {
  auto scaled = [&](std::size_t num, std::size_t den) {
    return opt.instances == 0 ? 0 : std::max<std::size_t>(1, opt.instances * num / den);
  };
  auto with = [&](std::size_t n) {
    VerifyOptions o = opt;
    o.instances = n;
    return o;
  };
  std::vector<IdentityReport> out;
  out.push_back(check_extended_equivalence(opt));
  out.push_back(check_disagreement_representation(with(scaled(1, 4))));
  out.push_back(check_swap_pushforward(with(scaled(1, 10))));
  out.push_back(check_swap_involution(with(scaled(50, 1))));
  out.push_back(check_partition_ratio(with(scaled(1, 5))));
  out.push_back(check_surface_tension_integral(with(scaled(1, 2))));
  out.push_back(check_separating_set_bound(with(scaled(1, 5))));
  out.push_back(check_exploration_bound(with(scaled(1, 20))));
  out.push_back(check_exploration_sampling(with(scaled(5, 1))));
  return out;
}

}  // namespace rfim
