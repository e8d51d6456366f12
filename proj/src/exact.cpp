#include "rfim/exact.hpp"

#include <algorithm>
#include <array>

#include "rfim/pair_exact.hpp"

namespace rfim {

void LogAccumulator::add(double log_weight, std::span<const double> values) {
  if (log_weight == -std::numeric_limits<double>::infinity()) return;
  if (log_weight > max_) {
    const double scale = total_ == 0.0 ? 0.0 : std::exp(max_ - log_weight);
    total_ *= scale;
    for (double& s : sums_) s *= scale;
    max_ = log_weight;
  }
  const double w = std::exp(log_weight - max_);
  total_ += w;
  for (std::size_t i = 0; i < values.size() && i < sums_.size(); ++i) sums_[i] += w * values[i];
}

GibbsEnumerator::GibbsEnumerator(const Region& r, const CouplingParams& p,
                                 const FieldRealization& f, const BoundarySpec& bc,
                                 const EnumerationLimits& lim)
    : region_(&r), fields_(local_fields(r, p, f)), beta_(p.beta), J_(p.J) {
  p.validate();
  start_.assign(r.size(), Spin{-1});
  std::vector<char> fixed(r.size(), 0);
  for (const auto& [s, v] : bc.entries()) {
    if (s < 0 || static_cast<std::size_t>(s) >= r.size()) {
      throw std::invalid_argument("plain enumeration takes vertex boundary values only");
    }
    if (v != 1 && v != -1) throw std::invalid_argument("vertex boundary value must be +-1");
    start_[static_cast<std::size_t>(s)] = static_cast<Spin>(v);
    fixed[static_cast<std::size_t>(s)] = 1;
  }
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!fixed[i]) free_.push_back(static_cast<int>(i));
  if (num_free() > lim.max_free_vertices || num_free() > 62) {
    throw CapExceeded("enumeration over " + std::to_string(num_free()) +
                      " free vertices exceeds the cap of " + std::to_string(lim.max_free_vertices));
  }
}

double GibbsEnumerator::full_log_weight(const SpinConfig& cfg) const {
  double lw = 0.0;
  for (const Edge& e : region_->edges())
    lw += J_ * cfg[static_cast<std::size_t>(e.a)] * cfg[static_cast<std::size_t>(e.b)];
  for (std::size_t i = 0; i < cfg.size(); ++i) lw += fields_[i] * cfg[i];
  return beta_ * lw;
}

double GibbsEnumerator::log_partition() const {
  LogAccumulator acc;
  for_each([&](const SpinConfig&, double lw, std::uint64_t) { acc.add(lw); });
  return acc.log_total();
}

double log_partition_function(const Region& r, const CouplingParams& p, const FieldRealization& f,
                              const BoundarySpec& bc, const EnumerationLimits& lim) {
  return GibbsEnumerator(r, p, f, bc, lim).log_partition();
}

double partition_function(const Region& r, const CouplingParams& p, const FieldRealization& f,
                          const BoundarySpec& bc, const EnumerationLimits& lim) {
  return std::exp(log_partition_function(r, p, f, bc, lim));
}

double thermal_expectation(const std::function<double(const SpinConfig&)>& obs, const Region& r,
                           const CouplingParams& p, const FieldRealization& f,
                           const BoundarySpec& bc, const EnumerationLimits& lim) {
  GibbsEnumerator en(r, p, f, bc, lim);
  LogAccumulator acc(1);
  en.for_each([&](const SpinConfig& cfg, double lw, std::uint64_t) {
    const double value = obs(cfg);
    acc.add(lw, std::span<const double>(&value, 1));
  });
  return acc.mean(0);
}

std::vector<double> one_point_means(const Region& r, const CouplingParams& p,
                                    const FieldRealization& f, const BoundarySpec& bc,
                                    const EnumerationLimits& lim) {
  GibbsEnumerator en(r, p, f, bc, lim);
  LogAccumulator acc(r.size());
  std::vector<double> values(r.size());
  en.for_each([&](const SpinConfig& cfg, double lw, std::uint64_t) {
    std::copy(cfg.begin(), cfg.end(), values.begin());
    acc.add(lw, values);
  });
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = acc.mean(i);
  return out;
}

double truncated_correlation(Vertex u, Vertex v, const Region& r, const CouplingParams& p,
                             const FieldRealization& f, const BoundarySpec& bc,
                             const EnumerationLimits& lim) {
  const auto iu = r.index_of(u);
  const auto iv = r.index_of(v);
  if (!iu || !iv) throw std::invalid_argument("truncated_correlation: vertex outside region");
  GibbsEnumerator en(r, p, f, bc, lim);
  LogAccumulator acc(3);
  en.for_each([&](const SpinConfig& cfg, double lw, std::uint64_t) {
    const double a = cfg[static_cast<std::size_t>(*iu)];
    const double b = cfg[static_cast<std::size_t>(*iv)];
    const std::array<double, 3> vals{a * b, a, b};
    acc.add(lw, vals);
  });
  return acc.mean(0) - acc.mean(1) * acc.mean(2);
}

std::vector<double> gibbs_probabilities(const Region& r, const CouplingParams& p,
                                        const FieldRealization& f, const BoundarySpec& bc,
                                        const EnumerationLimits& lim) {
  GibbsEnumerator en(r, p, f, bc, lim);
  std::vector<double> lws(std::size_t{1} << en.num_free());
  LogAccumulator acc;
  en.for_each([&](const SpinConfig&, double lw, std::uint64_t mask) {
    lws[mask] = lw;
    acc.add(lw);
  });
  const double lz = acc.log_total();
  for (double& x : lws) x = std::exp(x - lz);
  return lws;
}

namespace {

/// Depth-first walk over mid-edge values for a fixed vertex configuration.
struct MidedgeWalk {
  const ExtendedGraph& g;
  const std::vector<std::int8_t>& fixed;
  const ExtendedWeights& w;
  const std::function<void(const ExtendedConfig&, double)>& visit;
  ExtendedConfig cfg;

  void run(int e, double lw) {
    if (e == g.num_edges()) {
      visit(cfg, lw);
      return;
    }
    const Edge& ed = g.region().edges()[static_cast<std::size_t>(e)];
    const Spin a = cfg.sigma[static_cast<std::size_t>(ed.a)];
    const Spin b = cfg.sigma[static_cast<std::size_t>(ed.b)];
    const std::int8_t pin = fixed[static_cast<std::size_t>(g.midedge(e))];
    for (Spin k : {Spin{-1}, Spin{0}, Spin{1}}) {
      if (pin != BoundarySpec::kFree && pin != k) continue;
      const double add = w.log_w(a, k) + w.log_w(b, k);
      if (add == -std::numeric_limits<double>::infinity()) continue;
      cfg.kappa[static_cast<std::size_t>(e)] = k;
      run(e + 1, lw + add);
    }
  }
};

}  // namespace

void for_each_extended(const ExtendedGraph& g, const CouplingParams& p, const FieldRealization& f,
                       const BoundarySpec& bc,
                       const std::function<void(const ExtendedConfig&, double)>& visit,
                       const ExtendedWeights& w, const EnumerationLimits& lim) {
  p.validate();
  if (!is_allowed(g, bc)) throw std::invalid_argument("boundary values are not an allowed configuration");
  const std::vector<std::int8_t> fixed = bc.dense(g.num_sites());
  std::vector<int> free;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (fixed[static_cast<std::size_t>(v)] == BoundarySpec::kFree) free.push_back(v);
  const int bits = static_cast<int>(free.size()) + g.num_edges();
  if (bits >= 62 || (std::size_t{1} << bits) > lim.max_extended_configs) {
    throw CapExceeded("extended enumeration over 2^" + std::to_string(bits) +
                      " configurations exceeds the cap");
  }
  const std::vector<double> fields = local_fields(g.region(), p, f);
  MidedgeWalk walk{g, fixed, w, visit, {}};
  walk.cfg.sigma.assign(static_cast<std::size_t>(g.num_vertices()), Spin{1});
  walk.cfg.kappa.assign(static_cast<std::size_t>(g.num_edges()), Spin{0});
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (fixed[static_cast<std::size_t>(v)] != BoundarySpec::kFree)
      walk.cfg.sigma[static_cast<std::size_t>(v)] = fixed[static_cast<std::size_t>(v)];
  }
  const std::uint64_t count = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (std::size_t j = 0; j < free.size(); ++j)
      walk.cfg.sigma[static_cast<std::size_t>(free[j])] = (mask >> j) & 1u ? Spin{1} : Spin{-1};
    double lw = 0.0;
    for (int v = 0; v < g.num_vertices(); ++v)
      lw += p.beta * fields[static_cast<std::size_t>(v)] * walk.cfg.sigma[static_cast<std::size_t>(v)];
    walk.run(0, lw);
  }
}

double log_extended_partition_function(const ExtendedGraph& g, const CouplingParams& p,
                                       const FieldRealization& f, const BoundarySpec& bc,
                                       const ExtendedWeights& w, const EnumerationLimits& lim) {
  LogAccumulator acc;
  for_each_extended(g, p, f, bc, [&](const ExtendedConfig&, double lw) { acc.add(lw); }, w, lim);
  return acc.log_total();
}

double log_extended_partition_function(const ExtendedGraph& g, const CouplingParams& p,
                                       const FieldRealization& f, const BoundarySpec& bc,
                                       const EnumerationLimits& lim) {
  return log_extended_partition_function(g, p, f, bc, ExtendedWeights::from(p), lim);
}

double extended_partition_function(const ExtendedGraph& g, const CouplingParams& p,
                                   const FieldRealization& f, const BoundarySpec& bc,
                                   const EnumerationLimits& lim) {
  return std::exp(log_extended_partition_function(g, p, f, bc, lim));
}

std::vector<double> extended_vertex_marginal(const ExtendedGraph& g, const CouplingParams& p,
                                             const FieldRealization& f, const BoundarySpec& bc,
                                             const ExtendedWeights& w,
                                             const EnumerationLimits& lim) {
  std::vector<int> free;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!bc.value(v)) free.push_back(v);
  std::vector<LogAccumulator> per_mask(std::size_t{1} << free.size());
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
      w, lim);
  const double lz = total.log_total();
  std::vector<double> out(per_mask.size(), 0.0);
  for (std::size_t m = 0; m < out.size(); ++m)
    if (!per_mask[m].empty()) out[m] = std::exp(per_mask[m].log_total() - lz);
  return out;
}

namespace {

struct NestedBoundaries {
  std::vector<Vertex> inner;
  std::vector<Vertex> outer;
};

NestedBoundaries nested_boundaries(const Region& inner, const Region& outer) {
  if (!outer.contains(inner)) throw std::invalid_argument("inner region must lie inside outer");
  NestedBoundaries nb{internal_boundary(inner), internal_boundary(outer)};
  for (const Vertex& v : nb.inner) {
    if (std::binary_search(nb.outer.begin(), nb.outer.end(), v)) {
      throw std::invalid_argument("inner and outer boundaries overlap");
    }
  }
  return nb;
}

BoundarySpec two_sided(const Region& r, const NestedBoundaries& nb, int s_inner, int s_outer) {
  return BoundarySpec::uniform(r, nb.inner, s_inner).merged(BoundarySpec::uniform(r, nb.outer, s_outer));
}

}  // namespace

double surface_tension_exact(const Region& inner, const Region& outer, const CouplingParams& p,
                             const FieldRealization& f, const EnumerationLimits& lim) {
  const NestedBoundaries nb = nested_boundaries(inner, outer);
  auto lz = [&](int a, int b) { return log_partition_function(outer, p, f, two_sided(outer, nb, a, b), lim); };
  return (lz(1, 1) + lz(-1, -1) - lz(1, -1) - lz(-1, 1)) / p.beta;
}

double disagreement_count_means(const Region& inner, const Region& outer, const CouplingParams& p,
                                const FieldRealization& f, const EnumerationLimits& lim) {
  const NestedBoundaries nb = nested_boundaries(inner, outer);
  const auto plus = one_point_means(outer, p, f, BoundarySpec::uniform(outer, nb.outer, 1), lim);
  const auto minus = one_point_means(outer, p, f, BoundarySpec::uniform(outer, nb.outer, -1), lim);
  double d = 0.0;
  for (int i : outer.indices_of(inner.vertices()))
    d += 0.5 * (plus[static_cast<std::size_t>(i)] - minus[static_cast<std::size_t>(i)]);
  return d;
}

DisagreementCount disagreement_count_exact(const Region& inner, const Region& outer,
                                           const CouplingParams& p, const FieldRealization& f,
                                           const EnumerationLimits& lim) {
  const NestedBoundaries nb = nested_boundaries(inner, outer);
  DisagreementCount out;
  out.from_means = disagreement_count_means(inner, outer, p, f, lim);

  const ExtendedGraph g(outer);
  const std::vector<SiteId> sources = g.sites_of(nb.outer);
  const std::vector<SiteId> targets = g.sites_of(inner.vertices());
  FactoredPairMeasure measure(g, p, f, BoundarySpec::uniform(outer, nb.outer, 1),
                              BoundarySpec::uniform(outer, nb.outer, -1), lim);
  out.from_clusters = measure.expectation(
      [&](const DisagreementGeometry& geom) {
        return static_cast<double>(cluster_intersection_size(geom, sources, targets));
      },
      EdgeResolution::VertexConnectivity);

  const double scale = std::max({1.0, std::abs(out.from_means), std::abs(out.from_clusters)});
  if (std::abs(out.from_means - out.from_clusters) > 1e-10 * scale) {
    throw std::logic_error("disagreement count forms disagree");
  }
  return out;
}

}  // namespace rfim
