#include "rfim/pair_exact.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace rfim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Number of extended configurations consistent with bc, computed from the
/// vertex configurations alone.
double count_extended(const ExtendedGraph& g, const BoundarySpec& bc, const EnumerationLimits& lim) {
  const std::vector<std::int8_t> fixed = bc.dense(g.num_sites());
  std::vector<int> free;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (fixed[static_cast<std::size_t>(v)] == BoundarySpec::kFree) free.push_back(v);
  if (static_cast<int>(free.size()) > lim.max_free_vertices) {
    throw CapExceeded("pair enumeration over " + std::to_string(free.size()) + " free vertices");
  }
  SpinConfig sigma(static_cast<std::size_t>(g.num_vertices()), Spin{1});
  for (int v = 0; v < g.num_vertices(); ++v)
    if (fixed[static_cast<std::size_t>(v)] != BoundarySpec::kFree)
      sigma[static_cast<std::size_t>(v)] = fixed[static_cast<std::size_t>(v)];
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    for (std::size_t j = 0; j < free.size(); ++j)
      sigma[static_cast<std::size_t>(free[j])] = (mask >> j) & 1u ? Spin{1} : Spin{-1};
    double n = 1.0;
    for (int e = 0; e < g.num_edges() && n > 0.0; ++e) {
      const Edge& ed = g.region().edges()[static_cast<std::size_t>(e)];
      const Spin a = sigma[static_cast<std::size_t>(ed.a)];
      const Spin b = sigma[static_cast<std::size_t>(ed.b)];
      const std::int8_t pin = fixed[static_cast<std::size_t>(g.midedge(e))];
      int options = 0;
      for (Spin k : {Spin{-1}, Spin{0}, Spin{1}}) {
        if (pin != BoundarySpec::kFree && pin != k) continue;
        if (k == 0 || (a == k && b == k)) ++options;
      }
      n *= options;
    }
    total += n;
  }
  return total;
}

FactoredPairMeasure::Copy build_copy(const ExtendedGraph& g, const CouplingParams& p,
                                     const FieldRealization& f, const BoundarySpec& bc,
                                     const EnumerationLimits& lim) {
  p.validate();
  if (!is_allowed(g, bc)) throw std::invalid_argument("boundary values are not an allowed configuration");
  const ExtendedWeights w = ExtendedWeights::from(p);
  const std::vector<std::int8_t> fixed = bc.dense(g.num_sites());
  std::vector<int> free;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (fixed[static_cast<std::size_t>(v)] == BoundarySpec::kFree) free.push_back(v);
  if (static_cast<int>(free.size()) > lim.max_free_vertices) {
    throw CapExceeded("factored pair measure over " + std::to_string(free.size()) + " free vertices");
  }
  const std::vector<double> fields = local_fields(g.region(), p, f);
  const auto E = static_cast<std::size_t>(g.num_edges());

  FactoredPairMeasure::Copy copy;
  std::vector<double> log_weights;
  SpinConfig sigma(static_cast<std::size_t>(g.num_vertices()), Spin{1});
  for (int v = 0; v < g.num_vertices(); ++v)
    if (fixed[static_cast<std::size_t>(v)] != BoundarySpec::kFree)
      sigma[static_cast<std::size_t>(v)] = fixed[static_cast<std::size_t>(v)];
  std::vector<double> kappa(E * 3);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    for (std::size_t j = 0; j < free.size(); ++j)
      sigma[static_cast<std::size_t>(free[j])] = (mask >> j) & 1u ? Spin{1} : Spin{-1};
    double lw = 0.0;
    for (std::size_t v = 0; v < sigma.size(); ++v) lw += p.beta * fields[v] * sigma[v];
    for (std::size_t e = 0; e < E && lw > kNegInf; ++e) {
      const Edge& ed = g.region().edges()[e];
      const Spin a = sigma[static_cast<std::size_t>(ed.a)];
      const Spin b = sigma[static_cast<std::size_t>(ed.b)];
      const std::int8_t pin = fixed[static_cast<std::size_t>(g.midedge(static_cast<int>(e)))];
      std::array<double, 3> lk{kNegInf, kNegInf, kNegInf};
      double top = kNegInf;
      for (int k = -1; k <= 1; ++k) {
        if (pin != BoundarySpec::kFree && pin != k) continue;
        lk[static_cast<std::size_t>(k + 1)] = w.log_w(a, static_cast<Spin>(k)) + w.log_w(b, static_cast<Spin>(k));
        top = std::max(top, lk[static_cast<std::size_t>(k + 1)]);
      }
      if (top == kNegInf) {
        lw = kNegInf;
        break;
      }
      double sum = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        kappa[e * 3 + k] = std::exp(lk[k] - top);
        sum += kappa[e * 3 + k];
      }
      for (std::size_t k = 0; k < 3; ++k) kappa[e * 3 + k] /= sum;
      lw += top + std::log(sum);
    }
    if (lw == kNegInf) continue;
    copy.sigma.push_back(sigma);
    log_weights.push_back(lw);
    copy.kappa.insert(copy.kappa.end(), kappa.begin(), kappa.end());
  }
  LogAccumulator acc;
  for (double lw : log_weights) acc.add(lw);
  const double lz = acc.log_total();
  for (double lw : log_weights) copy.prob.push_back(std::exp(lw - lz));
  return copy;
}

}  // namespace

std::vector<WeightedConfig> enumerate_extended(const ExtendedGraph& g, const CouplingParams& p,
                                               const FieldRealization& f, const BoundarySpec& bc,
                                               const EnumerationLimits& lim) {
  std::vector<WeightedConfig> out;
  LogAccumulator acc;
  for_each_extended(
      g, p, f, bc,
      [&](const ExtendedConfig& c, double lw) {
        out.push_back({c, lw});
        acc.add(lw);
      },
      ExtendedWeights::from(p), lim);
  const double lz = acc.log_total();
  for (auto& wc : out) wc.log_prob -= lz;
  return out;
}

PairEnumeration::PairEnumeration(const ExtendedGraph& g, const CouplingParams& p,
                                 const FieldRealization& f, const BoundarySpec& bc_plus,
                                 const BoundarySpec& bc_minus, const EnumerationLimits& lim)
    : g_(&g) {
  const double n = count_extended(g, bc_plus, lim) * count_extended(g, bc_minus, lim);
  if (n > static_cast<double>(lim.max_pairs)) {
    throw CapExceeded("pair enumeration of " + std::to_string(n) + " pairs exceeds the cap");
  }
  plus_ = enumerate_extended(g, p, f, bc_plus, lim);
  minus_ = enumerate_extended(g, p, f, bc_minus, lim);
}

double PairEnumeration::expectation(const std::function<double(const DisagreementGeometry&)>& F) const {
  double total = 0.0;
  for (const auto& a : plus_) {
    for (const auto& b : minus_) {
      total += std::exp(a.log_prob + b.log_prob) * F(disagreement_set(*g_, a.config, b.config));
    }
  }
  return total;
}

FactoredPairMeasure::FactoredPairMeasure(const ExtendedGraph& g, const CouplingParams& p,
                                         const FieldRealization& f, const BoundarySpec& bc_plus,
                                         const BoundarySpec& bc_minus, const EnumerationLimits& lim)
    : g_(&g),
      lim_(lim),
      plus_(build_copy(g, p, f, bc_plus, lim)),
      minus_(build_copy(g, p, f, bc_minus, lim)) {}

double FactoredPairMeasure::expectation(const std::function<double(const DisagreementGeometry&)>& F,
                                        EdgeResolution resolution,
                                        std::span<const SiteId> relevant_midedges) const {
  const ExtendedGraph& g = *g_;
  const auto V = static_cast<std::size_t>(g.num_vertices());
  const auto E = static_cast<std::size_t>(g.num_edges());
  std::vector<char> relevant(E, 0);
  for (SiteId s : relevant_midedges)
    if (g.is_midedge(s)) relevant[static_cast<std::size_t>(g.edge_of(s))] = 1;

  std::vector<char> membership(static_cast<std::size_t>(g.num_sites()), 0);
  std::vector<int> uncertain;
  std::vector<double> p_in;
  std::vector<double> p_out;
  std::size_t patterns = 0;
  double total = 0.0;
  for (std::size_t i = 0; i < plus_.sigma.size(); ++i) {
    for (std::size_t j = 0; j < minus_.sigma.size(); ++j) {
      const double weight = plus_.prob[i] * minus_.prob[j];
      if (weight == 0.0) continue;
      const SpinConfig& a = plus_.sigma[i];
      const SpinConfig& b = minus_.sigma[j];
      for (std::size_t v = 0; v < V; ++v) membership[v] = a[v] != b[v];
      uncertain.clear();
      p_in.clear();
      p_out.clear();
      for (std::size_t e = 0; e < E; ++e) {
        const double* ka = &plus_.kappa[(i * E + e) * 3];
        const double* kb = &minus_.kappa[(j * E + e) * 3];
        double differ = 0.0;
        double agree = 0.0;
        for (int k = 0; k < 3; ++k) {
          for (int l = 0; l < 3; ++l) (k == l ? agree : differ) += ka[k] * kb[l];
        }
        const std::size_t site = V + e;
        membership[site] = 0;
        if (agree == 0.0) {
          membership[site] = 1;
          continue;
        }
        if (differ == 0.0) continue;
        const Edge& ed = g.region().edges()[e];
        const bool joins = membership[static_cast<std::size_t>(ed.a)] && membership[static_cast<std::size_t>(ed.b)];
        if (resolution == EdgeResolution::Full || joins || relevant[e]) {
          uncertain.push_back(static_cast<int>(e));
          p_in.push_back(differ);
          p_out.push_back(agree);
        }
      }
      if (uncertain.size() > 40) throw CapExceeded("too many uncertain mid-edges");
      const std::uint64_t count = std::uint64_t{1} << uncertain.size();
      patterns += count;
      if (patterns > lim_.max_pairs) {
        throw CapExceeded("factored pair enumeration exceeds the pattern cap");
      }
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        double w = weight;
        for (std::size_t u = 0; u < uncertain.size(); ++u) {
          const bool in = (mask >> u) & 1u;
          membership[V + static_cast<std::size_t>(uncertain[u])] = in;
          w *= in ? p_in[u] : p_out[u];
        }
        if (w == 0.0) continue;
        total += w * F(DisagreementGeometry(g, membership));
      }
    }
  }
  return total;
}

double pair_expectation(const ExtendedGraph& g, const CouplingParams& p, const FieldRealization& f,
                        const BoundarySpec& bc_plus, const BoundarySpec& bc_minus,
                        const std::function<double(const DisagreementGeometry&)>& F,
                        PairEngine engine, const EnumerationLimits& lim) {
  if (engine == PairEngine::Auto) {
    const double np = count_extended(g, bc_plus, lim);
    const double nm = count_extended(g, bc_minus, lim);
    const bool small = np * nm <= static_cast<double>(lim.max_pairs) && std::max(np, nm) <= 262144.0;
    engine = small ? PairEngine::Brute : PairEngine::Factored;
  }
  if (engine == PairEngine::Brute) return PairEnumeration(g, p, f, bc_plus, bc_minus, lim).expectation(F);
  return FactoredPairMeasure(g, p, f, bc_plus, bc_minus, lim).expectation(F, EdgeResolution::Full);
}

namespace {

double connection_event_probability(const ExtendedGraph& g, std::span<const SiteId> source,
                                    std::span<const SiteId> target, const CouplingParams& p,
                                    const FieldRealization& f, const BoundarySpec& bc_plus,
                                    const BoundarySpec& bc_minus, PairEngine engine,
                                    const EnumerationLimits& lim, bool joined) {
  auto event = [&](const DisagreementGeometry& geom) { return connected(geom, source, target) == joined ? 1.0 : 0.0; };
  if (engine == PairEngine::Brute) {
    return PairEnumeration(g, p, f, bc_plus, bc_minus, lim).expectation(event);
  }
  if (engine == PairEngine::Auto) {
    const double n = count_extended(g, bc_plus, lim) * count_extended(g, bc_minus, lim);
    if (n <= 1e5) return PairEnumeration(g, p, f, bc_plus, bc_minus, lim).expectation(event);
  }
  std::vector<SiteId> relevant(source.begin(), source.end());
  relevant.insert(relevant.end(), target.begin(), target.end());
  return FactoredPairMeasure(g, p, f, bc_plus, bc_minus, lim)
      .expectation(event, EdgeResolution::VertexConnectivity, relevant);
}

}  // namespace

double pair_connection_probability_exact(const ExtendedGraph& g, std::span<const SiteId> source,
                                         std::span<const SiteId> target, const CouplingParams& p,
                                         const FieldRealization& f, const BoundarySpec& bc_plus,
                                         const BoundarySpec& bc_minus, PairEngine engine,
                                         const EnumerationLimits& lim) {
  return connection_event_probability(g, source, target, p, f, bc_plus, bc_minus, engine, lim, true);
}

double boundary_separation_probability(const Region& inner, const Region& outer,
                                       const CouplingParams& p, const FieldRealization& f,
                                       PairEngine engine, const EnumerationLimits& lim) {
  if (!outer.contains(inner)) throw std::invalid_argument("inner region must lie inside outer");
  const ExtendedGraph g(outer);
  const std::vector<Vertex> a = internal_boundary(inner);
  const std::vector<Vertex> b = internal_boundary(outer);
  BoundarySpec plus = BoundarySpec::uniform(outer, a, 1).merged(BoundarySpec::uniform(outer, b, 1));
  BoundarySpec minus = BoundarySpec::uniform(outer, a, -1).merged(BoundarySpec::uniform(outer, b, -1));
  const std::vector<SiteId> sa = g.sites_of(a);
  const std::vector<SiteId> sb = g.sites_of(b);
  return connection_event_probability(g, sa, sb, p, f, plus, minus, engine, lim, false);
}

std::pair<ExtendedConfig, ExtendedConfig> swap_clusters(const ExtendedGraph& g,
                                                        const ExtendedConfig& a,
                                                        const ExtendedConfig& b,
                                                        std::span<const SiteId> S,
                                                        std::span<const SiteId> A) {
  const DisagreementGeometry geom = disagreement_set(g, a, b);
  const std::vector<SiteId> cluster = cluster_of(geom, S);
  std::pair<ExtendedConfig, ExtendedConfig> out{a, b};
  for (SiteId s : A)
    if (std::binary_search(cluster.begin(), cluster.end(), s)) return out;
  for (SiteId s : cluster) {
    out.first.set(g, s, b.at(g, s));
    out.second.set(g, s, a.at(g, s));
  }
  return out;
}

}  // namespace rfim
