#include "rfim/sampler.hpp"

#include <cmath>
#include <string>

namespace rfim {

FieldRealization gaussian_field(const Region& r, const RandomSource& rng) {
  std::mt19937_64 eng = rng.engine();
  std::normal_distribution<double> normal(0.0, 1.0);
  FieldRealization f;
  for (const Vertex& v : r.vertices()) f.set(v, normal(eng));
  return f;
}

FieldRealization tilt_field(const FieldRealization& f, const Region& inner, double t) {
  FieldRealization out = f;
  for (const Vertex& v : inner.vertices()) out.set(v, f.at(v) + t);
  return out;
}

double normalized_field_sum(const FieldRealization& f, const Region& r) {
  if (r.empty()) return 0.0;
  double s = 0.0;
  for (const Vertex& v : r.vertices()) s += f.at(v);
  return s / std::sqrt(static_cast<double>(r.size()));
}

HeatBath::HeatBath(const Region& r, const CouplingParams& p, const FieldRealization& f,
                   const BoundarySpec& bc)
    : region_(&r) {
  p.validate();
  std::vector<char> fixed(r.size(), 0);
  int first = 0;
  bool mixed = false;
  for (const auto& [s, v] : bc.entries()) {
    if (s < 0 || static_cast<std::size_t>(s) >= r.size() || (v != 1 && v != -1)) {
      throw std::invalid_argument("heat bath takes +-1 vertex boundary values only");
    }
    fixed[static_cast<std::size_t>(s)] = 1;
    if (first == 0) first = v;
    mixed = mixed || v != first;
  }
  start_value_ = (first == 0 || mixed) ? Spin{1} : static_cast<Spin>(first);

  const std::vector<double> b = local_fields(r, p, f);
  neighbor_offsets_.push_back(0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (fixed[i]) continue;
    const int v = static_cast<int>(i);
    free_.push_back(v);
    for (int e : r.incident_edges(v)) neighbors_.push_back(r.other_end(e, v));
    neighbor_offsets_.push_back(static_cast<int>(neighbors_.size()));
    for (int s = -4; s <= 4; ++s) {
      prob_plus_.push_back(1.0 / (1.0 + std::exp(-2.0 * p.beta * (p.J * s + b[i]))));
    }
  }
}

SpinConfig HeatBath::uniform_start(Spin s) const {
  SpinConfig cfg(region_->size(), start_value_);
  for (int v : free_) cfg[static_cast<std::size_t>(v)] = s;
  return cfg;
}

void HeatBath::sweep(SpinConfig& cfg, const RandomSource& rng, std::uint64_t time) const {
  for (std::size_t k = 0; k < free_.size(); ++k) {
    int sum = 0;
    for (int n = neighbor_offsets_[k]; n < neighbor_offsets_[k + 1]; ++n)
      sum += cfg[static_cast<std::size_t>(neighbors_[static_cast<std::size_t>(n)])];
    const int v = free_[k];
    const double u = rng.uniform(time, static_cast<std::uint64_t>(v));
    cfg[static_cast<std::size_t>(v)] = u < prob_plus_[k * 9 + static_cast<std::size_t>(sum + 4)] ? Spin{1} : Spin{-1};
  }
}

void HeatBath::run(ChainState& state, const RandomSource& rng, std::size_t sweeps) const {
  for (std::size_t s = 0; s < sweeps; ++s) sweep(state.cfg, rng, state.sweep_count++);
}

SpinConfig glauber_sample(const Region& r, const CouplingParams& p, const FieldRealization& f,
                          const BoundarySpec& bc, std::size_t sweeps, const RandomSource& rng) {
  if (sweeps < 1) throw std::invalid_argument("glauber_sample needs at least one sweep");
  HeatBath hb(r, p, f, bc);
  ChainState state{hb.boundary_start(), 0};
  hb.run(state, rng, sweeps);
  return state.cfg;
}

SpinConfig cftp_sample(const Region& r, const CouplingParams& p, const FieldRealization& f,
                       const BoundarySpec& bc, const RandomSource& rng, int max_epochs,
                       CftpStats* stats) {
  HeatBath hb(r, p, f, bc);
  std::size_t horizon = 1;
  for (int epoch = 1; epoch <= max_epochs; ++epoch, horizon *= 2) {
    SpinConfig top = hb.uniform_start(Spin{1});
    SpinConfig bottom = hb.uniform_start(Spin{-1});
    for (std::size_t s = horizon; s >= 1; --s) {
      hb.sweep(top, rng, s);
      hb.sweep(bottom, rng, s);
    }
    if (top == bottom) {
      if (stats) *stats = {static_cast<std::size_t>(epoch), horizon};
      return top;
    }
  }
  throw CftpNonCoalescence("coupling from the past did not coalesce within " +
                           std::to_string(max_epochs) + " epochs");
}

ExtendedConfig attach_midedges(const ExtendedGraph& g, const SpinConfig& cfg,
                               const CouplingParams& p, const RandomSource& rng) {
  const double q = p.midedge_attach_probability();
  ExtendedConfig out{cfg, std::vector<Spin>(static_cast<std::size_t>(g.num_edges()), Spin{0})};
  const auto& edges = g.region().edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Spin a = cfg[static_cast<std::size_t>(edges[e].a)];
    const Spin b = cfg[static_cast<std::size_t>(edges[e].b)];
    if (a == b && rng.uniform(e, 0) < q) out.kappa[e] = a;
  }
  return out;
}

PairSample sample_pair(const ExtendedGraph& g, const CouplingParams& p, const FieldRealization& f,
                       std::span<const Vertex> boundary, SamplerMode mode, const RandomSource& rng,
                       std::size_t sweeps) {
  const Region& r = g.region();
  if (sweeps == 0) sweeps = 100 * r.size();
  auto draw = [&](int value, Stream purpose) {
    const BoundarySpec bc = BoundarySpec::uniform(r, boundary, value);
    const RandomSource stream = rng.child(purpose);
    SpinConfig cfg = mode == SamplerMode::Cftp ? cftp_sample(r, p, f, bc, stream.child(Stream::Chain))
                                               : glauber_sample(r, p, f, bc, sweeps, stream.child(Stream::Chain));
    return attach_midedges(g, cfg, p, stream.child(Stream::Midedge));
  };
  return PairSample{draw(1, Stream::Plus), draw(-1, Stream::Minus), f};
}

}  // namespace rfim
