#include "rfim/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rfim {

void CouplingParams::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be positive and finite");
  }
  if (!(J >= 0.0) || !std::isfinite(J)) throw std::invalid_argument("J must be >= 0");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be >= 0");
  if (!std::isfinite(h)) throw std::invalid_argument("h must be finite");
}

double CouplingParams::t() const {
  if (!(J > 0.0)) throw std::invalid_argument("extended model needs J > 0");
  return 1.0 / std::sqrt(std::expm1(2.0 * J * beta));
}

double CouplingParams::lambda() const {
  if (!(J > 0.0)) throw std::invalid_argument("extended model needs J > 0");
  return std::sqrt(2.0 * std::sinh(J * beta));
}

double CouplingParams::midedge_attach_probability() const {
  return -std::expm1(-2.0 * beta * J);
}

FieldRealization FieldRealization::zeros(const Region& r) {
  FieldRealization f;
  for (const Vertex& v : r.vertices()) f.set(v, 0.0);
  return f;
}

FieldRealization FieldRealization::from_values(const Region& r, const std::vector<double>& eta) {
  if (eta.size() != r.size()) throw std::invalid_argument("field size does not match region");
  FieldRealization f;
  for (std::size_t i = 0; i < eta.size(); ++i) f.set(r.vertices()[i], eta[i]);
  return f;
}

double FieldRealization::at(Vertex v) const {
  auto it = eta_.find(v);
  if (it == eta_.end()) {
    throw std::out_of_range("no field value at (" + std::to_string(v.x) + "," +
                            std::to_string(v.y) + ")");
  }
  return it->second;
}

bool FieldRealization::covers(const Region& r) const {
  for (const Vertex& v : r.vertices())
    if (eta_.count(v) == 0) return false;
  return true;
}

std::vector<double> FieldRealization::values(const Region& r) const {
  std::vector<double> out;
  out.reserve(r.size());
  for (const Vertex& v : r.vertices()) out.push_back(at(v));
  return out;
}

std::vector<double> local_fields(const Region& r, const CouplingParams& p,
                                 const FieldRealization& f) {
  std::vector<double> out = f.values(r);
  for (double& b : out) b = p.h + p.eps * b;
  return out;
}

double hamiltonian(const SpinConfig& cfg, const Region& r, const CouplingParams& p,
                   const FieldRealization& f) {
  if (cfg.size() != r.size()) throw std::invalid_argument("configuration size mismatch");
  double energy = 0.0;
  for (const Edge& e : r.edges()) {
    energy -= p.J * cfg[static_cast<std::size_t>(e.a)] * cfg[static_cast<std::size_t>(e.b)];
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    energy -= (p.h + p.eps * f.at(r.vertices()[i])) * cfg[i];
  }
  return energy;
}

bool satisfies_hard_constraints(const ExtendedGraph& g, const ExtendedConfig& c) {
  const auto& edges = g.region().edges();
  if (c.sigma.size() != static_cast<std::size_t>(g.num_vertices()) ||
      c.kappa.size() != edges.size()) {
    return false;
  }
  for (Spin s : c.sigma)
    if (s != 1 && s != -1) return false;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    Spin a = c.sigma[static_cast<std::size_t>(edges[e].a)];
    Spin b = c.sigma[static_cast<std::size_t>(edges[e].b)];
    Spin k = c.kappa[e];
    if (k < -1 || k > 1) return false;
    if (a != b && k != 0) return false;
    if (k != 0 && (a != k || b != k)) return false;
  }
  return true;
}

ExtendedWeights ExtendedWeights::from(const CouplingParams& p) {
  return {std::log(p.lambda()), std::log(p.t())};
}

ExtendedWeights ExtendedWeights::corrupted_lambda(const CouplingParams& p) {
  return {std::log(2.0 * std::sinh(p.J * p.beta)), std::log(p.t())};
}

double extended_log_weight(const ExtendedGraph& g, const ExtendedConfig& c,
                           const std::vector<double>& fields, double beta,
                           const ExtendedWeights& w) {
  double lw = 0.0;
  const auto& edges = g.region().edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    lw += w.log_w(c.sigma[static_cast<std::size_t>(edges[e].a)], c.kappa[e]);
    lw += w.log_w(c.sigma[static_cast<std::size_t>(edges[e].b)], c.kappa[e]);
  }
  for (std::size_t v = 0; v < c.sigma.size(); ++v) lw += beta * fields[v] * c.sigma[v];
  return lw;
}

}  // namespace rfim
