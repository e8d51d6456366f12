#pragma once

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "rfim/lattice.hpp"

namespace rfim {

using Spin = std::int8_t;

/// Spin values indexed like Region::vertices().
using SpinConfig = std::vector<Spin>;

/// Inverse temperature, coupling, uniform field and disorder strength.
struct CouplingParams {
  double beta = 1.0;
  double J = 1.0;
  double h = 0.0;
  double eps = 0.0;

  /// Throws std::invalid_argument unless beta is positive and finite, J >= 0
  /// and eps >= 0.
  void validate() const;

  /// Mid-edge zero weight t = (e^{2 beta J} - 1)^{-1/2}; requires J > 0.
  double t() const;
  /// Normalisation lambda = (2 sinh(beta J))^{1/2}; requires J > 0.
  double lambda() const;
  /// Conditional probability that a mid-edge between agreeing endpoints
  /// carries their common value: 1/(1 + t^2) = 1 - e^{-2 beta J}.
  double midedge_attach_probability() const;
};

/// Per-vertex disorder values eta_v.
class FieldRealization {
 public:
  FieldRealization() = default;

  static FieldRealization zeros(const Region& r);
  static FieldRealization from_values(const Region& r, const std::vector<double>& eta);

  void set(Vertex v, double eta) { eta_[v] = eta; }
  /// Throws std::out_of_range when v has no value.
  double at(Vertex v) const;
  bool covers(const Region& r) const;
  std::size_t size() const { return eta_.size(); }

  /// Values for r's vertices in canonical order.
  std::vector<double> values(const Region& r) const;

 private:
  std::unordered_map<Vertex, double, VertexHash> eta_;
};

/// h + eps * eta_v for each vertex of r in canonical order.
std::vector<double> local_fields(const Region& r, const CouplingParams& p, const FieldRealization& f);

/// H(sigma) = -J sum_{edges} s_u s_v - sum_v (h + eps eta_v) s_v.
double hamiltonian(const SpinConfig& cfg, const Region& r, const CouplingParams& p,
                   const FieldRealization& f);

/// Spin values on vertices and {-1,0,+1} values on mid-edges.
struct ExtendedConfig {
  SpinConfig sigma;
  std::vector<Spin> kappa;

  Spin at(const ExtendedGraph& g, SiteId s) const {
    return g.is_vertex(s) ? sigma[static_cast<std::size_t>(s)]
                          : kappa[static_cast<std::size_t>(g.edge_of(s))];
  }
  void set(const ExtendedGraph& g, SiteId s, Spin v) {
    if (g.is_vertex(s)) {
      sigma[static_cast<std::size_t>(s)] = v;
    } else {
      kappa[static_cast<std::size_t>(g.edge_of(s))] = v;
    }
  }

  friend bool operator==(const ExtendedConfig&, const ExtendedConfig&) = default;
};

/// Disagreeing endpoints force kappa = 0; kappa = +-1 forces both endpoints
/// to that value.
bool satisfies_hard_constraints(const ExtendedGraph& g, const ExtendedConfig& c);

/// Log of the single-factor weight W(a, b) = lambda (delta_{a,b} + t delta_{b,0}).
struct ExtendedWeights {
  double log_lambda = 0.0;
  double log_t = 0.0;

  static ExtendedWeights from(const CouplingParams& p);
  /// lambda replaced by 2 sinh(beta J), i.e. without the square root.  Used
  /// as a mutation to check that the partition-function identity is sharp.
  static ExtendedWeights corrupted_lambda(const CouplingParams& p);

  double log_w(Spin a, Spin b) const {
    if (b == a) return log_lambda;
    if (b == 0) return log_lambda + log_t;
    return -std::numeric_limits<double>::infinity();
  }
};

/// log of prod_{(v, e), v in e} W(sigma_v, kappa_e) * exp(beta sum_v b_v sigma_v),
/// with b_v the local field.  -inf when a hard constraint is violated.
double extended_log_weight(const ExtendedGraph& g, const ExtendedConfig& c,
                           const std::vector<double>& fields, double beta,
                           const ExtendedWeights& w);

/// Two extended configurations drawn under + and - boundary values on the
/// same graph, sharing one field realisation.
struct PairSample {
  ExtendedConfig plus;
  ExtendedConfig minus;
  FieldRealization field;
};

}  // namespace rfim
