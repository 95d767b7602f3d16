// Copyright (c) 2026 the precision-atlas authors.
// SPDX-License-Identifier: Apache-2.0
//
// Precision delta, RMSE, mutual information and e^{-I} for estimation
// models, plus the closed-form asymptotics they are compared against.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "patlas/models.hpp"
#include "patlas/quadrature.hpp"

namespace patlas::infometrics {

using models::EstimationModel;
using models::RangeKind;

namespace detail {

// 0 ln 0 = 0 at the zeros of the likelihood.
inline double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

// Panel edges for the entropy integral: range endpoints plus the model's
// peak/kink hints, deduplicated.
inline std::vector<double> panel_edges(const EstimationModel& m) {
  std::vector<double> edges = m.panel_hints;
  edges.push_back(m.range.lo);
  edges.push_back(m.range.hi);
  std::sort(edges.begin(), edges.end());
  std::vector<double> out;
  for (double e : edges) {
    if (e < m.range.lo || e > m.range.hi) continue;
    if (out.empty() || e - out.back() > 1e-13) out.push_back(e);
  }
  if (out.front() > m.range.lo) out.insert(out.begin(), m.range.lo);
  if (out.back() < m.range.hi) out.push_back(m.range.hi);
  return out;
}

struct EntropyPieces {
  double conditional_integral = 0.0;  // int sum_r P_r ln P_r
  std::vector<double> marginals;      // prior * int P_r
};

inline EntropyPieces entropy_pieces(const EstimationModel& m, int nodes) {
  const auto rule = quadrature::gauss_legendre(nodes);
  const auto edges = panel_edges(m);
  const std::size_t m_count = m.outcomes.size();
  EntropyPieces out;
  out.marginals.assign(m_count, 0.0);
  const double prior = 1.0 / m.range.length();
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double mid = (edges[p] + edges[p + 1]) / 2.0;
    const double halfw = (edges[p + 1] - edges[p]) / 2.0;
    if (!(halfw > 0.0)) continue;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = mid + halfw * rule.nodes[i];
      const double w = halfw * rule.weights[i];
      double acc = 0.0;
      for (std::size_t r = 0; r < m_count; ++r) {
        const double pr = m.probability(r, x);
        acc += xlogx(pr);
        out.marginals[r] += w * prior * pr;
      }
      out.conditional_integral += w * acc;
    }
  }
  return out;
}

}  // namespace detail

// Mutual information (nats) between the uniformly distributed true parameter
// and the outcome:  I = H(z) + c * sum_r int P_r ln P_r, with c the prior
// density (1/2 scaled, 1/(2pi) angular).  When every outcome has the uniform
// marginal 1/M this is exactly ln M + c sum_r int P_r ln P_r; models with
// unreachable outcomes (the parity-thinned metrology batch) need the marginal
// entropy H(z) to report their true information.  Composite Gauss-Legendre
// with `nodes` points per panel; panels split at the model's hints.
inline double mutual_information(const EstimationModel& m, int nodes = 64) {
  if (nodes < 32) throw std::invalid_argument("mutual_information: need at least 32 nodes");
  const double defect = models::normalization_defect(m, 9);
  if (defect > 1e-8) {
    throw std::invalid_argument("mutual_information: model is not normalized (defect = " +
                                std::to_string(defect) + ")");
  }
  const double prior = 1.0 / m.range.length();
  const auto pieces = detail::entropy_pieces(m, nodes);
  double marginal_entropy = 0.0;
  for (double p : pieces.marginals) marginal_entropy -= detail::xlogx(p);
  return marginal_entropy + prior * pieces.conditional_integral;
}

struct MiEstimate {
  double value = 0.0;
  double error_estimate = 0.0;  // |I(nodes) - I(nodes/2)|
};

inline MiEstimate mutual_information_with_error(const EstimationModel& m, int nodes = 64) {
  MiEstimate out;
  out.value = mutual_information(m, nodes);
  const double coarse = mutual_information(m, std::max(32, nodes / 2));
  out.error_estimate = std::abs(out.value - coarse);
  return out;
}

// Angular distance folded into [0, pi].
inline double wrapped_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

// Root-mean-square error of the estimate about the true value,
// sqrt(sum_r P_r(x) (z_r - x)^2), with wrapped distance on angular ranges.
inline double rmse(const EstimationModel& m, double x_true) {
  double acc = 0.0;
  for (std::size_t r = 0; r < m.outcomes.size(); ++r) {
    const double p = m.probability(r, x_true);
    const double d = m.range.kind == RangeKind::Angular
                         ? wrapped_distance(m.outcomes[r], x_true)
                         : m.outcomes[r] - x_true;
    acc += p * d * d;
  }
  return std::sqrt(acc);
}

// Chord-metric RMSE for angular models:
// sqrt(sum_r P_r(phi) sin^2((phi - z_r)/2)).
inline double chord_rmse(const EstimationModel& m, double phi) {
  if (m.range.kind != RangeKind::Angular) {
    throw std::invalid_argument("chord_rmse: model is not angular");
  }
  double acc = 0.0;
  for (std::size_t r = 0; r < m.outcomes.size(); ++r) {
    const double s = std::sin((phi - m.outcomes[r]) / 2.0);
    acc += m.probability(r, phi) * s * s;
  }
  return std::sqrt(acc);
}

// Overall precision delta = max_r delta_r over the outcome set, using the
// model's registered inversion rule.
inline double precision(const EstimationModel& m) {
  if (!m.inversion_halfwidth) {
    throw std::invalid_argument("precision: model '" + m.label + "' has no registered inversion rule");
  }
  double worst = 0.0;
  for (std::size_t r = 0; r < m.outcomes.size(); ++r) {
    worst = std::max(worst, m.inversion_halfwidth(r));
  }
  return worst;
}

// Closed-form reference rows (RMSE, delta, I, e^{-I} and the M(N) column).
enum class ModelKind { SQL, QPEA, QMetrology };

struct AsymptoticRecord {
  ModelKind kind = ModelKind::SQL;
  double m = 0.0;            // outcome count M(N)
  double rmse = 0.0;
  double delta = 0.0;
  double mutual_info = 0.0;  // nats
  double exp_neg_i = 0.0;
  std::string note;
};

struct AsymptoticParams {
  std::int64_t n = 0;   // probe count (SQL), 10^digits (QMetrology)
  int qubits = 0;       // QPEA register size
  std::int64_t nu = 0;  // repetitions per batch (QMetrology)
};

inline AsymptoticRecord asymptotics(ModelKind kind, const AsymptoticParams& p) {
  AsymptoticRecord rec;
  rec.kind = kind;
  switch (kind) {
    case ModelKind::SQL: {
      if (p.n < 1) throw std::invalid_argument("asymptotics: SQL needs n >= 1");
      rec.m = static_cast<double>(p.n) + 1.0;
      rec.rmse = 1.0 / std::sqrt(rec.m);
      rec.delta = 1.0 / std::sqrt(rec.m);
      rec.mutual_info = 0.5 * std::log(rec.m / (kTwoPi * std::exp(1.0)));
      rec.note = "M = N + 1";
      break;
    }
    case ModelKind::QPEA: {
      if (p.qubits < 1) throw std::invalid_argument("asymptotics: QPEA needs qubits >= 1");
      rec.m = std::pow(2.0, p.qubits);
      rec.rmse = std::sqrt(8.0 * std::log(2.0) / rec.m);
      rec.delta = 1.0 / rec.m;
      rec.mutual_info = std::log(rec.m) - 2.0 * (1.0 - kEulerGamma);
      rec.note = "M = 2^N";
      break;
    }
    case ModelKind::QMetrology: {
      if (p.n < 10 || p.nu < 1) throw std::invalid_argument("asymptotics: QMetrology needs n, nu");
      const auto model = models::qmetrology_model(p.n, p.nu);
      rec.m = model.outcome_count();
      rec.rmse = 1.0 / (10.0 * std::sqrt(static_cast<double>(p.nu)));
      rec.delta = 1.0 / std::sqrt(rec.m);
      rec.mutual_info = 0.5 * std::log(rec.m);
      rec.note = "M = (2 nu + 1)^{log10 N}";
      break;
    }
  }
  rec.exp_neg_i = std::exp(-rec.mutual_info);
  return rec;
}

// Total mutual information of the batched metrology strategy: the digit
// batches are independent, so the total is digits * (batch MI).
inline double qmetrology_mutual_info(std::int64_t n, std::int64_t nu, int nodes = 64) {
  const auto model = models::qmetrology_model(n, nu);
  return model.digits * mutual_information(model.batch, nodes);
}

// Per-digit RMSE aggregation, sqrt(sum_{i=1..d} 10^{-2i} / nu); approaches
// 1/(10 sqrt(nu)) and equals it exactly for d = 1.
inline double qmetrology_rmse_aggregate(int digits, std::int64_t nu) {
  if (digits < 1 || nu < 1) {
    throw std::invalid_argument("qmetrology_rmse_aggregate: needs digits >= 1, nu >= 1");
  }
  double acc = 0.0;
  for (int i = 1; i <= digits; ++i) {
    acc += std::pow(10.0, -2.0 * i) / static_cast<double>(nu);
  }
  return std::sqrt(acc);
}

// A full metric row for one model at one true parameter value.
struct MetricReport {
  std::size_t m_outcomes = 0;
  double delta = 0.0;
  double rmse = 0.0;
  double mutual_info = 0.0;
  double exp_neg_i = 0.0;
  double quadrature_error_estimate = 0.0;
  std::optional<AsymptoticRecord> asymptotic;
};

inline MetricReport make_report(const EstimationModel& m, double x_true, int nodes = 64,
                                std::optional<AsymptoticRecord> closed_form = std::nullopt) {
  MetricReport rep;
  rep.m_outcomes = m.outcomes.size();
  rep.delta = precision(m);
  rep.rmse = rmse(m, x_true);
  const auto mi = mutual_information_with_error(m, nodes);
  rep.mutual_info = mi.value;
  rep.quadrature_error_estimate = mi.error_estimate;
  rep.exp_neg_i = std::exp(-rep.mutual_info);
  rep.asymptotic = std::move(closed_form);

  const double m_count = static_cast<double>(rep.m_outcomes);
  if (rep.mutual_info > std::log(m_count) + rep.quadrature_error_estimate + 1e-9) {
    throw std::runtime_error("make_report: mutual information exceeds ln M beyond quadrature error");
  }
  if (rep.delta < 1.0 / m_count - 1e-12) {
    throw std::runtime_error("make_report: precision fell below the 1/M bound");
  }
  return rep;
}

// Finite-sum form of the phase-estimation RMSE at phi = pi - pi/M:
// sigma^2 = (8 pi^2 / M^4) sum over the half-odd-integer grid
// u = 1/2, 3/2, ..., (M-1)/2 of u^2 csc^2(u pi / M).  (The change of
// variable u = (M+1)/2 - r lands on half-odd integers for even M.)
inline double qpea_rmse_peak_sum(std::int64_t m) {
  if (m < 2 || m % 2 != 0) {
    throw std::invalid_argument("qpea_rmse_peak_sum: M must be even and >= 2");
  }
  double acc = 0.0;
  for (double u = 0.5; u < m / 2.0; u += 1.0) {
    const double s = std::sin(u * kPi / static_cast<double>(m));
    acc += u * u / (s * s);
  }
  const double m4 = std::pow(static_cast<double>(m), 4.0);
  return std::sqrt(8.0 * kPi * kPi / m4 * acc);
}

}  // namespace patlas::infometrics
