// Copyright (c) 2026 the precision-atlas authors.
// SPDX-License-Identifier: Apache-2.0
//
// Estimation models as concrete likelihood families: single-shot
// Mach-Zehnder, N-repetition binomial, the phase-estimation kernel, the
// biased deterministic estimator, and the batched metrology composite.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "patlas/hilbert.hpp"

namespace patlas::models {

enum class RangeKind {
  Scaled,   // x in [-1, 1], uniform prior 1/2
  Angular,  // phi in [0, 2pi), uniform prior 1/(2pi)
};

struct ParamRange {
  RangeKind kind = RangeKind::Scaled;
  double lo = -1.0;
  double hi = 1.0;

  static ParamRange scaled() { return {RangeKind::Scaled, -1.0, 1.0}; }
  static ParamRange angular() { return {RangeKind::Angular, 0.0, kTwoPi}; }
  double length() const { return hi - lo; }
};

// A finite-outcome measurement model: strictly increasing outcome values
// z_1..z_M and likelihoods P_r(x) over the parameter range.
//
// `inversion_halfwidth`, when set, gives the per-outcome inversion radius
// delta_r (in scaled units, where the precision bound reads 1/M) used by
// infometrics::precision.  `panel_hints` marks parameter values where the
// likelihoods peak or kink, and steers the quadrature panels.
struct EstimationModel {
  std::string label;
  std::vector<double> outcomes;
  ParamRange range;
  std::function<double(std::size_t, double)> likelihood;
  std::function<double(std::size_t)> inversion_halfwidth;
  std::vector<double> panel_hints;

  std::size_t m_outcomes() const { return outcomes.size(); }
  double probability(std::size_t r, double x) const { return likelihood(r, x); }
};

namespace detail {

inline double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// C(n,k) p^k (1-p)^(n-k), stable in log space; 0^0 = 1 at the endpoints.
inline double binomial_pmf(int n, int k, double p) {
  if (k < 0 || k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  return std::exp(log_binomial(n, k) + k * std::log(p) + (n - k) * std::log1p(-p));
}

}  // namespace detail

// Exact inversion of |x - z_r| <= sigma for the N-repetition binomial:
// x in [center - halfwidth, center + halfwidth].
struct InvertedInterval {
  double center = 0.0;
  double halfwidth = 0.0;

  double lo() const { return center - halfwidth; }
  double hi() const { return center + halfwidth; }
  bool contains(double x) const { return x >= lo() && x <= hi(); }
};

inline InvertedInterval invert_binomial(double z_r, int n) {
  if (n < 1) throw std::invalid_argument("invert_binomial: n must be >= 1");
  if (std::abs(z_r) > 1.0) {
    throw std::invalid_argument("invert_binomial: |z_r| must be <= 1");
  }
  const double np1 = n + 1.0;
  const double arg = 1.0 / np1 - n * z_r * z_r / (np1 * np1);
  if (arg < 0.0) {
    throw std::invalid_argument("invert_binomial: estimate outside the feasible set");
  }
  return InvertedInterval{n * z_r / np1, std::sqrt(arg)};
}

// Large-N limit of the inversion radius, sqrt(1 - z^2) / sqrt(n).
inline double binomial_halfwidth_large_n(double z_r, int n) {
  if (n < 1) throw std::invalid_argument("binomial_halfwidth_large_n: n must be >= 1");
  const double arg = 1.0 - z_r * z_r;
  if (arg < 0.0) {
    throw std::invalid_argument("binomial_halfwidth_large_n: |z_r| must be <= 1");
  }
  return std::sqrt(arg) / std::sqrt(static_cast<double>(n));
}

// Single-shot Mach-Zehnder: outcomes {-1, +1} with P(-1) = sin^2(phi/2),
// P(+1) = cos^2(phi/2); the outcome mean is cos(phi).
inline EstimationModel single_shot_mz() {
  EstimationModel m;
  m.label = "mz-single-shot";
  m.outcomes = {-1.0, 1.0};
  m.range = ParamRange::angular();
  m.likelihood = [](std::size_t r, double phi) {
    const double s = std::sin(phi / 2.0);
    const double c = std::cos(phi / 2.0);
    return r == 0 ? s * s : c * c;
  };
  // equispaced two-outcome estimator: half-cell radius saturating 1/M
  m.inversion_halfwidth = [](std::size_t) { return 0.5; };
  // the likelihoods vanish at 0, pi and 2pi; grade quadrature panels there
  m.panel_hints.push_back(kPi);
  for (int e = 1; e <= 12; ++e) {
    const double off = std::pow(10.0, -e);
    m.panel_hints.push_back(off);
    m.panel_hints.push_back(kPi - off);
    m.panel_hints.push_back(kPi + off);
    m.panel_hints.push_back(kTwoPi - off);
  }
  return m;
}

// N uncorrelated repetitions.  Outcomes are the empirical means
// z_k = -1 + 2k/n (k up-counts); P(z_k | x) is the binomial pmf with
// per-shot up-probability (1+x)/2, so the outcome mean equals x.
inline EstimationModel binomial_model(int n) {
  if (n < 1) throw std::invalid_argument("binomial_model: n must be >= 1");
  EstimationModel m;
  m.label = "binomial-" + std::to_string(n);
  m.range = ParamRange::scaled();
  m.outcomes.reserve(n + 1);
  for (int k = 0; k <= n; ++k) m.outcomes.push_back(-1.0 + 2.0 * k / n);
  m.likelihood = [n](std::size_t k, double x) {
    return detail::binomial_pmf(n, static_cast<int>(k), (1.0 + x) / 2.0);
  };
  // Inversion radius: the larger of the exact interval and the large-N form
  // sqrt(1-z^2)/sqrt(n); both are valid covering radii and the max keeps the
  // n = 1 endpoint outcomes from degenerating to zero width.
  auto outcomes = m.outcomes;
  m.inversion_halfwidth = [outcomes, n](std::size_t k) {
    const double z = outcomes.at(k);
    return std::max(invert_binomial(z, n).halfwidth, binomial_halfwidth_large_n(z, n));
  };
  // the entropy integrand steepens toward the endpoints; grade panels there
  for (int e = 1; e <= 12; ++e) {
    const double off = std::pow(10.0, -e);
    m.panel_hints.push_back(-1.0 + off);
    m.panel_hints.push_back(1.0 - off);
  }
  for (int i = 1; i < 16; ++i) m.panel_hints.push_back(-1.0 + 2.0 * i / 16.0);
  return m;
}

// Squared Dirichlet kernel of phase estimation on M = 2^qubits outcomes:
// P_r(phi) = |1 - t^M|^2 / (M^2 |1 - t|^2), t = exp(i(phi - 2 pi r / M)),
// evaluated as sin^2(M d/2) / (M^2 sin^2(d/2)) with the removable
// singularity P_r = 1 on the outcome grid.
inline double qpea_kernel(std::int64_t m, double delta) {
  const double half = delta / 2.0;
  const double denom = std::sin(half);
  // |1 - t| = 2 |sin(d/2)|; take the analytic limit below the branch cut
  if (2.0 * std::abs(denom) < 1e-9) return 1.0;
  const double num = std::sin(static_cast<double>(m) * half);
  const double ratio = num / (static_cast<double>(m) * denom);
  return ratio * ratio;
}

inline EstimationModel qpea_model(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 20) {
    throw std::invalid_argument("qpea_model: qubit count must be in [1, 20]");
  }
  const std::int64_t m_count = std::int64_t{1} << n_qubits;
  EstimationModel m;
  m.label = "qpea-" + std::to_string(n_qubits) + "q";
  m.range = ParamRange::angular();
  m.outcomes.reserve(m_count);
  for (std::int64_t r = 0; r < m_count; ++r) {
    m.outcomes.push_back(kTwoPi * static_cast<double>(r) / static_cast<double>(m_count));
  }
  m.likelihood = [m_count](std::size_t r, double phi) {
    return qpea_kernel(m_count, phi - kTwoPi * static_cast<double>(r) / static_cast<double>(m_count));
  };
  // outcome-grid half-resolution, scaled to the range: (pi/M)/(2pi) * 2 = 1/M
  m.inversion_halfwidth = [m_count](std::size_t) { return 1.0 / static_cast<double>(m_count); };
  m.panel_hints = m.outcomes;  // kernel peaks (and zeros) sit on the grid
  return m;
}

// The biased estimator that saturates delta = 1/M: equispaced cells on
// [-1, 1], P_r(x) = 1 when x falls in cell r and 0 otherwise.
inline EstimationModel deterministic_model(int m_count) {
  if (m_count < 1) throw std::invalid_argument("deterministic_model: M must be >= 1");
  EstimationModel m;
  m.label = "deterministic-" + std::to_string(m_count);
  m.range = ParamRange::scaled();
  for (int r = 0; r < m_count; ++r) {
    m.outcomes.push_back(-1.0 + (2.0 * r + 1.0) / m_count);
  }
  m.likelihood = [m_count](std::size_t r, double x) {
    const double lo = -1.0 + 2.0 * static_cast<double>(r) / m_count;
    const double hi = -1.0 + 2.0 * (static_cast<double>(r) + 1.0) / m_count;
    const bool last = static_cast<int>(r) == m_count - 1;
    return (x >= lo && (x < hi || (last && x <= hi))) ? 1.0 : 0.0;
  };
  m.inversion_halfwidth = [m_count](std::size_t) { return 1.0 / m_count; };
  for (int r = 1; r < m_count; ++r) {
    m.panel_hints.push_back(-1.0 + 2.0 * static_cast<double>(r) / m_count);
  }
  return m;
}

// One metrology batch: a three-outcome observable (eigenvalues -1, 0, +1)
// repeated nu times, recorded as the empirical mean s/nu with
// s = (#up - #down).  The ideal probe never produces the 0 outcome, so the
// 2 nu + 1 outcome values carry a parity-thinned binomial distribution in
// the batch parameter x = cos(N phi).
inline EstimationModel qmetrology_batch(std::int64_t nu) {
  if (nu < 1) throw std::invalid_argument("qmetrology_batch: nu must be >= 1");
  if (nu > 100000) throw std::invalid_argument("qmetrology_batch: nu too large");
  EstimationModel m;
  m.label = "qmetrology-batch-nu" + std::to_string(nu);
  m.range = ParamRange::scaled();
  const int n = static_cast<int>(nu);
  for (std::int64_t s = -nu; s <= nu; ++s) {
    m.outcomes.push_back(static_cast<double>(s) / static_cast<double>(nu));
  }
  m.likelihood = [n](std::size_t r, double x) {
    const std::int64_t s = static_cast<std::int64_t>(r) - n;  // sum of nu +/-1 trials
    if ((s + n) % 2 != 0) return 0.0;
    const int k = static_cast<int>((s + n) / 2);  // number of up results
    return detail::binomial_pmf(n, k, (1.0 + x) / 2.0);
  };
  auto outcomes = m.outcomes;
  m.inversion_halfwidth = [outcomes, n](std::size_t r) {
    const double z = outcomes.at(r);
    return std::max(invert_binomial(z, n).halfwidth, binomial_halfwidth_large_n(z, n));
  };
  for (int e = 1; e <= 12; ++e) {
    const double off = std::pow(10.0, -e);
    m.panel_hints.push_back(-1.0 + off);
    m.panel_hints.push_back(1.0 - off);
  }
  for (int i = 1; i < 16; ++i) m.panel_hints.push_back(-1.0 + 2.0 * i / 16.0);
  return m;
}

// The batched metrology strategy: one batch of nu repetitions per decimal
// digit of the phase, d = log10(n) independent batches in total.
struct QMetrologyModel {
  int digits = 0;        // d = log10(n)
  std::int64_t n = 0;    // 10^d
  std::int64_t nu = 0;   // repetitions per batch
  EstimationModel batch; // shared likelihood family of every batch

  // Exact joint outcome count, (2 nu + 1)^d.  Equals n^(log10(2 nu + 1));
  // pass a different `log_base` to reproduce other readings of that
  // exponent (the usual nu = 100 reduction rounds it to ~ n^2).
  double outcome_count(double log_base = 10.0) const {
    const double expo = std::log(2.0 * static_cast<double>(nu) + 1.0) / std::log(log_base);
    return std::pow(static_cast<double>(n), expo);
  }
};

inline QMetrologyModel qmetrology_model(std::int64_t n, std::int64_t nu) {
  if (n < 10) throw std::invalid_argument("qmetrology_model: n must be a positive power of 10");
  if (nu < 1) throw std::invalid_argument("qmetrology_model: nu must be >= 1");
  int digits = 0;
  std::int64_t v = n;
  while (v > 1) {
    if (v % 10 != 0) {
      throw std::invalid_argument("qmetrology_model: digit count log10(n) is not integral");
    }
    v /= 10;
    ++digits;
  }
  QMetrologyModel m;
  m.digits = digits;
  m.n = n;
  m.nu = nu;
  m.batch = qmetrology_batch(nu);
  return m;
}

// Largest |sum_r P_r(x) - 1| over a uniform probe grid.
inline double normalization_defect(const EstimationModel& m, int grid_points = 201) {
  double worst = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = m.range.lo + (m.range.hi - m.range.lo) * i / (grid_points - 1.0);
    double sum = 0.0;
    for (std::size_t r = 0; r < m.outcomes.size(); ++r) sum += m.probability(r, x);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

}  // namespace patlas::models
