// Copyright (c) 2026 the precision-atlas authors.
// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations used by the test suites.  Everything
// here is built from first principles (Pauli kron chains, direct sums,
// trapezoid integration) and deliberately avoids the library's own fast
// paths, so it can serve as an oracle for them.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "patlas/hilbert.hpp"

namespace oracle {

using patlas::Complex;
using patlas::ComplexMatrix;

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// sum_i I (x) ... (x) op (x) ... (x) I with `op` at site i; the kron factor
// order puts particle 0 in the lowest bit, matching the library convention.
inline ComplexMatrix site_sum(int n, const ComplexMatrix& op) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    ComplexMatrix term = ComplexMatrix::Identity(1, 1);
    for (int k = n - 1; k >= 0; --k) {
      term = patlas::hilbert::kron(term, k == i ? op : ComplexMatrix::Identity(2, 2)).eval();
    }
    total += term;
  }
  return total;
}

// J^2 assembled the slow way, as Jx^2 + Jy^2 + Jz^2 from kron chains.
inline ComplexMatrix total_spin_squared(int n) {
  const ComplexMatrix jx = site_sum(n, pauli_x()) / 2.0;
  const ComplexMatrix jy = site_sum(n, pauli_y()) / 2.0;
  const ComplexMatrix jz = site_sum(n, pauli_z()) / 2.0;
  return jx * jx + jy * jy + jz * jz;
}

// Binomial pmf by direct multiplication (no logs): C(n,k) p^k q^{n-k}.
inline double binomial_pmf(int n, int k, double p) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

// Phase-estimation kernel by direct complex summation:
// P_r = |sum_{j=0}^{M-1} t^j|^2 / M^2 with t = exp(i(phi - 2 pi r / M)).
inline double qpea_prob_direct(std::int64_t m, std::int64_t r, double phi) {
  const double delta = phi - 2.0 * patlas::kPi * static_cast<double>(r) / static_cast<double>(m);
  Complex sum = 0.0;
  for (std::int64_t j = 0; j < m; ++j) {
    const double a = delta * static_cast<double>(j);
    sum += Complex(std::cos(a), std::sin(a));
  }
  return std::norm(sum) / (static_cast<double>(m) * static_cast<double>(m));
}

// Trapezoid quadrature of sum_r P_r ln P_r for a likelihood family given as
// a callback, over [lo, hi]; used as the independent mutual-information
// oracle.
template <typename Likelihood>
double entropy_integral_trapezoid(Likelihood&& like, std::size_t m_count, double lo, double hi,
                                  std::size_t pts) {
  double acc = 0.0;
  const double h = (hi - lo) / static_cast<double>(pts - 1);
  for (std::size_t i = 0; i < pts; ++i) {
    const double x = lo + h * static_cast<double>(i);
    double s = 0.0;
    for (std::size_t r = 0; r < m_count; ++r) {
      const double p = like(r, x);
      if (p > 0.0) s += p * std::log(p);
    }
    acc += (i == 0 || i + 1 == pts) ? 0.5 * s : s;
  }
  return acc * h;
}

}  // namespace oracle
