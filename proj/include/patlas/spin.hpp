// Copyright (c) 2026 the precision-atlas authors.
// SPDX-License-Identifier: Apache-2.0
//
// Collective spin operators on N qubits, multiplicity/dimension formulas,
// spin-j (x) spin-1/2 Clebsch-Gordan coefficients, and the outcome-count
// bound for permutation-invariant observables.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "patlas/halfint.hpp"
#include "patlas/hilbert.hpp"

namespace patlas::spin {

using hilbert::HermitianObservable;

// Basis convention: label b is an n-bit string, bit i (LSB = particle 0) is
// the state of particle i; |0> is spin-up (sigma_z eigenvalue +1).
inline constexpr int kMaxParticles = 12;

struct CollectiveSpinOps {
  int n;
  HermitianObservable jz;  // sum_i sigma_z^(i)/2, diagonal in this basis
  ComplexMatrix jplus;     // sum_i sigma_+^(i), raises Jz by one
  HermitianObservable j2;  // Jz^2 + Jz + J- J+
};

inline CollectiveSpinOps build_collective_ops(int n) {
  if (n < 1 || n > kMaxParticles) {
    throw std::invalid_argument("build_collective_ops: n must be in [1, " +
                                std::to_string(kMaxParticles) + "]");
  }
  const std::uint32_t dim = std::uint32_t{1} << n;
  ComplexMatrix jz = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix jp = ComplexMatrix::Zero(dim, dim);
  for (std::uint32_t b = 0; b < dim; ++b) {
    jz(b, b) = (n - 2.0 * std::popcount(b)) / 2.0;
    for (int i = 0; i < n; ++i) {
      if (b & (std::uint32_t{1} << i)) {
        jp(b & ~(std::uint32_t{1} << i), b) += 1.0;  // flip one down-spin up
      }
    }
  }
  // J^2 = Jz^2 + Jz + J- J+, assembled column by column so the cost stays
  // O(4^n n^2) instead of a dense GEMM.
  ComplexMatrix j2 = ComplexMatrix::Zero(dim, dim);
  for (std::uint32_t b = 0; b < dim; ++b) {
    const double mz = (n - 2.0 * std::popcount(b)) / 2.0;
    j2(b, b) += mz * mz + mz;
    for (int i = 0; i < n; ++i) {
      if (!(b & (std::uint32_t{1} << i))) continue;
      const std::uint32_t up = b & ~(std::uint32_t{1} << i);  // J+ flipped bit i
      for (int k = 0; k < n; ++k) {
        if (up & (std::uint32_t{1} << k)) continue;
        j2(up | (std::uint32_t{1} << k), b) += 1.0;  // J- puts one back down
      }
    }
  }
  return CollectiveSpinOps{n, HermitianObservable(std::move(jz)), std::move(jp),
                           HermitianObservable(std::move(j2))};
}

// Largest possible number of distinct eigenvalues of a collective observable
// on n qubits: (n+2)^2/4 for even n, (n+1)(n+3)/4 for odd n.  Identical
// (symmetrized) particles only reach n+1.
inline std::size_t outcome_bound(int n, bool identical = false) {
  if (n < 1) {
    throw std::invalid_argument("outcome_bound: n must be >= 1");
  }
  if (identical) return static_cast<std::size_t>(n) + 1;
  const std::size_t un = static_cast<std::size_t>(n);
  return (n % 2 == 0) ? (un + 2) * (un + 2) / 4 : (un + 1) * (un + 3) / 4;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

// Valid total-spin labels for n spin-1/2 particles: j = n/2, n/2-1, ..., down
// to 0 or 1/2 depending on parity.
inline std::vector<HalfInt> valid_j_values(int n) {
  std::vector<HalfInt> out;
  for (int t = n; t >= n % 2; t -= 2) out.push_back(HalfInt::from_twice(t));
  return out;
}

// Dimension of every joint eigenspace V_{n,j,m} (independent of m):
// C(n, n/2 - j) - C(n, n/2 - j - 1), a Catalan-triangle number.
inline std::uint64_t multiplicity(int n, HalfInt j) {
  if (n < 1) throw std::invalid_argument("multiplicity: n must be >= 1");
  const int tj = j.twice();
  if (tj < 0 || tj > n || (n - tj) % 2 != 0) {
    throw std::invalid_argument("multiplicity: invalid (n, j) pairing: n = " +
                                std::to_string(n) + ", j = " + j.str());
  }
  const int k = (n - tj) / 2;  // n/2 - j
  return binomial(n, k) - binomial(n, k - 1);
}

// The unique particle count N at which dim V_{N-1, j+1/2, m} equals
// dim V_{N-1, j-1/2, m}: N = (2j+1)^2 - 1.
inline int dim_equality_threshold(HalfInt j) {
  if (j.twice() < 1) {
    throw std::invalid_argument("dim_equality_threshold: j must be >= 1/2");
  }
  const int tj1 = j.twice() + 1;  // 2j + 1
  return tj1 * tj1 - 1;
}

// Coefficients coupling |j, m -/+ 1/2> (x) |1/2, +/-1/2> into total spin
// j +/- 1/2 with z-projection m (Condon-Shortley convention):
//   |j+1/2, m> = C+1 |j, m-1/2>|up> + C+2 |j, m+1/2>|down>
//   |j-1/2, m> = C-1 |j, m-1/2>|up> + C-2 |j, m+1/2>|down>
struct CGPair {
  HalfInt j;
  HalfInt m;
  double c_plus[2];
  double c_minus[2];
};

inline CGPair cg_coefficients(HalfInt j, HalfInt m) {
  const int tj = j.twice();
  const int tm = m.twice();
  if (tj < 1) {
    throw std::invalid_argument("cg_coefficients: j must be >= 1/2");
  }
  if ((tj + tm) % 2 == 0) {
    throw std::invalid_argument("cg_coefficients: m must differ from j by a half-integer");
  }
  if (std::abs(tm) > tj + 1) {
    throw std::invalid_argument("cg_coefficients: |m| must be <= j + 1/2");
  }
  // j + m + 1/2 = (2j + 2m + 1)/2, j - m + 1/2 = (2j - 2m + 1)/2
  const double a = (tj + tm + 1) / 2.0;
  const double b = (tj - tm + 1) / 2.0;
  const double denom = tj + 1.0;
  CGPair out{j, m, {0, 0}, {0, 0}};
  out.c_plus[0] = std::sqrt(a / denom);
  out.c_plus[1] = std::sqrt(b / denom);
  out.c_minus[0] = -std::sqrt(b / denom);
  out.c_minus[1] = std::sqrt(a / denom);
  return out;
}

// Splitting parameter for J^2 + eps Jz: eps = 1/n keeps the eps*m spread
// (at most 1/2 on either side) inside the minimum J^2 gap of 2, which is
// re-verified here by enumeration over all (j, m).
inline double epsilon_for(int n) {
  if (n < 1) throw std::invalid_argument("epsilon_for: n must be >= 1");
  const double eps = 1.0 / n;
  std::vector<double> vals;
  for (HalfInt j : valid_j_values(n)) {
    for (int tm = -j.twice(); tm <= j.twice(); tm += 2) {
      vals.push_back(j.value() * (j.value() + 1.0) + eps * (tm / 2.0));
    }
  }
  std::sort(vals.begin(), vals.end());
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i] - vals[i - 1] < 1e-9) {
      throw std::runtime_error("epsilon_for: eigenvalue collision at eps = 1/n");
    }
  }
  return eps;
}

// J^2 + eps Jz with the default eps = 1/n; saturates the outcome bound.
inline HermitianObservable splitting_observable(const CollectiveSpinOps& ops) {
  const double eps = epsilon_for(ops.n);
  return HermitianObservable(ops.j2.matrix() + eps * ops.jz.matrix());
}

}  // namespace patlas::spin
