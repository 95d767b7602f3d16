// Copyright (c) 2026 the precision-atlas authors.
// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear-algebra substrate: tensor products, Hermitian
// eigendecomposition with a deterministic phase convention, greedy
// degeneracy clustering and the discrete Fourier unitary.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace patlas {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

namespace hilbert {

// Dense storage ceiling: 2^24 entries (a 4096 x 4096 operator, i.e. 12 qubits).
inline constexpr std::int64_t kMaxOperatorEntries = std::int64_t{1} << 24;

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

struct Spectrum {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // orthonormal columns, phase-fixed
};

// Self-adjoint operator on a finite-dimensional space.  Construction checks
// hermiticity to a relative 1e-12; the spectral decomposition is computed
// lazily and cached.  The cache must be populated before the value is shared
// across threads (single-writer contract).
class HermitianObservable {
 public:
  explicit HermitianObservable(ComplexMatrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols()) {
      throw std::invalid_argument("HermitianObservable: matrix must be square");
    }
    if (!all_finite(mat_)) {
      throw std::invalid_argument("HermitianObservable: non-finite entries");
    }
    const double scale = max_abs(mat_);
    const double dev = max_abs(mat_ - mat_.adjoint());
    if (dev > 1e-12 * scale) {
      throw std::invalid_argument("HermitianObservable: matrix is not self-adjoint (|A - A^+|_max = " +
                                  std::to_string(dev) + ")");
    }
  }

  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

  bool has_spectrum() const { return cache_.has_value(); }
  const Spectrum& spectrum() const;

 private:
  ComplexMatrix mat_;
  mutable std::optional<Spectrum> cache_;
};

// Distinct-eigenvalue bookkeeping at a given resolution.
struct EigenClustering {
  std::vector<double> cluster_values;         // representative value per cluster
  std::vector<std::size_t> cluster_index_of;  // eigenvalue position -> cluster id
  double tolerance_used = 0.0;

  std::size_t count() const { return cluster_values.size(); }
};

// Kronecker product.  (a (x) b)[(i*p+k),(j*q+l)] = a[i,j] * b[k,l] for b of
// shape p x q; the second factor indexes the fast (low) part of the label.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::int64_t rows = std::int64_t{a.rows()} * b.rows();
  const std::int64_t cols = std::int64_t{a.cols()} * b.cols();
  if (rows * cols > kMaxOperatorEntries) {
    throw std::invalid_argument("kron: product would exceed the " +
                                std::to_string(kMaxOperatorEntries) + "-entry ceiling");
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Eigendecomposition of a Hermitian observable.  Values ascending, vectors
// orthonormal.  Each eigenvector's phase is fixed by making its
// largest-magnitude component real and positive, so output is reproducible.
inline Spectrum eig_hermitian(const HermitianObservable& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge (dim = " +
                             std::to_string(h.dim()) + ")");
  }
  Spectrum s;
  s.values = solver.eigenvalues();
  s.vectors = solver.eigenvectors();
  for (Eigen::Index k = 0; k < s.vectors.cols(); ++k) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < s.vectors.rows(); ++i) {
      const double a = std::abs(s.vectors(i, k));
      if (a > best + 1e-12) {
        best = a;
        imax = i;
      }
    }
    const Complex pivot = s.vectors(imax, k);
    if (std::abs(pivot) > 0) {
      s.vectors.col(k) *= std::conj(pivot) / std::abs(pivot);
    }
  }
  return s;
}

inline const Spectrum& HermitianObservable::spectrum() const {
  if (!cache_) cache_ = eig_hermitian(*this);
  return *cache_;
}

// Greedy gap clustering of an ascending spectrum: a new cluster starts
// whenever the gap to the previous value exceeds tol.  The cluster count is
// the number of distinct eigenvalues at resolution tol.
inline EigenClustering cluster_spectrum(const std::vector<double>& values, double tol) {
  if (tol <= 0.0) {
    throw std::invalid_argument("cluster_spectrum: tolerance must be positive");
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1]) {
      throw std::invalid_argument("cluster_spectrum: values must be sorted ascending");
    }
  }
  EigenClustering out;
  out.tolerance_used = tol;
  out.cluster_index_of.resize(values.size());
  std::size_t begin = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i] - values[i - 1] > tol) {
      double sum = 0.0;
      for (std::size_t k = begin; k < i; ++k) sum += values[k];
      out.cluster_values.push_back(sum / static_cast<double>(i - begin));
      begin = i;
    }
    out.cluster_index_of[i] = out.cluster_values.size();
  }
  if (!values.empty()) {
    double sum = 0.0;
    for (std::size_t k = begin; k < values.size(); ++k) sum += values[k];
    out.cluster_values.push_back(sum / static_cast<double>(values.size() - begin));
  }
  return out;
}

inline EigenClustering cluster_spectrum(const RealVector& values, double tol) {
  return cluster_spectrum(std::vector<double>(values.data(), values.data() + values.size()), tol);
}

// Degeneracy resolution used throughout: spectra here are integers plus
// eps * integers, with gaps far above this.
inline double default_cluster_tol(const ComplexMatrix& m) {
  return 1e-8 * std::max(1.0, max_abs(m));
}

// Discrete Fourier unitary, F[j,k] = exp(i 2 pi j k / m) / sqrt(m).
inline ComplexMatrix fourier_unitary(Eigen::Index m) {
  if (m < 1) {
    throw std::invalid_argument("fourier_unitary: m must be >= 1");
  }
  ComplexMatrix f(m, m);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      // reduce j*k mod m before the trig call to keep the angle small
      const std::int64_t jk = (std::int64_t{j} * k) % m;
      const double angle = kTwoPi * static_cast<double>(jk) / static_cast<double>(m);
      f(j, k) = Complex(std::cos(angle), std::sin(angle)) * norm;
    }
  }
  return f;
}

// exp(i H phi) psi through the spectral decomposition; norm-preserving.
inline ComplexVector evolve(const HermitianObservable& h, double phi, const ComplexVector& psi) {
  if (psi.size() != h.dim()) {
    throw std::invalid_argument("evolve: state dimension " + std::to_string(psi.size()) +
                                " does not match operator dimension " + std::to_string(h.dim()));
  }
  const Spectrum& s = h.spectrum();
  ComplexVector coeffs = s.vectors.adjoint() * psi;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    const double angle = s.values[k] * phi;
    coeffs[k] *= Complex(std::cos(angle), std::sin(angle));
  }
  return s.vectors * coeffs;
}

}  // namespace hilbert
}  // namespace patlas
