// Copyright (c) 2026 the precision-atlas authors.
// SPDX-License-Identifier: Apache-2.0
//
// The canonical phase-measurement protocol for an arbitrary observable:
// Fourier-conjugate basis, integer-spectrum generator Hamiltonian, outcome
// distribution and seeded sampling.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "patlas/hilbert.hpp"
#include "patlas/symmetry.hpp"

namespace patlas::protocol {

using hilbert::HermitianObservable;

// Protocol data for an observable with M distinct eigenvalues.
//
// eigenbasis holds one representative eigenvector |lambda_k> per eigenvalue
// cluster; fourier_basis = eigenbasis * F(M).  The generator Hamiltonian is
// stored in protocol coordinates (the M-dimensional |lambda_k> frame) as
// H = sum_k k |mu_k><mu_k| with mu_k the Fourier column relabeled
// k -> (M - k) mod M; the relabeling makes the most probable outcome index
// track phi upward so the estimate 2 pi k / M is exact on the grid.
struct ProtocolSpec {
  std::size_t m = 0;
  std::vector<double> eigenvalues;   // cluster representatives, ascending
  ComplexMatrix eigenbasis;          // dim x M
  ComplexMatrix fourier_basis;       // dim x M
  HermitianObservable hamiltonian;   // M x M, spectrum {0, 1, ..., M-1}
};

inline ProtocolSpec build_canonical(const HermitianObservable& o, double cluster_tol = -1.0) {
  if (cluster_tol < 0.0) cluster_tol = hilbert::default_cluster_tol(o.matrix());
  const auto& spec = o.spectrum();
  const auto clusters = hilbert::cluster_spectrum(spec.values, cluster_tol);
  const auto m = static_cast<Eigen::Index>(clusters.count());
  if (m < 2) {
    throw std::invalid_argument("build_canonical: observable needs at least 2 distinct eigenvalues");
  }

  ComplexMatrix eigenbasis(o.dim(), m);
  std::vector<double> values(m);
  std::vector<bool> taken(m, false);
  for (Eigen::Index p = 0; p < spec.values.size(); ++p) {
    const auto c = static_cast<Eigen::Index>(clusters.cluster_index_of[p]);
    if (!taken[c]) {  // first eigenvector of each cluster is the representative
      eigenbasis.col(c) = spec.vectors.col(p);
      values[c] = clusters.cluster_values[c];
      taken[c] = true;
    }
  }

  const ComplexMatrix f = hilbert::fourier_unitary(m);
  ComplexMatrix h = ComplexMatrix::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index col = (m - k) % m;
    h += static_cast<double>(k) * (f.col(col) * f.col(col).adjoint());
  }
  h = ((h + h.adjoint()) / 2.0).eval();

  ProtocolSpec out{static_cast<std::size_t>(m), std::move(values), std::move(eigenbasis),
                   ComplexMatrix(), HermitianObservable(std::move(h))};
  out.fourier_basis = out.eigenbasis * f;
  return out;
}

struct ProtocolRun {
  double phi_true = 0.0;
  std::vector<double> outcome_probs;  // over k = 0..M-1
  double map_estimate = 0.0;          // 2 pi k* / M for the most probable k*
  double error = 0.0;                 // wrapped |estimate - phi|
};

// Evolve |psi_i> = |lambda_0> under exp(i H phi) and measure in the
// eigenbasis: outcome_probs[k] = |<lambda_k| e^{iH phi} |lambda_0>|^2.
inline ProtocolRun run(const ProtocolSpec& spec, double phi) {
  const auto m = static_cast<Eigen::Index>(spec.m);
  ComplexVector initial = ComplexVector::Zero(m);
  initial[0] = 1.0;
  const ComplexVector final_state = hilbert::evolve(spec.hamiltonian, phi, initial);

  ProtocolRun out;
  out.phi_true = phi;
  out.outcome_probs.resize(spec.m);
  std::size_t best = 0;
  for (Eigen::Index k = 0; k < m; ++k) {
    out.outcome_probs[k] = std::norm(final_state[k]);
    if (out.outcome_probs[k] > out.outcome_probs[best]) best = static_cast<std::size_t>(k);
  }
  out.map_estimate = kTwoPi * static_cast<double>(best) / static_cast<double>(spec.m);
  double d = std::fmod(std::abs(out.map_estimate - phi), kTwoPi);
  out.error = std::min(d, kTwoPi - d);
  return out;
}

// Seeded multinomial sampling of the protocol outcomes; the histogram sums
// to `shots`.  Uses the library's own uniform stream so equal seeds give
// identical histograms on any platform.
inline std::vector<std::uint64_t> sample(const ProtocolSpec& spec, double phi,
                                         std::uint64_t seed, std::uint64_t shots) {
  if (shots < 1) throw std::invalid_argument("sample: need at least one shot");
  const ProtocolRun r = run(spec, phi);
  std::vector<double> cdf(r.outcome_probs.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < cdf.size(); ++k) {
    acc += r.outcome_probs[k];
    cdf[k] = acc;
  }
  symmetry::NormalStream rng(seed);
  std::vector<std::uint64_t> hist(cdf.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const auto k = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    ++hist[k];
  }
  return hist;
}

struct Precision {
  double absolute = 0.0;  // 2 pi / M
  double relative = 0.0;  // 1 / M
};

inline Precision protocol_precision(const ProtocolSpec& spec) {
  const double m = static_cast<double>(spec.m);
  return Precision{kTwoPi / m, 1.0 / m};
}

}  // namespace patlas::protocol
