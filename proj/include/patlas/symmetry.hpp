// Copyright (c) 2026 the precision-atlas authors.
// SPDX-License-Identifier: Apache-2.0
//
// Permutation action of S_N on N qubits, collectivity tests, joint
// eigenspaces of (J^2, Jz), and commutant dimensions certifying
// irreducibility.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "patlas/halfint.hpp"
#include "patlas/hilbert.hpp"
#include "patlas/spin.hpp"

namespace patlas::symmetry {

using hilbert::HermitianObservable;

// A permutation unitary on n qubits is a 0/1 matrix; we keep only the label
// map b -> sigma(b) on the 2^n computational-basis labels.
using LabelPerm = std::vector<std::uint32_t>;

// Label map of the unitary representing a particle permutation: bit i of the
// input label moves to bit position perm[i] (0-based).
inline LabelPerm permutation_unitary(int n, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != n) {
    throw std::invalid_argument("permutation_unitary: permutation size mismatch");
  }
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) {
      throw std::invalid_argument("permutation_unitary: not a bijection on {0..n-1}");
    }
    seen[p] = true;
  }
  const std::uint32_t dim = std::uint32_t{1} << n;
  LabelPerm map(dim);
  for (std::uint32_t b = 0; b < dim; ++b) {
    std::uint32_t out = 0;
    for (int i = 0; i < n; ++i) {
      if (b & (std::uint32_t{1} << i)) out |= std::uint32_t{1} << perm[i];
    }
    map[b] = out;
  }
  return map;
}

// Dense 0/1 matrix of a label map, U[map[b], b] = 1.  Test helper; the fast
// paths below never form it.
inline ComplexMatrix permutation_matrix(const LabelPerm& map) {
  const auto dim = static_cast<Eigen::Index>(map.size());
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) u(map[b], b) = 1.0;
  return u;
}

// Adjacent-transposition generators (i, i+1) of S_n.  They generate the full
// group, so commuting with all of them is equivalent to full invariance.
struct PermutationAction {
  int n = 0;
  std::vector<LabelPerm> generators;

  static PermutationAction adjacent(int n) {
    if (n < 1) throw std::invalid_argument("PermutationAction: n must be >= 1");
    PermutationAction a;
    a.n = n;
    for (int i = 0; i + 1 < n; ++i) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::swap(perm[i], perm[i + 1]);
      a.generators.push_back(permutation_unitary(n, perm));
    }
    return a;
  }

  // Action restricted to the first n-1 particles (drops the last generator).
  PermutationAction subgroup_first(int m) const {
    if (m < 1 || m > n) throw std::invalid_argument("subgroup_first: bad size");
    PermutationAction a;
    a.n = n;  // still acts on the full 2^n label space
    for (int i = 0; i + 1 < m; ++i) a.generators.push_back(generators[i]);
    return a;
  }
};

// True iff [O, U_g] vanishes to tol for every generator g.  Uses the index
// form of the commutator: (O U)[a,b] = O[a, g(b)], (U O)[a,b] = O[g(a), b]
// for involutions g.
inline bool is_collective(const HermitianObservable& o, int n, double tol) {
  const std::uint32_t dim = std::uint32_t{1} << n;
  if (o.dim() != static_cast<Eigen::Index>(dim)) {
    throw std::invalid_argument("is_collective: operator dimension does not match 2^n");
  }
  const ComplexMatrix& m = o.matrix();
  const PermutationAction action = PermutationAction::adjacent(n);
  for (const LabelPerm& g : action.generators) {
    for (std::uint32_t b = 0; b < dim; ++b) {
      for (std::uint32_t a = 0; a < dim; ++a) {
        if (std::abs(m(a, g[b]) - m(g[a], b)) > tol) return false;
      }
    }
  }
  return true;
}

// Joint eigenspace of J^2 and Jz with eigenvalues j(j+1) and m.
struct SpinEigenspace {
  int n = 0;
  HalfInt j;
  HalfInt m;
  ComplexMatrix basis;  // 2^n x dimension, orthonormal columns
  std::size_t dimension = 0;
};

// Decompose the full 2^n space into the joint eigenspaces V_{n,j,m}.
// Jz is diagonal in the computational basis, so the labels are first grouped
// by popcount and J^2 is diagonalized inside each block; this avoids any
// degenerate-perturbation ambiguity.
inline std::vector<SpinEigenspace> joint_eigenspaces(int n) {
  if (n < 1 || n > 10) {
    throw std::invalid_argument("joint_eigenspaces: n must be in [1, 10]");
  }
  const auto ops = spin::build_collective_ops(n);
  const ComplexMatrix& j2 = ops.j2.matrix();
  const std::uint32_t dim = std::uint32_t{1} << n;

  std::vector<SpinEigenspace> spaces;
  for (int k = 0; k <= n; ++k) {  // popcount block: m = (n - 2k)/2
    std::vector<std::uint32_t> labels;
    for (std::uint32_t b = 0; b < dim; ++b) {
      if (std::popcount(b) == k) labels.push_back(b);
    }
    const auto bd = static_cast<Eigen::Index>(labels.size());
    ComplexMatrix block(bd, bd);
    for (Eigen::Index c = 0; c < bd; ++c) {
      for (Eigen::Index r = 0; r < bd; ++r) block(r, c) = j2(labels[r], labels[c]);
    }
    const auto spec = hilbert::eig_hermitian(HermitianObservable(std::move(block)));
    const auto clusters = hilbert::cluster_spectrum(spec.values, 1e-6);
    const HalfInt m = HalfInt::from_twice(n - 2 * k);

    for (std::size_t c = 0; c < clusters.count(); ++c) {
      const double lambda = clusters.cluster_values[c];
      // invert lambda = j(j+1)
      const double jval = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * lambda));
      const HalfInt j = round_to_halfint(jval, 1e-6);
      SpinEigenspace space;
      space.n = n;
      space.j = j;
      space.m = m;
      std::vector<Eigen::Index> cols;
      for (std::size_t p = 0; p < clusters.cluster_index_of.size(); ++p) {
        if (clusters.cluster_index_of[p] == c) cols.push_back(static_cast<Eigen::Index>(p));
      }
      space.dimension = cols.size();
      space.basis = ComplexMatrix::Zero(dim, static_cast<Eigen::Index>(cols.size()));
      for (std::size_t q = 0; q < cols.size(); ++q) {
        for (Eigen::Index r = 0; r < bd; ++r) {
          space.basis(labels[r], static_cast<Eigen::Index>(q)) = spec.vectors(r, cols[q]);
        }
      }
      spaces.push_back(std::move(space));
    }
  }
  std::sort(spaces.begin(), spaces.end(), [](const SpinEigenspace& a, const SpinEigenspace& b) {
    if (a.j != b.j) return a.j > b.j;
    return a.m > b.m;
  });
  return spaces;
}

// Dimension of { X on span(basis) : [X, U_g|_V] = 0 for all generators },
// computed as the nullspace dimension of the stacked commutator system.
// Requires the span to be invariant under the action (residual <= 1e-8).
inline std::size_t commutant_dimension(const ComplexMatrix& basis, const PermutationAction& action) {
  const Eigen::Index d = basis.cols();
  if (d == 0) throw std::invalid_argument("commutant_dimension: empty basis");

  std::vector<ComplexMatrix> restricted;
  for (const LabelPerm& g : action.generators) {
    ComplexMatrix ub(basis.rows(), d);
    for (Eigen::Index r = 0; r < basis.rows(); ++r) {
      ub.row(g[static_cast<std::uint32_t>(r)]) = basis.row(r);
    }
    ComplexMatrix gr = basis.adjoint() * ub;  // d x d restriction of U_g
    const double residual = hilbert::max_abs(ub - basis * gr);
    if (residual > 1e-8) {
      throw std::invalid_argument("commutant_dimension: basis span is not invariant (residual = " +
                                  std::to_string(residual) + ")");
    }
    restricted.push_back(std::move(gr));
  }
  if (restricted.empty()) {
    // trivial group: everything commutes
    return static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  }

  // vec(G X - X G) = (I (x) G - G^T (x) I) vec(X), column-major vec
  const Eigen::Index d2 = d * d;
  ComplexMatrix stacked(static_cast<Eigen::Index>(restricted.size()) * d2, d2);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (std::size_t gi = 0; gi < restricted.size(); ++gi) {
    const ComplexMatrix& g = restricted[gi];
    stacked.middleRows(static_cast<Eigen::Index>(gi) * d2, d2) =
        hilbert::kron(id, g) - hilbert::kron(g.transpose(), id);
  }
  Eigen::BDCSVD<ComplexMatrix> svd(stacked);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  if (smax == 0.0) return static_cast<std::size_t>(d2);
  std::size_t nullity = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] <= 1e-8 * smax) ++nullity;
  }
  return nullity;
}

struct IrreducibilityReport {
  int n = 0;
  HalfInt j;
  HalfInt m;
  std::size_t dimension = 0;
  std::size_t commutant_dim = 0;
  bool irreducible = false;
  double residual = 0.0;  // largest J^2/Jz eigen-residual over the basis
};

// Certify that every V_{n,j,m} is irreducible under S_n by checking that its
// commutant is one-dimensional.
inline std::vector<IrreducibilityReport> certify_irreducibility(int n) {
  if (n < 2 || n > 7) {
    throw std::invalid_argument("certify_irreducibility: n must be in [2, 7]");
  }
  const auto ops = spin::build_collective_ops(n);
  const auto action = PermutationAction::adjacent(n);
  std::vector<IrreducibilityReport> reports;
  for (const SpinEigenspace& v : joint_eigenspaces(n)) {
    IrreducibilityReport rep;
    rep.n = n;
    rep.j = v.j;
    rep.m = v.m;
    rep.dimension = v.dimension;
    const double jj = v.j.value() * (v.j.value() + 1.0);
    const double res_j2 = hilbert::max_abs(ops.j2.matrix() * v.basis - jj * v.basis);
    const double res_jz = hilbert::max_abs(ops.jz.matrix() * v.basis - v.m.value() * v.basis);
    rep.residual = std::max(res_j2, res_jz);
    rep.commutant_dim = commutant_dimension(v.basis, action);
    rep.irreducible = rep.commutant_dim == 1;
    reports.push_back(rep);
  }
  return reports;
}

// Deterministic standard normals (Box-Muller over a 53-bit uniform stream),
// so seeded draws are reproducible across standard libraries.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  double uniform() {  // in (0, 1)
    // splitmix64 step
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(kTwoPi * v);
    have_spare_ = true;
    return r * std::cos(kTwoPi * v);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Project onto the commutant of the permutation action by averaging over all
// n! conjugations, A -> (1/n!) sum_sigma U_sigma A U_sigma^+.
inline HermitianObservable project_to_invariant(const HermitianObservable& o, int n) {
  if (n < 1 || n > 8) {
    throw std::invalid_argument("project_to_invariant: full group average limited to n <= 8");
  }
  const std::uint32_t dim = std::uint32_t{1} << n;
  if (o.dim() != static_cast<Eigen::Index>(dim)) {
    throw std::invalid_argument("project_to_invariant: dimension mismatch");
  }
  const ComplexMatrix& a = o.matrix();
  ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    const LabelPerm g = permutation_unitary(n, perm);
    for (std::uint32_t c = 0; c < dim; ++c) {
      for (std::uint32_t r = 0; r < dim; ++r) {
        acc(g[r], g[c]) += a(r, c);  // (U A U^+)[g(r), g(c)] = A[r, c]
      }
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  acc /= static_cast<double>(count);
  acc = ((acc + acc.adjoint()) / 2.0).eval();
  return HermitianObservable(std::move(acc));
}

// Random collective observable: a seeded GUE draw projected onto the
// commutant of the permutation action.
inline HermitianObservable random_invariant_observable(int n, std::uint64_t seed) {
  const std::uint32_t dim = std::uint32_t{1} << n;
  NormalStream rng(seed);
  ComplexMatrix g(dim, dim);
  for (std::uint32_t c = 0; c < dim; ++c) {
    for (std::uint32_t r = 0; r < dim; ++r) {
      g(r, c) = Complex(rng.normal(), rng.normal());
    }
  }
  ComplexMatrix h = (g + g.adjoint()) / 2.0;
  return project_to_invariant(HermitianObservable(std::move(h)), n);
}

// Number of distinct eigenvalues at resolution tol (tol < 0 picks the
// default 1e-8 * max(1, |H|_max)).
inline std::size_t count_distinct_eigenvalues(const HermitianObservable& o, double tol = -1.0) {
  if (tol < 0.0) tol = hilbert::default_cluster_tol(o.matrix());
  if (o.has_spectrum()) {
    return hilbert::cluster_spectrum(o.spectrum().values, tol).count();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(o.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("count_distinct_eigenvalues: eigensolver failed to converge");
  }
  return hilbert::cluster_spectrum(solver.eigenvalues(), tol).count();
}

}  // namespace patlas::symmetry
