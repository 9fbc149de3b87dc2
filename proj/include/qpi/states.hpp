// Copyright 2026 The qpi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpi/matrix.hpp"
#include "qpi/quantum_state.hpp"
#include "qpi/rng.hpp"
#include "qpi/tolerances.hpp"

namespace qpi {

// ---------------------------------------------------------------------------
// Named two-qubit states
// ---------------------------------------------------------------------------

enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

// psi+- = (|01> +- |10>)/sqrt(2), phi+- = (|00> +- |11>)/sqrt(2).
inline PureState bell_state(BellKind kind) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case BellKind::PsiPlus:
      return PureState({2, 2}, {0.0, s, s, 0.0});
    case BellKind::PsiMinus:
      return PureState({2, 2}, {0.0, s, -s, 0.0});
    case BellKind::PhiPlus:
      return PureState({2, 2}, {s, 0.0, 0.0, s});
    case BellKind::PhiMinus:
      return PureState({2, 2}, {s, 0.0, 0.0, -s});
  }
  throw std::invalid_argument("bell_state: unknown kind");
}

// Mixture of the four Bell projectors with weights (psi+, psi-, phi+, phi-).
inline DensityMatrix bell_diagonal(const std::array<double, 4>& p) {
  double sum = 0.0;
  for (double w : p) {
    if (w < 0.0) throw std::invalid_argument("bell_diagonal: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("bell_diagonal: weights sum to " +
                                std::to_string(sum));
  const std::array<BellKind, 4> kinds = {BellKind::PsiPlus, BellKind::PsiMinus,
                                         BellKind::PhiPlus, BellKind::PhiMinus};
  Matrix m(4);
  for (std::size_t k = 0; k < 4; ++k) {
    if (p[k] == 0.0) continue;
    m += p[k] * bell_state(kinds[k]).projector();
  }
  return DensityMatrix({2, 2}, std::move(m));
}

// ---------------------------------------------------------------------------
// Three-qubit canonical form
// ---------------------------------------------------------------------------

// Five nonnegative Schmidt-like coefficients with sum of squares 1, plus a
// single phase in [0, pi].
struct AcinParams {
  std::array<double, 5> gamma{};
  double phi = 0.0;

  void validate() const {
    double s2 = 0.0;
    for (double g : gamma) {
      if (g < 0.0) throw std::invalid_argument("AcinParams: negative coefficient");
      s2 += g * g;
    }
    if (std::abs(s2 - 1.0) > 1e-12)
      throw std::invalid_argument("AcinParams: squares sum to " +
                                  std::to_string(s2));
    if (phi < 0.0 || phi > std::numbers::pi)
      throw std::invalid_argument("AcinParams: phase outside [0, pi]");
  }
};

// g0|000> + g1 e^{i phi}|100> + g2|101> + g3|110> + g4|111>.
inline PureState acin_state(const AcinParams& p) {
  p.validate();
  std::vector<Complex> amp(8, 0.0);
  amp[0] = p.gamma[0];
  amp[4] = p.gamma[1] * Complex(std::cos(p.phi), std::sin(p.phi));
  amp[5] = p.gamma[2];
  amp[6] = p.gamma[3];
  amp[7] = p.gamma[4];
  return PureState({2, 2, 2}, std::move(amp));
}

// ---------------------------------------------------------------------------
// Random sampling
// ---------------------------------------------------------------------------

namespace detail {

// Thin QR of a square complex matrix by Householder reflections; returns Q
// with the R diagonal's phases absorbed so that R has nonnegative diagonal.
// Applied to a Gaussian matrix this yields the unitary group's uniform
// (Haar) distribution.
inline Matrix qr_unitary(Matrix a) {
  const std::size_t n = a.dim();
  Matrix q = Matrix::identity(n);
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) norm2 += std::norm(a(i, k));
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;
    const Complex x0 = a(k, k);
    const Complex phase = (std::abs(x0) == 0.0) ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * norm;
    for (std::size_t i = 0; i < n; ++i) v[i] = (i >= k) ? a(i, k) : Complex(0.0);
    v[k] -= alpha;
    double vv = 0.0;
    for (std::size_t i = k; i < n; ++i) vv += std::norm(v[i]);
    if (vv == 0.0) continue;
    const double beta = 2.0 / vv;

    // A <- P A, Q <- Q P with P = I - beta v v^dag.
    for (std::size_t j = k; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = k; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
      dot *= beta;
      for (std::size_t i = k; i < n; ++i) a(i, j) -= dot * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = k; j < n; ++j) dot += q(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k; j < n; ++j) q(i, j) -= dot * std::conj(v[j]);
    }
  }
  // Column k of Q absorbs the phase of r_kk, making the factorization the
  // one with positive diagonal R (the distribution-correct convention).
  for (std::size_t k = 0; k < n; ++k) {
    const Complex rkk = a(k, k);
    const double mag = std::abs(rkk);
    const Complex phase = (mag == 0.0) ? Complex(1.0) : rkk / mag;
    for (std::size_t i = 0; i < n; ++i) q(i, k) *= phase;
  }
  return q;
}

inline Matrix ginibre(std::size_t rows, std::size_t cols, RngStream& rng) {
  // Stored as a square matrix padded with zero columns when cols < rows;
  // only the leading block is ever read.
  Matrix g(rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
  return g;
}

}  // namespace detail

// Haar-distributed unitary (complex Gaussian matrix, QR, phase fix).
inline Matrix haar_unitary(std::size_t dim, RngStream& rng) {
  if (dim < 2 || dim > 8)
    throw std::invalid_argument("haar_unitary: dim outside [2, 8]");
  return detail::qr_unitary(detail::ginibre(dim, dim, rng));
}

// Random two-qubit density matrix of the given rank, induced by a 4 x rank
// complex Gaussian factor G: rho = G G^dag / tr(G G^dag).
inline DensityMatrix random_density(int rank, RngStream& rng) {
  if (rank < 1 || rank > 4)
    throw std::invalid_argument("random_density: rank outside [1, 4]");
  const Matrix g = detail::ginibre(4, static_cast<std::size_t>(rank), rng);
  Matrix m = g * g.adjoint();
  const double tr = m.trace().real();
  m *= Complex(1.0 / tr);
  // Exact Hermitian symmetrization; the product is Hermitian only up to
  // rounding and the constructor checks it strictly.
  Matrix h(4);
  for (std::size_t i = 0; i < 4; ++i) {
    h(i, i) = Complex(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return DensityMatrix({2, 2}, std::move(h));
}

// Haar-random pure state over the given factors (normalized Gaussian vector).
inline PureState random_pure(const std::vector<std::size_t>& dims,
                             RngStream& rng) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  std::vector<Complex> amp(n);
  double n2 = 0.0;
  for (auto& a : amp) {
    a = rng.complex_gaussian();
    n2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amp) a *= inv;
  return PureState(dims, std::move(amp));
}

// ---------------------------------------------------------------------------
// A two-parameter family of system-environment interactions
// ---------------------------------------------------------------------------

struct PQChannel {
  double p = 0.0;
  double q = 0.0;

  void validate() const {
    if (p < 0.0 || p > 1.0 || q < 0.0 || q > 1.0)
      throw std::invalid_argument("PQChannel: parameters outside [0, 1]");
  }
};

// Unitary on system x environment (both qubits) acting as
//   |00> -> sqrt(1-q)|00> + sqrt(q)|11>,   |10> -> sqrt(1-p)|10> + sqrt(p)|01>,
// completed on the remaining basis states by
//   |01> -> -sqrt(q)|00> + sqrt(1-q)|11>,  |11> -> -sqrt(p)|10> + sqrt(1-p)|01>.
inline Matrix pq_unitary(const PQChannel& ch) {
  ch.validate();
  const double sp = std::sqrt(ch.p), cp = std::sqrt(1.0 - ch.p);
  const double sq = std::sqrt(ch.q), cq = std::sqrt(1.0 - ch.q);
  Matrix u(4);
  // Columns are images of |00>, |01>, |10>, |11>.
  u(0, 0) = cq;
  u(3, 0) = sq;
  u(0, 1) = -sq;
  u(3, 1) = cq;
  u(2, 2) = cp;
  u(1, 2) = sp;
  u(2, 3) = -sp;
  u(1, 3) = cp;
  return u;
}

// Attach a fresh |0> environment qubit to a two-qubit pure state and act with
// u_be on the (second qubit, environment) pair: (1 x U)(|psi>_AB |0>_E).
inline PureState dilate(const PureState& psi_ab, const Matrix& u_be) {
  if (psi_ab.dims() != std::vector<std::size_t>{2, 2})
    throw std::invalid_argument("dilate: input must be a two-qubit pure state");
  if (u_be.dim() != 4)
    throw std::invalid_argument("dilate: interaction must be 4x4");
  if ((u_be * u_be.adjoint() - Matrix::identity(4)).max_abs() >
      tolerances().unitarity)
    throw std::invalid_argument("dilate: interaction not unitary");
  // out(a, b', e') = sum_b U((b', e'), (b, 0)) psi(a, b).
  std::vector<Complex> out(8, 0.0);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t bp = 0; bp < 2; ++bp)
      for (std::size_t ep = 0; ep < 2; ++ep)
        for (std::size_t b = 0; b < 2; ++b)
          out[a * 4 + bp * 2 + ep] +=
              u_be(bp * 2 + ep, b * 2 + 0) * psi_ab.amplitude(a * 2 + b);
  return PureState({2, 2, 2}, std::move(out));
}

// Apply the channel "attach |0>_E, act with u_be on (B, E), discard E" to a
// mixed two-qubit state.
inline DensityMatrix apply_channel_second_qubit(const DensityMatrix& rho_ab,
                                                const Matrix& u_be) {
  if (rho_ab.dims() != std::vector<std::size_t>{2, 2})
    throw std::invalid_argument("apply_channel_second_qubit: expects two qubits");
  if (u_be.dim() != 4)
    throw std::invalid_argument("apply_channel_second_qubit: interaction must be 4x4");
  if ((u_be * u_be.adjoint() - Matrix::identity(4)).max_abs() >
      tolerances().unitarity)
    throw std::invalid_argument("apply_channel_second_qubit: interaction not unitary");
  Matrix e00(2);
  e00(0, 0) = 1.0;
  const Matrix big = kron(Matrix::identity(2), u_be);
  Matrix evolved = big * kron(rho_ab.mat(), e00) * big.adjoint();
  // Symmetrize away rounding before revalidation.
  Matrix h(8);
  for (std::size_t i = 0; i < 8; ++i) {
    h(i, i) = Complex(evolved(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < 8; ++j) {
      const Complex v = 0.5 * (evolved(i, j) + std::conj(evolved(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return partial_trace(DensityMatrix({2, 2, 2}, std::move(h)), {0, 1});
}

// ---------------------------------------------------------------------------
// Local filtering
// ---------------------------------------------------------------------------

struct FilterResult {
  DensityMatrix state;
  double probability = 0.0;
};

// (a x b) rho (a x b)^dag renormalized, plus the success probability.
// Rejects (numerically) singular filters and vanishing probability.
inline FilterResult local_filter(const DensityMatrix& rho, const Matrix& a,
                                 const Matrix& b) {
  if (rho.dims() != std::vector<std::size_t>{2, 2})
    throw std::invalid_argument("local_filter: expects a two-qubit state");
  if (a.dim() != 2 || b.dim() != 2)
    throw std::invalid_argument("local_filter: filters must be 2x2");
  const auto& tol = tolerances();
  if (std::abs(determinant(a)) < tol.filter_det ||
      std::abs(determinant(b)) < tol.filter_det)
    throw std::invalid_argument("local_filter: singular filter");
  const Matrix op = kron(a, b);
  Matrix m = op * rho.mat() * op.adjoint();
  const double p = m.trace().real();
  if (p < tol.filter_probability)
    throw std::invalid_argument("local_filter: vanishing success probability");
  m *= Complex(1.0 / p);
  Matrix h(4);
  for (std::size_t i = 0; i < 4; ++i) {
    h(i, i) = Complex(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return FilterResult{DensityMatrix({2, 2}, std::move(h)), p};
}

}  // namespace qpi
