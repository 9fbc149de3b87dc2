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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qpi/matrix.hpp"
#include "qpi/tolerances.hpp"

namespace qpi {

namespace detail {

// Complex Givens rotation G = [[c, s], [-conj(s), c]] with real c >= 0 such
// that G * (f, g)^T has a zero second component.
struct Givens {
  double c = 1.0;
  Complex s = 0.0;
};

inline Givens make_givens(Complex f, Complex g) {
  Givens gv;
  const double af = std::abs(f), ag = std::abs(g);
  if (ag == 0.0) return gv;  // identity
  if (af == 0.0) {
    gv.c = 0.0;
    gv.s = std::conj(g) / ag;
    return gv;
  }
  const double d = std::hypot(af, ag);
  gv.c = af / d;
  gv.s = (f / af) * (std::conj(g) / d);
  return gv;
}

// Unitary similarity reduction to upper Hessenberg form, in place.
inline void hessenberg_in_place(Matrix& h) {
  const std::size_t n = h.dim();
  if (n < 3) return;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    // Householder vector for column k, rows k+1 .. n-1.
    double norm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm2 += std::norm(h(i, k));
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const Complex phase = (std::abs(x0) == 0.0) ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * norm;

    std::vector<Complex> v(n, 0.0);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] -= alpha;
    double vv = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vv += std::norm(v[i]);
    if (vv == 0.0) continue;
    const double beta = 2.0 / vv;

    // H <- P H with P = I - beta v v^dag (Hermitian, unitary).
    for (std::size_t j = k; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
      dot *= beta;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= dot * v[i];
    }
    // H <- H P.
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
    }
    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Both roots of the 2x2 block [[a, b], [c, d]], product-corrected so the
// smaller root stays accurate when the roots differ wildly in magnitude.
inline void eig2x2(Complex a, Complex b, Complex c, Complex d, Complex& m1,
                   Complex& m2) {
  const Complex half_tr = 0.5 * (a + d);
  const Complex det = a * d - b * c;
  const Complex disc = std::sqrt(half_tr * half_tr - det);
  const Complex r1 = half_tr + disc, r2 = half_tr - disc;
  if (std::abs(r1) >= std::abs(r2)) {
    m1 = r1;
    m2 = (std::abs(r1) > 0.0) ? det / r1 : r2;
  } else {
    m1 = (std::abs(r2) > 0.0) ? det / r2 : r1;
    m2 = r2;
  }
}

}  // namespace detail

// All eigenvalues of a general complex matrix (dim <= 8), unordered.
// Hessenberg reduction followed by explicitly shifted QR with Wilkinson
// shifts and deflation. Throws std::runtime_error if the iteration cap
// (100 sweeps per dimension) is exceeded; results are never truncated.
inline std::vector<Complex> eig_general(const Matrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return {};
  if (n > 8) throw std::invalid_argument("eig_general: dim > 8 unsupported");
  if (n == 1) return {m(0, 0)};

  Matrix h = m;
  detail::hessenberg_in_place(h);

  const double norm = std::max(m.frobenius_norm(), 0.0);
  std::vector<Complex> eig(n);
  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t cap = 100 * n;
  std::size_t steps = 0;

  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  std::size_t stall = 0;  // QR steps since the last deflation
  while (hi >= 0) {
    // Split off any negligible subdiagonals inside the active block.
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      double tst = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (tst == 0.0) tst = norm;
      if (sub <= eps * tst) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }

    if (lo == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      stall = 0;
      continue;
    }
    if (lo == hi - 1) {
      Complex m1, m2;
      detail::eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi),
                     m1, m2);
      eig[hi - 1] = m1;
      eig[hi] = m2;
      hi -= 2;
      stall = 0;
      continue;
    }

    if (++steps > cap)
      throw std::runtime_error("eig_general: QR iteration did not converge");

    // Wilkinson shift: the eigenvalue of the trailing 2x2 closest to the
    // corner entry. Every 15 stalled steps take an exceptional shift instead.
    Complex mu;
    if (++stall % 15 == 0) {
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      Complex m1, m2;
      detail::eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi),
                     m1, m2);
      mu = (std::abs(m1 - h(hi, hi)) < std::abs(m2 - h(hi, hi))) ? m1 : m2;
    }

    // One explicit QR step on the active window: H - mu I = QR, H <- RQ + mu I.
    for (std::ptrdiff_t i = lo; i <= hi; ++i) h(i, i) -= mu;
    std::vector<detail::Givens> rot(hi - lo);
    for (std::ptrdiff_t i = lo; i < hi; ++i) {
      const auto g = detail::make_givens(h(i, i), h(i + 1, i));
      rot[i - lo] = g;
      for (std::ptrdiff_t j = i; j <= hi; ++j) {
        const Complex t1 = h(i, j), t2 = h(i + 1, j);
        h(i, j) = g.c * t1 + g.s * t2;
        h(i + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
      }
      h(i + 1, i) = 0.0;
    }
    for (std::ptrdiff_t i = lo; i < hi; ++i) {
      const auto g = rot[i - lo];
      const std::ptrdiff_t rmax = std::min(i + 2, hi);
      for (std::ptrdiff_t r = lo; r <= rmax; ++r) {
        const Complex t1 = h(r, i), t2 = h(r, i + 1);
        h(r, i) = g.c * t1 + std::conj(g.s) * t2;
        h(r, i + 1) = -g.s * t1 + g.c * t2;
      }
    }
    for (std::ptrdiff_t i = lo; i <= hi; ++i) h(i, i) += mu;
  }
  return eig;
}

struct HermitianEigensystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns, same order as values
};

namespace detail {

// Cyclic complex Jacobi on a Hermitian matrix. Quadratically convergent and
// accurate to a few ulps for the sizes used here. Returns ascending values.
inline HermitianEigensystem jacobi_hermitian(const Matrix& m) {
  const std::size_t n = m.dim();
  // Work on the exactly Hermitian part; the caller has already checked that
  // the defect is within tolerance.
  Matrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = Complex(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  Matrix v = Matrix::identity(n);

  const double norm = h.frobenius_norm();
  const double stop = (norm == 0.0)
                          ? 0.0
                          : norm * 1e2 * std::numeric_limits<double>::epsilon();
  const auto off_norm = [&]() {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * std::norm(h(i, j));
    return std::sqrt(off);
  };
  bool converged = false;
  for (std::size_t sweep = 0; sweep < 60 && !converged; ++sweep) {
    if (off_norm() <= stop) {
      converged = true;
      break;
    }

    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = h(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase = apq / r;
        const double app = h(p, p).real(), aqq = h(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0)
                             ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const Complex sigma = (t * c) * std::conj(phase);

        // Columns p, q of H and of the accumulated eigenvector matrix.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex hkp = h(k, p), hkq = h(k, q);
          h(k, p) = c * hkp + sigma * hkq;
          h(k, q) = -std::conj(sigma) * hkp + c * hkq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + sigma * vkq;
          v(k, q) = -std::conj(sigma) * vkp + c * vkq;
        }
        // Rows p, q of H.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex hpk = h(p, k), hqk = h(q, k);
          h(p, k) = c * hpk + std::conj(sigma) * hqk;
          h(q, k) = -sigma * hpk + c * hqk;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
        h(p, p) = Complex(h(p, p).real(), 0.0);
        h(q, q) = Complex(h(q, q).real(), 0.0);
      }
  }
  if (!converged && off_norm() > 10.0 * stop)
    throw std::runtime_error("eig_hermitian: Jacobi sweep cap exceeded");

  HermitianEigensystem es;
  es.values.resize(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return h(a, a).real() < h(b, b).real();
  });
  es.vectors = Matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    es.values[c] = h(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) es.vectors(r, c) = v(r, order[c]);
  }
  return es;
}

inline void require_hermitian(const Matrix& m, const char* who) {
  const double defect = m.hermiticity_defect();
  if (defect > tolerances().hermiticity)
    throw std::invalid_argument(std::string(who) +
                                ": input not Hermitian (defect " +
                                std::to_string(defect) + ")");
}

}  // namespace detail

// Eigenvalues and eigenvectors of a Hermitian matrix, values ascending.
inline HermitianEigensystem eig_hermitian_system(const Matrix& m) {
  detail::require_hermitian(m, "eig_hermitian");
  return detail::jacobi_hermitian(m);
}

// Eigenvalues only, ascending.
inline std::vector<double> eig_hermitian(const Matrix& m) {
  return eig_hermitian_system(m).values;
}

// Principal square root of a positive semidefinite Hermitian matrix.
// Eigenvalues in [-psd_tolerance, 0) are treated as exact zeros; anything
// more negative is rejected.
inline Matrix sqrt_psd(const Matrix& m) {
  detail::require_hermitian(m, "sqrt_psd");
  auto es = detail::jacobi_hermitian(m);
  const std::size_t n = m.dim();
  Matrix root(n);
  for (std::size_t k = 0; k < n; ++k) {
    double lam = es.values[k];
    if (lam < 0.0) {
      if (lam < -tolerances().psd)
        throw std::invalid_argument("sqrt_psd: eigenvalue " +
                                    std::to_string(lam) + " below -psd tolerance");
      lam = 0.0;
    }
    const double s = std::sqrt(lam);
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vis = s * es.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j)
        root(i, j) += vis * std::conj(es.vectors(j, k));
    }
  }
  return root;
}

}  // namespace qpi
