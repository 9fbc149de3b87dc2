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
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpi/eig.hpp"
#include "qpi/matrix.hpp"
#include "qpi/quantum_state.hpp"
#include "qpi/tolerances.hpp"

namespace qpi {

// ---------------------------------------------------------------------------
// Spin-flipped state and its spectrum
// ---------------------------------------------------------------------------

// rho_tilde = (sy x sy) rho^* (sy x sy).
inline Matrix spin_flip(const DensityMatrix& rho) {
  if (rho.dims() != std::vector<std::size_t>{2, 2})
    throw std::invalid_argument("spin_flip: expects a two-qubit state");
  const Matrix yy = kron(pauli_y(), pauli_y());
  return yy * rho.mat().conjugate() * yy;
}

// The four descending square roots of the eigenvalues of rho * rho_tilde.
// That product is similar to a positive semidefinite matrix, so within noise
// its spectrum is real and nonnegative; anything outside the tolerance band
// is reported as a numerical failure rather than clamped away.
struct LambdaSpectrum {
  std::array<double, 4> lambda{};  // descending

  double sum() const { return lambda[0] + lambda[1] + lambda[2] + lambda[3]; }
};

namespace detail {

// Characteristic polynomial x^4 - e1 x^3 + e2 x^2 - e3 x + e4 of a 4x4
// product a * b, with everything accumulated in long double through Newton's
// identities on tr((ab)^k). Both factors are exact doubles, so the
// coefficients come out with about 1e-18 absolute error, far below what a
// backward-stable eigensolver can promise for this nonnormal product.
struct CharPoly4 {
  long double e1 = 0.0L, e2 = 0.0L, e3 = 0.0L, e4 = 0.0L;
  // Rounding-noise scale of e2..e4, from the magnitudes that cancelled in
  // the Newton identity for each coefficient. A coefficient within a modest
  // multiple of its own noise is indistinguishable from zero.
  long double n2 = 0.0L, n3 = 0.0L, n4 = 0.0L;
};

inline CharPoly4 char_poly_of_product(const Matrix& a, const Matrix& b) {
  using Cld = std::complex<long double>;
  Cld m[4][4], m2[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Cld acc = 0.0L;
      for (int k = 0; k < 4; ++k)
        acc += Cld(a(i, static_cast<std::size_t>(k))) *
               Cld(b(static_cast<std::size_t>(k), j));
      m[i][j] = acc;
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Cld acc = 0.0L;
      for (int k = 0; k < 4; ++k) acc += m[i][k] * m[k][j];
      m2[i][j] = acc;
    }
  // Power sums of the (real) spectrum; imaginary parts cancel to noise.
  long double p1 = 0.0L, p2 = 0.0L, p3 = 0.0L, p4 = 0.0L;
  for (int i = 0; i < 4; ++i) {
    p1 += m[i][i].real();
    p2 += m2[i][i].real();
    for (int j = 0; j < 4; ++j) {
      p3 += (m2[i][j] * m[j][i]).real();
      p4 += (m2[i][j] * m2[j][i]).real();
    }
  }
  CharPoly4 c;
  constexpr long double kEps = 1e-19L;
  c.e1 = p1;
  c.e2 = (c.e1 * p1 - p2) / 2.0L;
  c.n2 = kEps * (std::abs(c.e1 * p1) + std::abs(p2));
  c.e3 = (c.e2 * p1 - c.e1 * p2 + p3) / 3.0L;
  c.n3 = kEps * (std::abs(c.e2 * p1) + std::abs(c.e1 * p2) + std::abs(p3));
  c.e4 = (c.e3 * p1 - c.e2 * p2 + c.e1 * p3 - p4) / 4.0L;
  c.n4 = kEps * (std::abs(c.e3 * p1) + std::abs(c.e2 * p2) +
                 std::abs(c.e1 * p3) + std::abs(p4));
  return c;
}

// Refines the four eigenvalue estimates of the product against its exact
// characteristic polynomial. A trailing coefficient ratio approximates the
// smallest remaining root, so roots below the rounding residue of the stored
// state (relative to the trace) are structural zeros and get removed from
// the polynomial instead of being chased by Newton. One or two surviving
// roots have closed forms; three or four get safeguarded Newton steps that
// fall back to the input estimate whenever the step cannot be trusted
// (slope at noise level, wild jump, no residual improvement).
inline void polish_mu(const CharPoly4& p, std::array<double, 4>& mu) {
  std::sort(mu.begin(), mu.end(), std::greater<double>());
  const long double scale = std::max(p.e1, 0.0L);  // trace of the product
  if (scale < 1e-30L) {
    mu.fill(0.0);
    return;
  }
  const long double mu_floor = 1e-14L * scale;
  const long double coeff[5] = {1.0L, -p.e1, p.e2, -p.e3, p.e4};
  const long double noise[5] = {0.0L, 0.0L, p.n2, p.n3, p.n4};
  int live = 4;
  while (live > 1 && (std::abs(coeff[live]) <= 100.0L * noise[live] ||
                      std::abs(coeff[live]) <= mu_floor * std::abs(coeff[live - 1])))
    --live;
  for (int i = live; i < 4; ++i) mu[i] = 0.0;
  if (live == 1) {
    mu[0] = static_cast<double>(p.e1);
    return;
  }
  if (live == 2) {
    // x^2 - e1 x + e2 with the small root recovered from the product.
    const long double disc = p.e1 * p.e1 - 4.0L * p.e2;
    const long double big = 0.5L * (p.e1 + (disc > 0.0L ? std::sqrt(disc) : 0.0L));
    mu[0] = static_cast<double>(big);
    mu[1] = static_cast<double>(big > 0.0L ? p.e2 / big : 0.0L);
    return;
  }
  const auto value = [&](long double x) {
    long double v = coeff[0];
    for (int k = 1; k <= live; ++k) v = v * x + coeff[k];
    return v;
  };
  // Derivative by Horner, alongside the same recurrence on magnitudes so the
  // caller can tell a genuinely flat slope from one that cancelled to noise.
  const auto slope = [&](long double x, long double& mag) {
    long double d = static_cast<long double>(live);
    mag = d;
    const long double ax = std::abs(x);
    for (int k = 1; k < live; ++k) {
      const long double c = static_cast<long double>(live - k) * coeff[k];
      d = d * x + c;
      mag = mag * ax + std::abs(c);
    }
    return d;
  };
  // The eigensolver estimates are already close; the polish may only nudge
  // each one within a small neighborhood, never migrate it to another root.
  const long double reach = 1e-3L * scale;
  for (int i = 0; i < live; ++i) {
    const long double start = mu[i];
    long double x = start;
    long double best = start;
    long double best_f = std::abs(value(start));
    for (int it = 0; it < 12; ++it) {
      long double dmag = 0.0L;
      const long double d = slope(x, dmag);
      if (std::abs(d) < 1e-15L * dmag) break;
      const long double step = value(x) / d;
      if (std::abs(step) > reach) break;
      x -= step;
      if (x < 0.0L) x = 0.0L;
      if (std::abs(x - start) > reach) break;
      const long double f = std::abs(value(x));
      if (f < best_f) {
        best_f = f;
        best = x;
      }
      if (std::abs(step) <= 1e-19L * std::max(std::abs(x), mu_floor)) break;
    }
    mu[i] = static_cast<double>(std::max(0.0L, best));
  }
  std::sort(mu.begin(), mu.end(), std::greater<double>());
}

}  // namespace detail

inline LambdaSpectrum lambda_spectrum(const DensityMatrix& rho) {
  const Matrix flip = spin_flip(rho);
  const Matrix m = rho.mat() * flip;
  const auto eig = eig_general(m);
  const auto& tol = tolerances();
  std::array<double, 4> mu{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Complex e = eig[i];
    if (std::abs(e.imag()) > tol.lambda_imag)
      throw std::runtime_error("lambda_spectrum: complex eigenvalue (imag " +
                               std::to_string(e.imag()) + ")");
    double re = e.real();
    if (re < 0.0) {
      if (re < -tol.lambda_negative)
        throw std::runtime_error("lambda_spectrum: negative eigenvalue " +
                                 std::to_string(re));
      re = 0.0;
    }
    mu[i] = re;
  }
  detail::polish_mu(detail::char_poly_of_product(rho.mat(), flip), mu);
  LambdaSpectrum out;
  for (std::size_t i = 0; i < 4; ++i) out.lambda[i] = std::sqrt(mu[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Entanglement measures
// ---------------------------------------------------------------------------

inline double concurrence(const LambdaSpectrum& s) {
  const auto& l = s.lambda;
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline double concurrence(const DensityMatrix& rho) {
  return concurrence(lambda_spectrum(rho));
}

// Concurrence of assistance: the sum of the lambda spectrum.
inline double concurrence_assist(const LambdaSpectrum& s) { return s.sum(); }

inline double concurrence_assist(const DensityMatrix& rho) {
  return concurrence_assist(lambda_spectrum(rho));
}

// Determinant of the partial transpose (canonically on the second qubit;
// both choices give the same value). Real for Hermitian input by symmetry,
// so the imaginary part is checked and dropped.
inline double det_partial_transpose(const DensityMatrix& rho) {
  const Complex d = determinant(partial_transpose(rho, 1));
  if (std::abs(d.imag()) > tolerances().det_imag)
    throw std::runtime_error("det_partial_transpose: determinant not real (imag " +
                             std::to_string(d.imag()) + ")");
  return d.real();
}

// The determinant-based measure: 0 when det(rho^PT) >= 0, otherwise
// 2 |det(rho^PT)|^(1/4). Coincides with the concurrence on pure states.
// Magnitudes below the solver's resolution of zero count as zero; the fourth
// root would otherwise inflate pure rounding noise on structurally singular
// partial transposes (a 1e-34 leftover already reads back as 6e-9).
inline double pi_measure(double det_pt) {
  if (det_pt >= -tolerances().det_zero) return 0.0;
  return 2.0 * std::pow(-det_pt, 0.25);
}

inline double pi_measure(const DensityMatrix& rho) {
  return pi_measure(det_partial_transpose(rho));
}

// The same measure rebuilt from the lambda spectrum: the fourth root of
// C1 C2 C3 C4, where C1 = max{0, l1-l2-l3-l4} and C2, C3, C4 flip the sign
// of one of the smaller lambdas. Always equals pi_measure; verification
// suites exercise the identity across random states.
inline double pi_hat(const LambdaSpectrum& s) {
  const auto& l = s.lambda;
  const double c1 = std::max(0.0, l[0] - l[1] - l[2] - l[3]);
  const double c2 = l[0] - l[1] + l[2] + l[3];
  const double c3 = l[0] + l[1] - l[2] + l[3];
  const double c4 = l[0] + l[1] + l[2] - l[3];
  return std::pow(c1 * c2 * c3 * c4, 0.25);
}

inline double pi_hat(const DensityMatrix& rho) {
  return pi_hat(lambda_spectrum(rho));
}

// One-versus-rest measure for a three-qubit pure state: 2 sqrt(det rho_pivot).
inline double pi_one_vs_two(const PureState& psi, std::size_t pivot) {
  if (psi.dims() != std::vector<std::size_t>{2, 2, 2})
    throw std::invalid_argument("pi_one_vs_two: expects three qubits");
  if (pivot > 2) throw std::invalid_argument("pi_one_vs_two: pivot must be 0..2");
  const DensityMatrix r = partial_trace(psi, {pivot});
  const double det = (r.mat()(0, 0) * r.mat()(1, 1) -
                      r.mat()(0, 1) * r.mat()(1, 0))
                         .real();
  return 2.0 * std::sqrt(std::max(0.0, det));
}

// Residual three-way entanglement of a three-qubit pure state, computed as
// 4 l1 l2 from a two-qubit reduction. All three reductions must agree; a
// spread beyond the mismatch tolerance is reported as a numerical failure.
inline double tangle(const PureState& psi) {
  if (psi.dims() != std::vector<std::size_t>{2, 2, 2})
    throw std::invalid_argument("tangle: expects three qubits");
  const std::array<std::vector<std::size_t>, 3> keeps = {
      std::vector<std::size_t>{0, 1}, {1, 2}, {0, 2}};
  std::array<double, 3> tau{};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto s = lambda_spectrum(partial_trace(psi, keeps[k]));
    tau[k] = 4.0 * s.lambda[0] * s.lambda[1];
  }
  const auto [lo, hi] = std::minmax_element(tau.begin(), tau.end());
  if (*hi - *lo > tolerances().reduction_mismatch)
    throw std::runtime_error("tangle: reductions disagree by " +
                             std::to_string(*hi - *lo));
  return tau[0];
}

// ---------------------------------------------------------------------------
// Fully entangled fraction
// ---------------------------------------------------------------------------

namespace detail {

// Columns are the magic basis |phi+>, i|phi->, i|psi+>, |psi->; in this
// basis maximally entangled states are exactly the real unit vectors up to
// a global phase, which reduces the fidelity maximization to a symmetric
// 4x4 eigenproblem.
inline Matrix magic_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex is(0.0, s);
  Matrix b(4);
  // |phi+> = (|00> + |11>)/sqrt(2)
  b(0, 0) = s;
  b(3, 0) = s;
  // i|phi-> = i(|00> - |11>)/sqrt(2)
  b(0, 1) = is;
  b(3, 1) = -is;
  // i|psi+> = i(|01> + |10>)/sqrt(2)
  b(1, 2) = is;
  b(2, 2) = is;
  // |psi-> = (|01> - |10>)/sqrt(2)
  b(1, 3) = s;
  b(2, 3) = -s;
  return b;
}

}  // namespace detail

// Largest overlap with any maximally entangled two-qubit state: the top
// eigenvalue of the real part of rho expressed in the magic basis.
inline double singlet_fraction(const DensityMatrix& rho) {
  if (rho.dims() != std::vector<std::size_t>{2, 2})
    throw std::invalid_argument("singlet_fraction: expects a two-qubit state");
  const Matrix b = detail::magic_basis();
  const Matrix m = b.adjoint() * rho.mat() * b;
  Matrix re(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      re(i, j) = 0.5 * (m(i, j).real() + m(j, i).real());
  return eig_hermitian(re).back();
}

// ---------------------------------------------------------------------------
// Entanglement of formation bounds
// ---------------------------------------------------------------------------

inline double binary_entropy(double y) {
  if (y <= 0.0 || y >= 1.0) return 0.0;
  return -y * std::log2(y) - (1.0 - y) * std::log2(1.0 - y);
}

// Entanglement of formation of a state with concurrence x.
inline double eof_of_concurrence(double x) {
  const double r = std::clamp(1.0 - x * x, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(r)));
}

// Upper envelope of the measure at fixed concurrence:
// r(x) = (x ((x+2)/3)^3)^(1/4), increasing from 0 to 1 on [0, 1].
inline double pi_upper_bound(double x) {
  const double base = x * std::pow((x + 2.0) / 3.0, 3.0);
  return std::pow(std::max(0.0, base), 0.25);
}

// Inverse of the envelope by bisection, run to floating-point resolution
// (far below the 1e-12 the callers rely on).
inline double pi_upper_bound_inverse(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pi_upper_bound(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct EofBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Two-sided entanglement-of-formation estimate from the measure alone.
inline EofBounds eof_bounds(double pi) {
  const double band = tolerances().measure_band;
  if (pi < -band || pi > 1.0 + band)
    throw std::invalid_argument("eof_bounds: measure outside [0, 1]");
  const double x = std::clamp(pi, 0.0, 1.0);
  return EofBounds{eof_of_concurrence(pi_upper_bound_inverse(x)),
                   eof_of_concurrence(x)};
}

// ---------------------------------------------------------------------------
// Combined report
// ---------------------------------------------------------------------------

struct MeasureReport {
  double concurrence = 0.0;
  double assistance = 0.0;
  double pi = 0.0;
  double pi_hat = 0.0;
  double det_pt = 0.0;
  LambdaSpectrum lambda;
  double fef = 0.0;
};

inline MeasureReport measure_report(const DensityMatrix& rho) {
  MeasureReport r;
  r.lambda = lambda_spectrum(rho);
  r.concurrence = concurrence(r.lambda);
  r.assistance = concurrence_assist(r.lambda);
  r.det_pt = det_partial_transpose(rho);
  r.pi = pi_measure(r.det_pt);
  r.pi_hat = pi_hat(r.lambda);
  r.fef = singlet_fraction(rho);
  return r;
}

}  // namespace qpi
