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
#include <stdexcept>
#include <string>
#include <vector>

#include "qpi/matrix.hpp"
#include "qpi/measures.hpp"
#include "qpi/quantum_state.hpp"
#include "qpi/states.hpp"
#include "qpi/tolerances.hpp"

namespace qpi {

// ---------------------------------------------------------------------------
// Monogamy across a three-qubit pure state
// ---------------------------------------------------------------------------

// Pairwise quantities are labeled relative to the pivot qubit: "ab" is the
// pivot paired with the lower-indexed other qubit, "bc" with the higher one.
struct MonogamyReport {
  double c_ab = 0.0, c_bc = 0.0;
  double tau = 0.0;
  double c_pivot = 0.0;   // concurrence between the pivot and the other two
  double pi_ab = 0.0, pi_bc = 0.0;
  double pi_pivot = 0.0;  // one-versus-rest measure at the pivot
  double lhs_ckw = 0.0;   // C_ab^2 + C_bc^2 + tau
  double lhs_pi = 0.0;    // sqrt((tau/2)^2 + pi_ab^4) + sqrt((tau/2)^2 + pi_bc^4)
  double residual_ckw = 0.0;  // |lhs_ckw - c_pivot^2|
  double residual_pi = 0.0;   // |lhs_pi - pi_pivot^2|
};

namespace detail {

inline MonogamyReport monogamy_report(const PureState& psi, std::size_t pivot) {
  if (psi.dims() != std::vector<std::size_t>{2, 2, 2})
    throw std::invalid_argument("monogamy: expects three qubits");
  if (pivot > 2) throw std::invalid_argument("monogamy: pivot must be 0..2");
  std::array<std::size_t, 2> others{};
  std::size_t k = 0;
  for (std::size_t f = 0; f < 3; ++f)
    if (f != pivot) others[k++] = f;

  const auto pair_keep = [&](std::size_t other) {
    return std::vector<std::size_t>{std::min(pivot, other), std::max(pivot, other)};
  };

  MonogamyReport r;
  const DensityMatrix rho_ab = partial_trace(psi, pair_keep(others[0]));
  const DensityMatrix rho_bc = partial_trace(psi, pair_keep(others[1]));
  r.c_ab = concurrence(rho_ab);
  r.c_bc = concurrence(rho_bc);
  r.pi_ab = pi_measure(rho_ab);
  r.pi_bc = pi_measure(rho_bc);
  r.tau = tangle(psi);
  r.pi_pivot = pi_one_vs_two(psi, pivot);
  r.c_pivot = r.pi_pivot;  // both equal 2 sqrt(det rho_pivot) for pure states

  r.lhs_ckw = r.c_ab * r.c_ab + r.c_bc * r.c_bc + r.tau;
  r.residual_ckw = std::abs(r.lhs_ckw - r.c_pivot * r.c_pivot);

  const double half_tau_sq = 0.25 * r.tau * r.tau;
  const double a = std::pow(r.pi_ab, 4.0), b = std::pow(r.pi_bc, 4.0);
  r.lhs_pi = std::sqrt(half_tau_sq + a) + std::sqrt(half_tau_sq + b);
  r.residual_pi = std::abs(r.lhs_pi - r.pi_pivot * r.pi_pivot);
  return r;
}

}  // namespace detail

// Squared pairwise concurrences plus the tangle against the pivot's
// one-versus-rest concurrence (which is 4 det rho_pivot squared-wise).
inline MonogamyReport ckw_check(const PureState& psi, std::size_t pivot) {
  return detail::monogamy_report(psi, pivot);
}

// The determinant-based measure's own trade-off across the same cut.
inline MonogamyReport pi_monogamy_check(const PureState& psi, std::size_t pivot) {
  return detail::monogamy_report(psi, pivot);
}

// ---------------------------------------------------------------------------
// Bridges between the measure, concurrence and tangle
// ---------------------------------------------------------------------------

// pi = sqrt(C sqrt(C^2 + tau)) for reductions of three-qubit pure states.
inline double pi_from_c_tau(double c, double tau) {
  if (c < 0.0 || tau < 0.0)
    throw std::invalid_argument("pi_from_c_tau: negative input");
  return std::sqrt(c * std::sqrt(c * c + tau));
}

// Inverse bridge: C^2 = (-tau + sqrt(tau^2 + 4 pi^4)) / 2.
inline double c_from_pi_tau(double pi, double tau) {
  if (pi < 0.0 || tau < 0.0)
    throw std::invalid_argument("c_from_pi_tau: negative input");
  const double p4 = std::pow(pi, 4.0);
  const double c2 = 0.5 * (-tau + std::sqrt(tau * tau + 4.0 * p4));
  return std::sqrt(std::max(0.0, c2));
}

// For rank <= 2 states the measure is the geometric mean of the concurrence
// and the concurrence of assistance; returns |pi - sqrt(C Ca)|. The rank
// gate reads the spectrum of rho itself. Also enforces the rank-2 tightened
// bound pi <= sqrt(C): a violation beyond tolerance is a numerical failure.
inline double geometric_mean_check(const DensityMatrix& rho) {
  if (rho.dims() != std::vector<std::size_t>{2, 2})
    throw std::invalid_argument("geometric_mean_check: expects two qubits");
  const auto spec = eig_hermitian(rho.mat());
  const auto& tol = tolerances();
  if (spec[0] > tol.rank_gate || spec[1] > tol.rank_gate)
    throw std::invalid_argument("geometric_mean_check: state rank exceeds 2");
  const auto s = lambda_spectrum(rho);
  const double c = concurrence(s);
  const double ca = concurrence_assist(s);
  const double pi = pi_measure(rho);
  if (pi > std::sqrt(c) + tol.tightened_bound_slack)
    throw std::runtime_error("geometric_mean_check: tightened bound violated (pi " +
                             std::to_string(pi) + " vs sqrt(C) " +
                             std::to_string(std::sqrt(c)) + ")");
  return std::abs(pi - std::sqrt(c * ca));
}

// ---------------------------------------------------------------------------
// Tangle from three measurable determinants
// ---------------------------------------------------------------------------

// Reconstructs the tangle of a three-qubit pure state from det(rho_ab^PT),
// det(rho_bc^PT) and det(rho_b), where b is the pivot qubit. Solving the
// pivot trade-off for tau gives
//   x = ((s^2 + b - a) / 2s)^2 - b,   tau = 2 sqrt(x),
// with s the squared one-versus-rest measure 4 det(rho_b) and a, b the
// fourth powers of the two pairwise measures.
inline double tangle_from_determinants(double det_ab, double det_bc,
                                       double det_b) {
  constexpr double kDetMin = -1.0 / 16.0, kDetMax = 1.0 / 256.0;
  const double band = tolerances().measure_band;
  if (det_ab < kDetMin - band || det_ab > kDetMax + band ||
      det_bc < kDetMin - band || det_bc > kDetMax + band)
    throw std::invalid_argument("tangle_from_determinants: pair determinant outside [-1/16, 1/256]");
  if (det_b < -band || det_b > 0.25 + band)
    throw std::invalid_argument("tangle_from_determinants: pivot determinant outside [0, 1/4]");

  const auto& tol = tolerances();
  const double s = 4.0 * det_b;
  if (s < tol.tangle_solver_zero) return 0.0;  // pivot in a product state
  const double a = det_ab < 0.0 ? 16.0 * (-det_ab) : 0.0;  // pi_ab^4
  const double b = det_bc < 0.0 ? 16.0 * (-det_bc) : 0.0;  // pi_bc^4
  const double u = (s * s + b - a) / (2.0 * s);
  double x = u * u - b;
  if (x < 0.0) {
    if (x < -tol.tangle_solver_slack)
      throw std::invalid_argument("tangle_from_determinants: inconsistent inputs (x " +
                                  std::to_string(x) + ")");
    x = 0.0;
  }
  return 2.0 * std::sqrt(x);
}

// ---------------------------------------------------------------------------
// The (p, q) interaction family in closed form
// ---------------------------------------------------------------------------

struct ChannelClosedForms {
  double pi_ab = 0.0;
  double pi_ae = 0.0;
  double f_ab = 0.0;
};

// System-side and environment-side measures plus the system fidelity after
// sending half of a maximally entangled pair through the (p, q) interaction.
inline ChannelClosedForms channel_closed_forms(const PQChannel& ch) {
  ch.validate();
  const double p = ch.p, q = ch.q;
  ChannelClosedForms f;
  f.pi_ab = std::sqrt(std::abs(p + q - 1.0));
  f.pi_ae = std::sqrt(std::abs(p - q));
  if (p + q - 1.0 < 0.0)
    f.f_ab = (2.0 - p - q + 2.0 * std::sqrt((1.0 - p) * (1.0 - q))) / 4.0;
  else
    f.f_ab = (p + q + 2.0 * std::sqrt(p * q)) / 4.0;
  return f;
}

// Fidelity from the two measures alone:
// F = (1 + pi_ab^2)/4 * (1 + sqrt(1 - pi_ae^4 / (pi_ab^2 + 1)^2)).
inline double fidelity_relation(double pi_ab, double pi_ae) {
  const double s = pi_ab * pi_ab + 1.0;
  double rad = 1.0 - std::pow(pi_ae, 4.0) / (s * s);
  if (rad < 0.0) {
    if (rad < -tolerances().radicand_slack)
      throw std::invalid_argument("fidelity_relation: radicand " +
                                  std::to_string(rad) + " below zero");
    rad = 0.0;
  }
  return 0.25 * s * (1.0 + std::sqrt(rad));
}

// ---------------------------------------------------------------------------
// Canonical-form closed expressions
// ---------------------------------------------------------------------------

struct AcinClosedForms {
  double lambda1_sq = 0.0;
  double lambda2_sq = 0.0;
  double det_pt_ab = 0.0;
};

// For the five-coefficient canonical three-qubit form, the AB reduction has
// exactly two nonzero lambdas:
//   lambda_{1,2}^2 = g0^2 (2 g3^2 + g4^2 +- 2 g3 sqrt(g3^2 + g4^2)),
//   det(rho_ab^PT) = -g0^4 g3^2 (g3^2 + g4^2).
inline AcinClosedForms acin_closed_forms(const AcinParams& p) {
  p.validate();
  const double g0 = p.gamma[0], g3 = p.gamma[3], g4 = p.gamma[4];
  const double g02 = g0 * g0, g32 = g3 * g3, g42 = g4 * g4;
  const double root = std::sqrt(g32 + g42);
  AcinClosedForms f;
  f.lambda1_sq = g02 * (2.0 * g32 + g42 + 2.0 * g3 * root);
  f.lambda2_sq = std::max(0.0, g02 * (2.0 * g32 + g42 - 2.0 * g3 * root));
  f.det_pt_ab = -(g02 * g02) * g32 * (g32 + g42);
  return f;
}

// ---------------------------------------------------------------------------
// One-sided channels factorize the measure
// ---------------------------------------------------------------------------

struct FactorizationPure {
  double lhs = 0.0;       // pi after the channel acts on the second qubit
  double rhs = 0.0;       // pi(channel on half of psi+) * pi(input)
  double residual = 0.0;  // |lhs - rhs|
};

// Exact multiplicativity on pure inputs: the measure of (1 x channel)(phi)
// equals the channel's value on a maximally entangled input times the
// measure of phi.
inline FactorizationPure factorization_check_pure(const PureState& phi,
                                                  const Matrix& u_be) {
  if (phi.dims() != std::vector<std::size_t>{2, 2})
    throw std::invalid_argument("factorization_check_pure: expects two qubits");
  FactorizationPure r;
  const DensityMatrix out_phi =
      partial_trace(dilate(phi, u_be), {0, 1});
  const DensityMatrix out_bell =
      partial_trace(dilate(bell_state(BellKind::PsiPlus), u_be), {0, 1});
  r.lhs = pi_measure(out_phi);
  r.rhs = pi_measure(out_bell) * pi_measure(DensityMatrix::from_pure(phi));
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

struct FactorizationMixed {
  double lhs = 0.0;    // pi after the channel acts on the second qubit
  double bound = 0.0;  // pi(input) * pi(channel on half of psi+)
  double slack = 0.0;  // bound - lhs, nonnegative up to numerics
};

// Mixed inputs obey the multiplicative bound (with equality no longer
// guaranteed): pi((1 x channel)(rho)) <= pi(rho) * pi((1 x channel)(psi+)).
inline FactorizationMixed factorization_check_mixed(const DensityMatrix& rho,
                                                    const Matrix& u_be) {
  FactorizationMixed r;
  r.lhs = pi_measure(apply_channel_second_qubit(rho, u_be));
  const DensityMatrix out_bell =
      partial_trace(dilate(bell_state(BellKind::PsiPlus), u_be), {0, 1});
  r.bound = pi_measure(rho) * pi_measure(out_bell);
  r.slack = r.bound - r.lhs;
  return r;
}

}  // namespace qpi
