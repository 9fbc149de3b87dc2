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

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qpi/qpi.hpp"

using Catch::Approx;
using namespace qpi;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("bell states have the right amplitudes", "[states]") {
  const PureState psi_plus = bell_state(BellKind::PsiPlus);
  REQUIRE(psi_plus.amplitude(0) == Complex(0.0));
  REQUIRE(psi_plus.amplitude(1) == Complex(kInvSqrt2));
  REQUIRE(psi_plus.amplitude(2) == Complex(kInvSqrt2));
  REQUIRE(psi_plus.amplitude(3) == Complex(0.0));

  const PureState phi_minus = bell_state(BellKind::PhiMinus);
  REQUIRE(phi_minus.amplitude(0) == Complex(kInvSqrt2));
  REQUIRE(phi_minus.amplitude(3) == Complex(-kInvSqrt2));
}

TEST_CASE("bell diagonal mixes the four projectors", "[states]") {
  const std::array<double, 4> w{0.4, 0.3, 0.2, 0.1};
  const DensityMatrix rho = bell_diagonal(w);
  // Its eigenvalues are exactly the weights.
  const auto ev = eig_hermitian(rho.mat());
  REQUIRE(ev[3] == Approx(0.4).margin(1e-12));
  REQUIRE(ev[2] == Approx(0.3).margin(1e-12));
  REQUIRE(ev[1] == Approx(0.2).margin(1e-12));
  REQUIRE(ev[0] == Approx(0.1).margin(1e-12));

  REQUIRE_THROWS_AS(bell_diagonal({0.5, 0.5, 0.5, -0.5}), std::invalid_argument);
  REQUIRE_THROWS_AS(bell_diagonal({0.5, 0.4, 0.2, 0.1}), std::invalid_argument);
}

TEST_CASE("canonical three-qubit form places amplitudes and validates", "[states]") {
  AcinParams p;
  p.gamma = {0.5, 0.5, 0.5, 0.3, std::sqrt(1.0 - 0.75 - 0.09)};
  p.phi = 1.25;
  const PureState psi = acin_state(p);
  REQUIRE(psi.amplitude(0) == Complex(0.5));
  REQUIRE(std::abs(psi.amplitude(4) -
                   0.5 * Complex(std::cos(1.25), std::sin(1.25))) < 1e-15);
  REQUIRE(psi.amplitude(5) == Complex(0.5));
  REQUIRE(psi.amplitude(6) == Complex(0.3));
  REQUIRE(psi.amplitude(1) == Complex(0.0));

  AcinParams bad = p;
  bad.gamma[0] = 0.9;
  REQUIRE_THROWS_AS(acin_state(bad), std::invalid_argument);
  bad = p;
  bad.phi = 4.0;
  REQUIRE_THROWS_AS(acin_state(bad), std::invalid_argument);
  bad = p;
  bad.gamma[2] = -bad.gamma[2];
  REQUIRE_THROWS_AS(acin_state(bad), std::invalid_argument);
}

TEST_CASE("haar unitaries are unitary and well spread", "[states]") {
  RngStream rng(31, 0);
  for (std::size_t dim : {2, 4, 7}) {
    const Matrix u = haar_unitary(dim, rng);
    REQUIRE((u * u.adjoint() - Matrix::identity(dim)).max_abs() < 1e-12);
    REQUIRE(std::abs(std::abs(determinant(u)) - 1.0) < 1e-12);
  }

  // |u(0,0)|^2 of a Haar dim-4 unitary follows Beta(1,3), whose CDF is
  // 1 - (1-x)^3. A one-sample KS test at alpha = 0.01 checks the sampler
  // actually covers the group rather than some lower-dimensional slice.
  const std::size_t n = 2000;
  std::vector<double> sample(n);
  for (std::size_t i = 0; i < n; ++i) {
    RngStream stream(31, 100 + i);
    sample[i] = std::norm(haar_unitary(4, stream)(0, 0));
  }
  const double d = oracle::ks_distance(sample, [](double x) {
    return 1.0 - std::pow(1.0 - x, 3.0);
  });
  REQUIRE(d < oracle::ks_threshold(n));

  // Matching first-moment check on a different entry: mean 1/4, variance
  // 3/80, so a 3-sigma band around the sample mean.
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    RngStream stream(31, 5000 + i);
    mean += std::norm(haar_unitary(4, stream)(1, 1));
  }
  mean /= static_cast<double>(n);
  REQUIRE(std::abs(mean - 0.25) < 3.0 * std::sqrt(3.0 / 80.0 / n));

  REQUIRE_THROWS_AS(haar_unitary(1, rng), std::invalid_argument);
  REQUIRE_THROWS_AS(haar_unitary(9, rng), std::invalid_argument);
}

TEST_CASE("random densities have the requested rank", "[states]") {
  RngStream rng(32, 0);
  for (int rank = 1; rank <= 4; ++rank) {
    const DensityMatrix rho = random_density(rank, rng);
    const auto ev = eig_hermitian(rho.mat());  // ascending
    for (int i = 0; i < 4 - rank; ++i) REQUIRE(std::abs(ev[i]) < 1e-12);
    REQUIRE(ev[4 - rank] > 1e-6);  // generically far from zero
  }
  REQUIRE_THROWS_AS(random_density(0, rng), std::invalid_argument);
  REQUIRE_THROWS_AS(random_density(5, rng), std::invalid_argument);
}

TEST_CASE("random pure states are normalized", "[states]") {
  RngStream rng(33, 0);
  const PureState psi = random_pure({2, 2, 2}, rng);
  double n2 = 0.0;
  for (const auto& a : psi.amplitudes()) n2 += std::norm(a);
  REQUIRE(n2 == Approx(1.0).margin(1e-12));
  REQUIRE(psi.dims() == std::vector<std::size_t>{2, 2, 2});
}

TEST_CASE("interaction unitary acts as specified on its basis", "[states]") {
  const PQChannel ch{0.3, 0.8};
  const Matrix u = pq_unitary(ch);
  REQUIRE((u * u.adjoint() - Matrix::identity(4)).max_abs() < 1e-15);

  // Image of |00>: sqrt(1-q)|00> + sqrt(q)|11>.
  REQUIRE(u(0, 0).real() == Approx(std::sqrt(0.2)).margin(1e-15));
  REQUIRE(u(3, 0).real() == Approx(std::sqrt(0.8)).margin(1e-15));
  REQUIRE(std::abs(u(1, 0)) + std::abs(u(2, 0)) == 0.0);
  // Image of |10>: sqrt(1-p)|10> + sqrt(p)|01>.
  REQUIRE(u(2, 2).real() == Approx(std::sqrt(0.7)).margin(1e-15));
  REQUIRE(u(1, 2).real() == Approx(std::sqrt(0.3)).margin(1e-15));

  REQUIRE_THROWS_AS(pq_unitary(PQChannel{-0.1, 0.5}), std::invalid_argument);
  REQUIRE_THROWS_AS(pq_unitary(PQChannel{0.1, 1.5}), std::invalid_argument);
}

TEST_CASE("dilation of the interaction on a bell pair", "[states]") {
  const double p = 0.3, q = 0.8;
  const PureState out = dilate(bell_state(BellKind::PsiPlus),
                               pq_unitary(PQChannel{p, q}));
  // (1 x U)(|psi+>|0>) = (|0>(sqrt(1-p)|10> + sqrt(p)|01>)
  //                     + |1>(sqrt(1-q)|00> + sqrt(q)|11>)) / sqrt(2).
  std::vector<Complex> expect(8, 0.0);
  expect[0 * 4 + 0 * 2 + 1] = std::sqrt(p) * kInvSqrt2;
  expect[0 * 4 + 1 * 2 + 0] = std::sqrt(1.0 - p) * kInvSqrt2;
  expect[1 * 4 + 0 * 2 + 0] = std::sqrt(1.0 - q) * kInvSqrt2;
  expect[1 * 4 + 1 * 2 + 1] = std::sqrt(q) * kInvSqrt2;
  for (std::size_t i = 0; i < 8; ++i)
    REQUIRE(std::abs(out.amplitude(i) - expect[i]) < 1e-15);

  // A non-unitary interaction is rejected.
  Matrix bad = Matrix::identity(4);
  bad(0, 0) = 0.5;
  REQUIRE_THROWS_AS(dilate(bell_state(BellKind::PsiPlus), bad),
                    std::invalid_argument);
}

TEST_CASE("channel application agrees with dilate-then-trace", "[states]") {
  RngStream rng(34, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const PureState phi = random_pure({2, 2}, rng);
    const Matrix u = haar_unitary(4, rng);
    const DensityMatrix via_mixed =
        apply_channel_second_qubit(DensityMatrix::from_pure(phi), u);
    const DensityMatrix via_pure = partial_trace(dilate(phi, u), {0, 1});
    REQUIRE((via_mixed.mat() - via_pure.mat()).max_abs() < 1e-12);
  }
}

TEST_CASE("partial trace recovers product factors", "[states]") {
  RngStream rng(35, 0);
  // Single-qubit factors, obtained by reducing random two-qubit states.
  const DensityMatrix a = partial_trace(random_density(2, rng), {0});
  const DensityMatrix b = partial_trace(random_density(3, rng), {1});
  const DensityMatrix ab({2, 2}, kron(a.mat(), b.mat()));

  // Tracing out either side gives back the other factor. The traced-out
  // factor's trace is 1, so no renormalization enters.
  REQUIRE((partial_trace(ab, {0}).mat() - a.mat()).max_abs() < 1e-14);
  REQUIRE((partial_trace(ab, {1}).mat() - b.mat()).max_abs() < 1e-14);

  REQUIRE_THROWS_AS(partial_trace(ab, {1, 0}), std::invalid_argument);
  REQUIRE_THROWS_AS(partial_trace(ab, {2}), std::invalid_argument);
  REQUIRE_THROWS_AS(partial_trace(ab, std::vector<std::size_t>{}),
                    std::invalid_argument);
}

TEST_CASE("partial trace of a maximally entangled pair is maximally mixed",
          "[states]") {
  const DensityMatrix r = partial_trace(bell_state(BellKind::PhiPlus), {1});
  REQUIRE((r.mat() - Complex(0.5) * Matrix::identity(2)).max_abs() < 1e-15);
}

TEST_CASE("partial transpose is an involution with known spectrum", "[states]") {
  const DensityMatrix bell =
      DensityMatrix::from_pure(bell_state(BellKind::PsiPlus));
  const Matrix pt = partial_transpose(bell, 1);
  // Worked out by hand: eigenvalues (1/2, 1/2, 1/2, -1/2), det = -1/16.
  const auto ev = eig_hermitian(pt);
  REQUIRE(ev[0] == Approx(-0.5).margin(1e-12));
  REQUIRE(ev[1] == Approx(0.5).margin(1e-12));
  REQUIRE(ev[3] == Approx(0.5).margin(1e-12));
  REQUIRE(determinant(pt).real() == Approx(-1.0 / 16.0).margin(1e-14));

  // On a separable state the partial transpose stays a state, so it can be
  // applied twice; doing so returns the original. It also acts as plain
  // transposition of the chosen factor.
  RngStream rng(36, 0);
  const DensityMatrix a = partial_trace(random_density(4, rng), {0});
  const DensityMatrix b = partial_trace(random_density(2, rng), {1});
  const DensityMatrix prod({2, 2}, kron(a.mat(), b.mat()));
  for (std::size_t side : {0, 1}) {
    const Matrix once = partial_transpose(prod, side);
    const Matrix factorwise = side == 0
                                  ? kron(a.mat().transpose(), b.mat())
                                  : kron(a.mat(), b.mat().transpose());
    REQUIRE((once - factorwise).max_abs() < 1e-15);
    const Matrix twice = partial_transpose(DensityMatrix({2, 2}, once), side);
    REQUIRE((twice - prod.mat()).max_abs() == 0.0);
  }
}

TEST_CASE("local filter renormalizes and reports probability", "[states]") {
  RngStream rng(37, 0);
  const DensityMatrix rho = random_density(3, rng);

  const FilterResult same =
      local_filter(rho, Matrix::identity(2), Matrix::identity(2));
  REQUIRE(same.probability == Approx(1.0).margin(1e-12));
  REQUIRE((same.state.mat() - rho.mat()).max_abs() < 1e-12);

  Matrix singular(2);
  singular(0, 0) = 1.0;
  REQUIRE_THROWS_AS(local_filter(rho, singular, Matrix::identity(2)),
                    std::invalid_argument);
}

TEST_CASE("rng streams are independent and reproducible", "[states]") {
  RngStream a(99, 7), b(99, 7), c(99, 8);
  for (int i = 0; i < 100; ++i) {
    const double va = a.uniform();
    REQUIRE(va == b.uniform());
    REQUIRE(va >= 0.0);
    REQUIRE(va < 1.0);
  }
  // Different stream index, different sequence.
  RngStream a2(99, 7);
  bool differs = false;
  for (int i = 0; i < 16 && !differs; ++i)
    differs = a2.uniform() != c.uniform();
  REQUIRE(differs);

  // Gaussians: sample mean of 4000 draws sits within 3 sigma of zero.
  RngStream g(99, 9);
  double mean = 0.0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) mean += g.gaussian();
  mean /= n;
  REQUIRE(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
}
