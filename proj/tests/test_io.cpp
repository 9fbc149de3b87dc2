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
#include <limits>
#include <stdexcept>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "qpi/qpi.hpp"

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using namespace qpi;

namespace {

const char* kBellFixture =
    "# one ebit, no imaginary parts\n"
    "pure2q\n"
    "[0, 0] [0.70710678118654752, 0]\n"
    "[0.70710678118654752, 0] [0, 0]\n";

std::string mixed_fixture() {
  std::string text = "density2q  # four-dimensional identity / 4\n";
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j)
      text += i == j ? "[0.25,0]" : "[ 0 , 0 ]";
    text += '\n';
  }
  return text;
}

}  // namespace

TEST_CASE("formatting round-trips doubles exactly", "[io]") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 1.0e300, 0.0,
                   std::pow(27.0 / 256.0, 0.25)}) {
    REQUIRE(std::stod(format_double(x)) == x);
  }
  REQUIRE_THROWS_AS(format_double(std::numeric_limits<double>::quiet_NaN()),
                    std::runtime_error);
  REQUIRE_THROWS_AS(format_double(std::numeric_limits<double>::infinity()),
                    std::runtime_error);
}

TEST_CASE("state files parse through comments and loose spacing", "[io]") {
  const StateFile bell = parse_state_file(kBellFixture);
  REQUIRE(bell.kind == StateKind::Pure2q);
  REQUIRE(bell.data.size() == 4);
  REQUIRE(bell.data[1].real() == Approx(1.0 / std::sqrt(2.0)).margin(1e-15));
  REQUIRE(bell.data[0] == Complex(0.0, 0.0));

  const StateFile mixed = parse_state_file(mixed_fixture());
  REQUIRE(mixed.kind == StateKind::Density2q);
  REQUIRE(mixed.data.size() == 16);
  REQUIRE(mixed.data[0].real() == 0.25);
  REQUIRE(mixed.data[1] == Complex(0.0, 0.0));

  // No whitespace at all still tokenizes on the punctuation.
  const StateFile dense = parse_state_file("pure2q[1,0][0,0][0,0][0,0]");
  REQUIRE(dense.data[0].real() == 1.0);
}

TEST_CASE("parse errors name the offending token", "[io]") {
  REQUIRE_THROWS_WITH(parse_state_file("bogus2q [1, 0]"),
                      "state file: unknown kind 'bogus2q'");
  REQUIRE_THROWS_WITH(parse_state_file("pure2q 0.5"),
                      "state file: expected '[', got '0.5'");
  REQUIRE_THROWS_WITH(parse_state_file("pure2q [x, 0]"),
                      "state file: expected a number, got 'x'");
  REQUIRE_THROWS_WITH(parse_state_file("pure2q [1, 0]"),
                      "state file: unexpected end of input");
  REQUIRE_THROWS_WITH(
      parse_state_file(std::string(kBellFixture) + "42"),
      "state file: trailing token '42'");
  REQUIRE_THROWS_AS(load_state_file("/nonexistent/state.txt"),
                    std::runtime_error);
}

TEST_CASE("typed views convert and reject cross-kind use", "[io]") {
  const StateFile bell = parse_state_file(kBellFixture);
  const DensityMatrix rho = to_density(bell);
  REQUIRE(concurrence(rho) == Approx(1.0).margin(1e-10));
  const PureState psi = to_pure(bell);
  REQUIRE(std::abs(psi.amplitude(1)) == Approx(1.0 / std::sqrt(2.0)).margin(1e-15));

  const StateFile mixed = parse_state_file(mixed_fixture());
  REQUIRE(to_density(mixed).min_eigenvalue() == Approx(0.25).margin(1e-12));
  REQUIRE_THROWS_WITH(to_pure(mixed),
                      "state file: density2q is not a pure state");

  StateFile ghz;
  ghz.kind = StateKind::Pure3q;
  const double s = 1.0 / std::sqrt(2.0);
  ghz.data = {s, 0, 0, 0, 0, 0, 0, s};
  REQUIRE(tangle(to_pure(ghz)) == Approx(1.0).margin(1e-9));
  REQUIRE_THROWS_WITH(to_density(ghz),
                      "state file: pure3q has no two-qubit density view");
}

TEST_CASE("type invariants surface from the typed views", "[io]") {
  // A denormalized amplitude vector fails the pure-state constructor.
  REQUIRE_THROWS_WITH(to_pure(parse_state_file("pure2q[1,0][1,0][0,0][0,0]")),
                      ContainsSubstring("not normalized"));

  // Doubling the trace fails the density constructor.
  std::string heavy = "density2q";
  for (int i = 0; i < 16; ++i) heavy += i % 5 == 0 ? "[0.5,0]" : "[0,0]";
  REQUIRE_THROWS_WITH(to_density(parse_state_file(heavy)),
                      ContainsSubstring("trace not 1"));

  // A Hermitian, unit-trace matrix with a negative eigenvalue fails too.
  std::string neg = "density2q[0.7,0][0,0][0,0][0.6,0]";
  neg += "[0,0][0.4,0][0,0][0,0]";
  neg += "[0,0][0,0][-0.1,0][0,0]";
  neg += "[0.6,0][0,0][0,0][0,0]";
  REQUIRE_THROWS_WITH(to_density(parse_state_file(neg)),
                      ContainsSubstring("not positive semidefinite"));
}

TEST_CASE("write and parse round trip", "[io]") {
  RngStream rng(70, 0);
  StateFile f;
  f.kind = StateKind::Density2q;
  const DensityMatrix rho = random_density(3, rng);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) f.data.push_back(rho.mat()(i, j));

  const StateFile back = parse_state_file(write_state_file(f));
  REQUIRE(back.kind == f.kind);
  REQUIRE(back.data.size() == f.data.size());
  for (std::size_t i = 0; i < f.data.size(); ++i)
    REQUIRE(back.data[i] == f.data[i]);
}

TEST_CASE("run configuration validation", "[io]") {
  RunConfig bad_samples;
  bad_samples.samples = 0;
  REQUIRE_THROWS_AS(bad_samples.validate(), std::invalid_argument);
  RunConfig bad_tol;
  bad_tol.tol = 0.0;
  REQUIRE_THROWS_AS(bad_tol.validate(), std::invalid_argument);
}

TEST_CASE("every suite passes a smoke run", "[io]") {
  RunConfig cfg;
  cfg.samples = 24;
  cfg.seed = 42;
  cfg.threads = 1;
  for (const std::string& name : suite_names()) {
    const SuiteResult r = run_suite(name, cfg);
    INFO(name << " max residual " << r.max_residual);
    REQUIRE(r.pass);
    REQUIRE(r.violations.empty());
    REQUIRE(r.suite == name);
  }
  REQUIRE_THROWS_WITH(run_suite("nonsense", cfg),
                      "verify: unknown suite 'nonsense'");
}

TEST_CASE("suite violations carry reproduction detail", "[io]") {
  RunConfig strict;
  strict.samples = 6;
  strict.seed = 42;
  strict.threads = 1;
  strict.tol = 1e-30;  // unreachable unless both routes agree exactly
  const SuiteResult r = run_suite("theorem1", strict);
  REQUIRE_FALSE(r.pass);
  // Separable draws give an exactly zero residual on both routes, so not
  // every trial reports; entangled ones all do.
  REQUIRE(r.violations.size() >= 1);
  REQUIRE(r.violations.size() <= 6);
  REQUIRE_THAT(r.violations[0], ContainsSubstring("rank="));
  REQUIRE_THAT(r.violations[0], ContainsSubstring("pi="));
  // Rows lead with the trial index from the configured range.
  const std::size_t comma = r.violations[0].find(',');
  REQUIRE(comma != std::string::npos);
  REQUIRE(std::stoul(r.violations[0].substr(0, comma)) <
          static_cast<unsigned long>(strict.samples));
  REQUIRE(std::string(SuiteResult::violations_header()) ==
          "trial,residual,detail");
}

TEST_CASE("channel scatter rows are ordered, exact, and thread-stable",
          "[io]") {
  RunConfig cfg;
  cfg.samples = 64;
  cfg.seed = 42;
  cfg.threads = 1;
  const auto rows = scatter_channels(cfg);
  REQUIRE(rows.size() == 64);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    REQUIRE(rows[t].trial == t);
    REQUIRE(std::isfinite(rows[t].f_ab));
    REQUIRE(rows[t].residual <= 1e-7);
    REQUIRE(rows[t].f_ab >= 0.0);
    REQUIRE(rows[t].f_ab <= 1.0 + 1e-12);
  }

  RunConfig threaded = cfg;
  threaded.threads = 3;
  REQUIRE(scatter_csv(scatter_channels(threaded)) == scatter_csv(rows));
  const std::string csv = scatter_csv(rows);
  REQUIRE(csv.rfind("trial,f_ab,pi_ab,pi_ae,residual\n", 0) == 0);
}
