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

// Release gate for the numerical claims the library is built on. Each check
// prints one line; the binary exits nonzero if any of them fails. Sample
// counts and tolerances are pinned here on purpose: loosening them is a
// library regression, not a test tweak.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "oracles.hpp"
#include "qpi/qpi.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const char* label, bool ok, const std::string& detail) {
  std::printf("[%s] %s (%s)\n", ok ? "PASS" : "FAIL", label, detail.c_str());
  if (!ok) ++g_failures;
}

std::string residual_detail(const qpi::SuiteResult& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "max residual %.3e vs %.1e over %zu samples",
                r.max_residual, r.tol, r.samples);
  std::string out = buf;
  if (!r.violations.empty())
    out += ", " + std::to_string(r.violations.size()) + " violations";
  return out;
}

qpi::RunConfig config(std::size_t samples, double tol, unsigned threads = 0) {
  qpi::RunConfig cfg;
  cfg.samples = samples;
  cfg.seed = 42;
  cfg.tol = tol;
  cfg.threads = threads;
  return cfg;
}

void check_product_form() {
  const auto start = Clock::now();
  const qpi::SuiteResult r = run_suite("theorem1", config(10000, 1e-7, 1));
  const double elapsed = seconds_since(start);
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.1f s single-threaded vs 10 s", elapsed);
  report("spectral product form equals the measure, every rank",
         r.pass && elapsed < 10.0, residual_detail(r) + buf);
}

void check_bounds() {
  const qpi::SuiteResult r = run_suite("bounds", config(10000, 1e-9));
  report("concurrence sandwich holds on both sides", r.pass,
         residual_detail(r));
}

void check_monogamy() {
  const qpi::SuiteResult ckw = run_suite("ckw", config(10000, 1e-7));
  const qpi::SuiteResult pi = run_suite("monogamy", config(10000, 1e-7));
  report("squared-concurrence and measure trade-offs close, every pivot",
         ckw.pass && pi.pass,
         residual_detail(ckw) + "; " + residual_detail(pi));
}

void check_geometric_mean() {
  const qpi::SuiteResult r = run_suite("geometric-mean", config(10000, 1e-7));
  report("rank-2 geometric mean and tangle bridges", r.pass,
         residual_detail(r));
}

void check_channel_forms() {
  const qpi::SuiteResult r = run_suite("channel-forms", config(10000, 1e-9));
  report("two-parameter channel closed forms across the grid and seam",
         r.pass, residual_detail(r));
}

void check_scatter() {
  const qpi::RunConfig cfg = config(10000, 1e-7, 1);
  const auto rows = scatter_channels(cfg);
  double worst = 0.0;
  for (const auto& row : rows) worst = std::max(worst, row.residual);

  qpi::RunConfig threaded = cfg;
  threaded.threads = 4;
  const std::string csv1 = scatter_csv(rows);
  const std::string csv4 = scatter_csv(scatter_channels(threaded));
  const std::string csv4b = scatter_csv(scatter_channels(threaded));
  const bool stable = csv1 == csv4 && csv4 == csv4b;

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max row residual %.3e vs 1e-07 over %zu rows, csv %s",
                worst, rows.size(),
                stable ? "byte-stable across reruns and 1 vs 4 threads"
                       : "NOT byte-stable");
  report("random-channel fidelity identity and reproducible scatter",
         worst <= 1e-7 && stable, buf);
}

void check_factorization() {
  const qpi::SuiteResult pure = run_suite("factorization-pure", config(1000, 1e-7));
  const qpi::SuiteResult mixed =
      run_suite("factorization-mixed", config(10000, 1e-9));
  report("one-sided channel multiplicativity, pure exact and mixed bounded",
         pure.pass && mixed.pass,
         residual_detail(pure) + "; " + residual_detail(mixed));
}

void check_tangle_recipe() {
  const qpi::SuiteResult r = run_suite("tangle-recipe", config(1000, 1e-7));
  report("tangle recovered from three reduction determinants", r.pass,
         residual_detail(r));
}

void check_acin_forms() {
  const qpi::SuiteResult r = run_suite("acin", config(1000, 1e-8));
  report("canonical three-qubit closed forms match the pipeline", r.pass,
         residual_detail(r));
}

void check_detection() {
  const qpi::DetectionCensus census = qpi::detection_equivalence(config(10000, 1e-7));
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%zu disagreements, %zu checked, %zu excluded of %zu",
                census.disagreements, census.checked, census.excluded,
                census.samples);
  report("sign test agrees with the concurrence verdict outside the band",
         census.disagreements == 0, buf);
}

void check_fef_oracle() {
  double worst = 0.0;
  for (std::size_t t = 0; t < 1000; ++t) {
    qpi::RngStream rng(42, t);
    const qpi::DensityMatrix rho =
        qpi::random_density(1 + static_cast<int>(t % 4), rng);
    qpi::RngStream oracle_rng(42 ^ 0x5eedULL, t);
    const double direct = qpi::singlet_fraction(rho);
    const double climbed = oracle::fef_maximization(rho, oracle_rng);
    worst = std::max(worst, std::abs(direct - climbed));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "max gap %.3e vs 1e-06 over 1000 samples", worst);
  report("fully entangled fraction matches an independent maximizer",
         worst <= 1e-6, buf);
}

}  // namespace

int main() {
  const auto start = Clock::now();
  check_product_form();
  check_bounds();
  check_monogamy();
  check_geometric_mean();
  check_channel_forms();
  check_scatter();
  check_factorization();
  check_tangle_recipe();
  check_acin_forms();
  check_detection();
  check_fef_oracle();

  const double elapsed = seconds_since(start);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f s elapsed vs 120 s", elapsed);
  report("whole gate finishes within budget", elapsed < 120.0, buf);

  if (g_failures == 0) {
    std::printf("acceptance: all 12 checks passed\n");
    return 0;
  }
  std::printf("acceptance: %d of 12 checks failed\n", g_failures);
  return 1;
}
