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
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qpi/io.hpp"
#include "qpi/matrix.hpp"
#include "qpi/measures.hpp"
#include "qpi/quantum_state.hpp"
#include "qpi/relations.hpp"
#include "qpi/rng.hpp"
#include "qpi/states.hpp"

namespace qpi {

// ---------------------------------------------------------------------------
// Trial scheduling
// ---------------------------------------------------------------------------

// Runs fn(0) .. fn(n-1) over a worker pool. Each trial owns its RNG stream,
// so the outcome of trial t never depends on which worker picked it up.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned workers = threads == 0 ? hw : threads;
  if (workers > n) workers = static_cast<unsigned>(n);
  if (workers <= 1) {
    for (std::size_t t = 0; t < n; ++t) fn(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  const auto work = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= n) return;
      try {
        fn(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

struct SuiteResult {
  std::string suite;
  std::size_t samples = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  // One CSV row per violating trial: trial,residual,detail. The detail field
  // holds space-separated key=value pairs sufficient to reproduce the trial
  // together with the master seed.
  std::vector<std::string> violations;

  static const char* violations_header() { return "trial,residual,detail"; }
};

namespace detail {

inline std::string csv_safe(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

// Shared suite driver. The body maps (trial, rng) to a residual; when the
// detail pointer is set it also describes the trial's parameters. Violating
// trials are re-run single-threaded to collect details, which is cheap
// because the trial is reproducible from (seed, trial) and violations are
// expected to be rare.
template <typename Body>
SuiteResult drive_suite(const std::string& name, const RunConfig& cfg,
                        std::size_t samples, Body&& body) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> residual(samples, 0.0);
  parallel_for(samples, cfg.threads, [&](std::size_t t) {
    RngStream rng(cfg.seed, t);
    double r;
    try {
      r = body(t, rng, static_cast<std::string*>(nullptr));
    } catch (const std::exception&) {
      r = kInf;
    }
    residual[t] = r;
  });

  SuiteResult out;
  out.suite = name;
  out.samples = samples;
  out.tol = cfg.tol;
  out.max_residual = -kInf;
  for (double r : residual) out.max_residual = std::max(out.max_residual, r);
  for (std::size_t t = 0; t < samples; ++t) {
    if (residual[t] <= cfg.tol) continue;
    RngStream rng(cfg.seed, t);
    std::string detail;
    try {
      body(t, rng, &detail);
    } catch (const std::exception& e) {
      detail += std::string(detail.empty() ? "" : " ") + "error=" + e.what();
    }
    std::ostringstream row;
    row << t << ',';
    row << (std::isfinite(residual[t]) ? format_double(residual[t]) : "inf");
    row << ',' << csv_safe(detail);
    out.violations.push_back(row.str());
  }
  out.pass = out.violations.empty();
  return out;
}

inline void append_kv(std::string* detail, const char* key, double value) {
  if (!detail) return;
  if (!detail->empty()) *detail += ' ';
  *detail += key;
  *detail += '=';
  *detail += format_double(value);
}

inline void append_kv(std::string* detail, const char* key, std::size_t value) {
  if (!detail) return;
  if (!detail->empty()) *detail += ' ';
  *detail += key;
  *detail += '=';
  *detail += std::to_string(value);
}

// Mixed-state generator shared by several suites; rank cycles through
// 1..4 so each quarter of the samples exercises one rank class.
inline DensityMatrix random_state_by_trial(std::size_t t, RngStream& rng) {
  return random_density(1 + static_cast<int>(t % 4), rng);
}

// Pure two-qubit input for the factorization identity, built as a rescaled
// random linear map acting on one half of a maximally entangled pair.
inline PureState random_filtered_bell(RngStream& rng, double* det_a = nullptr) {
  Complex a[2][2];
  double n2 = 0.0;
  for (auto& row : a)
    for (auto& v : row) {
      v = rng.complex_gaussian();
      n2 += std::norm(v);
    }
  const double scale = std::sqrt(2.0 / n2);
  for (auto& row : a)
    for (auto& v : row) v *= scale;
  if (det_a) *det_a = std::abs(a[0][0] * a[1][1] - a[0][1] * a[1][0]);
  const double s = 1.0 / std::sqrt(2.0);
  // Amplitude matrix of the output is A times the input's, whose columns
  // are (0, s) and (s, 0).
  return PureState({2, 2}, {s * a[0][1], s * a[0][0], s * a[1][1], s * a[1][0]});
}

}  // namespace detail

// Measure agreement |pi - pi_hat| on mixed states of all ranks.
inline SuiteResult suite_theorem1(const RunConfig& cfg) {
  return detail::drive_suite(
      "theorem1", cfg, cfg.samples,
      [](std::size_t t, RngStream& rng, std::string* detail) {
        const DensityMatrix rho = detail::random_state_by_trial(t, rng);
        const double a = pi_measure(rho), b = pi_hat(rho);
        detail::append_kv(detail, "rank", 1 + t % 4);
        detail::append_kv(detail, "pi", a);
        detail::append_kv(detail, "pi_hat", b);
        return std::abs(a - b);
      });
}

// Two-sided sandwich of the measure by concurrence: C <= pi and
// pi <= (C((C+2)/3)^3)^{1/4}. Residual is the worse signed slack, so it is
// usually negative; it only approaches zero on the saturating families.
inline SuiteResult suite_bounds(const RunConfig& cfg) {
  return detail::drive_suite(
      "bounds", cfg, cfg.samples,
      [](std::size_t t, RngStream& rng, std::string* detail) {
        const DensityMatrix rho = detail::random_state_by_trial(t, rng);
        const double c = concurrence(rho), pi = pi_measure(rho);
        const double lower = c - pi;
        const double upper = pi - pi_upper_bound(c);
        detail::append_kv(detail, "rank", 1 + t % 4);
        detail::append_kv(detail, "c", c);
        detail::append_kv(detail, "pi", pi);
        return std::max(lower, upper);
      });
}

// Trade-off equality for the determinant-based measure across every pivot of
// a random three-qubit pure state.
inline SuiteResult suite_monogamy(const RunConfig& cfg) {
  return detail::drive_suite(
      "monogamy", cfg, cfg.samples,
      [](std::size_t, RngStream& rng, std::string* detail) {
        const PureState psi = random_pure({2, 2, 2}, rng);
        double worst = 0.0;
        std::size_t worst_pivot = 0;
        for (std::size_t pivot = 0; pivot < 3; ++pivot) {
          const double r = pi_monogamy_check(psi, pivot).residual_pi;
          if (r > worst) {
            worst = r;
            worst_pivot = pivot;
          }
        }
        detail::append_kv(detail, "pivot", worst_pivot);
        return worst;
      });
}

// Squared-concurrence trade-off against 4 det(rho_pivot), every pivot.
inline SuiteResult suite_ckw(const RunConfig& cfg) {
  return detail::drive_suite(
      "ckw", cfg, cfg.samples,
      [](std::size_t, RngStream& rng, std::string* detail) {
        const PureState psi = random_pure({2, 2, 2}, rng);
        double worst = 0.0;
        std::size_t worst_pivot = 0;
        for (std::size_t pivot = 0; pivot < 3; ++pivot) {
          const double r = ckw_check(psi, pivot).residual_ckw;
          if (r > worst) {
            worst = r;
            worst_pivot = pivot;
          }
        }
        detail::append_kv(detail, "pivot", worst_pivot);
        return worst;
      });
}

// Exact multiplicativity of the measure under one-sided channels on pure
// inputs.
inline SuiteResult suite_factorization_pure(const RunConfig& cfg) {
  return detail::drive_suite(
      "factorization-pure", cfg, cfg.samples,
      [](std::size_t, RngStream& rng, std::string* detail) {
        double det_a = 0.0;
        const PureState phi = detail::random_filtered_bell(rng, &det_a);
        const Matrix u = haar_unitary(4, rng);
        const FactorizationPure r = factorization_check_pure(phi, u);
        detail::append_kv(detail, "det_a", det_a);
        detail::append_kv(detail, "lhs", r.lhs);
        detail::append_kv(detail, "rhs", r.rhs);
        return r.residual;
      });
}

// Multiplicative upper bound on mixed inputs; the residual is the violation
// magnitude (negative slack), so well-behaved samples sit below zero.
inline SuiteResult suite_factorization_mixed(const RunConfig& cfg) {
  return detail::drive_suite(
      "factorization-mixed", cfg, cfg.samples,
      [](std::size_t t, RngStream& rng, std::string* detail) {
        const DensityMatrix rho = random_density(2 + static_cast<int>(t % 3), rng);
        const Matrix u = haar_unitary(4, rng);
        const FactorizationMixed r = factorization_check_mixed(rho, u);
        detail::append_kv(detail, "rank", 2 + t % 3);
        detail::append_kv(detail, "lhs", r.lhs);
        detail::append_kv(detail, "bound", r.bound);
        return -r.slack;
      });
}

// Closed-form channel values against the full dilation pipeline on the
// 21 x 21 parameter grid (step 0.05). The grid is the workload, so the
// configured sample count is ignored here.
inline SuiteResult suite_channel_forms(const RunConfig& cfg) {
  return detail::drive_suite(
      "channel-forms", cfg, std::size_t{21 * 21},
      [](std::size_t t, RngStream&, std::string* detail) {
        const PQChannel ch{static_cast<double>(t / 21) / 20.0,
                           static_cast<double>(t % 21) / 20.0};
        const ChannelClosedForms analytic = channel_closed_forms(ch);
        const PureState out = dilate(bell_state(BellKind::PsiPlus), pq_unitary(ch));
        const DensityMatrix rho_ab = partial_trace(out, {0, 1});
        const DensityMatrix rho_ae = partial_trace(out, {0, 2});
        const double r = std::max({std::abs(analytic.pi_ab - pi_measure(rho_ab)),
                                   std::abs(analytic.pi_ae - pi_measure(rho_ae)),
                                   std::abs(analytic.f_ab - singlet_fraction(rho_ab))});
        detail::append_kv(detail, "p", ch.p);
        detail::append_kv(detail, "q", ch.q);
        return r;
      });
}

// Closed-form spectrum and determinant of the canonical-form AB reduction
// against the general-purpose pipeline.
inline SuiteResult suite_acin(const RunConfig& cfg) {
  return detail::drive_suite(
      "acin", cfg, cfg.samples,
      [](std::size_t, RngStream& rng, std::string* detail) {
        AcinParams p;
        double n2 = 0.0;
        for (double& g : p.gamma) {
          g = std::abs(rng.gaussian());
          n2 += g * g;
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (double& g : p.gamma) g *= inv;
        p.phi = rng.uniform(0.0, std::numbers::pi);

        const AcinClosedForms f = acin_closed_forms(p);
        const DensityMatrix rho_ab = partial_trace(acin_state(p), {0, 1});
        const LambdaSpectrum s = lambda_spectrum(rho_ab);
        const double pi_direct = pi_measure(rho_ab);
        const double pi_form =
            std::sqrt(std::max(0.0, f.lambda1_sq - f.lambda2_sq));
        const double r = std::max(
            {std::abs(f.lambda1_sq - s.lambda[0] * s.lambda[0]),
             std::abs(f.lambda2_sq - s.lambda[1] * s.lambda[1]),
             s.lambda[2] * s.lambda[2], s.lambda[3] * s.lambda[3],
             std::abs(f.det_pt_ab - det_partial_transpose(rho_ab)),
             std::abs(pi_direct - pi_form)});
        if (detail) {
          detail::append_kv(detail, "g0", p.gamma[0]);
          detail::append_kv(detail, "g1", p.gamma[1]);
          detail::append_kv(detail, "g2", p.gamma[2]);
          detail::append_kv(detail, "g3", p.gamma[3]);
          detail::append_kv(detail, "g4", p.gamma[4]);
          detail::append_kv(detail, "phi", p.phi);
        }
        return r;
      });
}

// Round trip: tangle recovered from the three pivot determinants against the
// direct spectral value.
inline SuiteResult suite_tangle_recipe(const RunConfig& cfg) {
  return detail::drive_suite(
      "tangle-recipe", cfg, cfg.samples,
      [](std::size_t, RngStream& rng, std::string* detail) {
        const PureState psi = random_pure({2, 2, 2}, rng);
        const double det_ab =
            det_partial_transpose(partial_trace(psi, {0, 1}));
        const double det_bc =
            det_partial_transpose(partial_trace(psi, {1, 2}));
        const DensityMatrix rho_b = partial_trace(psi, {1});
        const double det_b = determinant(rho_b.mat()).real();
        const double recovered =
            tangle_from_determinants(det_ab, det_bc, det_b);
        const double direct = tangle(psi);
        detail::append_kv(detail, "det_ab", det_ab);
        detail::append_kv(detail, "det_bc", det_bc);
        detail::append_kv(detail, "det_b", det_b);
        detail::append_kv(detail, "tau", direct);
        return std::abs(recovered - direct);
      });
}

// Rank-2 reductions: geometric-mean identity, the pi(C, tau) bridge and its
// inversion. The tightened bound is enforced inside geometric_mean_check.
inline SuiteResult suite_geometric_mean(const RunConfig& cfg) {
  return detail::drive_suite(
      "geometric-mean", cfg, cfg.samples,
      [](std::size_t, RngStream& rng, std::string* detail) {
        const PureState psi = random_pure({2, 2, 2}, rng);
        const DensityMatrix rho_ab = partial_trace(psi, {0, 1});
        const double tau = tangle(psi);
        const double c = concurrence(rho_ab);
        const double pi = pi_measure(rho_ab);
        const double r =
            std::max({geometric_mean_check(rho_ab),
                      std::abs(pi - pi_from_c_tau(c, tau)),
                      std::abs(c - c_from_pi_tau(pi, tau))});
        detail::append_kv(detail, "c", c);
        detail::append_kv(detail, "pi", pi);
        detail::append_kv(detail, "tau", tau);
        return r;
      });
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "theorem1",           "bounds",
      "monogamy",           "ckw",
      "factorization-pure", "factorization-mixed",
      "channel-forms",      "acin",
      "tangle-recipe",      "geometric-mean"};
  return names;
}

inline SuiteResult run_suite(const std::string& name, const RunConfig& cfg) {
  cfg.validate();
  if (name == "theorem1") return suite_theorem1(cfg);
  if (name == "bounds") return suite_bounds(cfg);
  if (name == "monogamy") return suite_monogamy(cfg);
  if (name == "ckw") return suite_ckw(cfg);
  if (name == "factorization-pure") return suite_factorization_pure(cfg);
  if (name == "factorization-mixed") return suite_factorization_mixed(cfg);
  if (name == "channel-forms") return suite_channel_forms(cfg);
  if (name == "acin") return suite_acin(cfg);
  if (name == "tangle-recipe") return suite_tangle_recipe(cfg);
  if (name == "geometric-mean") return suite_geometric_mean(cfg);
  throw std::invalid_argument("verify: unknown suite '" + name + "'");
}

// ---------------------------------------------------------------------------
// Channel scatter experiment
// ---------------------------------------------------------------------------

// One maximally entangled pair, one Haar-random interaction with a fresh
// environment per trial; records the system fidelity, both measures, and the
// defect of the fidelity identity.
struct ScatterRow {
  std::size_t trial = 0;
  double f_ab = 0.0;
  double pi_ab = 0.0;
  double pi_ae = 0.0;
  double residual = 0.0;
};

inline std::vector<ScatterRow> scatter_channels(const RunConfig& cfg) {
  cfg.validate();
  std::vector<ScatterRow> rows(cfg.samples);
  parallel_for(cfg.samples, cfg.threads, [&](std::size_t t) {
    RngStream rng(cfg.seed, t);
    const Matrix u = haar_unitary(4, rng);
    const PureState out = dilate(bell_state(BellKind::PsiPlus), u);
    const DensityMatrix rho_ab = partial_trace(out, {0, 1});
    const DensityMatrix rho_ae = partial_trace(out, {0, 2});
    ScatterRow& row = rows[t];
    row.trial = t;
    row.f_ab = singlet_fraction(rho_ab);
    row.pi_ab = pi_measure(rho_ab);
    row.pi_ae = pi_measure(rho_ae);
    row.residual = std::abs(row.f_ab - fidelity_relation(row.pi_ab, row.pi_ae));
  });
  return rows;
}

inline std::string scatter_csv(const std::vector<ScatterRow>& rows) {
  std::ostringstream out;
  out << "trial,f_ab,pi_ab,pi_ae,residual\n";
  for (const ScatterRow& r : rows) {
    out << r.trial << ',' << format_double(r.f_ab) << ','
        << format_double(r.pi_ab) << ',' << format_double(r.pi_ae) << ','
        << format_double(r.residual) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Detection equivalence census
// ---------------------------------------------------------------------------

// Counts agreement between the sign test (negative partial-transpose
// determinant) and entanglement (positive concurrence) on random states.
// States inside the boundary band, where both quantities are numerically
// indistinguishable from zero, are excluded; everywhere else the two
// verdicts must coincide exactly.
struct DetectionCensus {
  std::size_t samples = 0;
  std::size_t checked = 0;
  std::size_t excluded = 0;
  std::size_t disagreements = 0;
  std::vector<std::string> disagreement_rows;  // trial,det_pt,concurrence

  static constexpr double kDetBand = 1e-12;
  static constexpr double kConcurrenceBand = 1e-9;
};

inline DetectionCensus detection_equivalence(const RunConfig& cfg) {
  cfg.validate();
  enum : std::uint8_t { kOk = 0, kExcluded = 1, kDisagree = 2 };
  std::vector<std::uint8_t> flag(cfg.samples, kOk);
  parallel_for(cfg.samples, cfg.threads, [&](std::size_t t) {
    RngStream rng(cfg.seed, t);
    const DensityMatrix rho = detail::random_state_by_trial(t, rng);
    const double det = det_partial_transpose(rho);
    const double c = concurrence(rho);
    if (std::abs(det) < DetectionCensus::kDetBand &&
        c < DetectionCensus::kConcurrenceBand)
      flag[t] = kExcluded;
    else if ((det < 0.0) != (c > 0.0))
      flag[t] = kDisagree;
  });

  DetectionCensus census;
  census.samples = cfg.samples;
  for (std::size_t t = 0; t < cfg.samples; ++t) {
    switch (flag[t]) {
      case kExcluded:
        ++census.excluded;
        break;
      case kDisagree: {
        ++census.disagreements;
        ++census.checked;
        RngStream rng(cfg.seed, t);
        const DensityMatrix rho = detail::random_state_by_trial(t, rng);
        std::ostringstream row;
        row << t << ',' << format_double(det_partial_transpose(rho)) << ','
            << format_double(concurrence(rho));
        census.disagreement_rows.push_back(row.str());
        break;
      }
      default:
        ++census.checked;
        break;
    }
  }
  return census;
}

}  // namespace qpi
