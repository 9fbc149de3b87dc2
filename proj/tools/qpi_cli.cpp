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

// Batch front end for the qpi library.
//
// Subcommands:
//   measure <file>      entanglement quantities of a state file
//   scatter-channels    fidelity vs measure scatter over random interactions
//   verify <suite>      Monte-Carlo verification of one identity suite
//   tangle-from-dets    tangle from three measured determinants
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qpi/qpi.hpp"

namespace {

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw std::runtime_error("cannot open output file '" + path + "'");
  f << text;
  f.flush();
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

using Fields = std::vector<std::pair<std::string, double>>;

// Both rendered forms of a report: one key=value line per field, then the
// same fields again as a one-row CSV table.
std::string render_fields(const Fields& fields) {
  std::ostringstream out;
  for (const auto& [key, value] : fields)
    out << key << '=' << qpi::format_double(value) << '\n';
  for (std::size_t i = 0; i < fields.size(); ++i)
    out << fields[i].first << (i + 1 < fields.size() ? ',' : '\n');
  for (std::size_t i = 0; i < fields.size(); ++i)
    out << qpi::format_double(fields[i].second)
        << (i + 1 < fields.size() ? ',' : '\n');
  return out.str();
}

Fields measure_two_qubit(const qpi::DensityMatrix& rho) {
  const qpi::MeasureReport r = qpi::measure_report(rho);
  const qpi::EofBounds eof = qpi::eof_bounds(r.pi);
  return Fields{
      {"concurrence", r.concurrence},
      {"assistance", r.assistance},
      {"pi", r.pi},
      {"pi_hat", r.pi_hat},
      {"det_pt", r.det_pt},
      {"lambda1", r.lambda.lambda[0]},
      {"lambda2", r.lambda.lambda[1]},
      {"lambda3", r.lambda.lambda[2]},
      {"lambda4", r.lambda.lambda[3]},
      {"fef", r.fef},
      {"eof_lower", eof.lower},
      {"eof_upper", eof.upper},
  };
}

// Three-qubit pure states get the tripartite quantities instead: the tangle,
// each qubit's one-versus-rest measure, pairwise measures and concurrences,
// and the determinants feeding tangle-from-dets.
Fields measure_three_qubit(const qpi::PureState& psi) {
  const auto pair_ab = qpi::partial_trace(psi, {0, 1});
  const auto pair_ac = qpi::partial_trace(psi, {0, 2});
  const auto pair_bc = qpi::partial_trace(psi, {1, 2});
  const auto det1 = [&](std::size_t f) {
    return qpi::determinant(qpi::partial_trace(psi, {f}).mat()).real();
  };
  return Fields{
      {"tau", qpi::tangle(psi)},
      {"pi_a_bc", qpi::pi_one_vs_two(psi, 0)},
      {"pi_b_ac", qpi::pi_one_vs_two(psi, 1)},
      {"pi_c_ab", qpi::pi_one_vs_two(psi, 2)},
      {"pi_ab", qpi::pi_measure(pair_ab)},
      {"pi_ac", qpi::pi_measure(pair_ac)},
      {"pi_bc", qpi::pi_measure(pair_bc)},
      {"c_ab", qpi::concurrence(pair_ab)},
      {"c_ac", qpi::concurrence(pair_ac)},
      {"c_bc", qpi::concurrence(pair_bc)},
      {"det_pt_ab", qpi::det_partial_transpose(pair_ab)},
      {"det_pt_ac", qpi::det_partial_transpose(pair_ac)},
      {"det_pt_bc", qpi::det_partial_transpose(pair_bc)},
      {"det_a", det1(0)},
      {"det_b", det1(1)},
      {"det_c", det1(2)},
  };
}

int run_measure(const std::string& path, const std::string& out) {
  const qpi::StateFile file = qpi::load_state_file(path);
  const Fields fields = file.kind == qpi::StateKind::Pure3q
                            ? measure_three_qubit(qpi::to_pure(file))
                            : measure_two_qubit(qpi::to_density(file));
  emit(out, render_fields(fields));
  return 0;
}

int run_verify(const std::string& suite, const qpi::RunConfig& cfg) {
  const qpi::SuiteResult r = qpi::run_suite(suite, cfg);
  std::ostringstream summary;
  summary << "suite=" << r.suite << '\n';
  summary << "samples=" << r.samples << '\n';
  summary << "max_residual=" << qpi::format_double(r.max_residual) << '\n';
  summary << "tol=" << qpi::format_double(r.tol) << '\n';
  summary << "pass=" << (r.pass ? "true" : "false") << '\n';
  std::cout << summary.str();

  std::ostringstream table;
  table << qpi::SuiteResult::violations_header() << '\n';
  for (const std::string& row : r.violations) table << row << '\n';
  if (!cfg.out.empty())
    emit(cfg.out, table.str());
  else if (!r.violations.empty())
    std::cout << table.str();
  return r.pass ? 0 : 1;
}

void add_run_options(CLI::App* cmd, qpi::RunConfig& cfg) {
  cmd->add_option("--samples", cfg.samples, "number of Monte-Carlo trials")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "master RNG seed")->capture_default_str();
  cmd->add_option("--tol", cfg.tol, "pass threshold for residuals")
      ->capture_default_str();
  cmd->add_option("--out", cfg.out, "write CSV to a file instead of standard output");
  cmd->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinant-based two-qubit entanglement toolkit"};
  app.require_subcommand(1);

  std::string state_path, measure_out;
  CLI::App* measure =
      app.add_subcommand("measure", "Report entanglement quantities of a state file");
  measure->add_option("file", state_path, "state file to analyze")->required();
  measure->add_option("--out", measure_out,
                      "write the report to a file instead of standard output");

  qpi::RunConfig scatter_cfg;
  CLI::App* scatter = app.add_subcommand(
      "scatter-channels",
      "Fidelity vs measure scatter over Haar-random interactions");
  add_run_options(scatter, scatter_cfg);

  qpi::RunConfig verify_cfg;
  std::string suite;
  CLI::App* verify =
      app.add_subcommand("verify", "Run one Monte-Carlo verification suite");
  {
    std::ostringstream names;
    for (const std::string& n : qpi::suite_names()) names << ' ' << n;
    verify->add_option("suite", suite, "suite name:" + names.str())->required();
  }
  add_run_options(verify, verify_cfg);

  double det_ab = 0.0, det_bc = 0.0, det_b = 0.0;
  CLI::App* tangle = app.add_subcommand(
      "tangle-from-dets",
      "Tangle of a three-qubit pure state from three determinants");
  tangle->add_option("det_ab", det_ab, "det of the AB pair's partial transpose")
      ->required();
  tangle->add_option("det_bc", det_bc, "det of the BC pair's partial transpose")
      ->required();
  tangle->add_option("det_b", det_b, "det of the pivot qubit's reduced state")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*measure) return run_measure(state_path, measure_out);
    if (*scatter) {
      scatter_cfg.validate();
      emit(scatter_cfg.out, qpi::scatter_csv(qpi::scatter_channels(scatter_cfg)));
      return 0;
    }
    if (*verify) return run_verify(suite, verify_cfg);
    if (*tangle) {
      std::cout << "tau="
                << qpi::format_double(
                       qpi::tangle_from_determinants(det_ab, det_bc, det_b))
                << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
