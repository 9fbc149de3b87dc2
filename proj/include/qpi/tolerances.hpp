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

namespace qpi {

// Every numerical acceptance knob used by the library lives in this one
// record so that callers (and the verification suites) can tighten or loosen
// the whole stack in one place instead of chasing scattered literals.
struct Tolerances {
  double state_norm = 1e-12;       // pure-state normalization defect
  double hermiticity = 1e-10;      // max |a(i,j) - conj(a(j,i))| for states
  double unit_trace = 1e-10;       // |tr(rho) - 1|
  double psd = 1e-10;              // how negative an eigenvalue of rho may be
  double unitarity = 1e-12;        // max |U*U^dag - I| entry
  double det_imag = 1e-12;         // imag part of determinants that must be real
  double det_zero = 1e-24;         // |det| below the solver's resolution of zero
  double lambda_imag = 1e-8;       // spectrum of rho * rho_tilde must be real
  double lambda_negative = 1e-8;   // ... and nonnegative; smaller dips clamp to 0
  double spectrum_cross_check = 1e-8;  // QR route vs Hermitian-sqrt route
  double reduction_mismatch = 1e-6;    // the three tangle reductions must agree
  double filter_det = 1e-12;       // |det| below this rejects a local filter
  double filter_probability = 1e-14;   // filter success probability floor
  double rank_gate = 1e-8;         // eigenvalues of rho below this count as zero
  double tightened_bound_slack = 1e-9; // rank-2 states: pi may exceed sqrt(C) by this
  double tangle_solver_slack = 1e-8;   // how negative the recipe square may dip
  double tangle_solver_zero = 1e-12;   // pivot weight below this means product state
  double radicand_slack = 1e-12;   // fidelity-relation radicand may dip this far
  double measure_band = 1e-9;      // measures may poke this far out of exact range
};

// Mutable process-wide defaults. Mutate only before spawning worker threads.
inline Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

}  // namespace qpi
