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
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpi/eig.hpp"
#include "qpi/matrix.hpp"
#include "qpi/tolerances.hpp"

namespace qpi {

namespace detail {

// Computational-basis index helpers. Index convention throughout the library:
// row major, first factor most significant. For qubits (2,2) that is the
// ordering |00>, |01>, |10>, |11>.
inline std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

inline std::size_t product_of(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

}  // namespace detail

// Normalized state vector over a tensor product of small factors.
class PureState {
 public:
  PureState(std::vector<std::size_t> dims, std::vector<Complex> amplitudes)
      : dims_(std::move(dims)), amp_(std::move(amplitudes)) {
    if (dims_.empty()) throw std::invalid_argument("PureState: no factors");
    for (auto d : dims_)
      if (d < 2) throw std::invalid_argument("PureState: factor dim < 2");
    if (amp_.size() != detail::product_of(dims_))
      throw std::invalid_argument("PureState: amplitude count mismatch");
    double n2 = 0.0;
    for (const auto& a : amp_) n2 += std::norm(a);
    if (std::abs(std::sqrt(n2) - 1.0) > tolerances().state_norm)
      throw std::invalid_argument("PureState: not normalized (norm " +
                                  std::to_string(std::sqrt(n2)) + ")");
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t num_factors() const { return dims_.size(); }
  std::size_t total_dim() const { return amp_.size(); }
  const std::vector<Complex>& amplitudes() const { return amp_; }
  Complex amplitude(std::size_t i) const { return amp_.at(i); }

  Matrix projector() const {
    const std::size_t n = amp_.size();
    Matrix p(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = amp_[i] * std::conj(amp_[j]);
    return p;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<Complex> amp_;
};

// Density operator over a tensor product of small factors. Construction
// validates hermiticity, unit trace and positive semidefiniteness, naming
// the violated invariant in the exception message.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<std::size_t> dims, Matrix m)
      : dims_(std::move(dims)), m_(std::move(m)) {
    if (dims_.empty()) throw std::invalid_argument("DensityMatrix: no factors");
    if (m_.dim() != detail::product_of(dims_))
      throw std::invalid_argument("DensityMatrix: matrix dim mismatch");
    const auto& tol = tolerances();
    const double herm = m_.hermiticity_defect();
    if (herm > tol.hermiticity)
      throw std::invalid_argument("DensityMatrix: not Hermitian (defect " +
                                  std::to_string(herm) + ")");
    const Complex tr = m_.trace();
    if (std::abs(tr - Complex(1.0)) > tol.unit_trace)
      throw std::invalid_argument("DensityMatrix: trace not 1 (got " +
                                  std::to_string(tr.real()) + ")");
    min_eig_ = eig_hermitian(m_).front();
    if (min_eig_ < -tol.psd)
      throw std::invalid_argument(
          "DensityMatrix: not positive semidefinite (min eigenvalue " +
          std::to_string(min_eig_) + ")");
  }

  static DensityMatrix from_pure(const PureState& psi) {
    return DensityMatrix(psi.dims(), psi.projector());
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t num_factors() const { return dims_.size(); }
  std::size_t total_dim() const { return m_.dim(); }
  const Matrix& mat() const { return m_; }
  double min_eigenvalue() const { return min_eig_; }

 private:
  std::vector<std::size_t> dims_;
  Matrix m_;
  double min_eig_ = 0.0;
};

// Partial transpose of a two-qubit state on one subsystem (0 or 1).
// Returns a raw matrix: the result is Hermitian but in general indefinite.
inline Matrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem) {
  if (rho.dims() != std::vector<std::size_t>{2, 2})
    throw std::invalid_argument("partial_transpose: expects a two-qubit state");
  if (subsystem > 1)
    throw std::invalid_argument("partial_transpose: subsystem must be 0 or 1");
  const Matrix& m = rho.mat();
  Matrix out(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t b = 0; b < 2; ++b) {
          // (i,a),(j,b) entry; transposing swaps the chosen factor's indices.
          const std::size_t r = subsystem == 0 ? j * 2 + a : i * 2 + b;
          const std::size_t c = subsystem == 0 ? i * 2 + b : j * 2 + a;
          out(i * 2 + a, j * 2 + b) = m(r, c);
        }
  return out;
}

namespace detail {

inline void check_keep(const std::vector<std::size_t>& keep,
                       std::size_t num_factors) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= num_factors)
      throw std::invalid_argument("partial_trace: factor index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace: keep set must be strictly increasing");
  }
}

// Shared reduction kernel: entry(r_out, c_out) = sum over traced coordinates.
template <typename EntryFn>
Matrix reduce(const std::vector<std::size_t>& dims,
              const std::vector<std::size_t>& keep, EntryFn entry) {
  const auto strides = strides_of(dims);
  std::vector<std::size_t> traced;
  for (std::size_t f = 0; f < dims.size(); ++f)
    if (std::find(keep.begin(), keep.end(), f) == keep.end()) traced.push_back(f);

  std::size_t out_dim = 1, tr_dim = 1;
  for (auto f : keep) out_dim *= dims[f];
  for (auto f : traced) tr_dim *= dims[f];

  // Map a flat reduced/traced index to its contribution in the full index.
  const auto unpack = [&](const std::vector<std::size_t>& factors,
                          std::size_t flat) {
    std::size_t full = 0;
    for (std::size_t i = factors.size(); i-- > 0;) {
      const std::size_t f = factors[i];
      full += (flat % dims[f]) * strides[f];
      flat /= dims[f];
    }
    return full;
  };

  Matrix out(out_dim);
  for (std::size_t r = 0; r < out_dim; ++r)
    for (std::size_t c = 0; c < out_dim; ++c) {
      const std::size_t rk = unpack(keep, r), ck = unpack(keep, c);
      Complex sum = 0.0;
      for (std::size_t t = 0; t < tr_dim; ++t) {
        const std::size_t tt = unpack(traced, t);
        sum += entry(rk + tt, ck + tt);
      }
      out(r, c) = sum;
    }
  return out;
}

}  // namespace detail

// Reduced density matrix over the kept factors (strictly increasing indices).
inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   const std::vector<std::size_t>& keep) {
  detail::check_keep(keep, rho.num_factors());
  const Matrix& m = rho.mat();
  Matrix out = detail::reduce(rho.dims(), keep, [&](std::size_t r, std::size_t c) {
    return m(r, c);
  });
  std::vector<std::size_t> out_dims;
  for (auto f : keep) out_dims.push_back(rho.dims()[f]);
  return DensityMatrix(std::move(out_dims), std::move(out));
}

inline DensityMatrix partial_trace(const PureState& psi,
                                   const std::vector<std::size_t>& keep) {
  detail::check_keep(keep, psi.num_factors());
  const auto& a = psi.amplitudes();
  Matrix out = detail::reduce(psi.dims(), keep, [&](std::size_t r, std::size_t c) {
    return a[r] * std::conj(a[c]);
  });
  std::vector<std::size_t> out_dims;
  for (auto f : keep) out_dims.push_back(psi.dims()[f]);
  return DensityMatrix(std::move(out_dims), std::move(out));
}

}  // namespace qpi
