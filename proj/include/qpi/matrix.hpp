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

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpi {

using Complex = std::complex<double>;

// Dense complex square matrix, row major. Sized for few-qubit work (dim <= 8
// everywhere in this library) so all algorithms favour clarity and numerical
// robustness over asymptotic speed.
class Matrix {
 public:
  Matrix() = default;

  explicit Matrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

  // Row-major entries; the count must be dim*dim.
  Matrix(std::size_t dim, std::initializer_list<Complex> entries)
      : dim_(dim), a_(entries) {
    if (a_.size() != dim * dim)
      throw std::invalid_argument("Matrix: entry count does not match dimension");
  }

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::vector<Complex>& d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return a_[r * dim_ + c];
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }

  Matrix& operator*=(Complex s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check_same_dim(b);
    const std::size_t n = a.dim_;
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0)) continue;
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  Matrix adjoint() const {
    Matrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  Matrix transpose() const {
    Matrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Matrix conjugate() const {
    Matrix m(dim_);
    for (std::size_t i = 0; i < dim_ * dim_; ++i) m.a_[i] = std::conj(a_[i]);
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0.0;
    for (const auto& v : a_) s = std::max(s, std::abs(v));
    return s;
  }

  // Largest |a(i,j) - conj(a(j,i))|; zero for exactly Hermitian matrices.
  double hermiticity_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
  }

 private:
  void check_same_dim(const Matrix& o) const {
    if (dim_ != o.dim_)
      throw std::invalid_argument("Matrix: dimension mismatch " +
                                  std::to_string(dim_) + " vs " +
                                  std::to_string(o.dim_));
  }

  std::size_t dim_ = 0;
  std::vector<Complex> a_;
};

// Tensor (Kronecker) product; index convention is row major with the first
// factor most significant, i.e. (a x b)((i,k),(j,l)) = a(i,j) * b(k,l).
inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  Matrix c(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0)) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          c(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return c;
}

// Determinant by partially pivoted LU. Accumulates in extended precision:
// several callers take fourth roots of this value near zero, so the extra
// mantissa bits buy real accuracy there at no measurable cost for dim <= 8.
inline Complex determinant(const Matrix& m) {
  using CL = std::complex<long double>;
  const std::size_t n = m.dim();
  if (n == 0) return 1.0;
  std::vector<CL> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i * n + j] = CL(m(i, j).real(), m(i, j).imag());

  CL det = 1.0L;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    long double best = std::abs(a[k * n + k]);
    for (std::size_t r = k + 1; r < n; ++r) {
      const long double v = std::abs(a[r * n + k]);
      if (v > best) { best = v; piv = r; }
    }
    if (best == 0.0L) return 0.0;  // structurally singular
    if (piv != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(a[piv * n + c], a[k * n + c]);
      det = -det;
    }
    const CL pivot = a[k * n + k];
    det *= pivot;
    for (std::size_t r = k + 1; r < n; ++r) {
      const CL f = a[r * n + k] / pivot;
      if (f == CL(0.0L)) continue;
      for (std::size_t c = k + 1; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
    }
  }
  return Complex(static_cast<double>(det.real()), static_cast<double>(det.imag()));
}

inline Matrix pauli_x() {
  return Matrix(2, {0.0, 1.0, 1.0, 0.0});
}

inline Matrix pauli_y() {
  return Matrix(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
}

inline Matrix pauli_z() {
  return Matrix(2, {1.0, 0.0, 0.0, -1.0});
}

}  // namespace qpi
