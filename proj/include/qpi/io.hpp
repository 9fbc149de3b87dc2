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

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpi/matrix.hpp"
#include "qpi/quantum_state.hpp"

namespace qpi {

// ---------------------------------------------------------------------------
// Number formatting
// ---------------------------------------------------------------------------

// 17 significant digits round-trip exactly through decimal for IEEE doubles.
// Non-finite values are refused so they cannot leak into reports or CSV.
inline std::string format_double(double x) {
  if (!std::isfinite(x))
    throw std::runtime_error("format_double: non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// State files
// ---------------------------------------------------------------------------

// Plain-text fixtures: a kind name followed by one [re, im] pair per entry,
// whitespace-insensitive, '#' starts a comment running to end of line.
//   density2q: 16 entries, the 4x4 matrix in row-major order
//   pure2q:    4 amplitudes
//   pure3q:    8 amplitudes
enum class StateKind { Density2q, Pure2q, Pure3q };

struct StateFile {
  StateKind kind = StateKind::Density2q;
  std::vector<Complex> data;
};

namespace detail {

// Character-level scanner; parse errors always name the first offending
// token so a bad fixture can be fixed without guessing.
class StateScanner {
 public:
  explicit StateScanner(const std::string& text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  // A token is a single punctuation character or a maximal run of
  // non-space, non-punctuation characters.
  std::string next_token() {
    skip();
    if (pos_ >= text_.size())
      throw std::runtime_error("state file: unexpected end of input");
    const char c = text_[pos_];
    if (c == '[' || c == ']' || c == ',') {
      ++pos_;
      return std::string(1, c);
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_break(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void expect(const std::string& want) {
    const std::string got = next_token();
    if (got != want)
      throw std::runtime_error("state file: expected '" + want + "', got '" +
                               got + "'");
  }

  double number() {
    const std::string tok = next_token();
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end != begin + tok.size())
      throw std::runtime_error("state file: expected a number, got '" + tok +
                               "'");
    return value;
  }

 private:
  static bool is_break(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '[' ||
           c == ']' || c == ',' || c == '#';
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline StateFile parse_state_file(const std::string& text) {
  detail::StateScanner scan(text);
  StateFile f;
  const std::string kind = scan.next_token();
  std::size_t entries = 0;
  if (kind == "density2q") {
    f.kind = StateKind::Density2q;
    entries = 16;
  } else if (kind == "pure2q") {
    f.kind = StateKind::Pure2q;
    entries = 4;
  } else if (kind == "pure3q") {
    f.kind = StateKind::Pure3q;
    entries = 8;
  } else {
    throw std::runtime_error("state file: unknown kind '" + kind + "'");
  }
  f.data.reserve(entries);
  for (std::size_t i = 0; i < entries; ++i) {
    scan.expect("[");
    const double re = scan.number();
    scan.expect(",");
    const double im = scan.number();
    scan.expect("]");
    f.data.emplace_back(re, im);
  }
  if (!scan.at_end())
    throw std::runtime_error("state file: trailing token '" +
                             scan.next_token() + "'");
  return f;
}

inline StateFile load_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("state file: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_file(buf.str());
}

// Typed views. Type invariants (trace, positivity, normalization) are
// enforced by the target constructors and surface as their exceptions.
inline DensityMatrix to_density(const StateFile& f) {
  switch (f.kind) {
    case StateKind::Density2q: {
      Matrix m(4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = f.data[4 * i + j];
      return DensityMatrix({2, 2}, m);
    }
    case StateKind::Pure2q:
      return DensityMatrix::from_pure(PureState({2, 2}, f.data));
    case StateKind::Pure3q:
      throw std::runtime_error("state file: pure3q has no two-qubit density view");
  }
  throw std::logic_error("state file: bad kind");
}

inline PureState to_pure(const StateFile& f) {
  switch (f.kind) {
    case StateKind::Pure2q:
      return PureState({2, 2}, f.data);
    case StateKind::Pure3q:
      return PureState({2, 2, 2}, f.data);
    case StateKind::Density2q:
      throw std::runtime_error("state file: density2q is not a pure state");
  }
  throw std::logic_error("state file: bad kind");
}

inline std::string write_state_file(const StateFile& f) {
  std::ostringstream out;
  switch (f.kind) {
    case StateKind::Density2q: out << "density2q\n"; break;
    case StateKind::Pure2q: out << "pure2q\n"; break;
    case StateKind::Pure3q: out << "pure3q\n"; break;
  }
  const std::size_t row = f.kind == StateKind::Density2q ? 4 : f.data.size();
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    out << '[' << format_double(f.data[i].real()) << ", "
        << format_double(f.data[i].imag()) << ']';
    out << ((i + 1) % row == 0 ? '\n' : ' ');
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Batch-run configuration
// ---------------------------------------------------------------------------

struct RunConfig {
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  double tol = 1e-7;
  std::string out;       // output path; empty means standard output
  unsigned threads = 0;  // worker count; 0 picks the hardware concurrency

  void validate() const {
    if (samples < 1)
      throw std::invalid_argument("config: samples must be at least 1");
    if (!(tol > 0.0))
      throw std::invalid_argument("config: tol must be positive");
  }
};

}  // namespace qpi
