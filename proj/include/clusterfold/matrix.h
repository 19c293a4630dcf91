// Copyright 2026 The clusterfold Authors
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

#ifndef CLUSTERFOLD_MATRIX_H_
#define CLUSTERFOLD_MATRIX_H_

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "clusterfold/integer.h"

namespace clusterfold {

// Dense n x n integer matrix with value semantics, row-major storage.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}

  // Row-wise literal. Throws std::invalid_argument unless every row has as
  // many entries as there are rows.
  SquareMatrix(std::initializer_list<std::initializer_list<Int>> rows);

  static SquareMatrix Identity(std::size_t n);

  std::size_t size() const { return n_; }

  Int operator()(Index i, Index j) const { return data_[i * n_ + j]; }
  Int& operator()(Index i, Index j) { return data_[i * n_ + j]; }

  // Bounds-checked access; throws std::out_of_range.
  Int at(Index i, Index j) const;

  std::span<const Int> row(Index i) const {
    return {data_.data() + i * n_, n_};
  }
  std::vector<Int> column(Index j) const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Int> data_;
};

std::ostream& operator<<(std::ostream& os, const SquareMatrix& m);

// Determinant by fraction-free (Bareiss) elimination, exact over the integers.
Int Determinant(const SquareMatrix& m);

// Thrown by the text parsers. Carries the 1-based line and column of the
// offending token, or 0 for structural errors without a single location.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  explicit ParseError(const std::string& what)
      : std::runtime_error(what), line_(0), column_(0) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Matrix text format: the first line holds n, then n lines of n
// whitespace-separated integers. Blank trailing lines are ignored.
SquareMatrix ParseMatrixText(std::string_view text);
std::string FormatMatrixText(const SquareMatrix& m);

}  // namespace clusterfold

#endif  // CLUSTERFOLD_MATRIX_H_
