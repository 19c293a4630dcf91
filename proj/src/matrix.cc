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

#include "clusterfold/matrix.h"

#include <charconv>
#include <ostream>
#include <sstream>
#include <utility>

namespace clusterfold {

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<Int>> rows)
    : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) {
      throw std::invalid_argument("matrix literal is not square");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

SquareMatrix SquareMatrix::Identity(std::size_t n) {
  SquareMatrix m(n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Int SquareMatrix::at(Index i, Index j) const {
  if (i >= n_ || j >= n_) {
    throw std::out_of_range("matrix index (" + std::to_string(i + 1) + ", " +
                            std::to_string(j + 1) + ") outside " +
                            std::to_string(n_) + "x" + std::to_string(n_));
  }
  return (*this)(i, j);
}

std::vector<Int> SquareMatrix::column(Index j) const {
  std::vector<Int> col(n_);
  for (Index i = 0; i < n_; ++i) col[i] = (*this)(i, j);
  return col;
}

std::ostream& operator<<(std::ostream& os, const SquareMatrix& m) {
  os << '[';
  for (Index i = 0; i < m.size(); ++i) {
    os << (i ? ", [" : "[");
    for (Index j = 0; j < m.size(); ++j) {
      os << (j ? ", " : "") << m(i, j);
    }
    os << ']';
  }
  return os << ']';
}

Int Determinant(const SquareMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  SquareMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Index p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (Index j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        // Exact division: Bareiss guarantees prev divides the numerator.
        a(i, j) = CheckedSub(CheckedMul(a(i, j), a(k, k)),
                             CheckedMul(a(i, k), a(k, j))) /
                  prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> Tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    if (i == line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

Int ParseInt(const Token& tok, std::size_t line) {
  Int value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(line, tok.column,
                     "integer '" + std::string(tok.text) + "' out of range");
  }
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, tok.column,
                     "expected an integer, found '" + std::string(tok.text) +
                         "'");
  }
  return value;
}

}  // namespace

SquareMatrix ParseMatrixText(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  while (!lines.empty() && Tokenize(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(1, 1, "empty input, expected size n");

  auto header = Tokenize(lines[0]);
  if (header.size() != 1) {
    throw ParseError(1, header.empty() ? 1 : header.back().column,
                     "first line must hold exactly one integer n");
  }
  const Int n = ParseInt(header[0], 1);
  if (n <= 0) throw ParseError(1, header[0].column, "n must be positive");

  const auto size = static_cast<std::size_t>(n);
  if (lines.size() - 1 < size) {
    throw ParseError(lines.size() + 1, 1,
                     "expected " + std::to_string(size) + " rows, found " +
                         std::to_string(lines.size() - 1));
  }
  if (lines.size() - 1 > size) {
    throw ParseError(size + 2, 1,
                     "unexpected row beyond the declared " +
                         std::to_string(size) + " rows");
  }
  SquareMatrix m(size);
  for (Index i = 0; i < size; ++i) {
    const std::size_t line_no = i + 2;
    auto tokens = Tokenize(lines[i + 1]);
    if (tokens.size() != size) {
      const std::size_t col =
          tokens.size() > size ? tokens[size].column
                               : lines[i + 1].size() + 1;
      throw ParseError(line_no, col,
                       "row " + std::to_string(i + 1) + " has " +
                           std::to_string(tokens.size()) +
                           " entries, expected " + std::to_string(size));
    }
    for (Index j = 0; j < size; ++j) m(i, j) = ParseInt(tokens[j], line_no);
  }
  return m;
}

std::string FormatMatrixText(const SquareMatrix& m) {
  std::ostringstream os;
  os << m.size() << '\n';
  for (Index i = 0; i < m.size(); ++i) {
    for (Index j = 0; j < m.size(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace clusterfold
