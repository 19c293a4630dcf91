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

#include "clusterfold/framed_seed.h"

#include <algorithm>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace clusterfold {

FramedSeed::FramedSeed(ExchangeMatrix b_part, SquareMatrix c_part)
    : b(std::move(b_part)), c(std::move(c_part)) {
  if (b.size() != c.size()) {
    throw std::invalid_argument("B is " + std::to_string(b.size()) + "x" +
                                std::to_string(b.size()) + " but C is " +
                                std::to_string(c.size()) + "x" +
                                std::to_string(c.size()));
  }
}

FramedSeed Extend(const ExchangeMatrix& b) {
  if (!IsSignSkewSymmetric(b)) {
    throw std::invalid_argument("cannot extend: matrix is not sign-skew-symmetric");
  }
  return FramedSeed(b, SquareMatrix::Identity(b.size()));
}

FramedSeed MutateFramed(const FramedSeed& seed, Index k) {
  const std::size_t n = seed.size();
  FramedSeed out;
  out.b = Mutate(seed.b, k);  // range-checks k
  out.c = SquareMatrix(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (j == k) {
        out.c(i, j) = CheckedNeg(seed.c(i, j));
      } else {
        out.c(i, j) =
            CheckedAdd(seed.c(i, j), MutationTerm(seed.c(i, k), seed.b(k, j)));
      }
    }
  }
  return out;
}

FramedSeed ApplySequence(const FramedSeed& seed, const MutationSequence& seq) {
  FramedSeed out = seed;
  for (Index k : seq) out = MutateFramed(out, k);
  return out;
}

const char* ToString(ColumnSign sign) {
  switch (sign) {
    case ColumnSign::kGreen:
      return "green";
    case ColumnSign::kRed:
      return "red";
    case ColumnSign::kMixed:
      return "mixed";
    case ColumnSign::kZero:
      return "zero";
  }
  return "?";
}

ColumnSign ClassifyColumn(std::span<const Int> column) {
  bool positive = false;
  bool negative = false;
  for (Int v : column) {
    positive |= v > 0;
    negative |= v < 0;
  }
  if (positive && negative) return ColumnSign::kMixed;
  if (positive) return ColumnSign::kGreen;
  if (negative) return ColumnSign::kRed;
  return ColumnSign::kZero;
}

ColumnSign ColumnSignOf(const FramedSeed& seed, Index j) {
  if (j >= seed.size()) {
    throw std::out_of_range("column " + std::to_string(j + 1) +
                            " outside 1.." + std::to_string(seed.size()));
  }
  std::vector<Int> col = seed.c.column(j);
  return ClassifyColumn(col);
}

namespace {

bool HasMixedColumn(const FramedSeed& seed) {
  for (Index j = 0; j < seed.size(); ++j) {
    if (ColumnSignOf(seed, j) == ColumnSign::kMixed) return true;
  }
  return false;
}

bool HasGreenColumn(const FramedSeed& seed) {
  for (Index j = 0; j < seed.size(); ++j) {
    if (ColumnSignOf(seed, j) == ColumnSign::kGreen) return true;
  }
  return false;
}

}  // namespace

SearchReport CheckSignCoherence(const FramedSeed& seed, int depth) {
  if (depth <= 0) throw std::invalid_argument("depth must be positive");
  const std::size_t n = seed.size();
  SearchReport report;
  if (HasMixedColumn(seed)) {
    report.ok = false;
    report.counterexample = MutationSequence{};
    return report;
  }
  std::vector<std::pair<MutationSequence, FramedSeed>> frontier;
  frontier.emplace_back(MutationSequence{}, seed);
  for (int level = 1; level <= depth; ++level) {
    std::vector<std::pair<MutationSequence, FramedSeed>> next;
    for (const auto& [seq, s] : frontier) {
      for (Index k = 0; k < n; ++k) {
        if (!seq.empty() && seq.back() == k) continue;
        MutationSequence extended = seq;
        extended.push_back(k);
        FramedSeed mutated = MutateFramed(s, k);
        ++report.sequences_checked;
        if (HasMixedColumn(mutated)) {
          report.ok = false;
          report.counterexample = std::move(extended);
          return report;
        }
        if (level < depth) next.emplace_back(std::move(extended), std::move(mutated));
      }
    }
    frontier = std::move(next);
  }
  return report;
}

bool IsSource(const ExchangeMatrix& b, Index i) {
  for (Index k = 0; k < b.size(); ++k) {
    if (b(i, k) > 0) return false;
  }
  return true;
}

MutationSequence AdmissibleSourceNumbering(const ExchangeMatrix& b) {
  if (!IsSignSkewSymmetric(b)) {
    throw std::invalid_argument("matrix is not sign-skew-symmetric");
  }
  const std::size_t n = b.size();
  std::vector<bool> chosen(n, false);
  MutationSequence numbering;
  numbering.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    Index pick = n;
    for (Index i = 0; i < n && pick == n; ++i) {
      if (chosen[i]) continue;
      bool source = true;
      for (Index k = 0; k < n && source; ++k) {
        if (!chosen[k] && b(i, k) > 0) source = false;
      }
      if (source) pick = i;
    }
    if (pick == n) {
      std::string remaining;
      for (Index i = 0; i < n; ++i) {
        if (!chosen[i]) remaining += (remaining.empty() ? "" : ",") + std::to_string(i + 1);
      }
      throw NoSourceError("no source among remaining indices {" + remaining +
                          "} at step " + std::to_string(step + 1) +
                          "; the matrix is not acyclic");
    }
    chosen[pick] = true;
    numbering.push_back(pick);
  }
  return numbering;
}

GreenSequenceReport VerifyGreenSequence(const FramedSeed& seed,
                                        const MutationSequence& seq) {
  GreenSequenceReport report;
  report.sequence = seq;
  report.is_green_sequence = true;
  FramedSeed current = seed;
  report.step_c_matrices.push_back(current.c);
  for (Index k : seq) {
    if (k >= current.size() || ColumnSignOf(current, k) != ColumnSign::kGreen) {
      report.is_green_sequence = false;
    }
    current = MutateFramed(current, k);
    report.step_c_matrices.push_back(current.c);
  }
  report.is_maximal = report.is_green_sequence && !HasGreenColumn(current);
  return report;
}

GreenSequenceReport SourceMaximalGreenSequence(const ExchangeMatrix& b) {
  MutationSequence numbering = AdmissibleSourceNumbering(b);
  GreenSequenceReport report = VerifyGreenSequence(Extend(b), numbering);
  if (!report.is_maximal) {
    throw GreenSequenceViolation("source numbering " + FormatSequence(numbering) +
                                 " did not verify as a maximal green sequence");
  }
  return report;
}

namespace {

void GreenSearch(const FramedSeed& seed, int max_len,
                 GreenSequenceReport& path,
                 std::vector<GreenSequenceReport>& found) {
  bool any_green = false;
  for (Index k = 0; k < seed.size(); ++k) {
    if (ColumnSignOf(seed, k) != ColumnSign::kGreen) continue;
    any_green = true;
    if (path.sequence.size() >= static_cast<std::size_t>(max_len)) continue;
    FramedSeed next = MutateFramed(seed, k);
    path.sequence.push_back(k);
    path.step_c_matrices.push_back(next.c);
    GreenSearch(next, max_len, path, found);
    path.sequence.pop_back();
    path.step_c_matrices.pop_back();
  }
  if (!any_green) {
    GreenSequenceReport done = path;
    done.is_green_sequence = true;
    done.is_maximal = true;
    found.push_back(std::move(done));
  }
}

}  // namespace

std::vector<GreenSequenceReport> BruteForceGreenSearch(const FramedSeed& seed,
                                                       int max_len) {
  std::vector<GreenSequenceReport> found;
  if (max_len < 0) return found;
  GreenSequenceReport path;
  path.step_c_matrices.push_back(seed.c);
  GreenSearch(seed, max_len, path, found);
  std::sort(found.begin(), found.end(),
            [](const GreenSequenceReport& a, const GreenSequenceReport& b) {
              return a.sequence < b.sequence;
            });
  return found;
}

namespace {

void AppendMatrixJson(std::ostringstream& os, const SquareMatrix& m) {
  os << "[\n";
  for (Index i = 0; i < m.size(); ++i) {
    os << "    [";
    for (Index j = 0; j < m.size(); ++j) os << (j ? ", " : "") << m(i, j);
    os << (i + 1 < m.size() ? "],\n" : "]\n");
  }
  os << "  ]";
}

std::pair<std::size_t, std::size_t> LineColumn(std::string_view text,
                                               std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

SquareMatrix MatrixFromJson(const nlohmann::json& value, const char* key) {
  auto fail = [key](const std::string& why) {
    return ParseError(std::string("\"") + key + "\": " + why);
  };
  if (!value.is_array() || value.empty()) {
    throw fail("expected a non-empty array of rows");
  }
  const std::size_t n = value.size();
  SquareMatrix m(n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = value[i];
    if (!row.is_array() || row.size() != n) {
      throw fail("row " + std::to_string(i + 1) + " must hold " +
                 std::to_string(n) + " entries");
    }
    for (Index j = 0; j < n; ++j) {
      const auto& e = row[j];
      if (e.is_number_unsigned()) {
        auto u = e.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(INT64_MAX)) {
          throw fail("entry (" + std::to_string(i + 1) + ", " +
                     std::to_string(j + 1) + ") out of range");
        }
        m(i, j) = static_cast<Int>(u);
      } else if (e.is_number_integer()) {
        m(i, j) = e.get<Int>();
      } else {
        throw fail("entry (" + std::to_string(i + 1) + ", " +
                   std::to_string(j + 1) + ") is not an integer");
      }
    }
  }
  return m;
}

}  // namespace

std::string FormatSeedDocument(const FramedSeed& seed) {
  std::ostringstream os;
  os << "{\n  \"b\": ";
  AppendMatrixJson(os, seed.b);
  os << ",\n  \"c\": ";
  AppendMatrixJson(os, seed.c);
  os << "\n}\n";
  return os.str();
}

FramedSeed ParseSeedDocument(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = LineColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(line, column, "malformed seed document");
  }
  if (!doc.is_object()) throw ParseError("seed document must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "b" && key != "c") {
      throw ParseError("unexpected key \"" + key + "\"");
    }
  }
  if (!doc.contains("b") || !doc.contains("c")) {
    throw ParseError("seed document needs both \"b\" and \"c\"");
  }
  SquareMatrix b = MatrixFromJson(doc["b"], "b");
  SquareMatrix c = MatrixFromJson(doc["c"], "c");
  if (b.size() != c.size()) {
    throw ParseError("\"b\" and \"c\" have different sizes");
  }
  return FramedSeed(std::move(b), std::move(c));
}

}  // namespace clusterfold
