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

#include "clusterfold/exchange_matrix.h"

#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace clusterfold {

MutationSequence ParseSequence(std::string_view text) {
  MutationSequence seq;
  if (text.empty()) return seq;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view item =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                         : comma - pos);
    const std::size_t item_no = seq.size() + 1;
    if (item.empty()) {
      throw std::invalid_argument("sequence item " + std::to_string(item_no) +
                                  " is empty");
    }
    std::size_t value = 0;
    for (char ch : item) {
      if (ch < '0' || ch > '9') {
        throw std::invalid_argument("sequence item " + std::to_string(item_no) +
                                    " ('" + std::string(item) +
                                    "') is not a positive index");
      }
      value = value * 10 + static_cast<std::size_t>(ch - '0');
      if (value > 1000000) {
        throw std::invalid_argument("sequence item " +
                                    std::to_string(item_no) + " is too large");
      }
    }
    if (value == 0) {
      throw std::invalid_argument("sequence item " + std::to_string(item_no) +
                                  " is 0; indices are 1-based");
    }
    seq.push_back(value - 1);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return seq;
}

std::string FormatSequence(const MutationSequence& seq) {
  std::ostringstream os;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    os << (i ? "," : "") << seq[i] + 1;
  }
  return os.str();
}

bool IsSkewSymmetric(const ExchangeMatrix& b) {
  const std::size_t n = b.size();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      if (b(i, j) != CheckedNeg(b(j, i))) return false;
    }
  }
  return true;
}

bool IsSignSkewSymmetric(const ExchangeMatrix& b) {
  const std::size_t n = b.size();
  for (Index i = 0; i < n; ++i) {
    if (b(i, i) != 0) return false;
    for (Index j = i + 1; j < n; ++j) {
      if (Sign(b(i, j)) != -Sign(b(j, i))) return false;
    }
  }
  return true;
}

bool IsAcyclic(const ExchangeMatrix& b) {
  // Kahn's algorithm on Delta(B).
  const std::size_t n = b.size();
  std::vector<std::size_t> in_degree(n, 0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i != j && b(i, j) < 0) ++in_degree[j];
    }
  }
  std::vector<Index> ready;
  for (Index v = 0; v < n; ++v) {
    if (in_degree[v] == 0) ready.push_back(v);
  }
  std::size_t emitted = 0;
  while (!ready.empty()) {
    Index v = ready.back();
    ready.pop_back();
    ++emitted;
    for (Index j = 0; j < n; ++j) {
      if (j != v && b(v, j) < 0 && --in_degree[j] == 0) ready.push_back(j);
    }
  }
  return emitted == n;
}

namespace {

struct Ratio {
  Int num = 0;
  Int den = 1;
};

Ratio Reduced(Int num, Int den) {
  Int g = std::gcd(num, den);
  return {num / g, den / g};
}

}  // namespace

std::optional<std::vector<Int>> FindSymmetrizer(const ExchangeMatrix& b) {
  const std::size_t n = b.size();
  std::vector<Ratio> d(n);
  std::vector<bool> seen(n, false);
  std::vector<Int> result(n, 0);

  for (Index root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<Index> component;
    std::queue<Index> queue;
    d[root] = {1, 1};
    seen[root] = true;
    queue.push(root);
    while (!queue.empty()) {
      Index i = queue.front();
      queue.pop();
      component.push_back(i);
      for (Index j = 0; j < n; ++j) {
        if (j == i || (b(i, j) == 0 && b(j, i) == 0)) continue;
        // d_i b_ij = -d_j b_ji needs opposite nonzero signs.
        if (Sign(b(i, j)) != -Sign(b(j, i))) return std::nullopt;
        if (seen[j]) continue;
        Int abs_ij = b(i, j) < 0 ? CheckedNeg(b(i, j)) : b(i, j);
        Int abs_ji = b(j, i) < 0 ? CheckedNeg(b(j, i)) : b(j, i);
        d[j] = Reduced(CheckedMul(d[i].num, abs_ij),
                       CheckedMul(d[i].den, abs_ji));
        seen[j] = true;
        queue.push(j);
      }
    }
    Int common_den = 1;
    for (Index v : component) {
      common_den = CheckedMul(common_den / std::gcd(common_den, d[v].den),
                              d[v].den);
    }
    Int common_num = 0;
    for (Index v : component) {
      result[v] = CheckedMul(d[v].num, common_den / d[v].den);
      common_num = std::gcd(common_num, result[v]);
    }
    for (Index v : component) result[v] /= common_num;
  }

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (CheckedMul(result[i], b(i, j)) !=
          CheckedNeg(CheckedMul(result[j], b(j, i)))) {
        return std::nullopt;
      }
    }
  }
  return result;
}

ClassificationReport Classify(const ExchangeMatrix& b) {
  ClassificationReport report;
  report.skew_symmetric = IsSkewSymmetric(b);
  report.sign_skew_symmetric = IsSignSkewSymmetric(b);
  report.symmetrizer = FindSymmetrizer(b);
  report.acyclic = IsAcyclic(b);
  return report;
}

ExchangeMatrix Mutate(const ExchangeMatrix& b, Index k) {
  const std::size_t n = b.size();
  if (k >= n) {
    throw std::out_of_range("mutation direction " + std::to_string(k + 1) +
                            " outside 1.." + std::to_string(n));
  }
  ExchangeMatrix out(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == k || j == k) {
        out(i, j) = CheckedNeg(b(i, j));
      } else {
        out(i, j) = CheckedAdd(b(i, j), MutationTerm(b(i, k), b(k, j)));
      }
    }
  }
  return out;
}

ExchangeMatrix ApplySequence(const ExchangeMatrix& b,
                             const MutationSequence& seq) {
  ExchangeMatrix out = b;
  for (Index k : seq) out = Mutate(out, k);
  return out;
}

SearchReport CheckTotalMutability(const ExchangeMatrix& b, int depth) {
  if (depth <= 0) throw std::invalid_argument("depth must be positive");
  if (!IsSignSkewSymmetric(b)) {
    throw std::invalid_argument("input matrix is not sign-skew-symmetric");
  }
  const std::size_t n = b.size();
  SearchReport report;
  // Level-by-level so the first violation found is a shortest one; within a
  // level the frontier is kept in lexicographic order.
  std::vector<std::pair<MutationSequence, ExchangeMatrix>> frontier;
  frontier.emplace_back(MutationSequence{}, b);
  for (int level = 1; level <= depth; ++level) {
    std::vector<std::pair<MutationSequence, ExchangeMatrix>> next;
    for (const auto& [seq, m] : frontier) {
      for (Index k = 0; k < n; ++k) {
        if (!seq.empty() && seq.back() == k) continue;
        MutationSequence extended = seq;
        extended.push_back(k);
        ExchangeMatrix mutated = Mutate(m, k);
        ++report.sequences_checked;
        if (!IsSignSkewSymmetric(mutated)) {
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

}  // namespace clusterfold
