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

#ifndef CLUSTERFOLD_EXCHANGE_MATRIX_H_
#define CLUSTERFOLD_EXCHANGE_MATRIX_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clusterfold/integer.h"
#include "clusterfold/matrix.h"

namespace clusterfold {

// The principal part B of a seed.
using ExchangeMatrix = SquareMatrix;

// Mutation directions in application order, 0-based.
using MutationSequence = std::vector<Index>;

// "1,2,3" <-> {0, 1, 2}. Parsing rejects empty items and zero; it does not
// know n, so range checks happen where the sequence is applied.
MutationSequence ParseSequence(std::string_view text);
std::string FormatSequence(const MutationSequence& seq);

struct ClassificationReport {
  bool skew_symmetric = false;
  // Diagonal of the minimal positive integer symmetrizer D with
  // d_i * b_ij == -d_j * b_ji, when one exists.
  std::optional<std::vector<Int>> symmetrizer;
  bool sign_skew_symmetric = false;
  // Whether Delta(B), with an edge i -> j iff b_ij < 0, has no directed
  // cycle. Only meaningful when sign_skew_symmetric holds.
  bool acyclic = false;
};

bool IsSkewSymmetric(const ExchangeMatrix& b);
bool IsSignSkewSymmetric(const ExchangeMatrix& b);
bool IsAcyclic(const ExchangeMatrix& b);

// Propagates d-ratios along each connected component of the nonzero pattern,
// clears denominators component-wise and verifies the result on every entry.
std::optional<std::vector<Int>> FindSymmetrizer(const ExchangeMatrix& b);

ClassificationReport Classify(const ExchangeMatrix& b);

// Matrix mutation in direction k. Throws std::out_of_range for k >= n and
// OverflowError if an entry leaves the 64-bit range.
ExchangeMatrix Mutate(const ExchangeMatrix& b, Index k);

// Left fold of Mutate over seq; the empty sequence returns b.
ExchangeMatrix ApplySequence(const ExchangeMatrix& b,
                             const MutationSequence& seq);

// Outcome of an exhaustive search over mutation sequences.
struct SearchReport {
  bool ok = true;
  // Shortest (then lexicographically smallest) violating sequence.
  std::optional<MutationSequence> counterexample;
  std::size_t sequences_checked = 0;
};

// Applies every sequence of length <= depth with no immediate repeat (k, k)
// and reports whether every matrix reached is sign-skew-symmetric.
// Throws std::invalid_argument if depth == 0 or b is not sign-skew-symmetric.
SearchReport CheckTotalMutability(const ExchangeMatrix& b, int depth);

}  // namespace clusterfold

#endif  // CLUSTERFOLD_EXCHANGE_MATRIX_H_
