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

#ifndef CLUSTERFOLD_FRAMED_SEED_H_
#define CLUSTERFOLD_FRAMED_SEED_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "clusterfold/exchange_matrix.h"
#include "clusterfold/integer.h"
#include "clusterfold/matrix.h"

namespace clusterfold {

// A seed (B, C): the exchange matrix together with its C-matrix, whose
// columns are the c-vectors. Both parts have the same size.
struct FramedSeed {
  ExchangeMatrix b;
  SquareMatrix c;

  FramedSeed() = default;
  // Throws std::invalid_argument if the sizes differ.
  FramedSeed(ExchangeMatrix b_part, SquareMatrix c_part);

  std::size_t size() const { return b.size(); }

  friend bool operator==(const FramedSeed&, const FramedSeed&) = default;
};

// (B, I). Throws std::invalid_argument unless b is sign-skew-symmetric.
FramedSeed Extend(const ExchangeMatrix& b);

// Mutates B as in Mutate() and C by
//   c'_ij = -c_ij                                   if j == k
//   c'_ij = c_ij + (|c_ik| b_kj + c_ik |b_kj|) / 2  otherwise.
FramedSeed MutateFramed(const FramedSeed& seed, Index k);

FramedSeed ApplySequence(const FramedSeed& seed, const MutationSequence& seq);

enum class ColumnSign { kGreen, kRed, kMixed, kZero };

const char* ToString(ColumnSign sign);

// Green: all entries >= 0, one > 0. Red: all <= 0, one < 0.
ColumnSign ClassifyColumn(std::span<const Int> column);
ColumnSign ColumnSignOf(const FramedSeed& seed, Index j);

// Exhaustive sign-coherence check over all sequences of length <= depth
// with no immediate repeat. A violation is any Mixed c-vector.
// Throws std::invalid_argument if depth == 0.
SearchReport CheckSignCoherence(const FramedSeed& seed, int depth);

// i is a source when b_ik <= 0 for every k.
bool IsSource(const ExchangeMatrix& b, Index i);

class NoSourceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Repeatedly picks the smallest index that is a source of the submatrix on
// the indices not chosen yet. Throws NoSourceError when some step has no
// source, which happens exactly when b is not acyclic, and
// std::invalid_argument when b is not sign-skew-symmetric.
MutationSequence AdmissibleSourceNumbering(const ExchangeMatrix& b);

struct GreenSequenceReport {
  MutationSequence sequence;
  // C before the first step, then after every step.
  std::vector<SquareMatrix> step_c_matrices;
  bool is_green_sequence = false;
  bool is_maximal = false;
};

// Replays seq from seed and decides greenness and maximality from the
// recorded C-matrices alone. Zero columns count as not green.
GreenSequenceReport VerifyGreenSequence(const FramedSeed& seed,
                                        const MutationSequence& seq);

// Thrown when a sequence that must be maximal green fails verification.
class GreenSequenceViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The admissible source numbering of b, verified as a maximal green sequence
// of Extend(b). Propagates NoSourceError; throws GreenSequenceViolation if
// the replay does not verify.
GreenSequenceReport SourceMaximalGreenSequence(const ExchangeMatrix& b);

// Depth-first enumeration over green directions (ascending) returning every
// maximal green sequence of length <= max_len, in lexicographic order.
// The search is exponential; intended for n <= 5 and max_len <= 8.
std::vector<GreenSequenceReport> BruteForceGreenSearch(const FramedSeed& seed,
                                                       int max_len);

// Seed document: a JSON object with integer matrices under "b" and "c",
// one matrix row per line. Formatting is canonical, so
// FormatSeedDocument(ParseSeedDocument(text)) == text for any formatted text.
std::string FormatSeedDocument(const FramedSeed& seed);
// Throws ParseError on malformed input.
FramedSeed ParseSeedDocument(std::string_view text);

}  // namespace clusterfold

#endif  // CLUSTERFOLD_FRAMED_SEED_H_
