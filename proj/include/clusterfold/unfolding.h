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

#ifndef CLUSTERFOLD_UNFOLDING_H_
#define CLUSTERFOLD_UNFOLDING_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "clusterfold/exchange_matrix.h"
#include "clusterfold/framed_seed.h"
#include "clusterfold/labeled_quiver.h"

namespace clusterfold {

// The local piece around one vertex: a center labeled i and, for every
// j != i, |b_ji| satellites labeled j joined to the center by one arrow each,
// oriented so that the satellites fold back to b_ji (center -> satellite when
// b_ji > 0). The framed piece adds the frozen copy i' with an arrow
// center -> i'. Throws std::invalid_argument unless b is acyclic
// sign-skew-symmetric, std::out_of_range for a bad i.
LabeledQuiver BuildPiece(const ExchangeMatrix& b, Index i, bool framed);

// Depth-m truncation of the unfolding quiver. Ring 0 is the piece at label 1
// (plus one root per further connected component of b, at its smallest
// index); each round glues the piece of every vertex in the newest ring onto
// it, identifying one satellite with the neighbor it already has. Vertices
// of depth < m are interior. If a round adds no mutable vertex the quiver is
// complete and every vertex is interior.
//
// Ids follow construction order: ring by ring, parents by id, and within a
// parent the frozen copy first, then satellites by ascending label. The
// depth-m truncation is therefore a prefix, by id, of every deeper one.
LabeledQuiver BuildTruncation(const ExchangeMatrix& b, int m, bool framed);

// For each label, the interior mutable vertex of minimal depth (then id).
// Throws std::invalid_argument if some label has no interior vertex.
std::vector<VertexId> DefaultRepresentatives(const LabeledQuiver& q);

// Folding: b_ij = sum over vertices k labeled i of Entry(k, r_j), and for a
// framed quiver c_ij = sum over frozen k labeled i of Entry(k, r_j), where
// r_j is the representative of label j. Representatives must be interior.
ExchangeMatrix FoldPrincipal(const LabeledQuiver& q);
ExchangeMatrix FoldPrincipal(const LabeledQuiver& q,
                             const std::vector<VertexId>& representatives);
// Throws std::invalid_argument for an unframed quiver.
FramedSeed FoldFramed(const LabeledQuiver& q);
FramedSeed FoldFramed(const LabeledQuiver& q,
                      const std::vector<VertexId>& representatives);

struct GammaWitness {
  enum class Kind { kLoop, kTwoCycle };
  Kind kind;
  // Loop: first -> last. Two-cycle: first -> middle -> last.
  VertexId first;
  VertexId middle;
  VertexId last;
};

struct GammaReport {
  bool loop_free = true;
  bool two_cycle_free = true;
  std::vector<GammaWitness> witnesses;  // at most kMaxGammaWitnesses

  bool ok() const { return loop_free && two_cycle_free; }
};

inline constexpr std::size_t kMaxGammaWitnesses = 32;

// Orbits are label classes, separately for mutable and frozen vertices.
// A loop is a trusted arrow inside one orbit; a two-cycle is a pair of
// trusted arrows a -> j -> b with a, b in one orbit and j outside it.
GammaReport CheckGammaConditions(const LabeledQuiver& q);

class GammaConditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InteriorExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mutation at every mutable vertex labeled k, in id order. Same-label
// vertices are never adjacent, so the order does not matter. Throws
// GammaConditionError if the quiver has a loop or two-cycle, and
// InteriorExhaustedError if no interior vertex is left.
LabeledQuiver OrbitMutate(LabeledQuiver q, Index k);

// Labels whose interior vertices are all sources, i.e. receive no arrow from
// a mutable vertex. Labels without interior vertices are skipped.
std::vector<Index> OrbitSources(const LabeledQuiver& q);

struct OrbitSignReport {
  bool consistent = true;
  // Common sign of the c-columns of the interior vertices of each label;
  // nullopt for a label without interior vertices.
  std::vector<std::optional<ColumnSign>> signs;
};

// The c-column of a mutable vertex v is the list of Entry(f, v) over frozen
// f. Consistent when, for every label, all interior vertices share one
// column sign and none is mixed.
OrbitSignReport CheckOrbitColumnSigns(const LabeledQuiver& q);

struct CommutationReport {
  bool ok = true;
  // Number of mutations applied before the first mismatch (0 = the
  // unmutated truncation).
  std::optional<std::size_t> first_divergence;
  std::string detail;
};

// Called after building (step 0) and after every orbit mutation.
using UnfoldingObserver =
    std::function<void(std::size_t step, const LabeledQuiver& q)>;

// Replays seq both as orbit mutations on BuildTruncation(b, m, true) and as
// ordinary mutations on Extend(b), comparing the folding with the seed after
// every prefix. Requires m >= 2 * seq.size() + 2 (std::invalid_argument).
CommutationReport VerifyUnfoldingCommutation(
    const ExchangeMatrix& b, const MutationSequence& seq, int m,
    const UnfoldingObserver& observer = {});

}  // namespace clusterfold

#endif  // CLUSTERFOLD_UNFOLDING_H_
