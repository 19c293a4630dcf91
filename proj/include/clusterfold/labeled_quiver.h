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

#ifndef CLUSTERFOLD_LABELED_QUIVER_H_
#define CLUSTERFOLD_LABELED_QUIVER_H_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clusterfold/integer.h"

namespace clusterfold {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

// Radius reported by a quiver in which every mutable vertex is interior,
// i.e. a finite quiver that is complete.
inline constexpr int kUnboundedRadius = std::numeric_limits<int>::max();

enum class VertexKind : std::uint8_t { kMutable, kFrozen };

struct Vertex {
  VertexId id = kNoVertex;
  Index label = 0;  // orbit label, 0-based
  VertexKind kind = VertexKind::kMutable;
  int depth = 0;    // construction ring that introduced the vertex
};

// One nonzero entry of a vertex's row of the adjacency matrix.
struct Neighbor {
  VertexId id;
  Int entry;  // Entry(owner, id)
};

// A finite quiver with labeled mutable and frozen vertices, stored as its
// skew-symmetric adjacency matrix
//
//   Entry(i, j) = #arrows(j -> i) - #arrows(i -> j).
//
// For a frozen row f and mutable column j, Entry(f, j) is the c-entry:
// positive when arrows run from j to f.
//
// The quiver may be a finite piece of an infinite one (the "true" quiver).
// The vertices of the true quiver that are not stored are called hidden.
// Every stored vertex is either known or demoted:
//
//  * A known vertex has correct entries with every stored vertex, and a
//    complete list of HiddenLinks: for each hidden neighbor it may have, a
//    link (region, code, sign) names the region containing that neighbor,
//    its label (code = label for mutable, rank + label for frozen) and the
//    sign of the entry.
//  * A demoted vertex has correct entries with known vertices only. Its
//    entries with demoted and hidden vertices are unknown, and it belongs to
//    a region like a hidden vertex.
//
// Regions partition the hidden and demoted vertices such that no two of them
// in different regions are adjacent. A known mutable vertex without links is
// interior: its row equals the row of the true quiver. Arrows with at least
// one interior endpoint are trusted; all others may be truncation artifacts.
//
// MutateAt and MutateOrbit keep this bookkeeping sound: a link is added
// whenever a hidden entry may appear, regions merge whenever two of them may
// become adjacent, and a vertex is demoted whenever one of its entries with a
// stored vertex may change in a way that cannot be computed.
struct HiddenLink {
  std::uint32_t region;
  std::uint32_t code;
  int sign;  // +1 or -1: the sign of Entry(owner, hidden neighbor)

  friend bool operator==(const HiddenLink&, const HiddenLink&) = default;
  friend auto operator<=>(const HiddenLink&, const HiddenLink&) = default;
};

class LabeledQuiver {
 public:
  LabeledQuiver(std::size_t rank, bool framed) : rank_(rank), framed_(framed) {}

  // Number of labels (orbits of mutable vertices).
  std::size_t rank() const { return rank_; }
  bool framed() const { return framed_; }

  // Throws std::invalid_argument for a label >= rank or a frozen vertex in an
  // unframed quiver. An interior vertex starts known without links; a
  // non-interior one starts demoted.
  VertexId AddVertex(Index label, VertexKind kind, int depth,
                     bool interior = true);
  // Adds `multiplicity` arrows from -> to, cancelling opposite arrows.
  // Rejects loops and arrows between two frozen vertices. Meant for
  // construction: it does not update links.
  void AddArrows(VertexId from, VertexId to, Int multiplicity = 1);

  std::size_t vertex_count() const { return vertices_.size(); }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  std::span<const Vertex> vertices() const { return vertices_; }
  bool is_mutable(VertexId v) const {
    return vertices_[v].kind == VertexKind::kMutable;
  }

  Int Entry(VertexId row, VertexId col) const;
  // Nonzero entries of row v, sorted by neighbor id.
  std::span<const Neighbor> neighbors(VertexId v) const { return rows_.at(v); }
  // (from, to) -> number of arrows from -> to.
  std::map<std::pair<VertexId, VertexId>, Int> Arrows() const;
  std::size_t arrow_pair_count() const;

  bool IsInterior(VertexId v) const {
    return is_mutable(v) && known_.at(v) && links_[v].empty();
  }
  bool IsKnown(VertexId v) const { return known_.at(v) != 0; }
  // Links of a known vertex with canonical region ids, sorted.
  std::vector<HiddenLink> Links(VertexId v) const;
  // true: known without links. false: demoted.
  void SetInterior(VertexId v, bool interior);
  // Declares that known vertex v may have hidden neighbors with the given
  // label, kind and entry sign, in a region private to v.
  void AddHiddenNeighbors(VertexId v, Index label, VertexKind kind, int sign);

  // Largest R such that every mutable vertex of depth <= R is interior;
  // -1 when a depth-0 vertex is not, kUnboundedRadius when all are.
  int interior_radius() const;
  bool has_interior() const;

  // Ordinary mutation at mutable vertex t. Arrows that would join two frozen
  // vertices are dropped. Hidden vertices are not mutated, so on a truncation
  // this is only meaningful as part of MutateOrbit.
  void MutateAt(VertexId t);
  // Mutation at every vertex labeled k of the true quiver: first the hidden
  // and demoted ones (bookkeeping only), then the stored mutable ones in id
  // order. Same-label vertices must not be adjacent.
  void MutateOrbit(Index k);

 private:
  void AddToEntry(VertexId row, VertexId col, Int delta);
  std::uint32_t NewRegion();
  std::uint32_t FindRegion(std::uint32_t r) const;
  std::uint32_t MergeRegions(std::uint32_t a, std::uint32_t b);
  std::uint32_t Code(VertexId v) const;
  void Canonicalize(VertexId v);
  void AddLink(VertexId v, HiddenLink link);
  void Demote(const std::vector<VertexId>& batch);
  void AddDemoted(std::uint32_t region, bool is_mutable_vertex);
  // Whether region holds a demoted vertex other than `excluded` whose entry
  // with x could exist (frozen pairs never do).
  bool MayPairWithDemoted(std::uint32_t region, VertexId x,
                          VertexId excluded) const;
  void MutateKnownBookkeeping(VertexId t, const std::vector<Neighbor>& star);
  void MutateDemotedBookkeeping(VertexId t, const std::vector<Neighbor>& star);

  struct DemotedCount {
    std::size_t mutable_count = 0;
    std::size_t frozen_count = 0;
  };

  std::size_t rank_;
  bool framed_;
  std::vector<Vertex> vertices_;
  std::vector<std::vector<Neighbor>> rows_;
  std::vector<std::uint8_t> known_;
  std::vector<std::vector<HiddenLink>> links_;
  std::vector<std::uint32_t> region_of_;  // region of a demoted vertex
  mutable std::vector<std::uint32_t> region_parent_;
  // Demoted vertices per region root.
  std::map<std::uint32_t, DemotedCount> demoted_in_;
};

// Graphviz export. Mutable vertices are ellipses labeled "v<id> (<label>)",
// frozen ones are boxes labeled "<label>′"; arrows of multiplicity > 1 carry
// label=<multiplicity>. Vertices are emitted by id, arrows by (from, to).
void WriteDot(const LabeledQuiver& q, std::ostream& os);
std::string ToDot(const LabeledQuiver& q);

}  // namespace clusterfold

#endif  // CLUSTERFOLD_LABELED_QUIVER_H_
