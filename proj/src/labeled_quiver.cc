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

#include "clusterfold/labeled_quiver.h"

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace clusterfold {

namespace {

auto FindNeighbor(std::vector<Neighbor>& row, VertexId id) {
  return std::lower_bound(
      row.begin(), row.end(), id,
      [](const Neighbor& n, VertexId target) { return n.id < target; });
}

}  // namespace

VertexId LabeledQuiver::AddVertex(Index label, VertexKind kind, int depth,
                                  bool interior) {
  if (label >= rank_) {
    throw std::invalid_argument("vertex label " + std::to_string(label + 1) +
                                " outside 1.." + std::to_string(rank_));
  }
  if (kind == VertexKind::kFrozen && !framed_) {
    throw std::invalid_argument("frozen vertex in an unframed quiver");
  }
  if (vertices_.size() >= kNoVertex) throw std::length_error("too many vertices");
  const auto id = static_cast<VertexId>(vertices_.size());
  vertices_.push_back({id, label, kind, depth});
  rows_.emplace_back();
  known_.push_back(1);
  links_.emplace_back();
  region_of_.push_back(0);
  if (!interior) Demote({id});
  return id;
}

void LabeledQuiver::AddArrows(VertexId from, VertexId to, Int multiplicity) {
  if (from >= vertices_.size() || to >= vertices_.size()) {
    throw std::out_of_range("arrow endpoint is not a vertex");
  }
  if (from == to) throw std::invalid_argument("loops are not allowed");
  if (!is_mutable(from) && !is_mutable(to)) {
    throw std::invalid_argument("arrows between frozen vertices are not allowed");
  }
  if (multiplicity < 0) throw std::invalid_argument("negative multiplicity");
  // arrows from -> to raise Entry(to, from).
  AddToEntry(to, from, multiplicity);
}

void LabeledQuiver::AddToEntry(VertexId row, VertexId col, Int delta) {
  if (delta == 0) return;
  auto update = [](std::vector<Neighbor>& r, VertexId id, Int d) {
    auto it = FindNeighbor(r, id);
    if (it != r.end() && it->id == id) {
      it->entry = CheckedAdd(it->entry, d);
      if (it->entry == 0) r.erase(it);
    } else {
      r.insert(it, {id, d});
    }
  };
  update(rows_[row], col, delta);
  update(rows_[col], row, CheckedNeg(delta));
}

Int LabeledQuiver::Entry(VertexId row, VertexId col) const {
  const auto& r = rows_.at(row);
  auto it = std::lower_bound(
      r.begin(), r.end(), col,
      [](const Neighbor& n, VertexId target) { return n.id < target; });
  return it != r.end() && it->id == col ? it->entry : 0;
}

std::map<std::pair<VertexId, VertexId>, Int> LabeledQuiver::Arrows() const {
  std::map<std::pair<VertexId, VertexId>, Int> arrows;
  for (VertexId v = 0; v < rows_.size(); ++v) {
    for (const Neighbor& n : rows_[v]) {
      // Entry(v, n.id) > 0 means arrows n.id -> v.
      if (n.entry > 0) arrows.emplace(std::make_pair(n.id, v), n.entry);
    }
  }
  return arrows;
}

std::size_t LabeledQuiver::arrow_pair_count() const {
  std::size_t count = 0;
  for (const auto& r : rows_) count += r.size();
  return count / 2;
}

std::uint32_t LabeledQuiver::NewRegion() {
  const auto r = static_cast<std::uint32_t>(region_parent_.size());
  region_parent_.push_back(r);
  return r;
}

std::uint32_t LabeledQuiver::FindRegion(std::uint32_t r) const {
  std::uint32_t root = r;
  while (region_parent_[root] != root) root = region_parent_[root];
  while (region_parent_[r] != root) {
    const std::uint32_t next = region_parent_[r];
    region_parent_[r] = root;
    r = next;
  }
  return root;
}

std::uint32_t LabeledQuiver::MergeRegions(std::uint32_t a, std::uint32_t b) {
  a = FindRegion(a);
  b = FindRegion(b);
  if (a == b) return a;
  if (a > b) std::swap(a, b);
  region_parent_[b] = a;
  if (auto it = demoted_in_.find(b); it != demoted_in_.end()) {
    auto& into = demoted_in_[a];
    into.mutable_count += it->second.mutable_count;
    into.frozen_count += it->second.frozen_count;
    demoted_in_.erase(b);
  }
  return a;
}

std::uint32_t LabeledQuiver::Code(VertexId v) const {
  const Vertex& x = vertices_[v];
  return static_cast<std::uint32_t>(
      x.kind == VertexKind::kMutable ? x.label : rank_ + x.label);
}

void LabeledQuiver::Canonicalize(VertexId v) {
  auto& links = links_[v];
  for (HiddenLink& l : links) l.region = FindRegion(l.region);
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
}

void LabeledQuiver::AddLink(VertexId v, HiddenLink link) {
  if (!known_[v]) return;
  // Frozen vertices are never adjacent to each other.
  if (!is_mutable(v) && link.code >= rank_) return;
  links_[v].push_back(link);
}

std::vector<HiddenLink> LabeledQuiver::Links(VertexId v) const {
  std::vector<HiddenLink> links = links_.at(v);
  for (HiddenLink& l : links) l.region = FindRegion(l.region);
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  return links;
}

void LabeledQuiver::Demote(const std::vector<VertexId>& batch) {
  for (VertexId d : batch) {
    if (!known_[d]) continue;
    known_[d] = 0;
    std::uint32_t r = NewRegion();
    // d may be adjacent to every hidden vertex it had links to.
    for (const HiddenLink& l : links_[d]) r = MergeRegions(r, l.region);
    links_[d].clear();
    region_of_[d] = r;
    AddDemoted(r, is_mutable(d));
  }
  // Entries between two demoted vertices are not tracked, so adjacent
  // demoted vertices share a region.
  for (VertexId d : batch) {
    for (const Neighbor& n : rows_[d]) {
      if (!known_[n.id]) MergeRegions(region_of_[n.id], region_of_[d]);
    }
  }
}

void LabeledQuiver::AddDemoted(std::uint32_t region, bool is_mutable_vertex) {
  auto& counts = demoted_in_[FindRegion(region)];
  ++(is_mutable_vertex ? counts.mutable_count : counts.frozen_count);
}

bool LabeledQuiver::MayPairWithDemoted(std::uint32_t region, VertexId x,
                                       VertexId excluded) const {
  const auto it = demoted_in_.find(FindRegion(region));
  if (it == demoted_in_.end()) return false;
  std::size_t mut = it->second.mutable_count;
  std::size_t frz = it->second.frozen_count;
  if (excluded != kNoVertex && !known_[excluded]) {
    --(is_mutable(excluded) ? mut : frz);
  }
  return is_mutable(x) ? mut + frz > 0 : mut > 0;
}

void LabeledQuiver::SetInterior(VertexId v, bool interior) {
  if (interior) {
    known_.at(v) = 1;
    links_[v].clear();
  } else {
    Demote({v});
  }
}

void LabeledQuiver::AddHiddenNeighbors(VertexId v, Index label,
                                       VertexKind kind, int sign) {
  if (!known_.at(v)) {
    throw std::invalid_argument("hidden neighbors of a demoted vertex");
  }
  if (label >= rank_ || (kind == VertexKind::kFrozen && !framed_)) {
    throw std::invalid_argument("bad hidden neighbor label or kind");
  }
  if (kind == VertexKind::kFrozen && !is_mutable(v)) {
    throw std::invalid_argument("frozen vertices are not adjacent");
  }
  const auto code = static_cast<std::uint32_t>(
      kind == VertexKind::kMutable ? label : rank_ + label);
  AddLink(v, {NewRegion(), code, sign > 0 ? 1 : -1});
  Canonicalize(v);
}

int LabeledQuiver::interior_radius() const {
  int radius = kUnboundedRadius;
  for (const Vertex& v : vertices_) {
    if (v.kind == VertexKind::kMutable && !IsInterior(v.id)) {
      radius = std::min(radius, v.depth - 1);
    }
  }
  return radius;
}

bool LabeledQuiver::has_interior() const {
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (IsInterior(v)) return true;
  }
  return false;
}

void LabeledQuiver::MutateAt(VertexId t) {
  if (t >= vertices_.size() || !is_mutable(t)) {
    throw std::invalid_argument("mutation is only defined at mutable vertices");
  }
  const std::vector<Neighbor> star = rows_[t];
  // Entry(t, x) < 0: arrow t -> x.  Entry(t, x) > 0: arrow x -> t.
  for (const Neighbor& out : star) {
    if (out.entry >= 0) continue;
    for (const Neighbor& in : star) {
      if (in.entry <= 0) continue;
      if (!is_mutable(out.id) && !is_mutable(in.id)) continue;
      // Path in -> t -> out adds |in.entry| * |out.entry| arrows in -> out.
      AddToEntry(out.id, in.id, CheckedMul(in.entry, CheckedNeg(out.entry)));
    }
  }
  for (const Neighbor& n : star) {
    AddToEntry(t, n.id, CheckedMul(-2, n.entry));
  }

  if (known_[t]) {
    MutateKnownBookkeeping(t, star);
  } else {
    MutateDemotedBookkeeping(t, star);
  }
}

void LabeledQuiver::MutateKnownBookkeeping(VertexId t,
                                           const std::vector<Neighbor>& star) {
  Canonicalize(t);
  const std::vector<HiddenLink> links = links_[t];
  // Hidden and demoted neighbors of t on opposite sides become adjacent.
  bool positive = false, negative = false;
  for (const HiddenLink& l : links) (l.sign > 0 ? positive : negative) = true;
  for (const Neighbor& n : star) {
    if (!known_[n.id]) (n.entry > 0 ? positive : negative) = true;
  }
  if (positive && negative) {
    std::optional<std::uint32_t> root;
    auto join = [&](std::uint32_t r) {
      root = root ? MergeRegions(*root, r) : FindRegion(r);
    };
    for (const HiddenLink& l : links) join(l.region);
    for (const Neighbor& n : star) {
      if (!known_[n.id]) join(region_of_[n.id]);
    }
  }
  // A known neighbor x gains the hidden neighbors y of t with
  // sign Entry(t, y) == sign Entry(x, t); the new entry has that sign.
  // Entries with stored vertices were computed exactly.
  for (const Neighbor& x : star) {
    if (!known_[x.id]) continue;
    const int s = -Sign(x.entry);
    bool changed = false;
    for (const HiddenLink& l : links) {
      if (l.sign != s) continue;
      AddLink(x.id, {l.region, l.code, s});
      changed = true;
    }
    if (changed) Canonicalize(x.id);
  }
  for (HiddenLink& l : links_[t]) l.sign = -l.sign;
  Canonicalize(t);
}

void LabeledQuiver::MutateDemotedBookkeeping(
    VertexId t, const std::vector<Neighbor>& star) {
  const std::uint32_t region = region_of_[t];
  const Index k = vertices_[t].label;
  // The row of t is known only towards known vertices. A known neighbor x
  // gains unknown entries with whatever else t is adjacent to on the side
  // of sign Entry(x, t): hidden vertices of its region, which become links,
  // or other demoted vertices, whose entries with x are then unknown.
  std::vector<VertexId> demote;
  for (const Neighbor& x : star) {
    if (!known_[x.id]) continue;
    if (MayPairWithDemoted(region, x.id, t)) {
      demote.push_back(x.id);
      continue;
    }
    const int s = -Sign(x.entry);
    const auto codes = static_cast<std::uint32_t>(
        framed_ && is_mutable(x.id) ? 2 * rank_ : rank_);
    for (std::uint32_t c = 0; c < codes; ++c) {
      if (c != k) AddLink(x.id, {region, c, s});
    }
    Canonicalize(x.id);
  }
  Demote(demote);
  for (VertexId d : demote) MergeRegions(region_of_[d], region);
}

void LabeledQuiver::MutateOrbit(Index k) {
  if (k >= rank_) throw std::out_of_range("orbit label out of range");
  // Hidden and demoted vertices labeled k. Group the known vertices linked
  // to them by region and sign.
  struct Side {
    std::vector<VertexId> positive, negative;
  };
  std::map<std::uint32_t, Side> sides;
  std::vector<VertexId> linked;
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (!known_[v]) continue;
    bool any = false;
    for (const HiddenLink& l : links_[v]) {
      if (l.code != k) continue;
      Side& side = sides[FindRegion(l.region)];
      (l.sign > 0 ? side.positive : side.negative).push_back(v);
      any = true;
    }
    if (any) linked.push_back(v);
  }
  // Two stored vertices linked to one region with opposite signs may share
  // a hidden neighbor u, and then their mutual entry changes by an unknown
  // amount. Both are demoted.
  std::vector<VertexId> batch;
  for (auto& [region, side] : sides) {
    bool shared = false;
    for (VertexId x : side.positive) {
      for (VertexId y : side.negative) {
        if (x != y && (is_mutable(x) || is_mutable(y))) shared = true;
      }
      if (shared) break;
    }
    // A hidden k-vertex may also be adjacent to demoted vertices of the
    // region, whose entries with the linked vertices would then change.
    for (const auto* list : {&side.positive, &side.negative}) {
      for (VertexId x : *list) {
        shared = shared || MayPairWithDemoted(region, x, kNoVertex);
      }
    }
    if (!shared) continue;
    batch.insert(batch.end(), side.positive.begin(), side.positive.end());
    batch.insert(batch.end(), side.negative.begin(), side.negative.end());
  }
  std::sort(batch.begin(), batch.end());
  batch.erase(std::unique(batch.begin(), batch.end()), batch.end());
  // Demote merges each vertex into the regions it was linked to.
  Demote(batch);
  // The remaining linked vertices: entries with hidden k-vertices flip sign,
  // and they gain the hidden neighbors of those vertices on the matching
  // side, of any label but k, in the same region.
  for (VertexId x : linked) {
    if (!known_[x]) continue;
    std::vector<HiddenLink> gained;
    for (HiddenLink& l : links_[x]) {
      if (l.code != k) continue;
      const std::uint32_t region = FindRegion(l.region);
      const std::uint32_t codes = static_cast<std::uint32_t>(
          framed_ && is_mutable(x) ? 2 * rank_ : rank_);
      for (std::uint32_t c = 0; c < codes; ++c) {
        if (c != k) gained.push_back({region, c, l.sign});
      }
      l.sign = -l.sign;
    }
    for (const HiddenLink& l : gained) AddLink(x, l);
    Canonicalize(x);
  }
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (is_mutable(v) && vertices_[v].label == k) MutateAt(v);
  }
}

void WriteDot(const LabeledQuiver& q, std::ostream& os) {
  os << "digraph unfolding {\n";
  for (const Vertex& v : q.vertices()) {
    os << "  v" << v.id;
    if (v.kind == VertexKind::kMutable) {
      os << " [shape=ellipse, label=\"v" << v.id << " (" << v.label + 1
         << ")\"];\n";
    } else {
      os << " [shape=box, label=\"" << v.label + 1 << "′\"];\n";
    }
  }
  for (const auto& [arrow, mult] : q.Arrows()) {
    os << "  v" << arrow.first << " -> v" << arrow.second;
    if (mult > 1) os << " [label=" << mult << "]";
    os << ";\n";
  }
  os << "}\n";
}

std::string ToDot(const LabeledQuiver& q) {
  std::ostringstream os;
  WriteDot(q, os);
  return os.str();
}

}  // namespace clusterfold
