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

#include "clusterfold/unfolding.h"

#include <algorithm>
#include <sstream>
#include <utility>

namespace clusterfold {

namespace {

void RequireAcyclicSignSkewSymmetric(const ExchangeMatrix& b) {
  if (!IsSignSkewSymmetric(b)) {
    throw std::invalid_argument("matrix is not sign-skew-symmetric");
  }
  if (!IsAcyclic(b)) throw std::invalid_argument("matrix is not acyclic");
}

Int Abs(Int v) { return v < 0 ? CheckedNeg(v) : v; }

// Glues the piece of v's label onto v: adds the frozen copy and every
// satellite except the one identified with `parent`. Returns the new
// mutable vertices in id order.
std::vector<VertexId> Expand(LabeledQuiver& q, const ExchangeMatrix& b,
                             VertexId v, VertexId parent) {
  const Index center = q.vertex(v).label;
  const int depth = q.vertex(v).depth;
  if (q.framed()) {
    VertexId frozen = q.AddVertex(center, VertexKind::kFrozen, depth);
    q.AddArrows(v, frozen);
  }
  std::optional<Index> parent_label;
  if (parent != kNoVertex) {
    parent_label = q.vertex(parent).label;
    // The arrow to the parent came from the parent's piece; it must match
    // the orientation this piece would give it.
    if (q.Entry(parent, v) != Sign(b(*parent_label, center))) {
      throw std::logic_error("gluing orientation mismatch");
    }
  }
  std::vector<VertexId> created;
  for (Index x = 0; x < b.size(); ++x) {
    if (x == center) continue;
    Int count = Abs(b(x, center));
    if (parent_label == x) --count;
    for (Int c = 0; c < count; ++c) {
      VertexId s = q.AddVertex(x, VertexKind::kMutable, depth + 1);
      if (b(x, center) > 0) {
        q.AddArrows(v, s);
      } else {
        q.AddArrows(s, v);
      }
      created.push_back(s);
    }
  }
  return created;
}

// An unexpanded vertex v misses its frozen copy and every satellite of its
// piece except the one identified with its parent. Records them as hidden
// neighbors with the entry signs the piece would give them.
void MarkLeaf(LabeledQuiver& q, const ExchangeMatrix& b, VertexId v,
              Index parent_label) {
  const Index center = q.vertex(v).label;
  if (q.framed()) q.AddHiddenNeighbors(v, center, VertexKind::kFrozen, -1);
  for (Index x = 0; x < b.size(); ++x) {
    if (x == center) continue;
    Int count = Abs(b(x, center));
    if (x == parent_label) --count;
    // A satellite s has Entry(v, s) = -sign(b_x,center).
    if (count > 0) {
      q.AddHiddenNeighbors(v, x, VertexKind::kMutable, -Sign(b(x, center)));
    }
  }
}

// Smallest index of every connected component of the nonzero pattern.
std::vector<Index> ComponentRoots(const ExchangeMatrix& b) {
  const std::size_t n = b.size();
  std::vector<bool> seen(n, false);
  std::vector<Index> roots;
  for (Index r = 0; r < n; ++r) {
    if (seen[r]) continue;
    roots.push_back(r);
    std::vector<Index> stack{r};
    seen[r] = true;
    while (!stack.empty()) {
      Index i = stack.back();
      stack.pop_back();
      for (Index j = 0; j < n; ++j) {
        if (!seen[j] && b(i, j) != 0) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
  }
  return roots;
}

std::string Describe(const LabeledQuiver& q, VertexId v) {
  const Vertex& vx = q.vertex(v);
  return "v" + std::to_string(v) + "(" + std::to_string(vx.label + 1) +
         (vx.kind == VertexKind::kFrozen ? "′" : "") + ")";
}

void CheckRepresentatives(const LabeledQuiver& q,
                          const std::vector<VertexId>& reps) {
  if (reps.size() != q.rank()) {
    throw std::invalid_argument("expected " + std::to_string(q.rank()) +
                                " representatives, got " +
                                std::to_string(reps.size()));
  }
  for (Index label = 0; label < reps.size(); ++label) {
    const VertexId r = reps[label];
    if (r >= q.vertex_count() || !q.is_mutable(r) ||
        q.vertex(r).label != label) {
      throw std::invalid_argument("representative for label " +
                                  std::to_string(label + 1) +
                                  " is not a mutable vertex with that label");
    }
    if (!q.IsInterior(r)) {
      throw std::invalid_argument("representative " + Describe(q, r) +
                                  " is not interior");
    }
  }
}

SquareMatrix FoldRows(const LabeledQuiver& q,
                      const std::vector<VertexId>& reps, VertexKind kind) {
  SquareMatrix out(q.rank());
  for (Index j = 0; j < reps.size(); ++j) {
    for (const Neighbor& n : q.neighbors(reps[j])) {
      const Vertex& k = q.vertex(n.id);
      if (k.kind != kind) continue;
      // n.entry is Entry(reps[j], k); the folded entry sums Entry(k, reps[j]).
      out(k.label, j) = CheckedSub(out(k.label, j), n.entry);
    }
  }
  return out;
}

}  // namespace

LabeledQuiver BuildPiece(const ExchangeMatrix& b, Index i, bool framed) {
  RequireAcyclicSignSkewSymmetric(b);
  if (i >= b.size()) {
    throw std::out_of_range("piece center " + std::to_string(i + 1) +
                            " outside 1.." + std::to_string(b.size()));
  }
  LabeledQuiver q(b.size(), framed);
  VertexId center = q.AddVertex(i, VertexKind::kMutable, 0);
  for (VertexId s : Expand(q, b, center, kNoVertex)) MarkLeaf(q, b, s, i);
  return q;
}

LabeledQuiver BuildTruncation(const ExchangeMatrix& b, int m, bool framed) {
  if (m <= 0) throw std::invalid_argument("truncation depth m must be positive");
  RequireAcyclicSignSkewSymmetric(b);
  LabeledQuiver q(b.size(), framed);
  std::vector<VertexId> parent;
  auto expand_ring = [&](const std::vector<VertexId>& ring) {
    std::vector<VertexId> next;
    for (VertexId v : ring) {
      std::vector<VertexId> created = Expand(q, b, v, parent[v]);
      parent.resize(q.vertex_count(), kNoVertex);
      for (VertexId s : created) parent[s] = v;
      next.insert(next.end(), created.begin(), created.end());
    }
    return next;
  };

  std::vector<VertexId> ring;
  for (Index root : ComponentRoots(b)) {
    ring.push_back(q.AddVertex(root, VertexKind::kMutable, 0));
  }
  parent.assign(q.vertex_count(), kNoVertex);
  for (int round = 0; round < m && !ring.empty(); ++round) {
    ring = expand_ring(ring);
  }
  for (VertexId v : ring) MarkLeaf(q, b, v, q.vertex(parent[v]).label);
  return q;
}

std::vector<VertexId> DefaultRepresentatives(const LabeledQuiver& q) {
  std::vector<VertexId> reps(q.rank(), kNoVertex);
  for (const Vertex& v : q.vertices()) {
    if (v.kind != VertexKind::kMutable || !q.IsInterior(v.id)) continue;
    VertexId& slot = reps[v.label];
    if (slot == kNoVertex || v.depth < q.vertex(slot).depth) slot = v.id;
  }
  for (Index label = 0; label < reps.size(); ++label) {
    if (reps[label] == kNoVertex) {
      throw std::invalid_argument("label " + std::to_string(label + 1) +
                                  " has no interior vertex");
    }
  }
  return reps;
}

ExchangeMatrix FoldPrincipal(const LabeledQuiver& q) {
  return FoldPrincipal(q, DefaultRepresentatives(q));
}

ExchangeMatrix FoldPrincipal(const LabeledQuiver& q,
                             const std::vector<VertexId>& representatives) {
  CheckRepresentatives(q, representatives);
  return FoldRows(q, representatives, VertexKind::kMutable);
}

FramedSeed FoldFramed(const LabeledQuiver& q) {
  if (!q.framed()) throw std::invalid_argument("quiver is not framed");
  return FoldFramed(q, DefaultRepresentatives(q));
}

FramedSeed FoldFramed(const LabeledQuiver& q,
                      const std::vector<VertexId>& representatives) {
  if (!q.framed()) throw std::invalid_argument("quiver is not framed");
  CheckRepresentatives(q, representatives);
  return FramedSeed(FoldRows(q, representatives, VertexKind::kMutable),
                    FoldRows(q, representatives, VertexKind::kFrozen));
}

GammaReport CheckGammaConditions(const LabeledQuiver& q) {
  GammaReport report;
  auto orbit = [&q](VertexId v) {
    const Vertex& vx = q.vertex(v);
    return 2 * vx.label + (vx.kind == VertexKind::kFrozen ? 1 : 0);
  };
  auto trusted = [&q](VertexId a, VertexId b) {
    return q.IsInterior(a) || q.IsInterior(b);
  };
  auto record = [&report](GammaWitness w) {
    if (report.witnesses.size() < kMaxGammaWitnesses) {
      report.witnesses.push_back(w);
    }
  };

  std::vector<std::pair<std::size_t, VertexId>> in, out;
  for (VertexId j = 0; j < q.vertex_count(); ++j) {
    in.clear();
    out.clear();
    const std::size_t own = orbit(j);
    for (const Neighbor& n : q.neighbors(j)) {
      if (!trusted(j, n.id)) continue;
      const std::size_t key = orbit(n.id);
      if (key == own) {
        if (n.id > j) {
          report.loop_free = false;
          if (n.entry > 0) {
            record({GammaWitness::Kind::kLoop, n.id, kNoVertex, j});
          } else {
            record({GammaWitness::Kind::kLoop, j, kNoVertex, n.id});
          }
        }
        continue;
      }
      // Entry(j, x) > 0: arrow x -> j.
      (n.entry > 0 ? in : out).emplace_back(key, n.id);
    }
    std::sort(in.begin(), in.end());
    std::sort(out.begin(), out.end());
    auto a = in.begin();
    auto b = out.begin();
    while (a != in.end() && b != out.end()) {
      if (a->first < b->first) {
        ++a;
      } else if (b->first < a->first) {
        ++b;
      } else {
        report.two_cycle_free = false;
        record({GammaWitness::Kind::kTwoCycle, a->second, j, b->second});
        const std::size_t key = a->first;
        while (a != in.end() && a->first == key) ++a;
        while (b != out.end() && b->first == key) ++b;
      }
    }
  }
  return report;
}

LabeledQuiver OrbitMutate(LabeledQuiver q, Index k) {
  if (k >= q.rank()) {
    throw std::out_of_range("orbit " + std::to_string(k + 1) + " outside 1.." +
                            std::to_string(q.rank()));
  }
  GammaReport gamma = CheckGammaConditions(q);
  if (!gamma.ok()) {
    const GammaWitness& w = gamma.witnesses.front();
    std::string what = w.kind == GammaWitness::Kind::kLoop
                           ? "loop " + Describe(q, w.first) + " -> " +
                                 Describe(q, w.last)
                           : "two-cycle " + Describe(q, w.first) + " -> " +
                                 Describe(q, w.middle) + " -> " +
                                 Describe(q, w.last);
    throw GammaConditionError("orbit mutation undefined: " + what);
  }
  if (!q.has_interior()) {
    throw InteriorExhaustedError("truncation interior is exhausted");
  }
  q.MutateOrbit(k);
  return q;
}

std::vector<Index> OrbitSources(const LabeledQuiver& q) {
  std::vector<bool> seen(q.rank(), false);
  std::vector<bool> all_sources(q.rank(), true);
  for (const Vertex& v : q.vertices()) {
    if (v.kind != VertexKind::kMutable || !q.IsInterior(v.id)) continue;
    seen[v.label] = true;
    for (const Neighbor& n : q.neighbors(v.id)) {
      if (q.is_mutable(n.id) && n.entry > 0) {
        all_sources[v.label] = false;
        break;
      }
    }
  }
  std::vector<Index> sources;
  for (Index label = 0; label < q.rank(); ++label) {
    if (seen[label] && all_sources[label]) sources.push_back(label);
  }
  return sources;
}

OrbitSignReport CheckOrbitColumnSigns(const LabeledQuiver& q) {
  OrbitSignReport report;
  report.signs.assign(q.rank(), std::nullopt);
  std::vector<Int> column;
  for (const Vertex& v : q.vertices()) {
    if (v.kind != VertexKind::kMutable || !q.IsInterior(v.id)) continue;
    column.clear();
    for (const Neighbor& n : q.neighbors(v.id)) {
      if (!q.is_mutable(n.id)) column.push_back(CheckedNeg(n.entry));
    }
    const ColumnSign sign = ClassifyColumn(column);
    auto& slot = report.signs[v.label];
    if (sign == ColumnSign::kMixed || (slot && *slot != sign)) {
      report.consistent = false;
    }
    if (!slot || sign == ColumnSign::kMixed) slot = sign;
  }
  return report;
}

CommutationReport VerifyUnfoldingCommutation(const ExchangeMatrix& b,
                                             const MutationSequence& seq,
                                             int m,
                                             const UnfoldingObserver& observer) {
  const std::size_t budget = 2 * seq.size() + 2;
  if (m <= 0 || static_cast<std::size_t>(m) < budget) {
    throw std::invalid_argument("truncation depth m = " + std::to_string(m) +
                                " is below the interior budget " +
                                std::to_string(budget) + " for " +
                                std::to_string(seq.size()) + " steps");
  }
  for (Index k : seq) {
    if (k >= b.size()) {
      throw std::out_of_range("mutation direction " + std::to_string(k + 1) +
                              " outside 1.." + std::to_string(b.size()));
    }
  }
  CommutationReport report;
  auto fail = [&report](std::size_t step, std::string detail) {
    report.ok = false;
    report.first_divergence = step;
    report.detail = std::move(detail);
    return report;
  };

  LabeledQuiver q = BuildTruncation(b, m, /*framed=*/true);
  FramedSeed seed = Extend(b);
  for (std::size_t step = 0;; ++step) {
    if (step > 0) {
      const Index k = seq[step - 1];
      try {
        q = OrbitMutate(std::move(q), k);
      } catch (const GammaConditionError& e) {
        return fail(step, e.what());
      } catch (const InteriorExhaustedError& e) {
        return fail(step, e.what());
      }
      seed = MutateFramed(seed, k);
    }
    if (observer) observer(step, q);
    FramedSeed folded;
    try {
      folded = FoldFramed(q);
    } catch (const std::invalid_argument& e) {
      return fail(step, std::string("cannot fold: ") + e.what());
    }
    if (folded != seed) {
      std::ostringstream os;
      os << "folding " << folded.b << " / " << folded.c << " differs from "
         << seed.b << " / " << seed.c;
      return fail(step, os.str());
    }
    if (step == seq.size()) break;
  }
  return report;
}

}  // namespace clusterfold
