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

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "support/corpus.h"

namespace clusterfold {
namespace {

using testing::Draw;

TEST(LabeledQuiverTest, AddVertexValidates) {
  LabeledQuiver q(2, false);
  EXPECT_EQ(q.AddVertex(0, VertexKind::kMutable, 0), 0u);
  EXPECT_EQ(q.AddVertex(1, VertexKind::kMutable, 1), 1u);
  EXPECT_THROW(q.AddVertex(2, VertexKind::kMutable, 0), std::invalid_argument);
  EXPECT_THROW(q.AddVertex(0, VertexKind::kFrozen, 0), std::invalid_argument);
  EXPECT_EQ(q.vertex_count(), 2u);
  EXPECT_EQ(q.vertex(1).label, 1u);
  EXPECT_EQ(q.vertex(1).depth, 1);
}

TEST(LabeledQuiverTest, ArrowsAndEntries) {
  LabeledQuiver q(2, true);
  const VertexId a = q.AddVertex(0, VertexKind::kMutable, 0);
  const VertexId b = q.AddVertex(1, VertexKind::kMutable, 0);
  const VertexId f = q.AddVertex(0, VertexKind::kFrozen, 0);
  q.AddArrows(a, b, 3);
  q.AddArrows(b, a, 1);
  q.AddArrows(a, f);
  EXPECT_EQ(q.Entry(b, a), 2);
  EXPECT_EQ(q.Entry(a, b), -2);
  EXPECT_EQ(q.Entry(f, a), 1);
  EXPECT_EQ(q.Entry(f, b), 0);
  EXPECT_EQ(q.arrow_pair_count(), 2u);
  const auto arrows = q.Arrows();
  ASSERT_EQ(arrows.size(), 2u);
  EXPECT_EQ(arrows.at({a, b}), 2);
  EXPECT_EQ(arrows.at({a, f}), 1);
  ASSERT_EQ(q.neighbors(a).size(), 2u);
  EXPECT_EQ(q.neighbors(a)[0].id, b);
  EXPECT_EQ(q.neighbors(a)[1].id, f);
  EXPECT_THROW(q.AddArrows(a, a), std::invalid_argument);
  const VertexId g = q.AddVertex(1, VertexKind::kFrozen, 0);
  EXPECT_THROW(q.AddArrows(f, g), std::invalid_argument);
  q.AddArrows(b, a, 2);
  EXPECT_EQ(q.Entry(a, b), 0);
  EXPECT_TRUE(q.neighbors(b).empty());
}

TEST(LabeledQuiverTest, DotExport) {
  LabeledQuiver q(2, true);
  const VertexId a = q.AddVertex(0, VertexKind::kMutable, 0);
  const VertexId b = q.AddVertex(1, VertexKind::kMutable, 1);
  const VertexId f = q.AddVertex(0, VertexKind::kFrozen, 0);
  q.AddArrows(b, a, 2);
  q.AddArrows(a, f);
  EXPECT_EQ(ToDot(q),
            "digraph unfolding {\n"
            "  v0 [shape=ellipse, label=\"v0 (1)\"];\n"
            "  v1 [shape=ellipse, label=\"v1 (2)\"];\n"
            "  v2 [shape=box, label=\"1′\"];\n"
            "  v0 -> v2;\n"
            "  v1 -> v0 [label=2];\n"
            "}\n");
}

// Skew-symmetric matrix mutation, then frozen-frozen entries cleared.
std::vector<std::vector<Int>> MutateDense(std::vector<std::vector<Int>> e,
                                          const std::vector<bool>& frozen,
                                          std::size_t t) {
  const std::size_t n = e.size();
  std::vector<std::vector<Int>> out = e;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == t || j == t) {
        out[i][j] = -e[i][j];
      } else if (frozen[i] && frozen[j]) {
        out[i][j] = 0;
      } else {
        out[i][j] = e[i][j] + MutationTerm(e[i][t], e[t][j]);
      }
    }
  }
  return out;
}

TEST(LabeledQuiverTest, MutateAtMatchesMatrixMutation) {
  Draw draw(41);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(draw.Between(2, 7));
    LabeledQuiver q(1, true);
    std::vector<bool> frozen(n);
    for (std::size_t v = 0; v < n; ++v) {
      frozen[v] = v > 0 && draw.Chance(1, 3);
      q.AddVertex(0, frozen[v] ? VertexKind::kFrozen : VertexKind::kMutable, 0);
    }
    std::vector<std::vector<Int>> e(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (frozen[i] && frozen[j]) continue;
        const Int m = draw.Between(-2, 2);
        if (m > 0) q.AddArrows(static_cast<VertexId>(i),
                               static_cast<VertexId>(j), m);
        if (m < 0) q.AddArrows(static_cast<VertexId>(j),
                               static_cast<VertexId>(i), -m);
        // Arrows i -> j make Entry(j, i) positive.
        e[j][i] = m;
        e[i][j] = -m;
      }
    }
    for (int step = 0; step < 4; ++step) {
      std::size_t t;
      do {
        t = static_cast<std::size_t>(draw.Between(0, n - 1));
      } while (frozen[t]);
      q.MutateAt(static_cast<VertexId>(t));
      e = MutateDense(e, frozen, t);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          ASSERT_EQ(q.Entry(static_cast<VertexId>(i), static_cast<VertexId>(j)),
                    e[i][j])
              << "trial " << trial << " step " << step;
        }
      }
      // A finite complete quiver stays complete.
      for (std::size_t v = 0; v < n; ++v) {
        ASSERT_EQ(q.IsInterior(static_cast<VertexId>(v)), !frozen[v]);
      }
    }
  }
}

TEST(LabeledQuiverTest, MutateAtRejectsFrozen) {
  LabeledQuiver q(1, true);
  q.AddVertex(0, VertexKind::kMutable, 0);
  const VertexId f = q.AddVertex(0, VertexKind::kFrozen, 0);
  EXPECT_THROW(q.MutateAt(f), std::invalid_argument);
  EXPECT_THROW(q.MutateAt(7), std::invalid_argument);
  EXPECT_THROW(q.MutateOrbit(1), std::out_of_range);
}

TEST(HiddenLinkTest, InteriorAndRadius) {
  LabeledQuiver q(2, false);
  const VertexId a = q.AddVertex(0, VertexKind::kMutable, 0);
  const VertexId b = q.AddVertex(1, VertexKind::kMutable, 1);
  const VertexId c = q.AddVertex(0, VertexKind::kMutable, 2, false);
  EXPECT_EQ(q.interior_radius(), 1);
  EXPECT_TRUE(q.IsInterior(a));
  EXPECT_FALSE(q.IsKnown(c));
  q.AddHiddenNeighbors(b, 0, VertexKind::kMutable, -1);
  EXPECT_FALSE(q.IsInterior(b));
  EXPECT_TRUE(q.IsKnown(b));
  EXPECT_EQ(q.interior_radius(), 0);
  const auto links = q.Links(b);
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0].code, 0u);
  EXPECT_EQ(links[0].sign, -1);
  EXPECT_TRUE(q.has_interior());
  q.SetInterior(a, false);
  EXPECT_EQ(q.interior_radius(), -1);
  EXPECT_FALSE(q.has_interior());
  EXPECT_THROW(q.AddHiddenNeighbors(a, 0, VertexKind::kMutable, 1),
               std::invalid_argument);
  EXPECT_THROW(q.AddHiddenNeighbors(b, 0, VertexKind::kFrozen, 1),
               std::invalid_argument);
}

TEST(HiddenLinkTest, MutateAtPassesLinksAlongPaths) {
  // x -> t -> (hidden h labeled 0): after mutating t, x -> h appears.
  LabeledQuiver q(2, false);
  const VertexId t = q.AddVertex(1, VertexKind::kMutable, 0);
  const VertexId x = q.AddVertex(0, VertexKind::kMutable, 0);
  q.AddArrows(x, t);
  q.AddHiddenNeighbors(t, 0, VertexKind::kMutable, -1);
  q.MutateAt(t);
  EXPECT_EQ(q.Entry(t, x), -1);
  const auto tx = q.Links(t);
  ASSERT_EQ(tx.size(), 1u);
  EXPECT_EQ(tx[0].sign, 1);
  const auto xl = q.Links(x);
  ASSERT_EQ(xl.size(), 1u);
  EXPECT_EQ(xl[0].code, 0u);
  EXPECT_EQ(xl[0].sign, -1);
  EXPECT_EQ(xl[0].region, tx[0].region);
}

TEST(HiddenLinkTest, NoPathNoLink) {
  // t -> x and t -> h: mutating t creates no x-h entry.
  LabeledQuiver q(2, false);
  const VertexId t = q.AddVertex(1, VertexKind::kMutable, 0);
  const VertexId x = q.AddVertex(0, VertexKind::kMutable, 0);
  q.AddArrows(t, x);
  q.AddHiddenNeighbors(t, 0, VertexKind::kMutable, -1);
  q.MutateAt(t);
  EXPECT_TRUE(q.Links(x).empty());
  EXPECT_TRUE(q.IsInterior(x));
}

TEST(HiddenLinkTest, MutateOrbitOnHiddenNeighbors) {
  // x has a hidden neighbor labeled 1 (the orbit being mutated): the entry
  // flips and x may gain hidden neighbors of every other label.
  LabeledQuiver q(3, false);
  const VertexId x = q.AddVertex(0, VertexKind::kMutable, 0);
  q.AddHiddenNeighbors(x, 1, VertexKind::kMutable, 1);
  q.MutateOrbit(1);
  const auto links = q.Links(x);
  ASSERT_EQ(links.size(), 3u);
  EXPECT_EQ(links[0].code, 0u);
  EXPECT_EQ(links[0].sign, 1);
  EXPECT_EQ(links[1].code, 1u);
  EXPECT_EQ(links[1].sign, -1);
  EXPECT_EQ(links[2].code, 2u);
  EXPECT_EQ(links[2].sign, 1);
  EXPECT_TRUE(q.IsKnown(x));
}

TEST(HiddenLinkTest, OppositeSidesOfOneRegionAreDemoted) {
  // x -> t -> h with h hidden and labeled 1. Mutating t gives x -> h -> t,
  // both links in one region. Mutating the orbit of h then changes
  // Entry(x, t) by an amount that depends on how many such h exist.
  LabeledQuiver q(2, false);
  const VertexId t = q.AddVertex(0, VertexKind::kMutable, 0);
  const VertexId x = q.AddVertex(0, VertexKind::kMutable, 1);
  const VertexId y = q.AddVertex(1, VertexKind::kMutable, 1);
  q.AddArrows(x, t);
  q.AddHiddenNeighbors(t, 1, VertexKind::kMutable, -1);
  q.MutateAt(t);
  ASSERT_EQ(q.Links(x).size(), 1u);
  ASSERT_EQ(q.Links(t).size(), 1u);
  EXPECT_EQ(q.Links(x)[0].region, q.Links(t)[0].region);
  EXPECT_NE(q.Links(x)[0].sign, q.Links(t)[0].sign);
  q.MutateOrbit(1);
  EXPECT_FALSE(q.IsKnown(x));
  EXPECT_FALSE(q.IsKnown(t));
  // y is stored, isolated and labeled 1: it stays interior.
  EXPECT_TRUE(q.IsInterior(y));
}

TEST(HiddenLinkTest, LinksFollowNewArrows) {
  LabeledQuiver q(2, false);
  const VertexId t = q.AddVertex(0, VertexKind::kMutable, 0);
  const VertexId x = q.AddVertex(0, VertexKind::kMutable, 1);
  const VertexId z = q.AddVertex(1, VertexKind::kMutable, 1);
  q.AddArrows(x, z);
  q.AddArrows(z, t);
  q.AddHiddenNeighbors(z, 0, VertexKind::kMutable, 1);
  // x -> z -> t and h -> z for a hidden h. Mutating z adds x -> t and
  // h -> t, so t gains the link and x does not.
  q.MutateAt(z);
  EXPECT_EQ(q.Entry(t, x), 1);
  ASSERT_EQ(q.Links(t).size(), 1u);
  ASSERT_TRUE(q.Links(x).empty());
  EXPECT_TRUE(q.IsKnown(t));
}

}  // namespace
}  // namespace clusterfold
