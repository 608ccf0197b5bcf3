#include <gtest/gtest.h>

#include "fluxriver/aggregate.hpp"
#include "fluxriver/layout.hpp"
#include "support/test_support.hpp"

using namespace fluxriver;

namespace {

// Votes given step by step: columns[t] holds the k values of step t.
VoteSeries series(const std::vector<std::vector<double>>& columns) {
  const std::size_t k = columns.front().size();
  Grid<double> g(k, columns.size());
  std::vector<double> totals(columns.size(), 0.0);
  for (std::size_t t = 0; t < columns.size(); ++t) {
    for (std::size_t c = 0; c < k; ++c) {
      g(c, t) = columns[t][c];
      totals[t] += columns[t][c];
    }
  }
  return VoteSeries(std::move(g), std::move(totals), {});
}

std::vector<MoodId> ids(std::initializer_list<std::size_t> raw) {
  std::vector<MoodId> out;
  for (auto r : raw) out.push_back(mood_id(r));
  return out;
}

std::vector<const Band*> bands_of(const RiverGeometry& g, std::size_t mood) {
  std::vector<const Band*> out;
  for (const auto& b : g.polygons) {
    if (index(b.mood) == mood) out.push_back(&b);
  }
  return out;
}

}  // namespace

TEST(AssignOrder, DescendingWithCanonicalTies) {
  const std::vector<double> votes{3, 5, 1, 1};
  EXPECT_EQ(assign_order(votes), ids({1, 0, 2, 3}));
}

TEST(AssignOrder, TiesFollowPreviousOrder) {
  const std::vector<double> votes{1, 2, 2};
  const auto prev = ids({2, 0, 1});
  EXPECT_EQ(assign_order(votes, std::span<const MoodId>(prev)), ids({2, 1, 0}));
  EXPECT_EQ(assign_order(votes), ids({1, 2, 0}));
}

TEST(AssignOrder, IsAPermutation) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> votes(2 + rng.below(6));
    for (auto& v : votes) v = static_cast<double>(rng.below(4));
    auto order = assign_order(votes);
    std::vector<bool> seen(votes.size(), false);
    for (std::size_t r = 0; r < order.size(); ++r) {
      seen[index(order[r])] = true;
      if (r > 0) EXPECT_GE(votes[index(order[r - 1])], votes[index(order[r])]);
    }
    for (bool s : seen) EXPECT_TRUE(s);
  }
}

TEST(AssignPositions, MainAboveOthersBelow) {
  const std::vector<double> votes{3, 5, 1, 1};
  const auto layout = assign_positions(votes, assign_order(votes));
  EXPECT_EQ(layout.extents[1], (Extent{0, 5}));
  EXPECT_EQ(layout.extents[0], (Extent{-3, 0}));
  EXPECT_EQ(layout.extents[2], (Extent{-4, -3}));
  EXPECT_EQ(layout.extents[3], (Extent{-5, -4}));
  EXPECT_EQ(layout.threshold_upper, 5.0);
  EXPECT_EQ(layout.threshold_lower, -5.0);
}

TEST(AssignPositions, MainCrossesThresholdOnlyWithMajority) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> votes(2 + rng.below(5));
    double sum = 0;
    for (auto& v : votes) sum += (v = static_cast<double>(rng.below(20)));
    if (sum == 0) continue;
    const auto order = assign_order(votes);
    const auto layout = assign_positions(votes, order);
    const auto& main = layout.extents[index(order[0])];
    EXPECT_EQ(main.low, 0.0);
    EXPECT_EQ(main.high > layout.threshold_upper, votes[index(order[0])] > sum / 2);
    // Non-main moods tile [-(W - main), 0] contiguously.
    double cursor = 0.0;
    for (std::size_t r = 1; r < order.size(); ++r) {
      const auto& e = layout.extents[index(order[r])];
      EXPECT_EQ(e.high, cursor);
      EXPECT_EQ(e.height(), votes[index(order[r])]);
      cursor = e.low;
    }
    EXPECT_NEAR(main.high - cursor, sum, 1e-12);
  }
}

TEST(AssignPositions, UnweightedFullEnsembleThresholds) {
  const auto b = test::appassionata_fixture();
  const auto vs = aggregate_votes(b.predictions, b.meta, WeightingScheme::unweighted());
  const auto g = layout_dualflux(vs, Smoothing::Smooth);
  for (const auto& s : g.steps) {
    EXPECT_EQ(s.threshold_upper, 105.0);
    EXPECT_EQ(s.threshold_lower, -105.0);
  }
}

TEST(LayoutDualflux, SameOrderGivesTrapezoid) {
  const auto vs = series({{4, 2}, {6, 1}});
  const auto g = layout_dualflux(vs, Smoothing::Smooth);
  EXPECT_TRUE(g.seams.empty());
  const auto mood0 = bands_of(g, 0);
  ASSERT_EQ(mood0.size(), 3u);
  EXPECT_EQ(mood0[1]->x, (std::vector<double>{1, 2}));
  EXPECT_EQ(mood0[1]->upper, (std::vector<double>{4, 6}));
  EXPECT_EQ(mood0[1]->lower, (std::vector<double>{0, 0}));
  const auto mood1 = bands_of(g, 1);
  EXPECT_EQ(mood1[1]->upper, (std::vector<double>{0, 0}));
  EXPECT_EQ(mood1[1]->lower, (std::vector<double>{-2, -1}));
  // Mid-piece interpolation.
  const auto mid = slice(g, 1.5);
  EXPECT_EQ(*mid[0], (Extent{0, 5}));
  EXPECT_EQ(*mid[1], (Extent{-1.5, 0}));
}

TEST(LayoutDualflux, OrderSwitchMakesSeam) {
  const auto vs = series({{4, 2}, {1, 5}});
  const auto g = layout_dualflux(vs, Smoothing::Smooth);
  ASSERT_EQ(g.seams, (std::vector<double>{1.5}));
  const auto left = slice(g, 1.25);
  const auto right = slice(g, 1.75);
  EXPECT_EQ(*left[0], (Extent{0, 4}));
  EXPECT_EQ(*left[1], (Extent{-2, 0}));
  EXPECT_EQ(*right[0], (Extent{-1, 0}));
  EXPECT_EQ(*right[1], (Extent{0, 5}));
  // No band crosses the seam.
  for (const auto& b : g.polygons) EXPECT_FALSE(b.x_begin() < 1.5 && b.x_end() > 1.5);
}

TEST(LayoutDualflux, ConstantInputIsIdenticalAcrossModes) {
  const auto vs = series({{4, 2, 1}, {4, 2, 1}, {4, 2, 1}});
  const auto smooth = layout_dualflux(vs, Smoothing::Smooth);
  const auto blocky = layout_dualflux(vs, Smoothing::Blocky);
  EXPECT_EQ(smooth.polygons.size(), 3u);
  EXPECT_EQ(smooth.polygons, blocky.polygons);
  EXPECT_EQ(smooth.gridlines, blocky.gridlines);
  EXPECT_EQ(smooth.polygons[0].x, (std::vector<double>{0.5, 3.5}));
}

TEST(LayoutDualflux, IntegerSlicesMatchBlockyAndSteps) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto b = test::random_bundle(seed, 30, 25);
    const auto vs = aggregate_votes(b.predictions, b.meta, WeightingScheme::class_accuracy(2));
    const auto smooth = layout_dualflux(vs, Smoothing::Smooth);
    const auto blocky = layout_dualflux(vs, Smoothing::Blocky);
    EXPECT_EQ(smooth.steps, blocky.steps);
    EXPECT_EQ(smooth.seams, blocky.seams);
    for (std::size_t t = 1; t <= vs.step_count(); ++t) {
      const auto a = slice(smooth, static_cast<double>(t));
      const auto c = slice(blocky, static_cast<double>(t));
      for (std::size_t m = 0; m < vs.mood_count(); ++m) {
        ASSERT_TRUE(a[m] && c[m]);
        EXPECT_EQ(*a[m], *c[m]) << "seed " << seed << " t " << t;
        EXPECT_EQ(*a[m], smooth.steps[t - 1].extents[m]);
      }
    }
  }
}

TEST(LayoutDualflux, GridlinesTrackHalfTotals) {
  const auto vs = series({{4, 2}, {6, 4}, {1, 1}});
  const auto g = layout_dualflux(vs, Smoothing::Blocky);
  ASSERT_EQ(g.gridlines.size(), 2u);
  const auto& upper = g.gridlines[0].points;
  EXPECT_EQ(upper.front(), (Point{0.5, 3}));
  EXPECT_EQ(upper.back(), (Point{3.5, 1}));
  EXPECT_EQ(upper, (std::vector<Point>{{0.5, 3}, {1.5, 3}, {1.5, 5}, {2.5, 5}, {2.5, 1}, {3.5, 1}}));
  EXPECT_EQ(g.gridlines[1].points[2], (Point{1.5, -5}));
}

TEST(LayoutStacked, PrefixSums) {
  const auto vs = series({{1, 2, 3}, {3, 0, 1}});
  const auto g = layout_stacked(vs);
  ASSERT_EQ(g.polygons.size(), 3u);
  for (std::size_t t = 1; t <= 2; ++t) {
    const auto s = slice(g, static_cast<double>(t));
    double cursor = 0;
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_EQ(s[c]->low, cursor);
      cursor += vs.values()(c, t - 1);
      EXPECT_EQ(s[c]->high, cursor);
    }
  }
  EXPECT_EQ(g.x_min, 0.5);
  EXPECT_EQ(g.x_max, 2.5);
  EXPECT_EQ(*slice(g, 0.5)[2], (Extent{3, 6}));
}

TEST(LayoutThemeRiver, StackedShiftedByHalfTotal) {
  const auto b = test::random_bundle(8, 40, 30);
  const auto vs = aggregate_votes(b.predictions, b.meta, WeightingScheme::class_accuracy(1));
  const auto stacked = layout_stacked(vs);
  const auto river = layout_themeriver(vs);
  for (std::size_t t = 1; t <= vs.step_count(); ++t) {
    const auto a = slice(stacked, static_cast<double>(t));
    const auto c = slice(river, static_cast<double>(t));
    const double shift = vs.total(t - 1) / 2.0;
    for (std::size_t m = 0; m < vs.mood_count(); ++m) {
      EXPECT_NEAR(c[m]->low, a[m]->low - shift, 1e-12);
      EXPECT_NEAR(c[m]->high, a[m]->high - shift, 1e-12);
    }
  }
}

TEST(LayoutRiver, YRangeCoversEverything) {
  const auto b = test::appassionata_fixture();
  const auto vs = aggregate_votes(b.predictions, b.meta, WeightingScheme::unweighted());
  for (auto design : {Design::Stacked, Design::ThemeRiver, Design::DualFlux}) {
    const auto g = layout_river(vs, design);
    for (const auto& band : g.polygons) {
      for (double y : band.upper) EXPECT_LE(y, g.y_max);
      for (double y : band.lower) EXPECT_GE(y, g.y_min);
      EXPECT_GE(band.x_begin(), g.x_min);
      EXPECT_LE(band.x_end(), g.x_max);
    }
  }
}

TEST(Band, OutlineWalksUpperThenLower) {
  const Band band{mood_id(0), {0, 1}, {2, 3}, {0, -1}};
  EXPECT_EQ(band.outline(), (std::vector<Point>{{0, 2}, {1, 3}, {1, -1}, {0, 0}}));
}
