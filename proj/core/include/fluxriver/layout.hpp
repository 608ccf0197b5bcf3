#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fluxriver/types.hpp"

namespace fluxriver {

enum class Design { Stacked, ThemeRiver, DualFlux };
enum class Smoothing { Blocky, Smooth };

std::string_view to_string(Design design);
std::string_view to_string(Smoothing smoothing);

struct Extent {
  double low = 0.0;
  double high = 0.0;

  double height() const noexcept { return high - low; }
  bool operator==(const Extent&) const = default;
};

// Dual-flux layout of one step. Extents are indexed by mood id and measured
// in vote units relative to a baseline at y = 0.
struct StepLayout {
  std::size_t t = 0;  // 1-based step
  std::vector<MoodId> order;
  std::vector<Extent> extents;
  double threshold_upper = 0.0;
  double threshold_lower = 0.0;

  bool operator==(const StepLayout&) const = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

// A region between two piecewise-linear edges sampled at increasing x. The
// closed outline walks the upper edge left to right and the lower edge back.
struct Band {
  MoodId mood{};
  std::vector<double> x;
  std::vector<double> upper;
  std::vector<double> lower;

  double x_begin() const { return x.front(); }
  double x_end() const { return x.back(); }
  std::vector<Point> outline() const;
  // Requires x_begin() <= at <= x_end().
  Extent at(double at) const;

  bool operator==(const Band&) const = default;
};

struct Polyline {
  std::vector<Point> points;

  bool operator==(const Polyline&) const = default;
};

struct RiverGeometry {
  Design design = Design::Stacked;
  Smoothing smoothing = Smoothing::Smooth;
  std::size_t n_steps = 0;
  std::size_t mood_count = 0;
  // Sorted by mood id, then by x.
  std::vector<Band> polygons;
  // Dual-flux only: upper then lower threshold line.
  std::vector<Polyline> gridlines;
  // Dual-flux only: one entry per step.
  std::vector<StepLayout> steps;
  // Half-step x positions where the descending order changes (dual-flux).
  std::vector<double> seams;
  double x_min = 0.5;
  double x_max = 0.5;
  double y_min = 0.0;
  double y_max = 0.0;

  bool operator==(const RiverGeometry&) const = default;
};

// Mood ids by descending vote. Values tied under votes_tied() keep the
// relative order of `prev_order` when given, else canonical order.
std::vector<MoodId> assign_order(std::span<const double> votes,
                                 std::optional<std::span<const MoodId>> prev_order = std::nullopt);

// The first mood in `order` spans (0, v) above the baseline; the rest stack
// downward from 0 in order. Thresholds sit at +/- total / 2, where total
// defaults to the sum of `votes`.
StepLayout assign_positions(std::span<const double> votes, std::span<const MoodId> order,
                            std::optional<double> total = std::nullopt);

RiverGeometry layout_dualflux(const VoteSeries& vs, Smoothing smoothing);
RiverGeometry layout_stacked(const VoteSeries& vs);
RiverGeometry layout_themeriver(const VoteSeries& vs);

RiverGeometry layout_river(const VoteSeries& vs, Design design, Smoothing smoothing = Smoothing::Smooth);

// Per-mood extent of the geometry at x, taken from the first band of each mood
// that spans x. Moods with no band there are empty.
std::vector<std::optional<Extent>> slice(const RiverGeometry& geometry, double x);

}  // namespace fluxriver
