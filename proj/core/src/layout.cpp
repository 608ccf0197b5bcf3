#include "fluxriver/layout.hpp"

#include <algorithm>
#include <numeric>

#include "fluxriver/aggregate.hpp"

namespace fluxriver {

std::string_view to_string(Design design) {
  switch (design) {
    case Design::Stacked: return "stacked";
    case Design::ThemeRiver: return "themeriver";
    case Design::DualFlux: return "dualflux";
  }
  return "unknown";
}

std::string_view to_string(Smoothing smoothing) {
  return smoothing == Smoothing::Blocky ? "blocky" : "smooth";
}

std::vector<Point> Band::outline() const {
  std::vector<Point> pts;
  pts.reserve(2 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i) pts.push_back({x[i], upper[i]});
  for (std::size_t i = x.size(); i-- > 0;) pts.push_back({x[i], lower[i]});
  return pts;
}

Extent Band::at(double at) const {
  auto it = std::lower_bound(x.begin(), x.end(), at);
  if (it == x.end()) return {lower.back(), upper.back()};
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  if (*it == at || i == 0) return {lower[i], upper[i]};
  const double f = (at - x[i - 1]) / (x[i] - x[i - 1]);
  return {lower[i - 1] + f * (lower[i] - lower[i - 1]), upper[i - 1] + f * (upper[i] - upper[i - 1])};
}

std::vector<MoodId> assign_order(std::span<const double> votes, std::optional<std::span<const MoodId>> prev_order) {
  const std::size_t k = votes.size();
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "assign_order needs at least 2 moods");
  std::vector<std::size_t> rank(k);
  if (prev_order) {
    if (prev_order->size() != k) throw Error(ErrorCode::DimensionMismatch, "previous order has wrong length");
    for (std::size_t r = 0; r < k; ++r) rank[index((*prev_order)[r])] = r;
  } else {
    std::iota(rank.begin(), rank.end(), std::size_t{0});
  }

  std::vector<std::size_t> ids(k);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) { return votes[a] > votes[b]; });

  // Group near-equal neighbours behind the largest value of each group, then
  // order within the group by the tie-break rank.
  std::vector<MoodId> order;
  order.reserve(k);
  for (std::size_t g = 0; g < k;) {
    std::size_t e = g + 1;
    while (e < k && votes_tied(votes[ids[g]], votes[ids[e]])) ++e;
    std::sort(ids.begin() + static_cast<std::ptrdiff_t>(g), ids.begin() + static_cast<std::ptrdiff_t>(e),
              [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
    for (std::size_t i = g; i < e; ++i) order.push_back(mood_id(ids[i]));
    g = e;
  }
  return order;
}

StepLayout assign_positions(std::span<const double> votes, std::span<const MoodId> order, std::optional<double> total) {
  const std::size_t k = votes.size();
  if (order.size() != k) throw Error(ErrorCode::DimensionMismatch, "order length differs from vote count");
  StepLayout layout;
  layout.order.assign(order.begin(), order.end());
  layout.extents.assign(k, Extent{});

  constexpr double kBaseLine = 0.0;
  const MoodId main = order[0];
  layout.extents[index(main)] = {kBaseLine, kBaseLine + votes[index(main)]};
  double cursor = kBaseLine;
  for (std::size_t r = 1; r < k; ++r) {
    const std::size_t c = index(order[r]);
    layout.extents[c] = {cursor - votes[c], cursor};
    cursor -= votes[c];
  }
  const double sum = total.value_or(std::accumulate(votes.begin(), votes.end(), 0.0));
  layout.threshold_upper = sum / 2.0;
  layout.threshold_lower = -sum / 2.0;
  return layout;
}

namespace {

// One draw call of the dual-flux algorithm: a quad over [x0, x1] whose left
// and right edges carry the given extents.
struct Piece {
  double x0;
  double x1;
  Extent left;
  Extent right;
};

bool is_rectangle(const Piece& p) { return p.left == p.right; }

// Emits a polyline through piecewise segments, dropping repeated points and
// the middle of any three points on one horizontal line.
class PolylineBuilder {
 public:
  void segment(double x0, double y0, double x1, double y1) {
    push({x0, y0});
    push({x1, y1});
  }
  Polyline finish() { return Polyline{std::move(points_)}; }

 private:
  void push(Point p) {
    if (!points_.empty() && points_.back() == p) return;
    const std::size_t n = points_.size();
    if (n >= 2 && points_[n - 1].y == p.y && points_[n - 2].y == p.y) {
      points_.back() = p;
      return;
    }
    points_.push_back(p);
  }
  std::vector<Point> points_;
};

// Drops interior samples where both edges stay flat on either side.
void simplify_flat_runs(Band& band) {
  if (band.x.size() <= 2) return;
  Band out{band.mood, {band.x.front()}, {band.upper.front()}, {band.lower.front()}};
  for (std::size_t i = 1; i + 1 < band.x.size(); ++i) {
    const bool flat = band.upper[i] == out.upper.back() && band.upper[i + 1] == band.upper[i] &&
                      band.lower[i] == out.lower.back() && band.lower[i + 1] == band.lower[i];
    if (flat) continue;
    out.x.push_back(band.x[i]);
    out.upper.push_back(band.upper[i]);
    out.lower.push_back(band.lower[i]);
  }
  out.x.push_back(band.x.back());
  out.upper.push_back(band.upper.back());
  out.lower.push_back(band.lower.back());
  band = std::move(out);
}

void fit_y_range(RiverGeometry& g) {
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& band : g.polygons) {
    for (double v : band.lower) lo = std::min(lo, v);
    for (double v : band.upper) hi = std::max(hi, v);
  }
  for (const auto& line : g.gridlines) {
    for (const auto& p : line.points) {
      lo = std::min(lo, p.y);
      hi = std::max(hi, p.y);
    }
  }
  g.y_min = lo;
  g.y_max = hi;
}

// Shared by the stacked graph and ThemeRiver: canonical stacking on top of a
// per-step baseline, linearly interpolated between step centers and held
// flat over the outer half steps.
RiverGeometry layout_canonical_stack(const VoteSeries& vs, Design design, std::span<const double> baseline) {
  const std::size_t k = vs.mood_count();
  const std::size_t n = vs.step_count();
  RiverGeometry g;
  g.design = design;
  g.smoothing = Smoothing::Smooth;
  g.n_steps = n;
  g.mood_count = k;
  g.x_min = 0.5;
  g.x_max = static_cast<double>(n) + 0.5;

  std::vector<double> xs;
  xs.push_back(0.5);
  for (std::size_t t = 1; t <= n; ++t) xs.push_back(static_cast<double>(t));
  xs.push_back(static_cast<double>(n) + 0.5);

  std::vector<double> cursor(baseline.begin(), baseline.end());
  for (std::size_t c = 0; c < k; ++c) {
    Band band{mood_id(c), xs, {}, {}};
    std::vector<double> lows(n);
    std::vector<double> highs(n);
    for (std::size_t t = 0; t < n; ++t) {
      lows[t] = cursor[t];
      cursor[t] += vs.values()(c, t);
      highs[t] = cursor[t];
    }
    band.lower.push_back(lows.front());
    band.upper.push_back(highs.front());
    band.lower.insert(band.lower.end(), lows.begin(), lows.end());
    band.upper.insert(band.upper.end(), highs.begin(), highs.end());
    band.lower.push_back(lows.back());
    band.upper.push_back(highs.back());
    simplify_flat_runs(band);
    g.polygons.push_back(std::move(band));
  }
  fit_y_range(g);
  return g;
}

}  // namespace

RiverGeometry layout_stacked(const VoteSeries& vs) {
  const std::vector<double> zeros(vs.step_count(), 0.0);
  return layout_canonical_stack(vs, Design::Stacked, zeros);
}

RiverGeometry layout_themeriver(const VoteSeries& vs) {
  std::vector<double> baseline(vs.step_count());
  for (std::size_t t = 0; t < vs.step_count(); ++t) baseline[t] = -vs.total(t) / 2.0;
  return layout_canonical_stack(vs, Design::ThemeRiver, baseline);
}

RiverGeometry layout_dualflux(const VoteSeries& vs, Smoothing smoothing) {
  const std::size_t k = vs.mood_count();
  const std::size_t n = vs.step_count();
  RiverGeometry g;
  g.design = Design::DualFlux;
  g.smoothing = smoothing;
  g.n_steps = n;
  g.mood_count = k;
  g.x_min = 0.5;
  g.x_max = static_cast<double>(n) + 0.5;

  for (std::size_t t = 0; t < n; ++t) {
    const auto votes = vs.step_votes(t);
    std::optional<std::span<const MoodId>> prev;
    if (t > 0) prev = std::span<const MoodId>(g.steps.back().order);
    auto order = assign_order(votes, prev);
    StepLayout layout = assign_positions(votes, order, vs.total(t));
    layout.t = t + 1;
    if (t > 0 && layout.order != g.steps.back().order) g.seams.push_back(static_cast<double>(t) + 0.5);
    g.steps.push_back(std::move(layout));
  }

  // Pieces per mood, in x order. Threshold pieces use the same x breaks.
  std::vector<std::vector<Piece>> pieces(k);
  std::vector<Piece> threshold;
  auto emit = [&](double x0, double x1, const StepLayout& left, const StepLayout& right) {
    for (std::size_t c = 0; c < k; ++c) pieces[c].push_back({x0, x1, left.extents[c], right.extents[c]});
    threshold.push_back({x0, x1, {left.threshold_lower, left.threshold_upper},
                         {right.threshold_lower, right.threshold_upper}});
  };

  if (smoothing == Smoothing::Blocky) {
    for (std::size_t t = 0; t < n; ++t) {
      const double x = static_cast<double>(t + 1);
      emit(x - 0.5, x + 0.5, g.steps[t], g.steps[t]);
    }
  } else {
    emit(0.5, 1.0, g.steps[0], g.steps[0]);
    for (std::size_t t = 1; t < n; ++t) {
      const double x = static_cast<double>(t + 1);
      const auto& pre = g.steps[t - 1];
      const auto& cur = g.steps[t];
      if (pre.order == cur.order) {
        emit(x - 1.0, x, pre, cur);
      } else {
        emit(x - 1.0, x - 0.5, pre, pre);
        emit(x - 0.5, x, cur, cur);
      }
    }
    const double last = static_cast<double>(n);
    emit(last, last + 0.5, g.steps[n - 1], g.steps[n - 1]);
  }

  auto is_seam = [&](double x) { return std::binary_search(g.seams.begin(), g.seams.end(), x); };
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<Piece> merged;
    for (const auto& p : pieces[c]) {
      if (!merged.empty()) {
        auto& back = merged.back();
        if (back.x1 == p.x0 && !is_seam(p.x0) && is_rectangle(back) && is_rectangle(p) && back.right == p.left) {
          back.x1 = p.x1;
          continue;
        }
      }
      merged.push_back(p);
    }
    for (const auto& p : merged) {
      g.polygons.push_back(Band{mood_id(c), {p.x0, p.x1}, {p.left.high, p.right.high}, {p.left.low, p.right.low}});
    }
  }

  PolylineBuilder upper;
  PolylineBuilder lower;
  for (const auto& p : threshold) {
    upper.segment(p.x0, p.left.high, p.x1, p.right.high);
    lower.segment(p.x0, p.left.low, p.x1, p.right.low);
  }
  g.gridlines.push_back(upper.finish());
  g.gridlines.push_back(lower.finish());
  fit_y_range(g);
  return g;
}

RiverGeometry layout_river(const VoteSeries& vs, Design design, Smoothing smoothing) {
  switch (design) {
    case Design::Stacked: return layout_stacked(vs);
    case Design::ThemeRiver: return layout_themeriver(vs);
    case Design::DualFlux: return layout_dualflux(vs, smoothing);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown design");
}

std::vector<std::optional<Extent>> slice(const RiverGeometry& geometry, double x) {
  std::vector<std::optional<Extent>> out(geometry.mood_count);
  for (const auto& band : geometry.polygons) {
    auto& slot = out.at(index(band.mood));
    if (slot || x < band.x_begin() || x > band.x_end()) continue;
    slot = band.at(x);
  }
  return out;
}

}  // namespace fluxriver
