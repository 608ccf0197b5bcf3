#include "fluxriver/pixelmap.hpp"

#include <algorithm>
#include <numeric>

namespace fluxriver {

std::string_view to_string(SortKind kind) {
  switch (kind) {
    case SortKind::AccuracyDesc: return "accuracy";
    case SortKind::MethodThenInterval: return "method-interval";
    case SortKind::IntervalThenAccuracy: return "interval-accuracy";
  }
  return "unknown";
}

const std::vector<std::string>& default_method_order() {
  static const std::vector<std::string> order{"DT", "bagging", "adaboost", "GBDT", "XGBoost", "RF", "gcForest"};
  return order;
}

std::vector<std::size_t> sort_rows(std::span<const ModelMeta> meta, const SortScheme& scheme) {
  if (meta.empty()) throw Error(ErrorCode::EmptyList, "no models to sort");
  std::vector<std::size_t> order(meta.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  auto method_rank = [&](const std::string& method) {
    auto it = std::find(scheme.method_order.begin(), scheme.method_order.end(), method);
    return static_cast<std::size_t>(it - scheme.method_order.begin());
  };

  auto less = [&](std::size_t a, std::size_t b) {
    const ModelMeta& x = meta[a];
    const ModelMeta& y = meta[b];
    switch (scheme.kind) {
      case SortKind::AccuracyDesc:
        if (x.overall_accuracy != y.overall_accuracy) return x.overall_accuracy > y.overall_accuracy;
        return x.model_id < y.model_id;
      case SortKind::MethodThenInterval: {
        const auto rx = method_rank(x.method);
        const auto ry = method_rank(y.method);
        if (rx != ry) return rx < ry;
        if (x.method != y.method) return x.method < y.method;
        if (x.interval_length != y.interval_length) return x.interval_length < y.interval_length;
        return x.model_id < y.model_id;
      }
      case SortKind::IntervalThenAccuracy:
        if (x.interval_length != y.interval_length) return x.interval_length < y.interval_length;
        if (x.overall_accuracy != y.overall_accuracy) return x.overall_accuracy > y.overall_accuracy;
        return x.model_id < y.model_id;
    }
    return a < b;
  };
  std::stable_sort(order.begin(), order.end(), less);
  return order;
}

PixelPanel build_panel(const PredictionMatrix& pm, std::span<const ModelMeta> meta, const SortScheme& scheme,
                       const WeightTable* weights, int power) {
  const std::size_t m = pm.model_count();
  const std::size_t n = pm.step_count();
  if (meta.size() != m) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(meta.size()) + " metadata rows for " + std::to_string(m) + " models");
  }
  if (weights && weights->alpha.rows() != m) {
    throw Error(ErrorCode::DimensionMismatch, "weight table rows differ from model count");
  }
  if (power < 1) throw Error(ErrorCode::InvalidArgument, "power must be >= 1");

  auto raise = [power](double v) {
    double r = 1.0;
    for (int i = 0; i < power; ++i) r *= v;
    return r;
  };

  PixelPanel panel;
  panel.power = power;
  panel.row_order = sort_rows(meta, scheme);
  panel.prediction_grid = Grid<MoodId>(m, n);
  if (weights) panel.weight_grid = Grid<double>(m, n);
  panel.side_bar.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t src = panel.row_order[r];
    auto from = pm.cells().row(src);
    std::copy(from.begin(), from.end(), panel.prediction_grid.row(r).begin());
    panel.side_bar[r] = raise(meta[src].overall_accuracy);
    if (weights) {
      for (std::size_t t = 0; t < n; ++t) {
        const std::size_t c = index(pm.at(src, t));
        if (c >= weights->alpha.cols()) throw Error(ErrorCode::DimensionMismatch, "mood outside weight table");
        (*panel.weight_grid)(r, t) = raise(weights->alpha(src, c));
      }
    }
  }
  return panel;
}

}  // namespace fluxriver
