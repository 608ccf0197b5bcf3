#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fluxriver/aggregate.hpp"
#include "fluxriver/types.hpp"

namespace fluxriver {

enum class SortKind {
  AccuracyDesc,          // descending overall accuracy, ties by model_id
  MethodThenInterval,    // declared method order, then ascending interval
  IntervalThenAccuracy,  // ascending interval, then descending accuracy, ties by model_id
};

std::string_view to_string(SortKind kind);

// Listing order of the seven decision-tree family methods.
const std::vector<std::string>& default_method_order();

struct SortScheme {
  SortKind kind = SortKind::AccuracyDesc;
  // Methods absent from this list sort after it, by name.
  std::vector<std::string> method_order = default_method_order();
};

// row_order[r] is the index into `meta` shown at panel row r.
std::vector<std::size_t> sort_rows(std::span<const ModelMeta> meta, const SortScheme& scheme);

struct PixelPanel {
  std::vector<std::size_t> row_order;
  Grid<MoodId> prediction_grid;               // rows already permuted
  std::optional<Grid<double>> weight_grid;    // alpha^p of each cell's predicted class
  std::vector<double> side_bar;               // overall accuracy^p, permuted
  int power = 1;

  std::size_t rows() const noexcept { return prediction_grid.rows(); }
  std::size_t cols() const noexcept { return prediction_grid.cols(); }
};

// `meta` must follow the row order of `pm`. When `weights` is given its alpha
// table feeds weight_grid.
PixelPanel build_panel(const PredictionMatrix& pm, std::span<const ModelMeta> meta, const SortScheme& scheme,
                       const WeightTable* weights = nullptr, int power = 1);

}  // namespace fluxriver
