#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fluxriver/error.hpp"

namespace fluxriver {

// Dense row-major matrix.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<T>& data() const noexcept { return data_; }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Index into the active MoodSet. Ascending id is the canonical order.
enum class MoodId : std::uint16_t {};

constexpr std::size_t index(MoodId id) noexcept { return static_cast<std::size_t>(id); }
constexpr MoodId mood_id(std::size_t i) noexcept { return static_cast<MoodId>(i); }

struct Mood {
  MoodId id{};
  std::string label;
  std::string color;  // "#RRGGBB"

  bool operator==(const Mood&) const = default;
};

struct MoodSpec {
  std::string label;
  std::string color;
};

class MoodSet {
 public:
  // Ids are assigned 0..k-1 in the given order. Throws on k < 2, empty or
  // duplicate labels, and malformed colors.
  explicit MoodSet(const std::vector<MoodSpec>& specs);

  // delighted, angry, sad, calm with the pinned palette.
  static MoodSet default_set();

  // Colors come from the default palette when the label is one of the four
  // default moods and from a fixed fallback cycle otherwise.
  static MoodSet from_labels(const std::vector<std::string>& labels);

  std::size_t size() const noexcept { return moods_.size(); }
  const Mood& operator[](MoodId id) const { return moods_.at(index(id)); }
  const std::vector<Mood>& moods() const noexcept { return moods_; }

  std::optional<MoodId> find(std::string_view label) const;
  bool contains(MoodId id) const noexcept { return index(id) < moods_.size(); }

  bool operator==(const MoodSet&) const = default;

 private:
  std::vector<Mood> moods_;
};

bool is_hex_color(std::string_view s);

// k x k counts, rows = true class, columns = predicted class.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::size_t k) : counts_(k, k, 0) {}
  explicit ConfusionMatrix(Grid<std::int64_t> counts);

  std::size_t size() const noexcept { return counts_.rows(); }
  std::int64_t& at(std::size_t truth, std::size_t predicted) { return counts_(truth, predicted); }
  std::int64_t at(std::size_t truth, std::size_t predicted) const { return counts_(truth, predicted); }

  std::int64_t row_sum(std::size_t truth) const;
  std::int64_t column_sum(std::size_t predicted) const;
  std::int64_t total() const;
  std::int64_t trace() const;

  const Grid<std::int64_t>& counts() const noexcept { return counts_; }

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  Grid<std::int64_t> counts_;
};

struct ModelMeta {
  std::string model_id;
  std::string method;
  std::int64_t interval_length = 1;
  double overall_accuracy = 0.0;
  ConfusionMatrix confusion;

  // Throws BadRange / BadAccuracyRange / NegativeCount / DimensionMismatch.
  void validate(std::size_t k) const;

  bool operator==(const ModelMeta&) const = default;
};

// m models x n unit sections of mood ids.
class PredictionMatrix {
 public:
  PredictionMatrix() = default;
  // Throws on duplicate model ids, dimension mismatch, or ids >= mood_count.
  PredictionMatrix(std::vector<std::string> models, std::size_t n_steps, Grid<MoodId> cells,
                   std::size_t mood_count);

  std::size_t model_count() const noexcept { return models_.size(); }
  std::size_t step_count() const noexcept { return n_steps_; }
  const std::vector<std::string>& models() const noexcept { return models_; }
  const Grid<MoodId>& cells() const noexcept { return cells_; }

  // Zero-based model row and zero-based step column.
  MoodId at(std::size_t model, std::size_t step) const { return cells_(model, step); }

  std::optional<std::size_t> model_index(std::string_view model_id) const;

  bool operator==(const PredictionMatrix&) const = default;

 private:
  std::vector<std::string> models_;
  std::size_t n_steps_ = 0;
  Grid<MoodId> cells_;
};

enum class WeightKind {
  Unweighted,
  ClassAccuracyPower,
  OverallAccuracy,
  OverallAccuracySquared,
  F1,
};

enum class AccuracyBasis {
  PredictedClassPrecision,
  TrueClassRecall,
};

struct WeightingScheme {
  WeightKind kind = WeightKind::Unweighted;
  int power = 1;  // only meaningful for ClassAccuracyPower
  bool normalized = false;
  AccuracyBasis basis = AccuracyBasis::PredictedClassPrecision;

  static WeightingScheme unweighted() { return {}; }
  static WeightingScheme class_accuracy(int p, AccuracyBasis basis = AccuracyBasis::PredictedClassPrecision) {
    return {WeightKind::ClassAccuracyPower, p, false, basis};
  }
  WeightingScheme normalize() const {
    WeightingScheme s = *this;
    s.normalized = true;
    return s;
  }

  void validate() const;

  bool operator==(const WeightingScheme&) const = default;
};

std::string describe(const WeightingScheme& scheme);

// Per-mood vote series v[c][t] with per-step totals W[t].
class VoteSeries {
 public:
  // Rejects negative or non-finite values and totals that do not match the
  // column sums within conservation_tolerance().
  VoteSeries(Grid<double> values, std::vector<double> totals, WeightingScheme scheme);

  std::size_t mood_count() const noexcept { return values_.rows(); }
  std::size_t step_count() const noexcept { return values_.cols(); }

  // Zero-based step.
  double value(MoodId mood, std::size_t step) const { return values_(index(mood), step); }
  double total(std::size_t step) const { return totals_.at(step); }
  std::vector<double> step_votes(std::size_t step) const;

  const Grid<double>& values() const noexcept { return values_; }
  const std::vector<double>& totals() const noexcept { return totals_; }
  const WeightingScheme& scheme() const noexcept { return scheme_; }

  bool operator==(const VoteSeries&) const = default;

 private:
  Grid<double> values_;
  std::vector<double> totals_;
  WeightingScheme scheme_;
};

// 1e-9 absolute below unit magnitude, relative above it.
double conservation_tolerance(double total) noexcept;

}  // namespace fluxriver
