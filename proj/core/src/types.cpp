#include "fluxriver/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

namespace fluxriver {

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 4> kDefaultPalette{{
    {"delighted", "#F2C945"},
    {"angry", "#D94A3D"},
    {"sad", "#4472C4"},
    {"calm", "#5BA85B"},
}};

constexpr std::array<std::string_view, 8> kFallbackColors{
    "#8E6BB8", "#E08A3C", "#3BA3A3", "#C2588F", "#7F7F7F", "#A3A33B", "#5A7A9C", "#B36B4E",
};

}  // namespace

bool is_hex_color(std::string_view s) {
  if (s.size() != 7 || s[0] != '#') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char ch) {
    return (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f') || (ch >= 'A' && ch <= 'F');
  });
}

MoodSet::MoodSet(const std::vector<MoodSpec>& specs) {
  if (specs.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a mood set needs at least 2 moods");
  }
  if (specs.size() > 0xFFFF) {
    throw Error(ErrorCode::InvalidArgument, "too many moods");
  }
  std::set<std::string_view> seen;
  moods_.reserve(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    if (spec.label.empty()) throw Error(ErrorCode::InvalidArgument, "empty mood label");
    if (!seen.insert(spec.label).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate mood label '" + spec.label + "'");
    }
    if (!is_hex_color(spec.color)) {
      throw Error(ErrorCode::InvalidArgument,
                  "mood '" + spec.label + "' has malformed color '" + spec.color + "'");
    }
    moods_.push_back(Mood{mood_id(i), spec.label, spec.color});
  }
}

MoodSet MoodSet::default_set() {
  std::vector<MoodSpec> specs;
  for (const auto& [label, color] : kDefaultPalette) specs.push_back({std::string(label), std::string(color)});
  return MoodSet(specs);
}

MoodSet MoodSet::from_labels(const std::vector<std::string>& labels) {
  std::vector<MoodSpec> specs;
  std::size_t fallback = 0;
  for (const auto& label : labels) {
    auto it = std::find_if(kDefaultPalette.begin(), kDefaultPalette.end(),
                           [&](const auto& entry) { return entry.first == label; });
    if (it != kDefaultPalette.end()) {
      specs.push_back({label, std::string(it->second)});
    } else {
      specs.push_back({label, std::string(kFallbackColors[fallback++ % kFallbackColors.size()])});
    }
  }
  return MoodSet(specs);
}

std::optional<MoodId> MoodSet::find(std::string_view label) const {
  for (const auto& mood : moods_) {
    if (mood.label == label) return mood.id;
  }
  return std::nullopt;
}

ConfusionMatrix::ConfusionMatrix(Grid<std::int64_t> counts) : counts_(std::move(counts)) {
  if (counts_.rows() != counts_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "confusion matrix must be square");
  }
}

std::int64_t ConfusionMatrix::row_sum(std::size_t truth) const {
  auto r = counts_.row(truth);
  return std::accumulate(r.begin(), r.end(), std::int64_t{0});
}

std::int64_t ConfusionMatrix::column_sum(std::size_t predicted) const {
  std::int64_t sum = 0;
  for (std::size_t r = 0; r < counts_.rows(); ++r) sum += counts_(r, predicted);
  return sum;
}

std::int64_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.data().begin(), counts_.data().end(), std::int64_t{0});
}

std::int64_t ConfusionMatrix::trace() const {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < counts_.rows(); ++i) sum += counts_(i, i);
  return sum;
}

void ModelMeta::validate(std::size_t k) const {
  if (model_id.empty()) throw Error(ErrorCode::InvalidArgument, "empty model_id");
  if (interval_length < 1) {
    throw Error(ErrorCode::BadRange,
                "model '" + model_id + "' interval_length " + std::to_string(interval_length) + " < 1");
  }
  if (!(overall_accuracy >= 0.0 && overall_accuracy <= 1.0)) {
    throw Error(ErrorCode::BadAccuracyRange,
                "model '" + model_id + "' overall_accuracy outside [0,1]");
  }
  if (confusion.size() != k) {
    throw Error(ErrorCode::DimensionMismatch,
                "model '" + model_id + "' confusion matrix is not " + std::to_string(k) + "x" +
                    std::to_string(k));
  }
  for (auto v : confusion.counts().data()) {
    if (v < 0) throw Error(ErrorCode::NegativeCount, "model '" + model_id + "' has a negative count");
  }
}

PredictionMatrix::PredictionMatrix(std::vector<std::string> models, std::size_t n_steps,
                                   Grid<MoodId> cells, std::size_t mood_count)
    : models_(std::move(models)), n_steps_(n_steps), cells_(std::move(cells)) {
  if (models_.empty()) throw Error(ErrorCode::InvalidArgument, "prediction matrix has no models");
  if (n_steps_ == 0) throw Error(ErrorCode::InvalidArgument, "prediction matrix has no steps");
  if (cells_.rows() != models_.size() || cells_.cols() != n_steps_) {
    throw Error(ErrorCode::DimensionMismatch, "cell grid does not match models x steps");
  }
  std::set<std::string_view> seen;
  for (const auto& id : models_) {
    if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateCell, "duplicate model '" + id + "'");
  }
  for (auto cell : cells_.data()) {
    if (index(cell) >= mood_count) {
      throw Error(ErrorCode::UnknownMood, "mood id " + std::to_string(index(cell)) + " out of range");
    }
  }
}

std::optional<std::size_t> PredictionMatrix::model_index(std::string_view model_id) const {
  for (std::size_t i = 0; i < models_.size(); ++i) {
    if (models_[i] == model_id) return i;
  }
  return std::nullopt;
}

void WeightingScheme::validate() const {
  if (kind == WeightKind::ClassAccuracyPower && (power < 1 || power > 3)) {
    throw Error(ErrorCode::InvalidArgument, "class-accuracy power must be 1, 2 or 3");
  }
}

std::string describe(const WeightingScheme& scheme) {
  std::string s;
  switch (scheme.kind) {
    case WeightKind::Unweighted: s = "unweighted"; break;
    case WeightKind::ClassAccuracyPower:
      s = "class-accuracy^" + std::to_string(scheme.power);
      s += scheme.basis == AccuracyBasis::PredictedClassPrecision ? " (precision)" : " (recall)";
      break;
    case WeightKind::OverallAccuracy: s = "overall-accuracy"; break;
    case WeightKind::OverallAccuracySquared: s = "overall-accuracy^2"; break;
    case WeightKind::F1: s = "macro-F1"; break;
  }
  if (scheme.normalized) s += ", normalized";
  return s;
}

double conservation_tolerance(double total) noexcept {
  return 1e-9 * std::max(1.0, std::abs(total));
}

VoteSeries::VoteSeries(Grid<double> values, std::vector<double> totals, WeightingScheme scheme)
    : values_(std::move(values)), totals_(std::move(totals)), scheme_(scheme) {
  if (values_.rows() < 2) throw Error(ErrorCode::InvalidArgument, "vote series needs at least 2 moods");
  if (values_.cols() == 0) throw Error(ErrorCode::InvalidArgument, "vote series has no steps");
  if (totals_.size() != values_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "totals length differs from step count");
  }
  for (std::size_t t = 0; t < values_.cols(); ++t) {
    double sum = 0.0;
    for (std::size_t c = 0; c < values_.rows(); ++c) {
      double v = values_(c, t);
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::InvalidArgument,
                    "vote value at mood " + std::to_string(c) + ", step " + std::to_string(t + 1) +
                        " is negative or non-finite");
      }
      sum += v;
    }
    if (!std::isfinite(totals_[t]) || std::abs(sum - totals_[t]) > conservation_tolerance(totals_[t])) {
      throw Error(ErrorCode::ConservationViolated,
                  "step " + std::to_string(t + 1) + ": votes sum to " + std::to_string(sum) +
                      " but total is " + std::to_string(totals_[t]));
    }
    if (scheme_.normalized && std::abs(totals_[t] - 1.0) > 1e-9) {
      throw Error(ErrorCode::ConservationViolated,
                  "normalized series has total " + std::to_string(totals_[t]) + " at step " +
                      std::to_string(t + 1));
    }
  }
}

std::vector<double> VoteSeries::step_votes(std::size_t step) const {
  std::vector<double> out(values_.rows());
  for (std::size_t c = 0; c < values_.rows(); ++c) out[c] = values_(c, step);
  return out;
}

}  // namespace fluxriver
