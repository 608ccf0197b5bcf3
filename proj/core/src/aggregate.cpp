#include "fluxriver/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fluxriver {

std::int64_t unit_section_length(std::span<const std::int64_t> interval_lengths) {
  if (interval_lengths.empty()) throw Error(ErrorCode::EmptyList, "no interval lengths given");
  std::int64_t g = 0;
  for (auto len : interval_lengths) {
    if (len < 1) throw Error(ErrorCode::BadRange, "interval length " + std::to_string(len) + " < 1");
    g = std::gcd(g, len);
  }
  return g;
}

std::vector<MoodId> expand_windows(std::span<const MoodId> window_preds, std::size_t window_length,
                                   std::size_t n_sections, ExpansionPolicy policy) {
  if (window_length < 1) throw Error(ErrorCode::BadRange, "window length must be >= 1");
  if (window_length > n_sections) {
    throw Error(ErrorCode::LTooLarge, "window length " + std::to_string(window_length) + " exceeds " +
                                          std::to_string(n_sections) + " sections");
  }
  const std::size_t windows = n_sections - window_length + 1;
  if (window_preds.size() != windows) {
    throw Error(ErrorCode::WindowCountMismatch, "expected " + std::to_string(windows) + " windows, got " +
                                                    std::to_string(window_preds.size()));
  }

  std::vector<MoodId> out(n_sections);
  const std::size_t last_start = windows - 1;  // zero-based
  switch (policy) {
    case ExpansionPolicy::WindowStart:
      for (std::size_t j = 0; j < n_sections; ++j) out[j] = window_preds[std::min(j, last_start)];
      return out;
    case ExpansionPolicy::WindowCenter: {
      // Window s has center s + (L-1)/2; the nearest start is j - floor((L-1)/2).
      const std::size_t back = (window_length - 1) / 2;
      for (std::size_t j = 0; j < n_sections; ++j) {
        std::size_t s = j >= back ? j - back : 0;
        out[j] = window_preds[std::min(s, last_start)];
      }
      return out;
    }
    case ExpansionPolicy::MajorityOverlap:
      break;
  }

  std::size_t k = 0;
  for (auto m : window_preds) k = std::max(k, index(m) + 1);
  std::vector<std::size_t> counts(k);
  // Twice the distance between window and section centers keeps it integral.
  std::vector<std::size_t> nearest(k);
  for (std::size_t j = 0; j < n_sections; ++j) {
    std::fill(counts.begin(), counts.end(), 0);
    std::fill(nearest.begin(), nearest.end(), SIZE_MAX);
    const std::size_t first = j + 1 >= window_length ? j + 1 - window_length : 0;
    const std::size_t last = std::min(j, last_start);
    for (std::size_t s = first; s <= last; ++s) {
      const std::size_t c = index(window_preds[s]);
      ++counts[c];
      const std::size_t center2 = 2 * s + window_length - 1;
      const std::size_t dist2 = center2 > 2 * j ? center2 - 2 * j : 2 * j - center2;
      nearest[c] = std::min(nearest[c], dist2);
    }
    const std::size_t best_count = *std::max_element(counts.begin(), counts.end());
    std::size_t pick = SIZE_MAX;
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != best_count) continue;
      if (pick == SIZE_MAX || nearest[c] < nearest[pick]) pick = c;
    }
    out[j] = mood_id(pick);
  }
  return out;
}

std::vector<double> class_accuracy(const ModelMeta& meta, AccuracyBasis basis) {
  const auto& cm = meta.confusion;
  std::vector<double> alpha(cm.size(), 0.0);
  for (std::size_t c = 0; c < cm.size(); ++c) {
    const std::int64_t denom = basis == AccuracyBasis::PredictedClassPrecision ? cm.column_sum(c) : cm.row_sum(c);
    if (denom > 0) alpha[c] = static_cast<double>(cm.at(c, c)) / static_cast<double>(denom);
  }
  return alpha;
}

double macro_f1(const ConfusionMatrix& confusion) {
  const std::size_t k = confusion.size();
  if (k == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double tp = static_cast<double>(confusion.at(c, c));
    const auto col = confusion.column_sum(c);
    const auto row = confusion.row_sum(c);
    const double precision = col > 0 ? tp / static_cast<double>(col) : 0.0;
    const double recall = row > 0 ? tp / static_cast<double>(row) : 0.0;
    if (precision + recall > 0.0) sum += 2.0 * precision * recall / (precision + recall);
  }
  return sum / static_cast<double>(k);
}

namespace {

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

WeightTable build_weight_table(std::span<const ModelMeta> meta, const WeightingScheme& scheme) {
  scheme.validate();
  if (meta.empty()) throw Error(ErrorCode::EmptyList, "no model metadata");
  const std::size_t k = meta.front().confusion.size();
  WeightTable table{Grid<double>(meta.size(), k), Grid<double>(meta.size(), k)};
  for (std::size_t i = 0; i < meta.size(); ++i) {
    meta[i].validate(k);
    const auto alpha = class_accuracy(meta[i], scheme.basis);
    double model_weight = 1.0;
    switch (scheme.kind) {
      case WeightKind::OverallAccuracy: model_weight = meta[i].overall_accuracy; break;
      case WeightKind::OverallAccuracySquared: model_weight = ipow(meta[i].overall_accuracy, 2); break;
      case WeightKind::F1: model_weight = macro_f1(meta[i].confusion); break;
      default: break;
    }
    for (std::size_t c = 0; c < k; ++c) {
      table.alpha(i, c) = alpha[c];
      table.effective(i, c) =
          scheme.kind == WeightKind::ClassAccuracyPower ? ipow(alpha[c], scheme.power) : model_weight;
    }
  }
  return table;
}

VoteSeries aggregate_with_weights(const PredictionMatrix& pm, const Grid<double>& weights,
                                  const WeightingScheme& scheme) {
  const std::size_t m = pm.model_count();
  const std::size_t n = pm.step_count();
  if (weights.rows() != m) {
    throw Error(ErrorCode::DimensionMismatch, "weight table has " + std::to_string(weights.rows()) +
                                                  " rows for " + std::to_string(m) + " models");
  }
  const std::size_t k = weights.cols();
  for (double w : weights.data()) {
    if (!std::isfinite(w) || w < 0.0) throw Error(ErrorCode::InvalidArgument, "weights must be finite and >= 0");
  }

  Grid<double> values(k, n, 0.0);
  std::vector<double> totals(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t c = index(pm.at(i, t));
      if (c >= k) throw Error(ErrorCode::DimensionMismatch, "prediction mood outside weight table");
      values(c, t) += weights(i, c);
      totals[t] += weights(i, c);
    }
  }
  if (scheme.normalized) {
    for (std::size_t t = 0; t < n; ++t) {
      if (totals[t] == 0.0) {
        throw Error(ErrorCode::ZeroTotalStep, "step " + std::to_string(t + 1) + " has zero total weight");
      }
      for (std::size_t c = 0; c < k; ++c) values(c, t) /= totals[t];
      totals[t] = 1.0;
    }
  }
  return VoteSeries(std::move(values), std::move(totals), scheme);
}

VoteSeries aggregate_votes(const PredictionMatrix& pm, std::span<const ModelMeta> meta,
                           const WeightingScheme& scheme) {
  if (meta.size() != pm.model_count()) {
    throw Error(ErrorCode::DimensionMismatch, "metadata does not cover every model");
  }
  for (std::size_t i = 0; i < meta.size(); ++i) {
    if (meta[i].model_id != pm.models()[i]) {
      throw Error(ErrorCode::IdMismatch, "metadata row " + std::to_string(i + 1) + " is '" + meta[i].model_id +
                                             "' but prediction row is '" + pm.models()[i] + "'");
    }
  }
  return aggregate_with_weights(pm, build_weight_table(meta, scheme).effective, scheme);
}

bool votes_tied(double a, double b) noexcept {
  return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

MoodId decide_step(std::span<const double> votes, std::optional<MoodId> previous) {
  if (votes.empty()) throw Error(ErrorCode::InvalidArgument, "no votes");
  const double best = *std::max_element(votes.begin(), votes.end());
  if (previous && index(*previous) < votes.size() && votes_tied(votes[index(*previous)], best)) {
    return *previous;
  }
  for (std::size_t c = 0; c < votes.size(); ++c) {
    if (votes_tied(votes[c], best)) return mood_id(c);
  }
  return mood_id(0);
}

std::vector<MoodId> ensemble_decisions(const VoteSeries& vs) {
  std::vector<MoodId> out;
  out.reserve(vs.step_count());
  std::optional<MoodId> previous;
  for (std::size_t t = 0; t < vs.step_count(); ++t) {
    const auto votes = vs.step_votes(t);
    previous = decide_step(votes, previous);
    out.push_back(*previous);
  }
  return out;
}

MoodId ensemble_decision(const VoteSeries& vs, std::size_t t) {
  if (t < 1 || t > vs.step_count()) {
    throw Error(ErrorCode::BadRange, "step " + std::to_string(t) + " outside [1," +
                                         std::to_string(vs.step_count()) + "]");
  }
  std::optional<MoodId> previous;
  for (std::size_t s = 0; s < t; ++s) previous = decide_step(vs.step_votes(s), previous);
  return *previous;
}

}  // namespace fluxriver
