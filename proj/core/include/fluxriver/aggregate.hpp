#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fluxriver/types.hpp"

namespace fluxriver {

// Greatest common divisor of all interval lengths. Throws EmptyList on an
// empty input and BadRange on a non-positive length.
std::int64_t unit_section_length(std::span<const std::int64_t> interval_lengths);

enum class ExpansionPolicy {
  MajorityOverlap,  // plurality among covering windows
  WindowStart,      // window starting at the section, clamped
  WindowCenter,     // window whose center is nearest the section, later one on ties
};

// Translates stride-1 window predictions (one per window start, n - L + 1 of
// them) into one mood per unit section.
std::vector<MoodId> expand_windows(std::span<const MoodId> window_preds, std::size_t window_length,
                                   std::size_t n_sections,
                                   ExpansionPolicy policy = ExpansionPolicy::MajorityOverlap);

// Per-class accuracy from the confusion matrix; a zero denominator yields 0.
std::vector<double> class_accuracy(const ModelMeta& meta, AccuracyBasis basis);

// Mean over classes of per-class F1; classes with precision + recall = 0
// contribute 0.
double macro_f1(const ConfusionMatrix& confusion);

struct WeightTable {
  Grid<double> alpha;      // m x k class-accuracy before the power
  Grid<double> effective;  // m x k weight applied to a vote for class c
};

WeightTable build_weight_table(std::span<const ModelMeta> meta, const WeightingScheme& scheme);

// Eq. 1 style vote counting: v[c][t] sums the weight of every model that
// predicted c at t. `meta` must be in the row order of `pm`.
VoteSeries aggregate_votes(const PredictionMatrix& pm, std::span<const ModelMeta> meta,
                           const WeightingScheme& scheme);

// Same as aggregate_votes with an explicit m x k weight matrix. Weights must be
// non-negative and finite; they are not required to lie in [0,1].
VoteSeries aggregate_with_weights(const PredictionMatrix& pm, const Grid<double>& weights,
                                  const WeightingScheme& scheme);

// Relative tolerance under which two vote values count as tied.
inline constexpr double kTieTolerance = 1e-12;

bool votes_tied(double a, double b) noexcept;

// Argmax at a zero-based step. Ties go to `previous` when it is among the
// tied moods, otherwise to the lowest canonical id.
MoodId decide_step(std::span<const double> votes, std::optional<MoodId> previous);

// Decisions for every step, each using the one before as its tie-break.
std::vector<MoodId> ensemble_decisions(const VoteSeries& vs);

// Decision at 1-based step t.
MoodId ensemble_decision(const VoteSeries& vs, std::size_t t);

}  // namespace fluxriver
