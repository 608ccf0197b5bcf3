#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fluxriver/ingest.hpp"
#include "fluxriver/types.hpp"

namespace fluxriver {

// Parameters of a synthetic ensemble. With `windowed`, each model predicts
// over stride-1 windows of its interval length (labelled by the true mood at
// the window center) and the window predictions are expanded back to unit
// sections, so long-interval models blur mood changes near the ends of the
// piece. Without it, models predict each unit section directly.
struct SynthSpec {
  std::uint64_t seed = 0;
  std::size_t m = 20;
  std::size_t n = 30;
  std::size_t k = 4;
  // 1-based steps where the true dominant mood switches; strictly increasing.
  std::vector<std::size_t> change_points;
  // Optional true mood per segment (change_points.size() + 1 entries). Random
  // distinct neighbours when empty.
  std::vector<std::size_t> segment_moods;
  // Each model shifts every change point by a uniform offset in
  // [-switch_jitter, +switch_jitter].
  std::size_t switch_jitter = 0;
  double noise = 0.2;  // largest probability of a model deviating from the true mood
  double accuracy_low = 0.5;
  double accuracy_high = 0.7;
  std::size_t max_interval = 30;
  std::vector<std::string> methods;  // defaults to the seven DT-family names
  std::int64_t samples_per_class = 100;
  bool windowed = true;

  // Throws InvalidArgument on inconsistent fields.
  void validate() const;
};

// m = 210 (7 methods x 30 intervals), n = 30, an angry-to-calm switch spread
// over steps 13-15.
SynthSpec appassionata_like_spec();

// Named presets; currently "appassionata-like".
std::optional<SynthSpec> synth_preset(std::string_view name);

// Pure function of the spec.
Bundle generate(const SynthSpec& spec);

// Test-only reference for aggregate_votes: a plain triple loop that derives
// its own weights from the metadata.
VoteSeries oracle_vote_count(const PredictionMatrix& pm, const std::vector<ModelMeta>& meta,
                             const WeightingScheme& scheme);

// mt19937_64 with draws computed from raw bits, so sequences do not depend
// on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }  // [0, 1)
  std::size_t below(std::size_t bound) { return static_cast<std::size_t>(uniform() * static_cast<double>(bound)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fluxriver
