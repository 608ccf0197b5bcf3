#include "fluxriver/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fluxriver/aggregate.hpp"
#include "fluxriver/pixelmap.hpp"

namespace fluxriver {

void SynthSpec::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (m < 1) fail("m must be >= 1");
  if (n < 1) fail("n must be >= 1");
  if (k < 2) fail("k must be >= 2");
  if (!(noise >= 0.0 && noise <= 1.0)) fail("noise must lie in [0,1]");
  if (!(accuracy_low >= 0.0 && accuracy_high <= 1.0 && accuracy_low <= accuracy_high)) {
    fail("accuracy spread must satisfy 0 <= low <= high <= 1");
  }
  if (max_interval < 1) fail("max_interval must be >= 1");
  if (samples_per_class < 1) fail("samples_per_class must be >= 1");
  for (std::size_t i = 0; i < change_points.size(); ++i) {
    if (change_points[i] < 1 || change_points[i] > n) fail("change points must lie in [1,n]");
    if (i > 0 && change_points[i] <= change_points[i - 1]) fail("change points must be strictly increasing");
  }
  if (!segment_moods.empty()) {
    if (segment_moods.size() != change_points.size() + 1) fail("need one segment mood per segment");
    for (auto mood : segment_moods) {
      if (mood >= k) fail("segment mood out of range");
    }
  }
}

SynthSpec appassionata_like_spec() {
  SynthSpec spec;
  spec.seed = 57;
  spec.m = 210;
  spec.n = 30;
  spec.k = 4;
  spec.change_points = {14};
  spec.segment_moods = {1, 3};  // angry, then calm
  spec.switch_jitter = 1;
  spec.noise = 0.45;
  spec.accuracy_low = 0.5;
  spec.accuracy_high = 0.7;
  spec.max_interval = 30;
  return spec;
}

std::optional<SynthSpec> synth_preset(std::string_view name) {
  if (name == "appassionata-like") return appassionata_like_spec();
  return std::nullopt;
}

namespace {

MoodSet synth_moods(std::size_t k) {
  const auto defaults = MoodSet::default_set();
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < k; ++c) {
    labels.push_back(c < defaults.size() ? defaults[mood_id(c)].label : "mood" + std::to_string(c + 1));
  }
  return MoodSet::from_labels(labels);
}

std::size_t other_mood(Rng& rng, std::size_t mood, std::size_t k) { return (mood + 1 + rng.below(k - 1)) % k; }

}  // namespace

Bundle generate(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const std::size_t k = spec.k;
  const std::size_t n = spec.n;
  MoodSet moods = synth_moods(k);
  const auto& methods = spec.methods.empty() ? default_method_order() : spec.methods;
  const std::size_t intervals = std::min(spec.max_interval, n);

  std::vector<std::size_t> segments = spec.segment_moods;
  if (segments.empty()) {
    segments.push_back(rng.below(k));
    for (std::size_t s = 0; s < spec.change_points.size(); ++s) segments.push_back(other_mood(rng, segments.back(), k));
  }

  std::vector<ModelMeta> meta;
  std::vector<std::string> ids;
  Grid<MoodId> cells(spec.m, n);
  for (std::size_t i = 0; i < spec.m; ++i) {
    const std::size_t window = 1 + i % intervals;
    const std::size_t block = i / intervals;
    const std::string& method = methods[block % methods.size()];
    char buf[64];
    std::snprintf(buf, sizeof buf, "_L%02zu", window);
    std::string id = method + buf;
    if (block >= methods.size()) id += "_r" + std::to_string(block / methods.size());

    // Held-out errors: the total follows an accuracy drawn from the spread,
    // split unevenly across classes. Prediction noise scales with each class
    // error rate and is capped by spec.noise.
    const std::int64_t per_class = spec.samples_per_class;
    const auto samples = static_cast<double>(per_class) * static_cast<double>(k);
    const double target = spec.accuracy_low + rng.uniform() * (spec.accuracy_high - spec.accuracy_low);
    const auto fewest = static_cast<std::int64_t>(std::ceil(samples * (1.0 - spec.accuracy_high) - 1e-9));
    const auto most = static_cast<std::int64_t>(std::floor(samples * (1.0 - spec.accuracy_low) + 1e-9));
    const std::int64_t total_errors = std::clamp<std::int64_t>(std::llround(samples * (1.0 - target)), fewest, most);
    std::vector<double> shape(k);
    double shape_sum = 0.0;
    for (auto& w : shape) shape_sum += (w = 0.5 + rng.uniform());
    std::vector<std::int64_t> errors(k);
    std::int64_t assigned = 0;
    for (std::size_t c = 0; c < k; ++c) {
      errors[c] = std::min<std::int64_t>(
          per_class, static_cast<std::int64_t>(std::floor(static_cast<double>(total_errors) * shape[c] / shape_sum)));
      assigned += errors[c];
    }
    for (std::size_t c = 0; assigned < total_errors; c = (c + 1) % k) {
      if (errors[c] < per_class) {
        ++errors[c];
        ++assigned;
      }
    }
    const double worst_error = 1.0 - spec.accuracy_low;
    std::vector<double> class_noise(k);
    for (std::size_t c = 0; c < k; ++c) {
      const double rate = static_cast<double>(errors[c]) / static_cast<double>(per_class);
      class_noise[c] = worst_error > 0.0 ? std::min(spec.noise, spec.noise * rate / worst_error) : 0.0;
    }

    // This model's view of the true mood per unit section.
    std::vector<std::size_t> truth(n);
    std::vector<std::size_t> switches;
    for (auto cp : spec.change_points) {
      std::int64_t shifted = static_cast<std::int64_t>(cp);
      if (spec.switch_jitter > 0) {
        shifted += static_cast<std::int64_t>(rng.below(2 * spec.switch_jitter + 1)) -
                   static_cast<std::int64_t>(spec.switch_jitter);
      }
      shifted = std::clamp<std::int64_t>(shifted, 1, static_cast<std::int64_t>(n));
      if (!switches.empty()) shifted = std::max<std::int64_t>(shifted, static_cast<std::int64_t>(switches.back()));
      switches.push_back(static_cast<std::size_t>(shifted));
    }
    for (std::size_t t = 0; t < n; ++t) {
      std::size_t seg = 0;
      while (seg < switches.size() && t + 1 >= switches[seg]) ++seg;
      truth[t] = segments[seg];
    }

    const std::size_t span = spec.windowed ? window : 1;
    std::vector<MoodId> window_preds(n - span + 1);
    for (std::size_t s = 0; s < window_preds.size(); ++s) {
      const std::size_t c = truth[s + (span - 1) / 2];
      window_preds[s] = mood_id(rng.uniform() < class_noise[c] ? other_mood(rng, c, k) : c);
    }
    const auto row = expand_windows(window_preds, span, n, ExpansionPolicy::MajorityOverlap);
    std::copy(row.begin(), row.end(), cells.row(i).begin());

    ConfusionMatrix cm(k);
    for (std::size_t c = 0; c < k; ++c) {
      cm.at(c, c) = per_class - errors[c];
      for (std::int64_t e = 0; e < errors[c]; ++e) ++cm.at(c, other_mood(rng, c, k));
    }
    ModelMeta mm;
    mm.model_id = id;
    mm.method = method;
    mm.interval_length = static_cast<std::int64_t>(window);
    mm.overall_accuracy = static_cast<double>(cm.trace()) / static_cast<double>(cm.total());
    mm.confusion = std::move(cm);
    ids.push_back(id);
    meta.push_back(std::move(mm));
  }
  PredictionMatrix pm(std::move(ids), n, std::move(cells), k);
  return make_bundle(std::move(moods), std::move(meta), pm);
}

VoteSeries oracle_vote_count(const PredictionMatrix& pm, const std::vector<ModelMeta>& meta,
                             const WeightingScheme& scheme) {
  const std::size_t m = pm.model_count();
  const std::size_t n = pm.step_count();
  const std::size_t k = meta.at(0).confusion.size();

  // Weight of model i voting for class c, derived straight from the counts.
  auto weight = [&](std::size_t i, std::size_t c) -> double {
    const auto& cm = meta[i].confusion.counts();
    auto precision = [&](std::size_t cls) {
      double col = 0;
      for (std::size_t r = 0; r < k; ++r) col += static_cast<double>(cm(r, cls));
      return col == 0 ? 0.0 : static_cast<double>(cm(cls, cls)) / col;
    };
    auto recall = [&](std::size_t cls) {
      double row = 0;
      for (std::size_t p = 0; p < k; ++p) row += static_cast<double>(cm(cls, p));
      return row == 0 ? 0.0 : static_cast<double>(cm(cls, cls)) / row;
    };
    switch (scheme.kind) {
      case WeightKind::Unweighted: return 1.0;
      case WeightKind::ClassAccuracyPower: {
        const double a = scheme.basis == AccuracyBasis::PredictedClassPrecision ? precision(c) : recall(c);
        return std::pow(a, scheme.power);
      }
      case WeightKind::OverallAccuracy: return meta[i].overall_accuracy;
      case WeightKind::OverallAccuracySquared: return meta[i].overall_accuracy * meta[i].overall_accuracy;
      case WeightKind::F1: {
        double f = 0;
        for (std::size_t cls = 0; cls < k; ++cls) {
          const double p = precision(cls);
          const double r = recall(cls);
          f += (p + r) == 0 ? 0.0 : 2 * p * r / (p + r);
        }
        return f / static_cast<double>(k);
      }
    }
    return 0.0;
  };

  Grid<double> v(k, n, 0.0);
  std::vector<double> totals(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t i = 0; i < m; ++i) {
        if (static_cast<std::size_t>(pm.cells()(i, t)) == c) v(c, t) += weight(i, c);
      }
      totals[t] += v(c, t);
    }
    if (scheme.normalized) {
      for (std::size_t c = 0; c < k; ++c) v(c, t) /= totals[t];
      totals[t] = 1.0;
    }
  }
  return VoteSeries(std::move(v), std::move(totals), scheme);
}

}  // namespace fluxriver
