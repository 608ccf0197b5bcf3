// Acceptance suite: prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fluxriver/aggregate.hpp"
#include "fluxriver/layout.hpp"
#include "fluxriver/render.hpp"
#include "support/test_support.hpp"

using namespace fluxriver;

namespace {

constexpr std::size_t kBundles = 500;
constexpr std::size_t kMaxModels = 50;
constexpr std::size_t kMaxSteps = 60;
constexpr double kConservationTolerance = 1e-9;
constexpr double kConservationSeconds = 10.0;
constexpr double kOracleTolerance = 1e-12;
constexpr double kFigureSeconds = 3.0;
// Two units of the 3-decimal coordinate grid the renderer writes.
constexpr double kAlignTolerancePx = 2e-3;
const double kScales[] = {0.1, 3.0, 1e6};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects the first few failure messages of one criterion.
class Verdict {
 public:
  void fail(const std::string& message) {
    if (failures_++ < 5) messages_.push_back(message);
  }
  void check(bool ok, const std::function<std::string()>& message) {
    if (!ok) fail(message());
  }
  bool passed() const { return failures_ == 0; }
  std::size_t failures() const { return failures_; }
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

const std::vector<Bundle>& random_bundles() {
  static const std::vector<Bundle> bundles = [] {
    std::vector<Bundle> out;
    out.reserve(kBundles);
    for (std::size_t s = 1; s <= kBundles; ++s) out.push_back(test::random_bundle(s, kMaxModels, kMaxSteps));
    return out;
  }();
  return bundles;
}

std::string where(std::size_t bundle, const WeightingScheme& scheme) {
  return "bundle " + std::to_string(bundle + 1) + ", " + describe(scheme);
}

// 1. Per-step vote totals equal the summed weights actually applied.
Verdict conservation(std::string& detail) {
  Verdict v;
  const auto start = Clock::now();
  std::size_t series = 0;
  std::size_t zero_steps = 0;
  const auto& bundles = random_bundles();
  for (std::size_t b = 0; b < bundles.size(); ++b) {
    const auto& bundle = bundles[b];
    const auto& pm = bundle.predictions;
    for (const auto& scheme : test::all_schemes()) {
      const auto table = build_weight_table(bundle.meta, scheme);
      std::vector<double> applied(pm.step_count(), 0.0);
      for (std::size_t i = 0; i < pm.model_count(); ++i) {
        for (std::size_t t = 0; t < pm.step_count(); ++t) applied[t] += table.effective(i, index(pm.at(i, t)));
      }
      std::optional<VoteSeries> vs;
      try {
        vs = aggregate_votes(pm, bundle.meta, scheme);
      } catch (const Error& e) {
        const bool legit = e.code() == ErrorCode::ZeroTotalStep && scheme.normalized &&
                           std::any_of(applied.begin(), applied.end(), [](double w) { return w == 0.0; });
        v.check(legit, [&] { return where(b, scheme) + ": unexpected " + e.what(); });
        ++zero_steps;
        continue;
      }
      ++series;
      for (std::size_t t = 0; t < pm.step_count(); ++t) {
        double sum = 0.0;
        for (std::size_t c = 0; c < vs->mood_count(); ++c) sum += vs->values()(c, t);
        const double expect = scheme.normalized ? 1.0 : applied[t];
        v.check(std::abs(sum - expect) <= kConservationTolerance * std::max(1.0, std::abs(expect)), [&] {
          return where(b, scheme) + " t=" + std::to_string(t + 1) + ": sum " + format_real(sum) + " vs " +
                 format_real(expect);
        });
        v.check(std::abs(vs->total(t) - expect) <= kConservationTolerance * std::max(1.0, std::abs(expect)),
                [&] { return where(b, scheme) + ": stored total differs"; });
      }
    }
  }
  const double elapsed = seconds_since(start);
  v.check(elapsed < kConservationSeconds, [&] { return "took " + std::to_string(elapsed) + " s"; });
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu series over %zu bundles, %zu normalized series rejected for a zero-weight step, %.2f s",
                series, bundles.size(), zero_steps, elapsed);
  detail = buf;
  return v;
}

// 2. Library aggregation equals the brute-force reference.
Verdict oracle_equivalence(std::string& detail) {
  Verdict v;
  std::size_t cells = 0;
  double worst = 0.0;
  const auto& bundles = random_bundles();
  for (std::size_t b = 0; b < bundles.size(); ++b) {
    const auto& bundle = bundles[b];
    for (const auto& scheme : test::all_schemes()) {
      std::optional<VoteSeries> lib;
      std::optional<VoteSeries> ref;
      try {
        lib = aggregate_votes(bundle.predictions, bundle.meta, scheme);
      } catch (const Error&) {
      }
      try {
        ref = oracle_vote_count(bundle.predictions, bundle.meta, scheme);
      } catch (const Error&) {
      }
      if (!lib || !ref) {
        v.check(!lib && !ref, [&] { return where(b, scheme) + ": only one side rejected the input"; });
        continue;
      }
      const bool exact = scheme.kind == WeightKind::Unweighted && !scheme.normalized;
      for (std::size_t c = 0; c < lib->mood_count(); ++c) {
        for (std::size_t t = 0; t < lib->step_count(); ++t) {
          ++cells;
          const double diff = std::abs(lib->values()(c, t) - ref->values()(c, t));
          worst = std::max(worst, diff);
          v.check(exact ? diff == 0.0 : diff <= kOracleTolerance, [&] {
            return where(b, scheme) + " at (c=" + std::to_string(c) + ", t=" + std::to_string(t + 1) +
                   "): " + format_real(lib->values()(c, t)) + " vs " + format_real(ref->values()(c, t));
          });
        }
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu cells compared, largest weighted difference %.3g", cells, worst);
  detail = buf;
  return v;
}

// 3. Dual-flux step layouts.
Verdict dualflux_structure(std::string& detail) {
  Verdict v;
  std::size_t steps = 0;
  std::size_t rounding_ties = 0;
  // Mathematically equal votes summed in different orders may differ in the
  // last bits; they count as ties under the library's pinned tie tolerance.
  auto at_least = [&](double a, double b) {
    if (a >= b) return true;
    const bool tied = votes_tied(a, b);
    rounding_ties += tied;
    return tied;
  };
  const auto& bundles = random_bundles();
  for (std::size_t b = 0; b < bundles.size(); ++b) {
    for (const auto& scheme : test::all_schemes()) {
      std::optional<VoteSeries> vs;
      try {
        vs = aggregate_votes(bundles[b].predictions, bundles[b].meta, scheme);
      } catch (const Error&) {
        continue;
      }
      const auto g = layout_dualflux(*vs, Smoothing::Smooth);
      for (const auto& s : g.steps) {
        ++steps;
        const auto votes = vs->step_votes(s.t - 1);
        const double top = *std::max_element(votes.begin(), votes.end());
        const std::size_t main = index(s.order.front());
        auto fail = [&](const char* what) { return where(b, scheme) + " t=" + std::to_string(s.t) + ": " + what; };
        v.check(at_least(votes[main], top), [&] { return fail("upper flux is not the argmax"); });
        v.check(s.extents[main].low == 0.0 && s.extents[main].high == votes[main],
                [&] { return fail("upper flux does not rise from the baseline"); });
        double cursor = 0.0;
        for (std::size_t r = 1; r < s.order.size(); ++r) {
          const std::size_t c = index(s.order[r]);
          const auto& e = s.extents[c];
          v.check(e.high == cursor, [&] { return fail(r == 1 ? "rank 2 is off the baseline" : "lower flux has a gap"); });
          v.check(e.height() == votes[c] || std::abs(e.height() - votes[c]) <= 1e-12 * std::max(1.0, top),
                  [&] { return fail("lower band height differs from its vote"); });
          v.check(at_least(votes[index(s.order[r - 1])], votes[c]), [&] { return fail("lower flux not descending"); });
          cursor = e.low;
        }
        const double half = vs->total(s.t - 1) / 2.0;
        v.check(s.threshold_upper == half && s.threshold_lower == -half, [&] { return fail("thresholds not +-W/2"); });
      }
    }
  }
  detail = std::to_string(steps) + " step layouts checked, " + std::to_string(rounding_ties) +
           " last-bit ties resolved by the tie rule";
  return v;
}

// 4. Smooth geometry: trapezoids between equal orders, seams at half steps.
Verdict seam_property(std::string& detail) {
  Verdict v;
  std::size_t pairs = 0;
  std::size_t seams = 0;
  const auto& bundles = random_bundles();
  for (std::size_t b = 0; b < bundles.size(); ++b) {
    for (const auto& scheme : {WeightingScheme::unweighted(), WeightingScheme::class_accuracy(2),
                               WeightingScheme::class_accuracy(2).normalize()}) {
      std::optional<VoteSeries> vs;
      try {
        vs = aggregate_votes(bundles[b].predictions, bundles[b].meta, scheme);
      } catch (const Error&) {
        continue;
      }
      const auto smooth = layout_dualflux(*vs, Smoothing::Smooth);
      const auto blocky = layout_dualflux(*vs, Smoothing::Blocky);
      const std::size_t k = vs->mood_count();
      std::vector<std::vector<const Band*>> by_mood(k);
      for (const auto& band : smooth.polygons) by_mood[index(band.mood)].push_back(&band);

      std::vector<double> expected_seams;
      for (std::size_t t = 1; t < smooth.steps.size(); ++t) {
        ++pairs;
        const double x0 = static_cast<double>(t);
        const double x1 = x0 + 1.0;
        const double mid = x0 + 0.5;
        const bool same = smooth.steps[t - 1].order == smooth.steps[t].order;
        auto fail = [&](const std::string& what) {
          return where(b, scheme) + " steps " + std::to_string(t) + "-" + std::to_string(t + 1) + ": " + what;
        };
        if (!same) expected_seams.push_back(mid);
        for (std::size_t c = 0; c < k; ++c) {
          std::size_t spanning = 0;
          bool ends_at_mid = false;
          bool starts_at_mid = false;
          bool crosses_mid = false;
          for (const Band* band : by_mood[c]) {
            if (band->x_begin() <= x0 && band->x_end() >= x1) {
              ++spanning;
              const auto inner = std::count_if(band->x.begin(), band->x.end(), [&](double x) { return x > x0 && x < x1; });
              v.check(inner == 0, [&] { return fail("band has a break inside the pair"); });
            }
            ends_at_mid |= band->x_end() == mid && band->x_begin() < mid;
            starts_at_mid |= band->x_begin() == mid && band->x_end() > mid;
            crosses_mid |= band->x_begin() < mid && band->x_end() > mid;
          }
          if (same) {
            v.check(spanning == 1, [&] { return fail("mood " + std::to_string(c) + " is not one trapezoid"); });
          } else {
            v.check(ends_at_mid && starts_at_mid && !crosses_mid,
                    [&] { return fail("mood " + std::to_string(c) + " does not split at the half step"); });
          }
        }
      }
      seams += expected_seams.size();
      v.check(smooth.seams == expected_seams, [&] { return where(b, scheme) + ": seam list differs from order changes"; });
      for (std::size_t t = 1; t <= vs->step_count(); ++t) {
        const auto a = slice(smooth, static_cast<double>(t));
        const auto c = slice(blocky, static_cast<double>(t));
        for (std::size_t m = 0; m < k; ++m) {
          v.check(a[m] && c[m] && *a[m] == *c[m], [&] {
            return where(b, scheme) + " t=" + std::to_string(t) + ": smooth slice differs from blocky";
          });
        }
      }
    }
  }
  detail = std::to_string(pairs) + " step pairs, " + std::to_string(seams) + " seams";
  return v;
}

// 5. Scaling every weight leaves orders and decisions unchanged.
Verdict scale_invariance(std::string& detail) {
  Verdict v;
  std::size_t series = 0;
  const auto& bundles = random_bundles();
  for (std::size_t b = 0; b < bundles.size(); ++b) {
    const auto& bundle = bundles[b];
    for (const auto& scheme : test::all_schemes()) {
      const auto table = build_weight_table(bundle.meta, scheme);
      std::optional<VoteSeries> base;
      try {
        base = aggregate_with_weights(bundle.predictions, table.effective, scheme);
      } catch (const Error&) {
        continue;
      }
      const auto base_layout = layout_dualflux(*base, Smoothing::Blocky);
      const auto base_decisions = ensemble_decisions(*base);
      for (double lambda : kScales) {
        Grid<double> scaled = table.effective;
        for (std::size_t i = 0; i < scaled.rows(); ++i) {
          for (std::size_t c = 0; c < scaled.cols(); ++c) scaled(i, c) *= lambda;
        }
        const auto vs = aggregate_with_weights(bundle.predictions, scaled, scheme);
        ++series;
        const auto layout = layout_dualflux(vs, Smoothing::Blocky);
        for (std::size_t t = 0; t < vs.step_count(); ++t) {
          v.check(layout.steps[t].order == base_layout.steps[t].order, [&] {
            return where(b, scheme) + " lambda=" + format_real(lambda) + " t=" + std::to_string(t + 1) + ": order changed";
          });
        }
        v.check(ensemble_decisions(vs) == base_decisions,
                [&] { return where(b, scheme) + " lambda=" + format_real(lambda) + ": decisions changed"; });
      }
    }
  }
  detail = std::to_string(series) + " scaled series";
  return v;
}

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> fixture_args(std::vector<std::string> head) {
  const auto dir = test::data_dir() / "fixtures" / "appassionata";
  for (const char* s : {"--predictions", "predictions.csv", "--meta", "meta.csv", "--moods", "moods.csv"}) {
    head.push_back(std::string(s).rfind("--", 0) == 0 ? std::string(s) : (dir / s).string());
  }
  return head;
}

struct Variant {
  std::string name;
  std::vector<std::string> args;
};

std::vector<Variant> figure3_variants() {
  const std::vector<std::string> small{"--width", "400", "--height", "120"};
  const std::vector<std::string> large{"--width", "800", "--height", "240"};
  auto make = [&](const char* name, std::vector<std::string> flags, const std::vector<std::string>& size) {
    std::vector<std::string> args{"river"};
    args.insert(args.end(), flags.begin(), flags.end());
    args.insert(args.end(), size.begin(), size.end());
    return Variant{name, fixture_args(args)};
  };
  return {
      make("a", {"--design", "stacked"}, small),
      make("b", {"--design", "themeriver"}, small),
      make("c", {"--design", "dualflux", "--smoothing", "blocky"}, large),
      make("d", {"--design", "dualflux", "--smoothing", "smooth"}, large),
      make("e", {"--design", "stacked", "--weighting", "alpha2"}, small),
      make("f", {"--design", "themeriver", "--weighting", "alpha2"}, small),
      make("g", {"--design", "dualflux", "--weighting", "alpha2"}, large),
      make("h", {"--design", "stacked", "--weighting", "alpha2", "--normalize"}, small),
      make("i", {"--design", "themeriver", "--weighting", "alpha2", "--normalize"}, small),
      make("j", {"--design", "dualflux", "--weighting", "alpha2", "--normalize"}, large),
  };
}

// 6. The ten river variants match their snapshots.
Verdict figure3(std::string& detail) {
  Verdict v;
  std::size_t matched = 0;
  for (const auto& variant : figure3_variants()) {
    const auto r = run_cli(variant.args);
    const std::string golden = "fig3_" + variant.name + ".svg";
    if (r.code != 0) {
      v.fail("(" + variant.name + ") exit " + std::to_string(r.code) + ": " + r.err);
      continue;
    }
    v.check(test::is_well_formed_svg(r.out), [&] { return "(" + variant.name + ") malformed SVG"; });
    const bool same = test::matches_golden(golden, r.out);
    v.check(same, [&] { return "(" + variant.name + ") differs from " + golden; });
    matched += same;
  }
  detail = std::to_string(matched) + "/10 variants match their snapshots";
  return v;
}

struct Part {
  double x = 0.0;
  std::string body;
};

std::vector<Part> split_parts(const std::string& doc) {
  static const std::regex head(R"re(<g class="part" data-index="[0-9]+" transform="translate\(([-0-9.]+),([-0-9.]+)\)">)re");
  std::vector<Part> parts;
  std::vector<std::size_t> starts;
  for (std::sregex_iterator it(doc.begin(), doc.end(), head), end; it != end; ++it) {
    parts.push_back({std::stod((*it)[1]), {}});
    starts.push_back(static_cast<std::size_t>(it->position()));
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::size_t stop = i + 1 < parts.size() ? starts[i + 1] : doc.size();
    parts[i].body = doc.substr(starts[i], stop - starts[i]);
  }
  return parts;
}

// Page x extent of every river path in a part.
std::optional<std::pair<double, double>> river_span(const Part& part) {
  if (part.body.find("<g class=\"river\"") == std::string::npos) return std::nullopt;
  static const std::regex point(R"([ML] ([-0-9.]+) [-0-9.]+)");
  double lo = 1e300;
  double hi = -1e300;
  for (std::sregex_iterator it(part.body.begin(), part.body.end(), point), end; it != end; ++it) {
    const double x = std::stod((*it)[1]);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return std::make_pair(lo + part.x, hi + part.x);
}

// Page x centers of the first row of a pixel panel.
std::vector<double> column_centers(const Part& part, std::size_t n) {
  std::vector<double> out;
  const auto start = part.body.find("<g class=\"pixels\"");
  if (start == std::string::npos) return out;
  static const std::regex rect(R"re(<rect x="([-0-9.]+)" y="[-0-9.]+" width="([-0-9.]+)")re");
  auto it = std::sregex_iterator(part.body.begin() + static_cast<std::ptrdiff_t>(start), part.body.end(), rect);
  for (; it != std::sregex_iterator() && out.size() < n; ++it) {
    out.push_back(part.x + std::stod((*it)[1]) + std::stod((*it)[2]) / 2.0);
  }
  return out;
}

// 7. Pixel maps sorted three ways and the three weight-power panels, each
// column aligned with the river drawn above it.
Verdict figures4_and_9(std::string& detail) {
  Verdict v;
  constexpr std::size_t kSteps = 30;
  std::vector<std::vector<std::string>> runs;
  for (const char* sort : {"accuracy", "method-interval", "interval-accuracy"}) {
    runs.push_back(fixture_args({"pixels", "--with-river", "--weighting", "alpha2", "--sort", sort}));
  }
  runs.push_back(fixture_args({"pixels", "--with-river", "--weighting", "alpha2", "--sort", "method-interval",
                               "--weights", "1", "2", "3"}));
  const auto start = Clock::now();
  std::vector<CliRun> results;
  for (const auto& args : runs) results.push_back(run_cli(args));
  const double elapsed = seconds_since(start);

  std::size_t columns = 0;
  double worst = 0.0;
  for (std::size_t r = 0; r < results.size(); ++r) {
    const auto& res = results[r];
    const std::string label = "run " + std::to_string(r + 1);
    if (res.code != 0) {
      v.fail(label + " exit " + std::to_string(res.code) + ": " + res.err);
      continue;
    }
    v.check(test::is_well_formed_svg(res.out), [&] { return label + ": malformed SVG"; });
    const auto parts = split_parts(res.out);
    std::map<double, std::pair<double, double>> rivers;
    for (const auto& p : parts) {
      if (auto span = river_span(p)) rivers[p.x] = *span;
    }
    std::size_t panels = 0;
    for (const auto& p : parts) {
      const auto centers = column_centers(p, kSteps);
      if (centers.empty()) continue;
      ++panels;
      auto it = rivers.find(p.x);
      if (it == rivers.end()) {
        v.fail(label + ": panel without a river above it");
        continue;
      }
      ++columns;
      v.check(centers.size() == kSteps, [&] { return label + ": panel has " + std::to_string(centers.size()) + " columns"; });
      const auto [x_lo, x_hi] = it->second;
      const double step_px = (x_hi - x_lo) / static_cast<double>(kSteps);
      for (std::size_t t = 0; t < centers.size(); ++t) {
        const double expect = x_lo + step_px * (static_cast<double>(t) + 0.5);
        const double diff = std::abs(centers[t] - expect);
        worst = std::max(worst, diff);
        v.check(diff <= kAlignTolerancePx, [&] {
          return label + " column " + std::to_string(t + 1) + ": off by " + std::to_string(diff) + " px";
        });
      }
    }
    const std::size_t expected_panels = r + 1 == results.size() ? 4 : 1;
    v.check(panels == expected_panels, [&] { return label + ": " + std::to_string(panels) + " panels"; });
  }
  v.check(elapsed < kFigureSeconds, [&] { return "took " + std::to_string(elapsed) + " s"; });
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu aligned columns, worst offset %.4f px, %.2f s", columns, worst, elapsed);
  detail = buf;
  return v;
}

// 8. Ingest round trips and byte-stable rendering.
Verdict round_trip(std::string& detail) {
  Verdict v;
  std::vector<Bundle> bundles{test::appassionata_fixture()};
  for (std::size_t s = 1; s <= 50; ++s) bundles.push_back(random_bundles()[s - 1]);
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    const auto& b = bundles[i];
    const auto docs = serialize_bundle(b);
    const auto back = parse_bundle(docs);
    v.check(back == b, [&] { return "bundle " + std::to_string(i) + ": CSV round trip differs"; });
    v.check(serialize_bundle(back) == docs, [&] { return "bundle " + std::to_string(i) + ": CSV not byte-stable"; });
    const auto json = serialize_bundle_json(b);
    v.check(parse_bundle_json(json) == b, [&] { return "bundle " + std::to_string(i) + ": JSON round trip differs"; });
  }

  std::vector<std::vector<std::string>> renders;
  for (const auto& variant : figure3_variants()) renders.push_back(variant.args);
  renders.push_back(fixture_args({"pixels", "--with-river", "--weights", "1", "2", "3"}));
  renders.push_back(fixture_args({"pixels", "--sort", "interval-accuracy"}));
  for (std::size_t i = 0; i < renders.size(); ++i) {
    const auto first = run_cli(renders[i]);
    const auto second = run_cli(renders[i]);
    v.check(first.code == 0 && first.out == second.out,
            [&] { return "render " + std::to_string(i + 1) + " is not byte-deterministic"; });
  }
  detail = std::to_string(bundles.size()) + " bundles round-tripped, " + std::to_string(renders.size()) +
           " renders repeated";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Verdict (*run)(std::string&);
  };
  const Criterion criteria[] = {
      {"conservation", conservation},
      {"oracle equivalence", oracle_equivalence},
      {"dual-flux structure", dualflux_structure},
      {"seam property", seam_property},
      {"scale invariance", scale_invariance},
      {"river variants", figure3},
      {"pixel map alignment", figures4_and_9},
      {"round trip and determinism", round_trip},
  };
  int failed = 0;
  int number = 0;
  for (const auto& c : criteria) {
    ++number;
    std::string detail;
    Verdict verdict;
    try {
      verdict = c.run(detail);
    } catch (const std::exception& e) {
      verdict.fail(std::string("exception: ") + e.what());
    }
    std::cout << (verdict.passed() ? "[PASS] " : "[FAIL] ") << number << ". " << c.name;
    if (!detail.empty()) std::cout << ": " << detail;
    std::cout << '\n';
    for (const auto& m : verdict.messages()) std::cout << "       " << m << '\n';
    if (!verdict.passed()) {
      if (verdict.failures() > verdict.messages().size()) {
        std::cout << "       (" << verdict.failures() - verdict.messages().size() << " more)\n";
      }
      ++failed;
    }
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
