#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fluxriver/aggregate.hpp"
#include "fluxriver/ingest.hpp"
#include "fluxriver/layout.hpp"
#include "fluxriver/pixelmap.hpp"
#include "fluxriver/render.hpp"
#include "fluxriver/synth.hpp"

namespace fluxriver::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, Design> kDesigns{
    {"stacked", Design::Stacked}, {"themeriver", Design::ThemeRiver}, {"dualflux", Design::DualFlux}};
const std::map<std::string, Smoothing> kSmoothing{{"blocky", Smoothing::Blocky}, {"smooth", Smoothing::Smooth}};
const std::map<std::string, SortKind> kSorts{{"accuracy", SortKind::AccuracyDesc},
                                             {"method-interval", SortKind::MethodThenInterval},
                                             {"interval-accuracy", SortKind::IntervalThenAccuracy}};
const std::vector<std::string> kWeightings{"none", "alpha", "alpha2", "alpha3", "acc", "acc2", "f1"};

template <typename T>
T lookup(const std::map<std::string, T>& table, const std::string& key, const char* what) {
  auto it = table.find(key);
  if (it == table.end()) throw UsageError(std::string("unknown ") + what + " '" + key + "'");
  return it->second;
}

WeightingScheme scheme_from(const RunConfig& cfg) {
  WeightingScheme s;
  const auto& w = cfg.weighting;
  if (w == "none") {
    s.kind = WeightKind::Unweighted;
  } else if (w == "alpha" || w == "alpha2" || w == "alpha3") {
    s.kind = WeightKind::ClassAccuracyPower;
    s.power = w == "alpha" ? 1 : w[5] - '0';
  } else if (w == "acc") {
    s.kind = WeightKind::OverallAccuracy;
  } else if (w == "acc2") {
    s.kind = WeightKind::OverallAccuracySquared;
  } else if (w == "f1") {
    s.kind = WeightKind::F1;
  } else {
    throw UsageError("unknown weighting '" + w + "'");
  }
  if (cfg.basis == "precision") {
    s.basis = AccuracyBasis::PredictedClassPrecision;
  } else if (cfg.basis == "recall") {
    s.basis = AccuracyBasis::TrueClassRecall;
  } else {
    throw UsageError("unknown basis '" + cfg.basis + "'");
  }
  s.normalized = cfg.normalize;
  return s;
}

MoodSet apply_palette(const MoodSet& moods, const std::map<std::string, std::string>& palette) {
  if (palette.empty()) return moods;
  std::vector<MoodSpec> specs;
  for (const auto& mood : moods.moods()) {
    auto it = palette.find(mood.label);
    specs.push_back({mood.label, it == palette.end() ? mood.color : it->second});
  }
  return MoodSet(specs);
}

Bundle load_bundle(const RunConfig& cfg) {
  Bundle bundle = [&] {
    if (!cfg.bundle.empty()) {
      if (!cfg.predictions.empty() || !cfg.meta.empty()) {
        throw UsageError("give either --bundle or --predictions/--meta, not both");
      }
      return parse_bundle_json(read_text_file(cfg.bundle));
    }
    if (cfg.predictions.empty() || cfg.meta.empty()) {
      throw UsageError("inputs required: --bundle, or --predictions and --meta");
    }
    const std::string meta_text = read_text_file(cfg.meta);
    MoodSet moods = cfg.moods.empty() ? MoodSet::from_labels(infer_mood_labels(meta_text))
                                      : parse_moods(read_text_file(cfg.moods));
    auto meta = parse_model_meta(meta_text, moods);
    auto predictions = parse_predictions(read_text_file(cfg.predictions), moods);
    return make_bundle(std::move(moods), std::move(meta), predictions);
  }();
  bundle.moods = apply_palette(bundle.moods, cfg.palette);
  return bundle;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
  } else {
    write_text_file(cfg.out, text);
  }
}

Margins river_margins() { return Margins{10.0, 14.0, 10.0, 14.0}; }

struct RiverRender {
  SvgDocument document;
  Canvas canvas;
};

RiverRender make_river(const Bundle& b, const RunConfig& cfg, const WeightingScheme& scheme, Design design) {
  const VoteSeries vs = aggregate_votes(b.predictions, b.meta, scheme);
  const RiverGeometry g = layout_river(vs, design, lookup(kSmoothing, cfg.smoothing, "smoothing"));
  const Canvas canvas = Canvas::for_river(g, cfg.width, cfg.height, river_margins(), cfg.decimal_places);
  return {render_river(g, canvas, b.moods), canvas};
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const Bundle b = load_bundle(cfg);
  const auto& pm = b.predictions;
  out << pm.model_count() << " models, " << pm.step_count() << " steps, " << b.moods.size() << " moods\n";
  out << "moods:";
  for (const auto& mood : b.moods.moods()) out << ' ' << mood.label;
  out << '\n';
  std::vector<std::int64_t> lengths;
  for (const auto& m : b.meta) lengths.push_back(m.interval_length);
  out << "unit section length: " << unit_section_length(lengths) << '\n';
  const VoteSeries vs = aggregate_votes(pm, b.meta, WeightingScheme::unweighted());
  out << "unweighted totals:";
  for (std::size_t t = 0; t < vs.step_count(); ++t) {
    if (vs.total(t) != static_cast<double>(pm.model_count())) {
      throw Error(ErrorCode::ConservationViolated, "step " + std::to_string(t + 1) + " total differs from model count");
    }
    out << ' ' << format_real(vs.total(t));
  }
  out << '\n';
  return 0;
}

int cmd_river(const RunConfig& cfg, std::ostream& out) {
  const Bundle b = load_bundle(cfg);
  const auto river = make_river(b, cfg, scheme_from(cfg), lookup(kDesigns, cfg.design, "design"));
  emit(cfg, river.document.to_string(), out);
  return 0;
}

int cmd_pixels(const RunConfig& cfg, std::ostream& out) {
  const Bundle b = load_bundle(cfg);
  SortScheme sort;
  sort.kind = lookup(kSorts, cfg.sort, "sort");
  const WeightingScheme river_scheme = scheme_from(cfg);
  const Design design = lookup(kDesigns, cfg.design, "design");

  const Canvas base = Canvas::fit(cfg.width, cfg.height, river_margins(), 0.5,
                                  static_cast<double>(b.predictions.step_count()) + 0.5, 0.0, 1.0,
                                  cfg.decimal_places);
  const PixelPanel panel = build_panel(b.predictions, b.meta, sort);
  const Canvas pc = pixel_canvas(panel, base, cfg.row_height);
  SvgDocument predictions = render_pixels(panel, pc, b.moods);

  if (cfg.weights.empty() && !cfg.with_river) {
    emit(cfg, predictions.to_string(), out);
    return 0;
  }

  std::vector<FigurePart> parts;
  double column_x = 0.0;
  int group = 0;
  auto add_column = [&](SvgDocument pixels, const WeightingScheme& scheme) {
    double y = 0.0;
    if (cfg.with_river) {
      auto river = make_river(b, cfg, scheme, design);
      y = river.document.height_px;
      parts.push_back({std::move(river.document), column_x, 0.0, group});
    }
    const double w = pixels.width_px;
    parts.push_back({std::move(pixels), column_x, y, group});
    column_x += w;
    ++group;
  };
  add_column(std::move(predictions), river_scheme);

  for (int p : cfg.weights) {
    if (p < 1 || p > 3) throw UsageError("--weights takes 1, 2 or 3");
    WeightingScheme scheme = WeightingScheme::class_accuracy(p, river_scheme.basis);
    scheme.normalized = river_scheme.normalized;
    const WeightTable table = build_weight_table(b.meta, scheme);
    const PixelPanel weighted = build_panel(b.predictions, b.meta, sort, &table, p);
    add_column(render_pixels(weighted, pc, b.moods, PixelStyle{PixelLayer::Weights}), scheme);
  }

  std::vector<std::string> ramps;
  ramps.push_back("accuracy");
  if (!cfg.weights.empty()) ramps.push_back("class-accuracy weight");
  parts.push_back({render_legend(b.moods, ramps), column_x, 0.0, std::nullopt});
  emit(cfg, compose_figure(parts).to_string(), out);
  return 0;
}

int cmd_decide(const RunConfig& cfg, std::ostream& out) {
  const Bundle b = load_bundle(cfg);
  const VoteSeries vs = aggregate_votes(b.predictions, b.meta, scheme_from(cfg));
  const auto decisions = ensemble_decisions(vs);
  std::string text = "time_step,mood\n";
  for (std::size_t t = 0; t < decisions.size(); ++t) {
    text += std::to_string(t + 1) + "," + csv_escape(b.moods[decisions[t]].label) + "\n";
  }
  emit(cfg, text, out);
  return 0;
}

struct SynthOptions {
  std::string preset;
  std::optional<std::size_t> m;
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::optional<double> noise;
  std::optional<std::size_t> jitter;
  std::vector<std::size_t> change_points;
  std::string out_dir = ".";
  std::string format = "csv";
  bool seed_given = false;
};

int cmd_synth(const RunConfig& cfg, const SynthOptions& opt, std::ostream& out) {
  SynthSpec spec;
  if (!opt.preset.empty()) {
    auto preset = synth_preset(opt.preset);
    if (!preset) throw UsageError("unknown preset '" + opt.preset + "'");
    spec = *preset;
  }
  if (opt.seed_given || opt.preset.empty()) spec.seed = cfg.seed;
  if (opt.m) spec.m = *opt.m;
  if (opt.n) spec.n = *opt.n;
  if (opt.k) {
    spec.k = *opt.k;
    if (!spec.segment_moods.empty() && *std::max_element(spec.segment_moods.begin(), spec.segment_moods.end()) >= spec.k) {
      spec.segment_moods.clear();
    }
  }
  if (opt.noise) spec.noise = *opt.noise;
  if (opt.jitter) spec.switch_jitter = *opt.jitter;
  if (!opt.change_points.empty()) {
    spec.change_points = opt.change_points;
    spec.segment_moods.clear();
  }
  const Bundle b = generate(spec);
  const std::filesystem::path dir(opt.out_dir);
  if (opt.format == "csv" || opt.format == "both") {
    const auto docs = serialize_bundle(b);
    write_text_file(dir / "moods.csv", docs.moods_csv);
    write_text_file(dir / "meta.csv", docs.meta_csv);
    write_text_file(dir / "predictions.csv", docs.predictions_csv);
  }
  if (opt.format == "json" || opt.format == "both") {
    write_text_file(dir / "bundle.json", serialize_bundle_json(b));
  }
  out << "wrote " << b.predictions.model_count() << " models x " << b.predictions.step_count() << " steps to "
      << dir.string() << '\n';
  return 0;
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  if (const char* env = std::getenv("FLUXRIVER_CONFIG"); env && *env) return std::string(env);
  return std::nullopt;
}

void add_inputs(CLI::App* app, RunConfig& cfg) {
  app->add_option("--bundle", cfg.bundle, "Bundle JSON file");
  app->add_option("--predictions", cfg.predictions, "Predictions CSV (model_id,time_step,mood)");
  app->add_option("--meta", cfg.meta, "Model metadata CSV");
  app->add_option("--moods", cfg.moods, "Mood CSV (label,color); inferred from --meta when absent");
  app->add_option_function<std::vector<std::string>>(
      "--color",
      [&cfg](const std::vector<std::string>& entries) {
        for (const auto& e : entries) {
          auto eq = e.find('=');
          if (eq == std::string::npos || !is_hex_color(e.substr(eq + 1))) {
            throw CLI::ValidationError("--color", "expected label=#RRGGBB");
          }
          cfg.palette[e.substr(0, eq)] = e.substr(eq + 1);
        }
      },
      "Palette override label=#RRGGBB (repeatable)");
}

void add_weighting(CLI::App* app, RunConfig& cfg) {
  app->add_option("--weighting", cfg.weighting, "Vote weighting")->check(CLI::IsMember(kWeightings));
  app->add_option("--basis", cfg.basis, "Class-accuracy basis")->check(CLI::IsMember({"precision", "recall"}));
  app->add_flag("--normalize", cfg.normalize, "Normalize each step to total 1");
}

void add_canvas(CLI::App* app, RunConfig& cfg) {
  app->add_option("--width", cfg.width, "Plot width in px")->check(CLI::PositiveNumber);
  app->add_option("--height", cfg.height, "River height in px")->check(CLI::PositiveNumber);
  app->add_option("--decimals", cfg.decimal_places, "Coordinate decimal places")->check(CLI::Range(0, 9));
  app->add_option("--out", cfg.out, "Output path (stdout when absent)");
}

std::string design_names() { return "stacked|themeriver|dualflux"; }

}  // namespace

RunConfig load_config(const std::string& path, RunConfig cfg) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config '" + path + "' must be a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "predictions") cfg.predictions = value.get<std::string>();
      else if (key == "meta") cfg.meta = value.get<std::string>();
      else if (key == "moods") cfg.moods = value.get<std::string>();
      else if (key == "bundle") cfg.bundle = value.get<std::string>();
      else if (key == "design") cfg.design = value.get<std::string>();
      else if (key == "weighting") cfg.weighting = value.get<std::string>();
      else if (key == "basis") cfg.basis = value.get<std::string>();
      else if (key == "normalize") cfg.normalize = value.get<bool>();
      else if (key == "smoothing") cfg.smoothing = value.get<std::string>();
      else if (key == "sort") cfg.sort = value.get<std::string>();
      else if (key == "weights") cfg.weights = value.get<std::vector<int>>();
      else if (key == "with_river") cfg.with_river = value.get<bool>();
      else if (key == "width") cfg.width = value.get<double>();
      else if (key == "height") cfg.height = value.get<double>();
      else if (key == "row_height") cfg.row_height = value.get<double>();
      else if (key == "decimal_places") cfg.decimal_places = value.get<int>();
      else if (key == "palette") cfg.palette = value.get<std::map<std::string, std::string>>();
      else if (key == "out") cfg.out = value.get<std::string>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else throw UsageError("config '" + path + "': unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    if (auto path = find_config_path(args)) cfg = load_config(*path, cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Dual-flux ThemeRiver and pixel-map renderer for ensemble prediction logs", "fluxriver"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "JSON config (defaults to $FLUXRIVER_CONFIG)");

  auto* validate = app.add_subcommand("validate", "Check inputs and print their dimensions");
  add_inputs(validate, cfg);

  auto* river = app.add_subcommand("river", "Render a stacked graph, ThemeRiver or dual-flux ThemeRiver");
  add_inputs(river, cfg);
  add_weighting(river, cfg);
  add_canvas(river, cfg);
  river->add_option("--design", cfg.design, design_names())->check(CLI::IsMember({"stacked", "themeriver", "dualflux"}));
  river->add_option("--smoothing", cfg.smoothing, "Dual-flux smoothing")->check(CLI::IsMember({"blocky", "smooth"}));

  auto* pixels = app.add_subcommand("pixels", "Render per-model pixel maps");
  add_inputs(pixels, cfg);
  add_weighting(pixels, cfg);
  add_canvas(pixels, cfg);
  pixels->add_option("--design", cfg.design, "Design of the reference river")
      ->check(CLI::IsMember({"stacked", "themeriver", "dualflux"}));
  pixels->add_option("--smoothing", cfg.smoothing, "Dual-flux smoothing")->check(CLI::IsMember({"blocky", "smooth"}));
  pixels->add_option("--sort", cfg.sort, "Row order")->check(CLI::IsMember({"accuracy", "method-interval", "interval-accuracy"}));
  pixels->add_option("--weights", cfg.weights, "Add a class-accuracy^p weight panel (repeatable)")
      ->check(CLI::Range(1, 3));
  pixels->add_flag("--with-river", cfg.with_river, "Draw the river above each panel");
  pixels->add_option("--row-height", cfg.row_height, "Pixel row height in px")->check(CLI::PositiveNumber);

  auto* decide = app.add_subcommand("decide", "Print the per-step ensemble decision as CSV");
  add_inputs(decide, cfg);
  add_weighting(decide, cfg);
  decide->add_option("--out", cfg.out, "Output path (stdout when absent)");

  SynthOptions synth_opt;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic bundle");
  synth->add_option("--preset", synth_opt.preset, "Named preset")->check(CLI::IsMember({"appassionata-like"}));
  synth->add_option("--seed", cfg.seed, "Random seed")->each([&](const std::string&) { synth_opt.seed_given = true; });
  synth->add_option("--m", synth_opt.m, "Number of models");
  synth->add_option("--n", synth_opt.n, "Number of unit sections");
  synth->add_option("--k", synth_opt.k, "Number of moods");
  synth->add_option("--noise", synth_opt.noise, "Deviation probability ceiling");
  synth->add_option("--jitter", synth_opt.jitter, "Per-model change-point jitter");
  synth->add_option("--change-points", synth_opt.change_points, "Steps where the true mood switches");
  synth->add_option("--out-dir", synth_opt.out_dir, "Output directory");
  synth->add_option("--format", synth_opt.format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*validate) return cmd_validate(cfg, out);
    if (*river) return cmd_river(cfg, out);
    if (*pixels) return cmd_pixels(cfg, out);
    if (*decide) return cmd_decide(cfg, out);
    if (*synth) return cmd_synth(cfg, synth_opt, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace fluxriver::cli
