#include "fluxriver/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fluxriver {

namespace {

constexpr std::string_view kPredictionHeader[] = {"model_id", "time_step", "mood"};
constexpr std::string_view kMetaPrefix[] = {"model_id", "method", "interval_length", "overall_accuracy"};

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string confusion_column(const MoodSet& moods, std::size_t truth, std::size_t predicted) {
  return "cm_" + moods[mood_id(truth)].label + "_" + moods[mood_id(predicted)].label;
}

std::string join_header(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(names[i]);
  }
  return out;
}

std::vector<std::string> meta_header(const MoodSet& moods) {
  std::vector<std::string> names(std::begin(kMetaPrefix), std::end(kMetaPrefix));
  for (std::size_t t = 0; t < moods.size(); ++t) {
    for (std::size_t p = 0; p < moods.size(); ++p) names.push_back(confusion_column(moods, t, p));
  }
  return names;
}

}  // namespace

std::vector<CsvRecord> read_csv(std::string_view text) {
  std::vector<CsvRecord> records;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    // Skip blank lines.
    if (text[i] == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n') {
      ++line;
      i += 2;
      continue;
    }
    CsvRecord rec;
    rec.line = line;
    std::string field;
    bool done = false;
    while (!done) {
      field.clear();
      if (i < n && text[i] == '"') {
        ++i;
        bool closed = false;
        while (i < n) {
          char ch = text[i];
          if (ch == '"') {
            if (i + 1 < n && text[i + 1] == '"') {
              field += '"';
              i += 2;
              continue;
            }
            ++i;
            closed = true;
            break;
          }
          if (ch == '\n') ++line;
          field += ch;
          ++i;
        }
        if (!closed) throw Error(ErrorCode::MalformedRow, "unterminated quoted field", rec.line);
        if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw Error(ErrorCode::MalformedRow, "unexpected character after closing quote", line);
        }
      } else {
        while (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          if (text[i] == '"') throw Error(ErrorCode::MalformedRow, "stray quote in unquoted field", line);
          field += text[i++];
        }
      }
      rec.fields.push_back(field);
      if (i >= n) {
        done = true;
      } else if (text[i] == ',') {
        ++i;
      } else if (text[i] == '\n') {
        ++i;
        ++line;
        done = true;
      } else if (text[i] == '\r') {
        if (i + 1 < n && text[i + 1] == '\n') {
          i += 2;
          ++line;
          done = true;
        } else {
          throw Error(ErrorCode::MalformedRow, "bare carriage return", line);
        }
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string format_real(double value) {
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (parse_double(buf) == value) break;
  }
  return buf;
}

PredictionMatrix parse_predictions(std::string_view text, const MoodSet& moods) {
  auto records = read_csv(text);
  if (records.empty()) throw Error(ErrorCode::MalformedRow, "empty predictions document", 1);
  const auto& header = records.front();
  if (header.fields.size() != 3 || !std::equal(header.fields.begin(), header.fields.end(),
                                               std::begin(kPredictionHeader))) {
    throw Error(ErrorCode::MalformedRow, "header must be exactly 'model_id,time_step,mood'", header.line);
  }
  if (records.size() == 1) throw Error(ErrorCode::MalformedRow, "no prediction rows", header.line + 1);

  struct Cell {
    MoodId mood;
    std::size_t line;
  };
  std::map<std::string, std::map<std::int64_t, Cell>> rows;
  std::int64_t n_steps = 0;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != 3) {
      throw Error(ErrorCode::MalformedRow,
                  "expected 3 fields, got " + std::to_string(rec.fields.size()), rec.line);
    }
    const auto& model = rec.fields[0];
    if (model.empty()) throw Error(ErrorCode::MalformedRow, "empty model_id", rec.line);
    auto step = parse_int(rec.fields[1]);
    if (!step || *step < 1) {
      throw Error(ErrorCode::MalformedRow, "time_step '" + rec.fields[1] + "' is not a positive integer",
                  rec.line);
    }
    auto mood = moods.find(rec.fields[2]);
    if (!mood) throw Error(ErrorCode::UnknownMood, "unknown mood '" + rec.fields[2] + "'", rec.line);
    auto [it, inserted] = rows[model].emplace(*step, Cell{*mood, rec.line});
    if (!inserted) {
      throw Error(ErrorCode::DuplicateCell,
                  "(" + model + ", " + std::to_string(*step) + ") already given on line " +
                      std::to_string(it->second.line),
                  rec.line);
    }
    n_steps = std::max(n_steps, *step);
  }

  const std::size_t end_line = records.back().line + 1;
  std::vector<std::string> models;
  Grid<MoodId> cells(rows.size(), static_cast<std::size_t>(n_steps));
  std::size_t i = 0;
  for (const auto& [model, steps] : rows) {
    models.push_back(model);
    for (std::int64_t t = 1; t <= n_steps; ++t) {
      auto it = steps.find(t);
      if (it == steps.end()) {
        throw Error(ErrorCode::MissingCell, "no prediction for (" + model + ", " + std::to_string(t) + ")",
                    end_line);
      }
      cells(i, static_cast<std::size_t>(t - 1)) = it->second.mood;
    }
    ++i;
  }
  return PredictionMatrix(std::move(models), static_cast<std::size_t>(n_steps), std::move(cells),
                          moods.size());
}

std::vector<std::string> infer_mood_labels(std::string_view meta_text) {
  auto records = read_csv(meta_text);
  if (records.empty()) throw Error(ErrorCode::MalformedRow, "empty metadata document", 1);
  const auto& names = records.front().fields;
  const std::size_t line = records.front().line;
  const std::size_t prefix = std::size(kMetaPrefix);
  if (names.size() <= prefix) throw Error(ErrorCode::WrongColumnCount, "no confusion columns", line);
  const std::size_t cm_columns = names.size() - prefix;
  std::size_t k = 0;
  while (k * k < cm_columns) ++k;
  if (k * k != cm_columns || k < 2) {
    throw Error(ErrorCode::WrongColumnCount,
                std::to_string(cm_columns) + " confusion columns is not k*k for k >= 2", line);
  }
  // The first column is cm_<l0>_<l0>, which pins l0; the rest of the first
  // row of the matrix is cm_<l0>_<lj>.
  const std::string& diag = names[prefix];
  if (diag.rfind("cm_", 0) != 0 || (diag.size() - 3) % 2 == 0) {
    throw Error(ErrorCode::MalformedRow, "bad confusion column '" + diag + "'", line);
  }
  const std::size_t half = (diag.size() - 4) / 2;
  std::string first = diag.substr(3, half);
  if (diag.substr(3 + half) != "_" + first || first.empty()) {
    throw Error(ErrorCode::MalformedRow, "bad confusion column '" + diag + "'", line);
  }
  std::vector<std::string> labels{first};
  const std::string lead = "cm_" + first + "_";
  for (std::size_t j = 1; j < k; ++j) {
    const std::string& col = names[prefix + j];
    if (col.rfind(lead, 0) != 0 || col.size() == lead.size()) {
      throw Error(ErrorCode::MalformedRow, "bad confusion column '" + col + "'", line);
    }
    labels.push_back(col.substr(lead.size()));
  }
  return labels;
}

std::vector<ModelMeta> parse_model_meta(std::string_view text, const MoodSet& moods) {
  auto records = read_csv(text);
  if (records.empty()) throw Error(ErrorCode::MalformedRow, "empty metadata document", 1);
  const auto expected = meta_header(moods);
  const auto& header = records.front();
  if (header.fields.size() != expected.size()) {
    throw Error(ErrorCode::WrongColumnCount,
                "header has " + std::to_string(header.fields.size()) + " columns, expected " +
                    std::to_string(expected.size()),
                header.line);
  }
  for (std::size_t c = 0; c < expected.size(); ++c) {
    if (header.fields[c] != expected[c]) {
      throw Error(ErrorCode::MalformedRow,
                  "header column " + std::to_string(c + 1) + " is '" + header.fields[c] + "', expected '" +
                      expected[c] + "'",
                  header.line);
    }
  }

  const std::size_t k = moods.size();
  std::vector<ModelMeta> out;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const auto& f = rec.fields;
    if (f.size() != expected.size()) {
      throw Error(ErrorCode::WrongColumnCount,
                  "expected " + std::to_string(expected.size()) + " fields, got " + std::to_string(f.size()),
                  rec.line);
    }
    ModelMeta meta;
    meta.model_id = f[0];
    if (meta.model_id.empty()) throw Error(ErrorCode::MalformedRow, "empty model_id", rec.line);
    if (!seen.insert(meta.model_id).second) {
      throw Error(ErrorCode::DuplicateCell, "duplicate model '" + meta.model_id + "'", rec.line);
    }
    meta.method = f[1];
    auto interval = parse_int(f[2]);
    if (!interval) throw Error(ErrorCode::MalformedRow, "interval_length '" + f[2] + "' is not an integer", rec.line);
    if (*interval < 1) throw Error(ErrorCode::BadRange, "interval_length " + f[2] + " < 1", rec.line);
    meta.interval_length = *interval;
    auto accuracy = parse_double(f[3]);
    if (!accuracy) throw Error(ErrorCode::MalformedRow, "overall_accuracy '" + f[3] + "' is not a number", rec.line);
    if (!(*accuracy >= 0.0 && *accuracy <= 1.0)) {
      throw Error(ErrorCode::BadAccuracyRange, "overall_accuracy " + f[3] + " outside [0,1]", rec.line);
    }
    meta.overall_accuracy = *accuracy;
    Grid<std::int64_t> counts(k, k);
    for (std::size_t t = 0; t < k; ++t) {
      for (std::size_t p = 0; p < k; ++p) {
        const auto& cell = f[4 + t * k + p];
        auto v = parse_int(cell);
        if (!v) throw Error(ErrorCode::MalformedRow, "count '" + cell + "' is not an integer", rec.line);
        if (*v < 0) {
          throw Error(ErrorCode::NegativeCount,
                      "negative count " + cell + " in " + expected[4 + t * k + p], rec.line);
        }
        counts(t, p) = *v;
      }
    }
    meta.confusion = ConfusionMatrix(std::move(counts));
    out.push_back(std::move(meta));
  }
  return out;
}

MoodSet parse_moods(std::string_view text) {
  auto records = read_csv(text);
  if (records.empty() || records.front().fields != std::vector<std::string>{"label", "color"}) {
    throw Error(ErrorCode::MalformedRow, "header must be exactly 'label,color'",
                records.empty() ? 1 : records.front().line);
  }
  std::vector<MoodSpec> specs;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != 2) throw Error(ErrorCode::MalformedRow, "expected 2 fields", rec.line);
    if (!is_hex_color(rec.fields[1])) {
      throw Error(ErrorCode::MalformedRow, "color '" + rec.fields[1] + "' is not #RRGGBB", rec.line);
    }
    specs.push_back({rec.fields[0], rec.fields[1]});
  }
  return MoodSet(specs);
}

std::string serialize_moods(const MoodSet& moods) {
  std::string out = "label,color\n";
  for (const auto& mood : moods.moods()) out += csv_escape(mood.label) + "," + mood.color + "\n";
  return out;
}

std::string serialize_predictions(const PredictionMatrix& predictions, const MoodSet& moods) {
  std::string out = "model_id,time_step,mood\n";
  for (std::size_t i = 0; i < predictions.model_count(); ++i) {
    const std::string id = csv_escape(predictions.models()[i]);
    for (std::size_t t = 0; t < predictions.step_count(); ++t) {
      out += id;
      out += ',';
      out += std::to_string(t + 1);
      out += ',';
      out += csv_escape(moods[predictions.at(i, t)].label);
      out += '\n';
    }
  }
  return out;
}

std::string serialize_model_meta(const std::vector<ModelMeta>& meta, const MoodSet& moods) {
  std::string out = join_header(meta_header(moods)) + "\n";
  for (const auto& m : meta) {
    out += csv_escape(m.model_id) + "," + csv_escape(m.method) + "," + std::to_string(m.interval_length) +
           "," + format_real(m.overall_accuracy);
    for (auto v : m.confusion.counts().data()) out += "," + std::to_string(v);
    out += '\n';
  }
  return out;
}

Bundle make_bundle(MoodSet moods, std::vector<ModelMeta> meta, const PredictionMatrix& predictions) {
  const std::size_t k = moods.size();
  for (const auto& m : meta) m.validate(k);
  if (meta.size() != predictions.model_count()) {
    throw Error(ErrorCode::IdMismatch, std::to_string(meta.size()) + " metadata rows but " +
                                           std::to_string(predictions.model_count()) + " prediction models");
  }
  std::vector<std::string> order;
  Grid<MoodId> cells(meta.size(), predictions.step_count());
  for (std::size_t i = 0; i < meta.size(); ++i) {
    auto src = predictions.model_index(meta[i].model_id);
    if (!src) throw Error(ErrorCode::IdMismatch, "model '" + meta[i].model_id + "' has no predictions");
    order.push_back(meta[i].model_id);
    auto from = predictions.cells().row(*src);
    std::copy(from.begin(), from.end(), cells.row(i).begin());
  }
  PredictionMatrix reordered(std::move(order), predictions.step_count(), std::move(cells), k);
  return Bundle{std::move(moods), std::move(meta), std::move(reordered)};
}

BundleDocuments serialize_bundle(const Bundle& bundle) {
  return {serialize_moods(bundle.moods), serialize_model_meta(bundle.meta, bundle.moods),
          serialize_predictions(bundle.predictions, bundle.moods)};
}

Bundle parse_bundle(const BundleDocuments& docs) {
  MoodSet moods = parse_moods(docs.moods_csv);
  auto meta = parse_model_meta(docs.meta_csv, moods);
  auto predictions = parse_predictions(docs.predictions_csv, moods);
  return make_bundle(std::move(moods), std::move(meta), predictions);
}

std::string serialize_bundle_json(const Bundle& bundle) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["moods"] = ordered_json::array();
  for (const auto& mood : bundle.moods.moods()) {
    doc["moods"].push_back({{"label", mood.label}, {"color", mood.color}});
  }
  doc["models"] = ordered_json::array();
  const std::size_t k = bundle.moods.size();
  for (const auto& m : bundle.meta) {
    ordered_json confusion = ordered_json::array();
    for (std::size_t t = 0; t < k; ++t) {
      ordered_json row = ordered_json::array();
      for (std::size_t p = 0; p < k; ++p) row.push_back(m.confusion.at(t, p));
      confusion.push_back(std::move(row));
    }
    doc["models"].push_back({{"model_id", m.model_id},
                             {"method", m.method},
                             {"interval_length", m.interval_length},
                             {"overall_accuracy", m.overall_accuracy},
                             {"confusion", std::move(confusion)}});
  }
  doc["predictions"] = ordered_json::array();
  const auto& pm = bundle.predictions;
  for (std::size_t i = 0; i < pm.model_count(); ++i) {
    for (std::size_t t = 0; t < pm.step_count(); ++t) {
      doc["predictions"].push_back({pm.models()[i], t + 1, bundle.moods[pm.at(i, t)].label});
    }
  }
  return doc.dump(1) + "\n";
}

Bundle parse_bundle_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedRow, e.what());
  }
  try {
    std::vector<MoodSpec> specs;
    for (const auto& m : doc.at("moods")) specs.push_back({m.at("label").get<std::string>(), m.at("color").get<std::string>()});
    MoodSet moods(specs);
    const std::size_t k = moods.size();

    std::vector<ModelMeta> meta;
    for (const auto& entry : doc.at("models")) {
      ModelMeta m;
      m.model_id = entry.at("model_id").get<std::string>();
      m.method = entry.at("method").get<std::string>();
      m.interval_length = entry.at("interval_length").get<std::int64_t>();
      m.overall_accuracy = entry.at("overall_accuracy").get<double>();
      const auto& rows = entry.at("confusion");
      if (rows.size() != k) throw Error(ErrorCode::WrongColumnCount, "model '" + m.model_id + "' confusion rows != k");
      Grid<std::int64_t> counts(k, k);
      for (std::size_t t = 0; t < k; ++t) {
        if (rows[t].size() != k) {
          throw Error(ErrorCode::WrongColumnCount, "model '" + m.model_id + "' confusion columns != k");
        }
        for (std::size_t p = 0; p < k; ++p) counts(t, p) = rows[t][p].get<std::int64_t>();
      }
      m.confusion = ConfusionMatrix(std::move(counts));
      meta.push_back(std::move(m));
    }

    // Route predictions through the CSV parser so both formats share one
    // set of completeness rules.
    std::string csv = "model_id,time_step,mood\n";
    for (const auto& row : doc.at("predictions")) {
      if (!row.is_array() || row.size() != 3) throw Error(ErrorCode::MalformedRow, "prediction entry must be [model_id, step, mood]");
      csv += csv_escape(row[0].get<std::string>()) + "," + std::to_string(row[1].get<std::int64_t>()) + "," +
             csv_escape(row[2].get<std::string>()) + "\n";
    }
    auto predictions = parse_predictions(csv, moods);
    return make_bundle(std::move(moods), std::move(meta), predictions);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRow, e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace fluxriver
