#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fluxriver/types.hpp"

namespace fluxriver {

// A validated set of moods, model metadata and predictions. The rows of
// `predictions` follow the order of `meta`.
struct Bundle {
  MoodSet moods;
  std::vector<ModelMeta> meta;
  PredictionMatrix predictions;

  bool operator==(const Bundle&) const = default;
};

// Checks that meta and predictions cover the same model ids and reorders the
// prediction rows to match the metadata order.
Bundle make_bundle(MoodSet moods, std::vector<ModelMeta> meta, const PredictionMatrix& predictions);

struct CsvRecord {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

// RFC-4180 reader. Accepts LF or CRLF line endings; blank lines are skipped.
std::vector<CsvRecord> read_csv(std::string_view text);

// Quotes the field when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

// Header `model_id,time_step,mood`; time_step is 1-based. Rows may come in
// any order. The returned matrix lists models in byte-wise id order.
PredictionMatrix parse_predictions(std::string_view text, const MoodSet& moods);

// Header `model_id,method,interval_length,overall_accuracy` followed by k*k
// columns `cm_<true>_<pred>` in canonical mood order (row-major, true-major).
std::vector<ModelMeta> parse_model_meta(std::string_view text, const MoodSet& moods);

// Recovers the canonical mood labels from a metadata header.
std::vector<std::string> infer_mood_labels(std::string_view meta_text);

// Header `label,color`.
MoodSet parse_moods(std::string_view text);

std::string serialize_moods(const MoodSet& moods);
std::string serialize_predictions(const PredictionMatrix& predictions, const MoodSet& moods);
std::string serialize_model_meta(const std::vector<ModelMeta>& meta, const MoodSet& moods);

struct BundleDocuments {
  std::string moods_csv;
  std::string meta_csv;
  std::string predictions_csv;

  bool operator==(const BundleDocuments&) const = default;
};

BundleDocuments serialize_bundle(const Bundle& bundle);
Bundle parse_bundle(const BundleDocuments& docs);

// {"moods": [{label,color}], "models": [...], "predictions": [[id, step, mood], ...]}
std::string serialize_bundle_json(const Bundle& bundle);
Bundle parse_bundle_json(std::string_view text);

// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace fluxriver
