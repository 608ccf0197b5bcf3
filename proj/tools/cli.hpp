#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fluxriver::cli {

// Field names double as the keys of the JSON config file.
struct RunConfig {
  std::string predictions;
  std::string meta;
  std::string moods;
  std::string bundle;
  std::string design = "dualflux";
  std::string weighting = "none";
  std::string basis = "precision";
  bool normalize = false;
  std::string smoothing = "smooth";
  std::string sort = "accuracy";
  std::vector<int> weights;
  bool with_river = false;
  double width = 800.0;
  double height = 240.0;
  double row_height = 2.0;
  int decimal_places = 3;
  std::map<std::string, std::string> palette;
  std::string out;
  std::uint64_t seed = 0;
};

// Reads a JSON config into `base`; unknown keys are rejected.
RunConfig load_config(const std::string& path, RunConfig base = {});

// Exit codes: 0 success, 1 validation or domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fluxriver::cli
