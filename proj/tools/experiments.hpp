#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ncf::cli {

using json = nlohmann::ordered_json;

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  std::string to_csv() const;
  json to_json() const;
};

// Whatever a run produced besides the table: extra files keyed by suffix
// (written as <experiment>.<suffix>.json) and notes for the manifest.
struct RunResult {
  Table table;
  std::vector<std::pair<std::string, json>> extra_files;
  json notes = json::object();
  bool all_pass = true;
};

struct Calibration {
  double c2 = 0.0;
  double bessel_const = 0.0;
  json raw;
};

struct Experiment {
  std::string name;
  int schema_version = 1;
  bool needs_calibration = false;
  bool randomized = false;
  json defaults;
  std::function<RunResult(const json& params, std::uint64_t seed, const std::optional<Calibration>& cal)> run;
};

const std::vector<Experiment>& registry();
const Experiment* find_experiment(const std::string& name);

// defaults overlaid with `overrides`; unknown keys and type mismatches throw
// std::invalid_argument.
json merge_params(const json& defaults, const json& overrides);

// Calibration constants from the Gaussian and constant-mode oracles.
json compute_calibration();
Calibration parse_calibration(const json& j);

// Rendering of a double with 17 significant digits.
std::string format_double(double v);

}  // namespace ncf::cli
