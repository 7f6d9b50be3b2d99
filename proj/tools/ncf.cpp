#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "experiments.hpp"

namespace fs = std::filesystem;
using ncf::cli::json;

namespace {

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  return json::parse(in);
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct Options {
  std::string config;
  std::string out = ".";
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool force = false;
};

int run_calibrate(const Options& o) {
  const fs::path dir(o.out);
  const fs::path file = dir / "calibration.json";
  if (fs::exists(file) && !o.force) {
    std::cerr << "ncf: " << file.string() << " already exists; pass --force to overwrite\n";
    return 3;
  }
  json cal = ncf::cli::compute_calibration();
  for (const auto& [k, v] : cal.at("residuals").items())
    if (v.get<double>() > 1e-8) {
      std::cerr << "ncf: calibration residual " << k << " = " << v.get<double>() << " exceeds 1e-8; nothing written\n";
      return 1;
    }
  cal["created"] = utc_now();
  cal["toolkit_version"] = NCF_VERSION;
  fs::create_directories(dir);
  // write through a temporary so an interrupted run leaves no partial file
  const fs::path tmp = dir / "calibration.json.tmp";
  write_text(tmp, cal.dump(2) + "\n");
  fs::rename(tmp, file);
  std::cout << "c2 = " << ncf::cli::format_double(cal["c2"]) << "\nbessel_const = "
            << ncf::cli::format_double(cal["bessel_const"]) << "\nwrote " << file.string() << "\n";
  return 0;
}

int run_experiment(const ncf::cli::Experiment& e, const Options& o) {
  json overrides = json::object();
  if (!o.config.empty()) overrides = read_json(o.config);
  const json params = ncf::cli::merge_params(e.defaults, overrides);

  const fs::path dir(o.out);
  std::optional<ncf::cli::Calibration> cal;
  if (e.needs_calibration) {
    const fs::path file = dir / "calibration.json";
    if (!fs::exists(file)) {
      std::cerr << "ncf: " << e.name << " needs " << file.string() << "; run `ncf calibrate --out " << o.out
                << "` first\n";
      return 4;
    }
    cal = ncf::cli::parse_calibration(read_json(file));
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto result = e.run(params, o.seed, cal);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  fs::create_directories(dir);
  const fs::path data = dir / (e.name + "." + o.format);
  if (o.format == "csv") write_text(data, result.table.to_csv());
  else write_text(data, result.table.to_json().dump(2) + "\n");
  json extra = json::array();
  for (const auto& [suffix, body] : result.extra_files) {
    const fs::path p = dir / (e.name + "." + suffix + ".json");
    write_text(p, body.dump(2) + "\n");
    extra.push_back(p.filename().string());
  }

  json manifest = {{"experiment", e.name},
                   {"schema_version", e.schema_version},
                   {"toolkit_version", NCF_VERSION},
                   {"parameters", params},
                   {"seed", o.seed},
                   {"rng", e.randomized ? "std::mt19937_64" : "none"},
                   {"format", o.format},
                   {"columns", result.table.columns},
                   {"rows", result.table.rows.size()},
                   {"calibration", cal ? cal->raw : json(nullptr)},
                   {"extra_files", extra},
                   {"notes", result.notes},
                   {"all_pass", result.all_pass},
                   {"wall_time_s", wall}};
  write_text(dir / (e.name + ".manifest.json"), manifest.dump(2) + "\n");

  std::cout << e.name << ": " << result.table.rows.size() << " rows, " << (result.all_pass ? "all pass" : "FAILURES")
            << ", " << wall << " s -> " << data.string() << "\n";
  return result.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments for Fourier analysis on compact groups and the motion group M(2)"};
  app.set_version_flag("--version", std::string(NCF_VERSION));
  app.require_subcommand(1);

  Options o;
  auto common = [&o](CLI::App* sub, bool config) {
    if (config) sub->add_option("--config", o.config, "JSON object overriding experiment parameters")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory (also where calibration.json lives)");
    if (config) {
      sub->add_option("--format", o.format, "table format")->check(CLI::IsMember({"csv", "json"}));
      sub->add_option("--seed", o.seed, "seed for std::mt19937_64");
    }
  };

  auto* cal = app.add_subcommand("calibrate", "compute c2 and the circle constant, write calibration.json");
  common(cal, false);
  cal->add_flag("--force", o.force, "overwrite an existing calibration.json");

  auto* list = app.add_subcommand("list", "list experiments and their default parameters");

  std::vector<std::pair<CLI::App*, const ncf::cli::Experiment*>> subs;
  for (const auto& e : ncf::cli::registry()) {
    auto* s = app.add_subcommand(e.name, e.needs_calibration ? "experiment (needs calibration.json)" : "experiment");
    common(s, true);
    subs.push_back({s, &e});
  }

  if (argc > 1 && argv[1][0] != '-' && std::string(argv[1]) != "calibrate" && std::string(argv[1]) != "list" &&
      !ncf::cli::find_experiment(argv[1])) {
    std::cerr << "ncf: unknown experiment '" << argv[1] << "'; known:";
    for (const auto& e : ncf::cli::registry()) std::cerr << " " << e.name;
    std::cerr << "\n";
    return 2;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cal) return run_calibrate(o);
    if (*list) {
      for (const auto& e : ncf::cli::registry()) std::cout << e.name << " " << e.defaults.dump() << "\n";
      return 0;
    }
    for (const auto& [s, e] : subs)
      if (*s) return run_experiment(*e, o);
  } catch (const std::exception& ex) {
    std::cerr << "ncf: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
