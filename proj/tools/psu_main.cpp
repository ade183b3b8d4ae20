#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "psu/psu.h"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr int exit_config = 64;
constexpr int exit_io = 74;

struct Flags {
  std::string config_path;
  std::string metric_file;
  std::string out;
  std::optional<std::string> metric;
  std::optional<double> mass, r_min, r_max, tol, r0, r_body;
  std::optional<int> samples, threads;
  std::vector<double> radii;
  bool trajectory = false;
  bool relaxed = false;
  bool print_json = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "JSON config file");
  sub->add_option("--metric", f.metric, "metric kind (schwarzschild, neck, interior_fluid, star, tabulated)");
  sub->add_option("--metric-file", f.metric_file, "metric description file, e.g. tabulated samples");
  sub->add_option("--mass", f.mass, "mass parameter");
  sub->add_option("--r-min", f.r_min, "inner radius of the domain");
  sub->add_option("--r-max", f.r_max, "outer radius of the domain");
  sub->add_option("--samples", f.samples, "sample count");
  sub->add_option("--tol", f.tol, "tolerance");
  sub->add_option("--out", f.out, "output prefix: writes PREFIX.json, PREFIX.csv, PREFIX.<artifact>");
  sub->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  sub->add_flag("--json", f.print_json, "print the JSON report to stdout (summary moves to stderr)");
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

bool same_file(const std::string& a, const std::string& b) {
  std::error_code ec;
  return fs::weakly_canonical(a, ec) == fs::weakly_canonical(b, ec);
}

Json overrides_from(const Flags& f) {
  Json o = Json::object();
  Json metric = Json::object();
  if (f.metric) metric["kind"] = *f.metric;
  if (!f.metric_file.empty()) metric["file"] = f.metric_file;
  if (f.mass) metric["mass"] = *f.mass;
  if (f.r_min) metric["r_lo"] = *f.r_min;
  if (f.r_max) metric["r_hi"] = *f.r_max;
  if (f.r_body) metric["r_body"] = *f.r_body;
  if (!metric.empty()) o["metric"] = metric;
  if (f.samples) o["samples"] = *f.samples;
  if (f.tol) o["tol"] = *f.tol;
  if (f.threads) o["threads"] = *f.threads;
  if (f.r0) o["r0"] = *f.r0;
  if (!f.radii.empty()) o["radii"] = f.radii;
  if (f.trajectory) o["trajectory"] = true;
  if (f.relaxed) o["relaxed_gates"] = true;
  if (!f.out.empty()) o["out"] = f.out;
  return o;
}

bool write_file(const std::string& path, const char* content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << content;
  out.close();
  return static_cast<bool>(out);
}

int run(const std::string& command, const Flags& f) {
  std::string config_text;
  if (!f.config_path.empty()) {
    auto text = read_file(f.config_path);
    if (!text) {
      std::cerr << "error (io): cannot read config " << f.config_path << "\n";
      return exit_io;
    }
    config_text = std::move(*text);
  }

  std::vector<std::string> outputs;
  if (!f.out.empty()) {
    outputs = {f.out + ".json", f.out + ".csv"};
    for (const auto& input : {f.config_path, f.metric_file}) {
      if (input.empty()) continue;
      for (const auto& o : outputs) {
        if (same_file(o, input)) {
          std::cerr << "error (config): output " << o << " would overwrite input " << input << "\n";
          return exit_config;
        }
      }
    }
  }

  psu_result* result = nullptr;
  const std::string overrides = overrides_from(f).dump();
  if (psu_run_command(command.c_str(), config_text.c_str(), overrides.c_str(), &result) != PSU_OK) {
    std::cerr << "error: " << psu_last_error() << "\n";
    return 70;
  }
  int code = psu_result_exit_code(result);
  const std::string summary = psu_result_summary(result);
  // With --json, stdout carries only the report.
  (code == 0 && !f.print_json ? std::cout : std::cerr) << summary;
  if (f.print_json) std::cout << psu_result_json(result);

  if (!f.out.empty()) {
    bool ok = write_file(outputs[0], psu_result_json(result));
    const std::string csv = psu_result_csv(result);
    if (!csv.empty()) ok = ok && write_file(outputs[1], csv.c_str());
    for (size_t i = 0; i < psu_result_artifact_count(result); ++i) {
      const std::string path = f.out + "." + psu_result_artifact_name(result, i);
      for (const auto& input : {f.config_path, f.metric_file}) {
        if (!input.empty() && same_file(path, input)) {
          std::cerr << "error (config): output " << path << " would overwrite input " << input << "\n";
          psu_result_free(result);
          return exit_config;
        }
      }
      ok = ok && write_file(path, psu_result_artifact_content(result, i));
    }
    if (!ok) {
      std::cerr << "error (io): cannot write outputs under " << f.out << "\n";
      code = exit_io;
    }
  }
  psu_result_free(result);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-sphere uniqueness toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", psu_version());
  Flags f;

  auto* verify = app.add_subcommand("verify", "static vacuum residual scan");
  auto* search = app.add_subcommand("photon-search", "find photon spheres and check trapping");
  auto* audit = app.add_subcommand("audit", "audit the photon-sphere identities at given radii");
  auto* glue = app.add_subcommand("glue", "glue a Schwarzschild neck at a photon sphere and double");
  auto* pipeline = app.add_subcommand("pipeline", "full rigidity pipeline");
  auto* star = app.add_subcommand("star", "very compact constant-density star");
  for (auto* sub : {verify, search, audit, glue, pipeline, star}) add_common(sub, f);

  search->add_flag("--trajectory", f.trajectory, "write a trajectory CSV per photon sphere");
  audit->add_option("--radius", f.radii, "radius to audit (repeatable; default: detected photon spheres)");
  for (auto* sub : {glue, pipeline}) sub->add_option("--r0", f.r0, "gluing radius (default: inner radius)");
  pipeline->add_flag("--relaxed-gates", f.relaxed, "record gate failures instead of refusing");
  star->add_option("--r-body", f.r_body, "body radius R_b");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_config;
  }
  return run(app.get_subcommands().front()->get_name(), f);
}
