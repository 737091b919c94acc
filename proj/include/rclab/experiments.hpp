#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "rclab/convexity.hpp"

namespace rclab::experiments {

struct Config {
  std::uint64_t seed = 42;
  int n_pairs = 200;
  int t_steps = 65;
  double lambda = 0.5;
  std::vector<double> lambda_grid = default_lambda_grid();
  std::string out_dir = "out";
  // Sample volumes for the kernel and algebra checks. Defaults match the
  // shipped thresholds; smaller values give quick smoke runs.
  int kernel_samples = 10000;
  int cross_check_samples = 1000;
  int composition_samples = 1000;
};

enum class ItemStatus { Pass, Fail, ReportOnly };
const char* to_string(ItemStatus s);

struct SuiteItem {
  std::string name;
  ItemStatus status = ItemStatus::Pass;
  std::string claim;       // one-line statement of what the item demonstrates
  nlohmann::json details;  // measured values; everything here is deterministic
};

// wall_seconds is measured but never serialized: reports from equal configs
// must be byte-identical.
struct SuiteResult {
  std::string suite;
  std::vector<SuiteItem> items;
  double wall_seconds = 0;

  bool passed() const;  // no Fail items (ReportOnly never gates)
  const SuiteItem* find(const std::string& name) const;
  nlohmann::json to_json() const;
};

// Each runner writes "<suite>.json" into cfg.out_dir; the sphere
// counterexample also writes CSV samples and an SVG figure.
SuiteResult run_kernel_suite(const Config& cfg);
SuiteResult run_counterexample_sphere(const Config& cfg);
SuiteResult run_proposition_suite(const Config& cfg);
// Bundled scenes: example1, example2, hemisphere-two-points, finite-set.
SuiteResult run_scene(const Config& cfg, const std::string& name);
SuiteResult run_verify(const Config& cfg);  // everything above, one aggregate report

void write_file_atomic(const std::string& path, const std::string& content);

int cli_main(int argc, char** argv);

}  // namespace rclab::experiments
