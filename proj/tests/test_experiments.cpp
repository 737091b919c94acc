#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rclab/experiments.hpp"
#include "test_support.hpp"

using namespace rclab;
using namespace rclab::experiments;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& leaf) {
  fs::path dir = fs::temp_directory_path() / "rclab_test_experiments" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Small sample volumes: these cases exercise plumbing and verdicts, not the
// full-accuracy thresholds (the acceptance binary runs those).
Config smoke_config(const std::string& out_leaf) {
  Config cfg;
  cfg.n_pairs = 40;
  cfg.t_steps = 17;
  cfg.kernel_samples = 200;
  cfg.cross_check_samples = 50;
  cfg.composition_samples = 60;
  cfg.out_dir = fresh_dir(out_leaf).string();
  return cfg;
}

bool all_pass(const SuiteResult& res) {
  for (const SuiteItem& it : res.items)
    if (it.status != ItemStatus::Pass) return false;
  return !res.items.empty();
}

int run_cli(const std::vector<std::string>& args, std::string* captured = nullptr) {
  std::vector<std::string> argv_store = args;
  argv_store.insert(argv_store.begin(), "rclab");
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());
  std::stringstream out;
  std::streambuf* old = std::cout.rdbuf(out.rdbuf());
  int code = cli_main(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  if (captured) *captured = out.str();
  return code;
}

}  // namespace

TEST_CASE("kernel suite passes and names every manifold kind") {
  Config cfg = smoke_config("kernel");
  SuiteResult res = run_kernel_suite(cfg);
  CHECK(res.suite == "kernel");
  CHECK(all_pass(res));
  for (const char* name :
       {"round_trip_euclidean_3", "round_trip_sphere_2", "round_trip_hyperbolic_2",
        "round_trip_chart_sphere2", "round_trip_runtime", "chart_cross_check"}) {
    const SuiteItem* it = res.find(name);
    REQUIRE(it != nullptr);
    CHECK(it->status == ItemStatus::Pass);
  }
  const SuiteItem* chart = res.find("round_trip_chart_sphere2");
  CHECK(chart->details.at("tolerance").get<double>() == 1e-6);
  CHECK(chart->details.at("max_coord_error").get<double>() <= 1e-6);
  const SuiteItem* exact = res.find("round_trip_sphere_2");
  CHECK(exact->details.at("tolerance").get<double>() == 1e-9);
  CHECK(fs::exists(fs::path(cfg.out_dir) / "kernel.json"));
}

TEST_CASE("counterexample suite reproduces the bent-arc numbers") {
  Config cfg = smoke_config("counterexample");
  cfg.t_steps = 65;
  SuiteResult res = run_counterexample_sphere(cfg);
  CHECK(all_pass(res));

  double gap = std::acos((1.0 + std::sqrt(0.5)) / std::sqrt(3.0));
  const SuiteItem* dev = res.find("deviation_exceeds_threshold");
  REQUIRE(dev != nullptr);
  double measured = dev->details.at("deviation_rad").get<double>();
  CHECK(measured > 0.1);
  CHECK(std::fabs(measured - gap) <= 0.01);

  const SuiteItem* control = res.find("euclidean_control");
  REQUIRE(control != nullptr);
  CHECK(control->details.at("deviation").get<double>() < 1e-9);

  std::string csv = slurp(fs::path(cfg.out_dir) / "counterexample_sphere.csv");
  CHECK(csv.rfind("x,y,z,label\n", 0) == 0);
  CHECK(csv.find(",arc\n") != std::string::npos);
  CHECK(csv.find(",contracted\n") != std::string::npos);
  CHECK(csv.find(",geodesic\n") != std::string::npos);

  std::string svg = slurp(fs::path(cfg.out_dir) / "counterexample_sphere.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  size_t polylines = 0;
  for (size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos)
    ++polylines;
  CHECK(polylines == 3);

  // no stray temp files from the atomic writes
  for (const auto& entry : fs::directory_iterator(cfg.out_dir))
    CHECK(entry.path().filename().string().find(".tmp-") == std::string::npos);
}

TEST_CASE("counterexample midpoint item is report-only away from the half contraction") {
  Config cfg = smoke_config("counterexample_l8");
  cfg.lambda = 0.8;
  SuiteResult res = run_counterexample_sphere(cfg);
  const SuiteItem* gap = res.find("midpoint_gap_reproduced");
  REQUIRE(gap != nullptr);
  CHECK(gap->status == ItemStatus::ReportOnly);
  CHECK(res.passed());
}

TEST_CASE("proposition suite passes at smoke volume with the expected roster") {
  Config cfg = smoke_config("propositions");
  SuiteResult res = run_proposition_suite(cfg);
  CHECK(all_pass(res));
  CHECK(res.items.size() == 19);
  for (const char* name :
       {"composition_identity_euclidean_3", "composition_identity_sphere_2",
        "composition_identity_hyperbolic_2", "composition_identity_chart_sphere2",
        "radial_scaling_euclidean_3", "radial_scaling_sphere_2", "radial_scaling_hyperbolic_2",
        "radial_scaling_chart_sphere2", "segment_collinearity", "iterated_contraction_cap",
        "iterated_contraction_ball", "iterated_contraction_hemisphere_pair",
        "intersection_closure_caps", "intersection_closure_balls", "convexity_transfer_ball",
        "convexity_transfer_cap", "nonconvex_scene_fails_both", "threshold_euclidean_outlier",
        "threshold_hemisphere_pair"}) {
    const SuiteItem* it = res.find(name);
    REQUIRE_MESSAGE(it != nullptr, name);
    CHECK(it->status == ItemStatus::Pass);
  }
}

TEST_CASE("scene runners give the advertised verdicts") {
  Config cfg = smoke_config("scenes");

  SuiteResult ex2 = run_scene(cfg, "example2");
  CHECK(ex2.suite == "scene_example2");
  REQUIRE(ex2.find("p_lambda_refuted_all_grid") != nullptr);
  CHECK(ex2.find("p_lambda_refuted_all_grid")->status == ItemStatus::Pass);
  CHECK(ex2.find("star_shaped_report")->status == ItemStatus::ReportOnly);
  CHECK(ex2.passed());

  SuiteResult hemi = run_scene(cfg, "hemisphere-two-points");
  CHECK(hemi.find("holds_at_half")->status == ItemStatus::Pass);
  CHECK(hemi.find("refuted_at_095")->status == ItemStatus::Pass);
  CHECK(hemi.find("threshold_near_three_quarters")->status == ItemStatus::Pass);

  SuiteResult fin = run_scene(cfg, "finite-set");
  CHECK(fin.find("refuted_below_one")->status == ItemStatus::Pass);
  CHECK(fin.find("lambda_one_report")->status == ItemStatus::ReportOnly);

  SuiteResult ex1 = run_scene(cfg, "example1");
  CHECK(ex1.suite == "scene_example1");
  CHECK(ex1.passed());

  CHECK_THROWS_AS(run_scene(cfg, "no-such-scene"), std::invalid_argument);

  for (const char* leaf : {"scene_example2.json", "scene_hemisphere_two_points.json",
                           "scene_finite_set.json", "scene_example1.json"})
    CHECK(fs::exists(fs::path(cfg.out_dir) / leaf));
}

TEST_CASE("verify aggregates every suite and reruns byte-identically") {
  Config cfg1 = smoke_config("verify_a");
  Config cfg2 = smoke_config("verify_b");
  SuiteResult r1 = run_verify(cfg1);
  SuiteResult r2 = run_verify(cfg2);
  CHECK(r1.passed());
  CHECK(r1.items.size() == r2.items.size());

  std::string j1 = slurp(fs::path(cfg1.out_dir) / "verify.json");
  std::string j2 = slurp(fs::path(cfg2.out_dir) / "verify.json");
  CHECK(j1 == j2);

  // every absorbed item carries its suite prefix
  CHECK(r1.find("kernel/round_trip_euclidean_3") != nullptr);
  CHECK(r1.find("counterexample_sphere/deviation_exceeds_threshold") != nullptr);
  CHECK(r1.find("propositions/segment_collinearity") != nullptr);
  CHECK(r1.find("scene_example2/p_lambda_refuted_all_grid") != nullptr);
  CHECK(r1.find("scene_hemisphere_two_points/holds_at_half") != nullptr);
  CHECK(r1.find("scene_finite_set/refuted_below_one") != nullptr);

  // the per-suite reports were written alongside the aggregate
  for (const char* leaf : {"kernel.json", "counterexample_sphere.json", "propositions.json",
                           "scene_example2.json", "scene_hemisphere_two_points.json",
                           "scene_finite_set.json", "verify.json"})
    CHECK(fs::exists(fs::path(cfg1.out_dir) / leaf));
}

TEST_CASE("suite json carries verdict fields round-trippable by any reader") {
  Config cfg = smoke_config("json_shape");
  SuiteResult res = run_scene(cfg, "finite-set");
  nlohmann::json j = res.to_json();
  CHECK(j.at("suite") == "scene_finite_set");
  CHECK(j.at("passed").get<bool>());
  REQUIRE(j.at("items").is_array());
  for (const auto& item : j.at("items")) {
    CHECK(item.contains("name"));
    CHECK(item.contains("status"));
    CHECK(item.contains("claim"));
    CHECK(item.contains("details"));
    std::string st = item.at("status").get<std::string>();
    CHECK((st == "pass" || st == "fail" || st == "report-only"));
  }
  CHECK(j.dump().find("wall") == std::string::npos);
}

TEST_CASE("write_file_atomic creates parents and leaves no temp files") {
  fs::path dir = fresh_dir("atomic");
  fs::path target = dir / "a" / "b" / "report.json";
  write_file_atomic(target.string(), "{}\n");
  CHECK(slurp(target) == "{}\n");
  write_file_atomic(target.string(), "{\"k\":1}\n");
  CHECK(slurp(target) == "{\"k\":1}\n");
  size_t entries = 0;
  for (const auto& entry : fs::directory_iterator(target.parent_path())) {
    static_cast<void>(entry);
    ++entries;
  }
  CHECK(entries == 1);
}

TEST_CASE("cli: contract matches the hand computation") {
  fs::path dir = fresh_dir("cli_contract");
  fs::path out = dir / "contracted.txt";
  std::string stdout_text;
  int code = run_cli({"contract", "--manifold", "euclidean:2", "--p", "0", "0", "--lambda",
                      "0.5", "--point", "2", "0"},
                     &stdout_text);
  CHECK(code == 0);
  CHECK(stdout_text == "1 0\n");

  code = run_cli({"contract", "--manifold", "euclidean:2", "--p", "0", "0", "--lambda", "0.5",
                  "--point", "2", "0", "--format", "csv", "--out", out.string()});
  CHECK(code == 0);
  CHECK(slurp(out) == "x,y,label\n1,0,contracted\n");
}

TEST_CASE("cli: exit codes separate config errors from failed checks") {
  std::string sink;
  CHECK(run_cli({"contract", "--manifold", "euclidean:2", "--p", "0", "0"}, &sink) == 2);
  CHECK(run_cli({"no-such-command"}, &sink) == 2);
  CHECK(run_cli({"contract", "--manifold", "nosuch:9", "--p", "0", "--point", "1"}, &sink) == 2);
  CHECK(run_cli({"check", "--manifold", "euclidean:2", "--region", "ball 0 0 1", "--pairs",
                 "20", "--t-steps", "9"},
                &sink) == 0);
  // two disjoint balls: geodesic convexity refuted, exit signals the failure
  CHECK(run_cli({"check", "--manifold", "euclidean:2", "--region",
                 "union(ball 0 0 0.5, ball 4 0 0.5)", "--pairs", "20", "--t-steps", "9"},
                &sink) == 1);
}

TEST_CASE("cli: config file fills in flags and the command line wins") {
  fs::path dir = fresh_dir("cli_config");
  fs::path cfg_file = dir / "run.cfg";
  {
    std::ofstream out(cfg_file);
    out << "# scene smoke config\n"
        << "manifold=euclidean:2\n"
        << "p=0 0\n"
        << "lambda=0.25\n"
        << "point=2 0\n";
  }
  std::string stdout_text;
  int code = run_cli({"contract", "--config", cfg_file.string()}, &stdout_text);
  CHECK(code == 0);
  CHECK(stdout_text == "0.5 0\n");

  code = run_cli({"contract", "--config", cfg_file.string(), "--lambda", "0.5"}, &stdout_text);
  CHECK(code == 0);
  CHECK(stdout_text == "1 0\n");

  fs::path underscore_file = dir / "underscore.cfg";
  {
    std::ofstream out(underscore_file);
    out << "manifold=sphere:2\n"
        << "p=0 0 1\n"
        << "x=1 0 0\n"
        << "y=0 1 0\n"
        << "lambda=0.5\n"
        << "t_steps=65\n";
  }
  code = run_cli({"deviation", "--config", underscore_file.string()}, &stdout_text);
  CHECK(code == 0);
  CHECK(stdout_text.substr(0, 7) == "0.16991");

  CHECK(run_cli({"contract", "--config", (dir / "absent.cfg").string()}, &stdout_text) == 2);
}

TEST_CASE("cli: scene and verify run end to end with reduced volumes") {
  fs::path dir = fresh_dir("cli_scene");
  std::string stdout_text;
  int code = run_cli({"scene", "finite-set", "--pairs", "30", "--t-steps", "9", "--out",
                      dir.string()},
                     &stdout_text);
  CHECK(code == 0);
  CHECK(fs::exists(dir / "scene_finite_set.json"));
  nlohmann::json j = nlohmann::json::parse(stdout_text);
  CHECK(j.at("suite") == "scene_finite_set");

  fs::path vdir = fresh_dir("cli_verify");
  code = run_cli({"verify", "--seed", "42", "--pairs", "30", "--t-steps", "9",
                  "--kernel-samples", "150", "--cross-samples", "40", "--comp-samples", "40",
                  "--out", vdir.string()},
                 &stdout_text);
  CHECK(code == 0);
  CHECK(stdout_text.find("verify: ") != std::string::npos);
  CHECK(stdout_text.find(" 0 failed") != std::string::npos);
  CHECK(fs::exists(vdir / "verify.json"));
}

TEST_CASE("cli: deviation prints the sphere gap and check handles predicates") {
  std::string stdout_text;
  int code = run_cli({"deviation", "--manifold", "sphere:2", "--x", "1", "0", "0", "--y", "0",
                      "1", "0", "--p", "0", "0", "1", "--lambda", "0.5"},
                     &stdout_text);
  CHECK(code == 0);
  double dev = std::stod(stdout_text);
  CHECK(dev > 0.1);
  CHECK(std::fabs(dev - std::acos((1.0 + std::sqrt(0.5)) / std::sqrt(3.0))) <= 0.01);

  code = run_cli({"check", "--manifold", "sphere:2", "--region", "hemisphere 0 0 1",
                  "--predicate", "p-lambda", "--p", "0", "0", "1", "--lambda", "0.5", "--pairs",
                  "20", "--t-steps", "9"},
                 &stdout_text);
  CHECK(code == 0);
  nlohmann::json rep = nlohmann::json::parse(stdout_text);
  CHECK(rep.at("verdict") == "holds_on_samples");
  CHECK(rep.at("lambda").get<double>() == 0.5);
}
