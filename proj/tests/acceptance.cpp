// Acceptance gate: every shipped claim checked at full sample volume, one
// verdict line per criterion. Exits nonzero if any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rclab/experiments.hpp"

using namespace rclab;
using namespace rclab::experiments;
namespace fs = std::filesystem;

namespace {

#ifndef RCLAB_CLI_PATH
#define RCLAB_CLI_PATH ""
#endif

struct Gate {
  std::string label;
  std::function<bool(std::string&)> run;
};

bool item_passes(const SuiteResult& res, const std::string& name, std::string& detail) {
  const SuiteItem* it = res.find(name);
  if (!it) {
    detail += name + " missing; ";
    return false;
  }
  if (it->status == ItemStatus::Fail) {
    detail += name + " failed; ";
    return false;
  }
  return true;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path = argc > 1 ? argv[1] : RCLAB_CLI_PATH;

  fs::path out_root = fs::temp_directory_path() / "rclab_acceptance";
  fs::remove_all(out_root);
  fs::create_directories(out_root);

  Config cfg;  // shipped defaults: seed 42, 200 pairs, 65 steps, k/20 grid,
               // 10000 kernel draws, 1000 cross-check and composition draws
  cfg.out_dir = (out_root / "suites").string();

  std::cout << "running suites at full volume..." << std::endl;
  SuiteResult kernel = run_kernel_suite(cfg);
  SuiteResult counter = run_counterexample_sphere(cfg);
  SuiteResult props = run_proposition_suite(cfg);
  SuiteResult ex2 = run_scene(cfg, "example2");
  SuiteResult hemi = run_scene(cfg, "hemisphere-two-points");
  SuiteResult fin = run_scene(cfg, "finite-set");

  std::vector<Gate> gates;

  gates.push_back({"kernel round-trip, 10000 draws per kind, 1e-9 closed form / 1e-6 chart, "
                   "under 10 s",
                   [&](std::string& d) {
                     bool ok = true;
                     for (const char* name :
                          {"round_trip_euclidean_3", "round_trip_sphere_2",
                           "round_trip_hyperbolic_2", "round_trip_chart_sphere2",
                           "round_trip_runtime"})
                       ok = item_passes(kernel, name, d) && ok;
                     if (const SuiteItem* it = kernel.find("round_trip_chart_sphere2"))
                       d += "chart max err " +
                            fmt(it->details.at("max_coord_error").get<double>());
                     return ok;
                   }});

  gates.push_back({"chart matches embedded closed form on 1000 evaluations within 1e-6",
                   [&](std::string& d) {
                     bool ok = item_passes(kernel, "chart_cross_check", d);
                     if (const SuiteItem* it = kernel.find("chart_cross_check"))
                       d += "max err " +
                            fmt(it->details.at("max_embedded_error").get<double>());
                     return ok;
                   }});

  gates.push_back({"composition identity, 1000 draws per kind, 1e-6",
                   [&](std::string& d) {
                     bool ok = true;
                     for (const char* name :
                          {"composition_identity_euclidean_3", "composition_identity_sphere_2",
                           "composition_identity_hyperbolic_2",
                           "composition_identity_chart_sphere2"})
                       ok = item_passes(props, name, d) && ok;
                     return ok;
                   }});

  gates.push_back({"radial scaling within 1e-6 relative on the same draws",
                   [&](std::string& d) {
                     bool ok = true;
                     for (const char* name :
                          {"radial_scaling_euclidean_3", "radial_scaling_sphere_2",
                           "radial_scaling_hyperbolic_2", "radial_scaling_chart_sphere2"})
                       ok = item_passes(props, name, d) && ok;
                     return ok;
                   }});

  gates.push_back({"planar contraction keeps segments collinear under 1e-9",
                   [&](std::string& d) {
                     bool ok = item_passes(props, "segment_collinearity", d);
                     if (const SuiteItem* it = props.find("segment_collinearity"))
                       d += "max residual " +
                            fmt(it->details.at("max_residual").get<double>());
                     return ok;
                   }});

  gates.push_back(
      {"bent equator arc: deviation over 0.1 rad, closed-form gap matched to 0.01, "
       "planar control under 1e-9",
       [&](std::string& d) {
         bool ok = true;
         for (const char* name : {"deviation_exceeds_threshold", "midpoint_gap_reproduced",
                                  "lambda_one_variant_is_geodesic", "euclidean_control"})
           ok = item_passes(counter, name, d) && ok;
         const SuiteItem* dev = counter.find("deviation_exceeds_threshold");
         if (dev) {
           double v = dev->details.at("deviation_rad").get<double>();
           double gap = std::acos((1.0 + std::sqrt(0.5)) / std::sqrt(3.0));
           ok = ok && v > 0.1 && std::fabs(v - gap) <= 0.01;
           d += "deviation " + fmt(v) + " vs gap " + fmt(gap);
         }
         return ok;
       }});

  gates.push_back(
      {"arc-plus-pole scene refuted at every grid lambda with replaying witnesses; "
       "star verdict reported",
       [&](std::string& d) {
         bool ok = item_passes(ex2, "p_lambda_refuted_all_grid", d);
         const SuiteItem* star = ex2.find("star_shaped_report");
         if (!star) {
           d += "star report missing; ";
           return false;
         }
         ok = ok && star->status == ItemStatus::ReportOnly &&
              star->details.at("verdict") == "refuted";
         d += "star verdict " + star->details.at("verdict").get<std::string>() +
              " (report-only)";
         return ok;
       }});

  gates.push_back(
      {"hemisphere plus two points: holds at 0.5, refuted at 0.95, threshold near 3/4",
       [&](std::string& d) {
         bool ok = true;
         for (const char* name :
              {"holds_at_half", "refuted_at_095", "threshold_near_three_quarters"})
           ok = item_passes(hemi, name, d) && ok;
         if (const SuiteItem* it = hemi.find("threshold_near_three_quarters")) {
           double zeta = it->details.at("zeta_hat").get<double>();
           ok = ok && std::fabs(zeta - 0.75) <= 0.05 + 1e-12;
           d += "zeta_hat " + fmt(zeta);
         }
         return ok;
       }});

  gates.push_back({"unit ball plus outlier: threshold within one grid step of 1/3",
                   [&](std::string& d) {
                     bool ok = item_passes(props, "threshold_euclidean_outlier", d);
                     if (const SuiteItem* it = props.find("threshold_euclidean_outlier")) {
                       double zeta = it->details.at("zeta_hat").get<double>();
                       ok = ok && std::fabs(zeta - 1.0 / 3.0) <= 0.05 + 1e-12;
                       d += "zeta_hat " + fmt(zeta);
                     }
                     return ok;
                   }});

  gates.push_back({"three-point scene refuted for every grid lambda below one",
                   [&](std::string& d) { return item_passes(fin, "refuted_below_one", d); }});

  gates.push_back(
      {"convex scenes stay convex for all grid lambdas from 5 sampled centers each",
       [&](std::string& d) {
         bool ok = item_passes(props, "convexity_transfer_ball", d);
         ok = item_passes(props, "convexity_transfer_cap", d) && ok;
         return ok;
       }});

  gates.push_back(
      {"intersection and iterated suites green; cli verify --seed 42 exits 0 in under 60 s",
       [&](std::string& d) {
         bool ok = true;
         for (const char* name :
              {"iterated_contraction_cap", "iterated_contraction_ball",
               "iterated_contraction_hemisphere_pair", "intersection_closure_caps",
               "intersection_closure_balls"})
           ok = item_passes(props, name, d) && ok;
         if (cli_path.empty() || !fs::exists(cli_path)) {
           d += "cli binary not found at '" + cli_path + "'";
           return false;
         }
         fs::path vdir = out_root / "cli_verify";
         std::string cmd = "'" + cli_path + "' verify --seed 42 --out '" + vdir.string() +
                           "' > '" + (out_root / "cli_verify.log").string() + "' 2>&1";
         auto t0 = std::chrono::steady_clock::now();
         int rc = std::system(cmd.c_str());
         double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                           .count();
         bool exited_zero = rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
         ok = ok && exited_zero && secs < 60.0;
         d += "verify exit " + std::to_string(rc == -1 ? -1 : WEXITSTATUS(rc)) + " in " +
              fmt(secs) + " s";
         return ok;
       }});

  int failures = 0;
  for (size_t i = 0; i < gates.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = gates[i].run(detail);
    } catch (const std::exception& e) {
      detail += std::string("exception: ") + e.what();
    }
    failures += ok ? 0 : 1;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << (i + 1) << ". " << gates[i].label;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
  }
  std::cout << (failures == 0 ? "acceptance: all criteria pass"
                              : "acceptance: " + std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
