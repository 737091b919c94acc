#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rclab/errors.hpp"
#include "rclab/experiments.hpp"
#include "rclab/report_json.hpp"

namespace rclab::experiments {

namespace {

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Point make_point(const std::vector<double>& coords, const char* what) {
  if (coords.empty()) throw std::invalid_argument(std::string(what) + ": no coordinates given");
  Vec v(static_cast<int>(coords.size()));
  for (size_t i = 0; i < coords.size(); ++i) v[static_cast<int>(i)] = coords[i];
  return Point(std::move(v));
}

// One point per nonempty line, coordinates separated by whitespace or commas.
// Lines starting with # are comments.
std::vector<Point> read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open points file " + path);
  std::vector<Point> pts;
  std::string line;
  int dim = -1;
  while (std::getline(in, line)) {
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ss(line);
    std::vector<double> coords;
    double v;
    while (ss >> v) coords.push_back(v);
    if (coords.empty()) continue;
    if (dim < 0) dim = static_cast<int>(coords.size());
    if (static_cast<int>(coords.size()) != dim)
      throw std::invalid_argument(path + ": inconsistent coordinate counts");
    pts.push_back(make_point(coords, "points file"));
  }
  if (pts.empty()) throw std::invalid_argument(path + ": no points");
  return pts;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file_atomic(out_path, content);
}

std::string points_plain(const std::vector<Point>& pts) {
  std::string s;
  for (const Point& p : pts) {
    for (int i = 0; i < p.size(); ++i) {
      if (i) s += ' ';
      s += fmt17(p[i]);
    }
    s += '\n';
  }
  return s;
}

std::string points_csv(const std::vector<Point>& pts, const std::string& label) {
  const char* names[] = {"x", "y", "z", "w"};
  std::string s;
  int dim = pts.empty() ? 0 : pts[0].size();
  for (int i = 0; i < dim; ++i) {
    s += (i < 4) ? names[i] : ("c" + std::to_string(i));
    s += ',';
  }
  s += "label\n";
  for (const Point& p : pts) {
    for (int i = 0; i < p.size(); ++i) {
      s += fmt17(p[i]);
      s += ',';
    }
    s += label;
    s += '\n';
  }
  return s;
}

nlohmann::json points_json(const std::vector<Point>& pts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Point& p : pts) arr.push_back(to_json(p));
  return arr;
}

void print_suite_summary(const SuiteResult& res) {
  for (const SuiteItem& it : res.items)
    std::cout << to_string(it.status) << "  " << it.name << "\n";
  int failed = 0;
  for (const SuiteItem& it : res.items) failed += it.status == ItemStatus::Fail ? 1 : 0;
  std::cout << res.suite << ": " << res.items.size() << " items, " << failed << " failed\n";
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Flat key=value config: each key mirrors a long flag without the dashes.
// Explicit command-line flags win over file values. Coordinate-list keys are
// split on whitespace/commas; everything else is passed through whole.
void apply_config_file(std::vector<std::string>& args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw std::invalid_argument("--config: missing file path");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  auto given = [&args](const std::string& flag) {
    for (const std::string& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  const std::vector<std::string> list_keys = {"p", "x", "y", "point", "grid"};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front())
      value = value.substr(1, value.size() - 2);
    if (key.empty()) throw std::invalid_argument(path + ": empty key");
    std::replace(key.begin(), key.end(), '_', '-');  // t_steps and t-steps both name --t-steps
    if (key == "config") continue;
    std::string flag = "--" + key;
    if (given(flag)) continue;
    args.push_back(flag);
    if (std::find(list_keys.begin(), list_keys.end(), key) != list_keys.end()) {
      for (char& ch : value)
        if (ch == ',') ch = ' ';
      std::istringstream ss(value);
      std::string tok;
      while (ss >> tok) args.push_back(tok);
    } else {
      args.push_back(value);
    }
  }
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"radial contraction and convexity experiments"};
  app.require_subcommand(1);

  // Shared knobs; each subcommand registers the ones it honors.
  Config cfg;
  std::string manifold_spec = "sphere:2";
  std::vector<double> p_coords, x_coords, y_coords, point_coords;
  std::string region_spec, points_path, curve_path, out_path, format = "plain";
  std::string predicate = "geodesic";
  std::string scene_name;
  double boundary_tol = -1;

  std::string config_path_display;  // handled before parsing; shown in help
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "rng seed");
    sub->add_option("--pairs", cfg.n_pairs, "sampled pairs per check");
    sub->add_option("--t-steps", cfg.t_steps, "samples along each geodesic");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path_display, "flat key=value file mirroring the flags");
    sub->add_option("--out", out_path, "output file (default: stdout)");
  };

  CLI::App* contract = app.add_subcommand("contract", "apply a radial contraction");
  contract->add_option("--manifold", manifold_spec, "manifold spec, e.g. euclidean:2");
  contract->add_option("--p", p_coords, "base point coordinates")->expected(-1);
  contract->add_option("--lambda", cfg.lambda, "contraction factor");
  contract->add_option("--point", point_coords, "a single point to contract")->expected(-1);
  contract->add_option("--points", points_path, "file of points, one per line");
  contract->add_option("--curve", curve_path, "file of curve samples, one per line");
  contract->add_option("--format", format, "plain | csv | json")
      ->check(CLI::IsMember({"plain", "csv", "json"}));
  add_common(contract);

  CLI::App* check = app.add_subcommand("check", "run a convexity predicate on a region");
  check->add_option("--manifold", manifold_spec, "manifold spec");
  check->add_option("--region", region_spec, "region spec, e.g. 'ball 0 0 1'")->required();
  check->add_option("--predicate", predicate, "geodesic | p-lambda | star | totally")
      ->check(CLI::IsMember({"geodesic", "p-lambda", "star", "totally"}));
  check->add_option("--p", p_coords, "base point coordinates")->expected(-1);
  check->add_option("--lambda", cfg.lambda, "contraction factor for p-lambda");
  check->add_option("--grid", cfg.lambda_grid, "lambda grid for totally")->expected(-1);
  check->add_option("--boundary-tol", boundary_tol, "membership slack override");
  add_sampling(check);
  add_common(check);

  CLI::App* deviation = app.add_subcommand(
      "deviation", "deviation of a contracted geodesic from the straight one");
  deviation->add_option("--manifold", manifold_spec, "manifold spec");
  deviation->add_option("--x", x_coords, "first endpoint")->expected(-1);
  deviation->add_option("--y", y_coords, "second endpoint")->expected(-1);
  deviation->add_option("--p", p_coords, "contraction center")->expected(-1);
  deviation->add_option("--lambda", cfg.lambda, "contraction factor");
  deviation->add_option("--curve", curve_path, "measure a sampled curve from file instead");
  deviation->add_option("--t-steps", cfg.t_steps, "samples along each geodesic");
  add_common(deviation);

  CLI::App* threshold = app.add_subcommand("threshold", "estimate the contraction threshold");
  threshold->add_option("--manifold", manifold_spec, "manifold spec");
  threshold->add_option("--region", region_spec, "region spec")->required();
  threshold->add_option("--p", p_coords, "base point coordinates")->required()->expected(-1);
  threshold->add_option("--grid", cfg.lambda_grid, "lambda grid")->expected(-1);
  threshold->add_option("--boundary-tol", boundary_tol, "membership slack override");
  add_sampling(threshold);
  add_common(threshold);

  CLI::App* inner = app.add_subcommand("inner-set", "contracted web of a finite point set");
  inner->add_option("--manifold", manifold_spec, "manifold spec");
  inner->add_option("--points", points_path, "file of points, one per line")->required();
  inner->add_option("--p", p_coords, "base point coordinates")->required()->expected(-1);
  inner->add_option("--lambda", cfg.lambda, "contraction factor");
  inner->add_option("--t-steps", cfg.t_steps, "samples along each pairwise geodesic");
  inner->add_option("--format", format, "plain | csv | json")
      ->check(CLI::IsMember({"plain", "csv", "json"}));
  add_common(inner);

  CLI::App* verify = app.add_subcommand("verify", "run every bundled suite");
  verify->add_option("--lambda", cfg.lambda, "contraction factor for fixed-lambda items");
  verify->add_option("--grid", cfg.lambda_grid, "lambda grid")->expected(-1);
  verify->add_option("--kernel-samples", cfg.kernel_samples, "round-trip draws per kind");
  verify->add_option("--cross-samples", cfg.cross_check_samples, "chart cross-check draws");
  verify->add_option("--comp-samples", cfg.composition_samples, "composition draws per kind");
  add_sampling(verify);
  verify->add_option("--config", config_path_display, "flat key=value file mirroring the flags");
  verify->add_option("--out", cfg.out_dir, "report directory (default: out)");

  CLI::App* scene = app.add_subcommand("scene", "run a bundled scene by name");
  scene->add_option("name", scene_name,
                    "example1 | example2 | hemisphere-two-points | finite-set")
      ->required();
  scene->add_option("--lambda", cfg.lambda, "contraction factor for fixed-lambda items");
  scene->add_option("--grid", cfg.lambda_grid, "lambda grid")->expected(-1);
  add_sampling(scene);
  scene->add_option("--config", config_path_display, "flat key=value file mirroring the flags");
  scene->add_option("--out", cfg.out_dir, "report directory (default: out)");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    apply_config_file(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*contract) {
      Manifold m = Manifold::from_spec(manifold_spec);
      ContractionMap c(m, make_point(p_coords, "--p"), cfg.lambda);
      std::vector<Point> input;
      if (!point_coords.empty()) input.push_back(make_point(point_coords, "--point"));
      if (!points_path.empty()) {
        std::vector<Point> filed = read_points_file(points_path);
        input.insert(input.end(), filed.begin(), filed.end());
      }
      if (!curve_path.empty()) {
        std::vector<Point> filed = read_points_file(curve_path);
        input.insert(input.end(), filed.begin(), filed.end());
      }
      if (input.empty())
        throw std::invalid_argument("contract: give --point, --points, or --curve");
      std::vector<Point> out = c.contract_curve(input);
      if (format == "csv")
        emit(points_csv(out, "contracted"), out_path);
      else if (format == "json")
        emit(points_json(out).dump(2) + "\n", out_path);
      else
        emit(points_plain(out), out_path);
      return 0;
    }

    if (*check) {
      Manifold m = Manifold::from_spec(manifold_spec);
      Region A = Region::parse(m, region_spec);
      if (boundary_tol > 0) A.set_boundary_tol(boundary_tol);
      nlohmann::json out;
      bool ok = false;
      if (predicate == "geodesic") {
        ConvexityReport r = is_geodesically_convex(A, cfg.n_pairs, cfg.t_steps, cfg.seed);
        ok = holds(r);
        out = to_json(r);
      } else {
        Point p = make_point(p_coords, "--p");
        if (predicate == "p-lambda") {
          ConvexityReport r = is_p_lambda_convex(A, ContractionMap(m, p, cfg.lambda),
                                                 cfg.n_pairs, cfg.t_steps, cfg.seed);
          ok = holds(r);
          out = to_json(r);
        } else if (predicate == "star") {
          ConvexityReport r = is_star_shaped(A, p, DirectionPolicy::canonical(), cfg.n_pairs,
                                             cfg.t_steps, cfg.seed);
          ok = holds(r);
          out = to_json(r);
        } else {
          std::vector<ConvexityReport> rs =
              is_totally_p_convex(A, p, DirectionPolicy::canonical(), cfg.lambda_grid,
                                  cfg.n_pairs, cfg.t_steps, cfg.seed);
          ok = all_hold(rs);
          out = nlohmann::json::array();
          for (size_t k = 0; k < rs.size(); ++k)
            out.push_back({{"lambda", cfg.lambda_grid[k]}, {"report", to_json(rs[k])}});
        }
      }
      emit(out.dump(2) + "\n", out_path);
      return ok ? 0 : 1;
    }

    if (*deviation) {
      Manifold m = Manifold::from_spec(manifold_spec);
      std::vector<Point> curve;
      if (!curve_path.empty()) {
        curve = read_points_file(curve_path);
      } else {
        if (x_coords.empty() || y_coords.empty() || p_coords.empty())
          throw std::invalid_argument("deviation: give --x, --y, --p (or --curve)");
        Point x = make_point(x_coords, "--x");
        Point y = make_point(y_coords, "--y");
        Point p = make_point(p_coords, "--p");
        std::vector<Point> arc;
        for (int k = 0; k < cfg.t_steps; ++k)
          arc.push_back(m.geodesic_point(x, y, double(k) / (cfg.t_steps - 1)));
        curve = ContractionMap(m, p, cfg.lambda).contract_curve(arc);
      }
      double dev = geodesic_deviation(m, curve, cfg.t_steps);
      emit(fmt17(dev) + "\n", out_path);
      return 0;
    }

    if (*threshold) {
      Manifold m = Manifold::from_spec(manifold_spec);
      Region A = Region::parse(m, region_spec);
      if (boundary_tol > 0) A.set_boundary_tol(boundary_tol);
      ThresholdReport th =
          contraction_threshold(A, make_point(p_coords, "--p"), DirectionPolicy::canonical(),
                                cfg.lambda_grid, cfg.n_pairs, cfg.t_steps, cfg.seed);
      emit(to_json(th).dump(2) + "\n", out_path);
      return 0;
    }

    if (*inner) {
      Manifold m = Manifold::from_spec(manifold_spec);
      std::vector<Point> pts = read_points_file(points_path);
      ContractionMap c(m, make_point(p_coords, "--p"), cfg.lambda);
      std::vector<Point> web = inner_convex_set(pts, c, cfg.t_steps);
      if (format == "csv")
        emit(points_csv(web, "inner-set"), out_path);
      else if (format == "json")
        emit(points_json(web).dump(2) + "\n", out_path);
      else
        emit(points_plain(web), out_path);
      return 0;
    }

    if (*verify) {
      SuiteResult res = run_verify(cfg);
      print_suite_summary(res);
      return res.passed() ? 0 : 1;
    }

    if (*scene) {
      SuiteResult res = run_scene(cfg, scene_name);
      std::cout << res.to_json().dump(2) << "\n";
      return res.passed() ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidPoint& e) {
    // the kernel only rejects points handed in from outside, so this is an
    // input problem, not a failed check
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace rclab::experiments
