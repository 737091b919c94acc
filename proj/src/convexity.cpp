#include "rclab/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "rclab/errors.hpp"
#include "rclab/sampling.hpp"

namespace rclab {

bool holds(const ConvexityReport& r) { return r.verdict == Verdict::HoldsOnSamples; }

bool all_hold(std::span<const ConvexityReport> rs) {
  return std::all_of(rs.begin(), rs.end(), [](const ConvexityReport& r) { return holds(r); });
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid(20);
  for (int k = 1; k <= 20; ++k) grid[k - 1] = k / 20.0;
  return grid;
}

namespace {

void require_counts(int n_pairs, int t_steps) {
  if (n_pairs < 1) throw std::invalid_argument("n_pairs must be at least 1");
  if (t_steps < 2) throw std::invalid_argument("t_steps must be at least 2");
}

double grid_t(int k, int t_steps) { return static_cast<double>(k) / (t_steps - 1); }

// Shared pair walk. When a contraction is given, the geodesic runs between
// the contracted images but the witness keeps the sampled pair, which is what
// a replay needs. Only cut-locus refusals trigger a redraw; everything else
// (missing overrides, invalid inputs) propagates.
ConvexityReport check_pairs(const Region& A, const ContractionMap* c, int n_pairs, int t_steps,
                            std::uint64_t seed) {
  require_counts(n_pairs, t_steps);
  const Manifold& m = A.manifold();
  if (c && !c->manifold().same_space(m))
    throw std::invalid_argument("contraction and region live on different manifolds");

  ConvexityReport rep;
  rep.t_steps = t_steps;
  rep.seed = seed;
  if (c) rep.lambda = c->lambda();

  Rng rng(seed);
  const int resample_cap = 100 + 10 * n_pairs;

  for (int i = 0; i < n_pairs; ++i) {
    Point x, y;
    std::optional<GeodesicSegment> seg;
    while (!seg) {
      x = A.sample(rng);
      y = A.sample(rng);
      try {
        Point cx = c ? c->contract(x) : x;
        Point cy = c ? c->contract(y) : y;
        seg.emplace(m.segment(cx, cy));
      } catch (const CutLocus&) {
        if (++rep.cut_locus_resamples > resample_cap)
          throw SamplerExhausted("pair check: cut-locus redraw cap hit after " +
                                 std::to_string(resample_cap) + " redraws");
      }
    }
    ++rep.pairs_checked;
    for (int k = 0; k < t_steps; ++k) {
      double t = grid_t(k, t_steps);
      Point q = seg->at(t);
      if (!A.contains(q)) {
        rep.verdict = Verdict::Refuted;
        rep.witness = Witness{x, y, t, q};
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace

ConvexityReport is_geodesically_convex(const Region& A, int n_pairs, int t_steps,
                                       std::uint64_t seed) {
  return check_pairs(A, nullptr, n_pairs, t_steps, seed);
}

ConvexityReport is_p_lambda_convex(const Region& A, const ContractionMap& c, int n_pairs,
                                   int t_steps, std::uint64_t seed) {
  return check_pairs(A, &c, n_pairs, t_steps, seed);
}

std::vector<ConvexityReport> is_totally_p_convex(const Region& A, const Point& p,
                                                 const DirectionPolicy& policy,
                                                 std::span<const double> lambda_grid,
                                                 int n_pairs, int t_steps, std::uint64_t seed) {
  std::vector<ConvexityReport> out;
  out.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    ContractionMap c(A.manifold(), p, lambda, policy);
    out.push_back(is_p_lambda_convex(A, c, n_pairs, t_steps, seed));
  }
  return out;
}

ConvexityReport is_star_shaped(const Region& A, const Point& p, const DirectionPolicy& policy,
                               int n_points, int t_steps, std::uint64_t seed) {
  require_counts(n_points, t_steps);
  const Manifold& m = A.manifold();
  m.validate(p);
  if (!A.contains(p)) throw std::invalid_argument("star check: center must belong to the region");

  ConvexityReport rep;
  rep.t_steps = t_steps;
  rep.seed = seed;

  Rng rng(seed);
  const int resample_cap = 100 + 10 * n_points;

  for (int i = 0; i < n_points; ++i) {
    Point x;
    std::optional<TangentVec> v;
    while (!v) {
      x = A.sample(rng);
      try {
        v = policy.direction(m, p, x);
      } catch (const CutLocus&) {
        if (++rep.cut_locus_resamples > resample_cap)
          throw SamplerExhausted("star check: cut-locus redraw cap hit after " +
                                 std::to_string(resample_cap) + " redraws");
      }
    }
    ++rep.pairs_checked;
    for (int k = 0; k < t_steps; ++k) {
      double t = grid_t(k, t_steps);
      Point q = m.exp(TangentVec(v->base, Vec(t * v->vec)));
      if (!A.contains(q)) {
        rep.verdict = Verdict::Refuted;
        rep.witness = Witness{p, x, t, q};
        return rep;
      }
    }
  }
  return rep;
}

double geodesic_deviation(const Manifold& m, std::span<const Point> curve, int t_steps) {
  if (curve.size() < 2) throw std::invalid_argument("geodesic_deviation: curve needs two samples");
  if (t_steps < 2) throw std::invalid_argument("t_steps must be at least 2");
  GeodesicSegment seg = m.segment(curve.front(), curve.back());
  std::vector<Point> grid;
  grid.reserve(t_steps);
  for (int k = 0; k < t_steps; ++k) grid.push_back(seg.at(grid_t(k, t_steps)));

  double dev = 0;
  for (const Point& s : curve) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& g : grid) best = std::min(best, m.dist(s, g));
    dev = std::max(dev, best);
  }
  return dev;
}

ThresholdReport contraction_threshold(const Region& A, const Point& p,
                                      const DirectionPolicy& policy,
                                      std::vector<double> lambda_grid, int n_pairs, int t_steps,
                                      std::uint64_t seed, double probe_radius) {
  const Manifold& m = A.manifold();
  m.validate(p);
  if (lambda_grid.empty()) throw std::invalid_argument("lambda grid must be nonempty");
  std::sort(lambda_grid.begin(), lambda_grid.end());
  for (double l : lambda_grid)
    if (!(l > 0) || l > 1) throw std::invalid_argument("lambda grid values must lie in (0, 1]");
  if (!(probe_radius > 0)) throw std::invalid_argument("probe radius must be positive");

  // Interiority probe: the center and a small geodesic sphere around it must
  // all sit inside the region.
  if (!A.contains(p)) throw NotInterior("threshold center lies outside the region");
  Rng probe_rng(seed ^ 0x9e3779b97f4a7c15ull);
  for (int j = 0; j < 16; ++j) {
    TangentVec dir = random_unit_tangent(m, p, probe_rng);
    dir.vec *= probe_radius;
    if (!A.contains(m.exp(dir)))
      throw NotInterior("threshold center is not interior at probe radius " +
                        std::to_string(probe_radius));
  }

  // Evaluated from the top of the grid down; reported ascending.
  ThresholdReport rep;
  rep.lambda_grid = lambda_grid;
  rep.reports.resize(lambda_grid.size());
  for (size_t k = lambda_grid.size(); k-- > 0;) {
    ContractionMap c(m, p, lambda_grid[k], policy);
    rep.reports[k] = is_p_lambda_convex(A, c, n_pairs, t_steps, seed);
  }
  rep.zeta_hat = 0;
  for (size_t k = 0; k < rep.reports.size() && holds(rep.reports[k]); ++k)
    rep.zeta_hat = rep.lambda_grid[k];
  return rep;
}

std::vector<Point> inner_convex_set(std::span<const Point> pts, const ContractionMap& c,
                                    int t_steps) {
  if (pts.empty()) throw std::invalid_argument("inner_convex_set: needs at least one point");
  if (t_steps < 2) throw std::invalid_argument("t_steps must be at least 2");
  const Manifold& m = c.manifold();
  std::vector<Point> xs = c.contract_set(pts);

  std::vector<Point> out;
  out.reserve(xs.size() + xs.size() * (xs.size() - 1) / 2 * t_steps);
  for (size_t i = 0; i < xs.size(); ++i) {
    out.push_back(xs[i]);
    for (size_t j = i + 1; j < xs.size(); ++j) {
      std::optional<GeodesicSegment> seg;
      try {
        seg.emplace(m.segment(xs[i], xs[j]));
      } catch (const CutLocus& e) {
        throw CutLocus("pair (" + std::to_string(i) + ", " + std::to_string(j) + "): " + e.what());
      }
      for (int k = 0; k < t_steps; ++k) out.push_back(seg->at(grid_t(k, t_steps)));
    }
  }
  return out;
}

}  // namespace rclab
