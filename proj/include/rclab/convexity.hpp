#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rclab/contraction.hpp"
#include "rclab/region.hpp"

namespace rclab {

// Sampled verdicts are one-sided: Refuted comes with a replayable witness,
// HoldsOnSamples only says no counterexample appeared on the checked grid.
enum class Verdict { HoldsOnSamples, Refuted };

struct Witness {
  Point x, y;   // sampled pair (for star-shapedness, x is the center)
  double t = 0; // parameter along the offending geodesic
  Point point;  // the sample that left the region
};

struct ConvexityReport {
  Verdict verdict = Verdict::HoldsOnSamples;
  std::optional<Witness> witness;
  int pairs_checked = 0;
  int t_steps = 0;
  std::optional<double> lambda;
  std::uint64_t seed = 0;
  int cut_locus_resamples = 0;
};

bool holds(const ConvexityReport& r);
bool all_hold(std::span<const ConvexityReport> rs);

std::vector<double> default_lambda_grid();  // k/20 for k = 1..20

// Monte Carlo membership checks: draw point pairs from the region, walk the
// connecting geodesic on a uniform t grid, report the first escape. Pairs that
// hit the cut locus are redrawn, up to a cap of 100 + 10 * n_pairs redraws.
ConvexityReport is_geodesically_convex(const Region& A, int n_pairs = 200, int t_steps = 65,
                                       std::uint64_t seed = 42);

// Same walk along geodesics between contracted images of sampled pairs.
ConvexityReport is_p_lambda_convex(const Region& A, const ContractionMap& c, int n_pairs = 200,
                                   int t_steps = 65, std::uint64_t seed = 42);

// One report per grid value, all runs from the same seed so verdicts across
// lambda are comparable pair-for-pair.
std::vector<ConvexityReport> is_totally_p_convex(const Region& A, const Point& p,
                                                 const DirectionPolicy& policy,
                                                 std::span<const double> lambda_grid,
                                                 int n_pairs = 200, int t_steps = 65,
                                                 std::uint64_t seed = 42);

// Checks the geodesics from the center to sampled points. Requires the center
// to be a member of the region.
ConvexityReport is_star_shaped(const Region& A, const Point& p,
                               const DirectionPolicy& policy = DirectionPolicy::canonical(),
                               int n_points = 200, int t_steps = 65, std::uint64_t seed = 42);

// Max over curve samples of the distance to the comparison geodesic between
// the curve's endpoints, the geodesic discretized on a uniform t grid.
double geodesic_deviation(const Manifold& m, std::span<const Point> curve, int t_steps = 65);

struct ThresholdReport {
  double zeta_hat = 0;                   // largest grid prefix that holds, 0 if none
  std::vector<double> lambda_grid;       // ascending
  std::vector<ConvexityReport> reports;  // aligned with lambda_grid
};

// Estimates the contraction threshold of a region about an interior center:
// the largest grid value zeta such that the lambda-contraction verdict holds
// for every grid lambda <= zeta. The center must be interior, verified by
// probing a small geodesic sphere around it.
ThresholdReport contraction_threshold(const Region& A, const Point& p,
                                      const DirectionPolicy& policy = DirectionPolicy::canonical(),
                                      std::vector<double> lambda_grid = default_lambda_grid(),
                                      int n_pairs = 200, int t_steps = 65, std::uint64_t seed = 42,
                                      double probe_radius = 1e-3);

// Contract a finite point set, then list the contracted points together with
// the t-grid samples of every pairwise connecting geodesic. On spaces with
// unique geodesics the result samples the geodesic convex hull's skeleton.
std::vector<Point> inner_convex_set(std::span<const Point> pts, const ContractionMap& c,
                                    int t_steps = 65);

}  // namespace rclab
