#pragma once

#include <random>

#include "rclab/manifold.hpp"

namespace rclab {

using Rng = std::mt19937_64;

Vec gaussian_vec(int n, Rng& rng);

// A covering draw from the manifold's natural sampling domain: gaussian in
// R^n, uniform on the sphere, exp of a bounded gaussian on the hyperboloid,
// uniform box on a chart (the box comes from the chart config).
Point random_point(const Manifold& m, Rng& rng);

TangentVec random_unit_tangent(const Manifold& m, const Point& base, Rng& rng);

// Uniform-radius tangent with metric norm in [0, max_norm].
TangentVec random_tangent(const Manifold& m, const Point& base, double max_norm, Rng& rng);

// Radius used when drawing round-trip test vectors: 0.9 * cut locus distance
// where that is finite, otherwise 3.
double sampling_horizon(const Manifold& m);

// Minimum distance to a chart pole along the great-circle path traced by a
// colatitude/longitude tangent over parameter [0, t]. Accuracy checks reject
// paths that come closer than a comfort margin: a fixed-step integrator
// cannot hold its tolerance while skimming the metric singularity.
double sphere2_min_pole_distance(const TangentVec& chart_vec, double t);

}  // namespace rclab
