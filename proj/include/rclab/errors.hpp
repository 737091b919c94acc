#pragma once

#include <stdexcept>
#include <string>

namespace rclab {

// Base class for every error raised by the geometry kernel and the lab layers.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A point (or tangent vector) violates the representation invariant of its manifold.
class InvalidPoint : public Error {
 public:
  using Error::Error;
};

// The requested geodesic passes through (or too close to) the cut locus,
// where the minimizing geodesic is not unique. The kernel refuses instead
// of silently picking a branch.
class CutLocus : public Error {
 public:
  using Error::Error;
};

// Chart integration produced non-finite state or a non-SPD metric.
class IntegrationDiverged : public Error {
 public:
  using Error::Error;
};

// Chart trajectory entered (or jumped across) a declared singular band.
class ChartSingularity : public Error {
 public:
  using Error::Error;
};

// Boundary-value solve for the chart log map did not reach tolerance.
class ShootingNoConverge : public Error {
 public:
  using Error::Error;
};

// Table-mode direction policy has no entry for the queried point.
class MissingOverride : public Error {
 public:
  using Error::Error;
};

// A table-mode override does not reproduce its target point under exp.
class InvalidOverride : public Error {
 public:
  using Error::Error;
};

// A region sampler (or pair resampling loop) hit its retry cap.
class SamplerExhausted : public Error {
 public:
  using Error::Error;
};

// Threshold estimation requires the base point to sit in the region's interior.
class NotInterior : public Error {
 public:
  using Error::Error;
};

}  // namespace rclab
