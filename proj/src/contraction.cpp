#include "rclab/contraction.hpp"

namespace rclab {

DirectionPolicy DirectionPolicy::canonical() { return DirectionPolicy(); }

DirectionPolicy DirectionPolicy::table(std::vector<std::pair<Point, TangentVec>> overrides,
                                       double match_tol) {
  DirectionPolicy p;
  p.canonical_ = false;
  p.overrides_ = std::move(overrides);
  p.match_tol_ = match_tol;
  return p;
}

TangentVec DirectionPolicy::direction(const Manifold& m, const Point& p, const Point& x) const {
  if (canonical_) return m.log(p, x);
  for (const auto& [key, vec] : overrides_) {
    if (key.size() != x.size()) continue;
    if ((key.coords - x.coords).lpNorm<Eigen::Infinity>() > match_tol_) continue;
    if ((vec.base.coords - p.coords).lpNorm<Eigen::Infinity>() > match_tol_)
      throw InvalidOverride("override for " + format_coords(x.coords) +
                            " is anchored at a different base point");
    Point reached = m.exp(vec);
    if ((reached.coords - x.coords).lpNorm<Eigen::Infinity>() > 1e-6)
      throw InvalidOverride("override for " + format_coords(x.coords) +
                            " reaches " + format_coords(reached.coords) + " instead");
    return vec;
  }
  throw MissingOverride("no direction override for " + format_coords(x.coords));
}

ContractionMap::ContractionMap(Manifold m, Point base, double lambda, DirectionPolicy policy)
    : m_(std::move(m)), base_(std::move(base)), lambda_(lambda), policy_(std::move(policy)) {
  m_.validate(base_);
  if (!(lambda_ > 0.0 && lambda_ <= 1.0))
    throw std::invalid_argument("contraction factor must lie in (0, 1], got " +
                                std::to_string(lambda_));
}

ContractionMap ContractionMap::with_lambda(double lambda) const {
  return ContractionMap(m_, base_, lambda, policy_);
}

TangentVec ContractionMap::direction(const Point& x) const {
  return policy_.direction(m_, base_, x);
}

Point ContractionMap::contract(const Point& x) const {
  TangentVec v = direction(x);
  v.vec *= lambda_;
  return m_.exp(v);
}

namespace {

// Rethrows with the failing element's index while keeping the error type.
template <typename E>
[[noreturn]] void rethrow_indexed(size_t i, const E& e) {
  throw E("element " + std::to_string(i) + ": " + e.what());
}

}  // namespace

std::vector<Point> ContractionMap::contract_set(std::span<const Point> pts) const {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    try {
      out.push_back(contract(pts[i]));
    } catch (const CutLocus& e) {
      rethrow_indexed(i, e);
    } catch (const MissingOverride& e) {
      rethrow_indexed(i, e);
    } catch (const InvalidOverride& e) {
      rethrow_indexed(i, e);
    } catch (const InvalidPoint& e) {
      rethrow_indexed(i, e);
    } catch (const Error& e) {
      rethrow_indexed(i, e);
    }
  }
  return out;
}

std::vector<Point> ContractionMap::contract_curve(std::span<const Point> pts) const {
  return contract_set(pts);
}

}  // namespace rclab
