#pragma once

#include <optional>
#include <vector>

#include "weylpoly/weightpoly.hpp"

namespace weylpoly {

/// Result of an exact orthogonal projection onto a weight polytope: the
/// projected point, the open face it lands in, the rays spanning the fiber
/// cone there, and the cone certificate expressing x - point over those rays.
struct ProjectionResult {
  RatVec point;
  std::size_t face_index;
  std::vector<RatVec> fiber_generators;
  std::vector<Rational> cone_coefficients;
};

/// Gram-orthogonal projection onto the closed polytope, by exhaustive face
/// scan with exact accept/reject certificates: a face accepts iff the
/// orthogonal projection onto its support lands in the open face and the
/// offset lies in the face's fiber cone. The tessellation of the ambient
/// space by fiber cones guarantees exactly one accepting face; anything else
/// aborts with an internal-consistency diagnostic.
inline ProjectionResult project(const WeightPolytope& p, const RatVec& x) {
  std::optional<ProjectionResult> accepted;
  for (std::size_t i = 0; i < p.faces().size(); ++i) {
    const PolyFace& f = p.faces()[i];
    const RatVec a = orthogonal_project_affine(x, f.center, f.support_directions, p.gram());
    if (!p.open_face_contains(f, a)) continue;
    auto cone = cone_membership(f.fiber_generators, x - a);
    if (!cone.coefficients) continue;
    if (accepted)
      throw ConsistencyError("project: two faces accept (" +
                             p.faces()[accepted->face_index].center.str() + " and " +
                             f.center.str() + " for " + x.str() + ")");
    accepted = ProjectionResult{a, i, f.fiber_generators, std::move(*cone.coefficients)};
  }
  if (!accepted) throw ConsistencyError("project: no face accepts " + x.str());
  return std::move(*accepted);
}

/// Variational-inequality certificate for p_star = projection of x: checks
/// <x - p | y - p> <= 0 exactly for every extreme point y, which is
/// sufficient by convexity; together with membership this pins the projection.
inline bool variational_certificate(const WeightPolytope& p, const RatVec& x,
                                    const RatVec& p_star) {
  if (!p.contains(p_star)) return false;
  const RatVec d = x - p_star;
  for (const auto& y : p.extreme_points())
    if (gram_dot(p.gram(), d, y - p_star).sign() > 0) return false;
  return true;
}

/// Fiber-cone generators at a frontier point: the rays of the projection
/// preimage of the open face containing the point. Interior and exterior
/// points are rejected.
inline std::vector<RatVec> fiber(const WeightPolytope& p, const RatVec& boundary_point) {
  auto idx = p.face_of_point(boundary_point);
  if (!idx) throw UsageError("fiber: point lies outside the polytope");
  if (*idx == p.top_index()) throw UsageError("fiber: point lies in the interior");
  return p.faces()[*idx].fiber_generators;
}

}  // namespace weylpoly
