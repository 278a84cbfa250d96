#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "tgeo/tolerance.hpp"

namespace tgeo {

using Vec3 = Eigen::Vector3d;

/// A point of the chord-ratio curve from A to B on the circle through
/// A, B, C. `branch` names which of the equation's two roots was taken
/// (1 = the root with the smaller chordal distance to A, the selected one).
struct GeodesicCurvePoint {
  double tau = 0.0;
  Vec3 position = Vec3::Zero();
  int branch = 1;
};

/// The circle cut on the unit sphere by the plane through A, B, C,
/// parametrized as center + radius (u cos phi + v sin phi); A sits at
/// phi = 0, B at phi = angle (the short way, angle in (0, pi]).
struct CircleArc {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
  Vec3 u = Vec3::UnitX();
  Vec3 v = Vec3::UnitY();
  double angle = 0.0;
};

/// Builds the circle through three distinct unit vectors. Rejects non-unit
/// input, coincident A/B, and C on the chord line through A and B (which on
/// the sphere means C coincides with one of them).
CircleArc circle_through(const Vec3& a, const Vec3& b, const Vec3& c,
                         const TolerancePolicy& tol = {});

/// Points of the curve R(tau): the root of
///     (1 - tau) |A - R| = tau |B - R|,   R on the circle through A, B, C,
/// found by bisection on the circle angle. The equation has two roots, one
/// per arc; at each tau the root with the smaller chordal distance to A is
/// selected, which traces the short arc monotonically from A (tau = 0) to
/// B (tau = 1). All taus must lie in [0, 1]; positions are unit vectors.
std::vector<GeodesicCurvePoint> curve_points(const Vec3& a, const Vec3& b, const Vec3& c,
                                             std::span<const double> taus,
                                             const TolerancePolicy& tol = {});

/// Length of that curve: chord-sum quadrature over a uniform tau grid
/// (sum of |R(tau_i) - R(tau_i+1)|, i.e. the local chordal rate integrated
/// with a midpoint-style rule). steps >= 16 required; 4096 is the default
/// used by the demo and matches quadrature error well below 1e-6.
double curve_length(const Vec3& a, const Vec3& b, const Vec3& c, int steps = 4096,
                    const TolerancePolicy& tol = {});

/// Result of the infimum search over candidate third points.
struct IntrinsicDistance {
  double length = 0.0;
  Vec3 best_c = Vec3::Zero();
  Eigen::Index best_index = -1;  ///< index into the candidate list
};

/// min over candidate Cs of curve_length(A, B, C). Candidates coincident
/// with A or B (no circle) are skipped; at least one usable candidate is
/// required. Ties keep the first candidate index.
IntrinsicDistance intrinsic_metric(const Vec3& a, const Vec3& b, std::span<const Vec3> cs,
                                   int steps = 4096, const TolerancePolicy& tol = {});

/// Great-circle arc length 2 asin(|a-b| / 2); the analytic benchmark the
/// infimum should reach on the unit sphere.
double great_circle_distance(const Vec3& a, const Vec3& b);

/// A third point on the great circle through a and b (the arc midpoint, or
/// an orthogonal direction when a and b are antipodal).
Vec3 great_circle_witness(const Vec3& a, const Vec3& b);

/// count points spread over the unit sphere by the golden-angle spiral.
std::vector<Vec3> fibonacci_sphere(int count);

/// fibonacci_sphere(count) plus the great-circle witness of (a, b); the
/// default candidate set for intrinsic_metric.
std::vector<Vec3> default_c_candidates(const Vec3& a, const Vec3& b, int count);

}  // namespace tgeo
