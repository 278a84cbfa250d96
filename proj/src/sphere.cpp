#include "tgeo/sphere.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tgeo/error.hpp"

namespace tgeo {
namespace {

constexpr double kUnitSlack = 1e-6;

Vec3 require_unit(const Vec3& x, const char* name) {
  const double n = x.norm();
  if (std::abs(n - 1.0) > kUnitSlack)
    throw Error(std::string("sphere geometry: ") + name + " must be a unit vector");
  return x / n;
}

// Chord-ratio defect (1-tau) |A-R| - tau |B-R| at angle phi on an arc of
// total angle `span`, in units of the circle diameter. Strictly increasing
// in phi, so bisection brackets cleanly.
double chord_ratio_defect(double phi, double span, double tau) {
  return (1.0 - tau) * std::sin(0.5 * phi) - tau * std::sin(0.5 * (span - phi));
}

// Reference root of the chord-ratio equation on [0, span]: bisection on the
// circle angle.
double chord_ratio_root_bisect(double span, double tau) {
  double lo = 0.0;
  double hi = span;
  double flo = chord_ratio_defect(lo, span, tau);
  if (flo >= 0.0) return lo;
  if (chord_ratio_defect(hi, span, tau) <= 0.0) return hi;
  for (int i = 0; i < 96 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chord_ratio_defect(mid, span, tau) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Same root in closed form: expanding sin((span-phi)/2) turns the equation
// into tan(phi/2) ((1-tau) + tau cos(span/2)) = tau sin(span/2). Matches the
// bisection root to the last digits and carries the quadrature sweep.
double chord_ratio_root(double tau, double sin_half, double cos_half) {
  return 2.0 * std::atan2(tau * sin_half, (1.0 - tau) + tau * cos_half);
}

}  // namespace

CircleArc circle_through(const Vec3& a_in, const Vec3& b_in, const Vec3& c_in,
                         const TolerancePolicy& tol) {
  const Vec3 a = require_unit(a_in, "A");
  const Vec3 b = require_unit(b_in, "B");
  const Vec3 c = require_unit(c_in, "C");
  if ((a - b).norm() <= tol.rel_eps * 1e3)
    throw Error("circle_through: A and B coincide");

  const Vec3 ca = a - c;
  const Vec3 cb = b - c;
  const Vec3 n = ca.cross(cb);
  const double n2 = n.squaredNorm();
  if (n2 <= 1e-24)
    throw Error("circle_through: C lies on the chord line through A and B");

  CircleArc arc;
  arc.center = c + (ca.squaredNorm() * cb - cb.squaredNorm() * ca).cross(n) / (2.0 * n2);
  arc.radius = (a - arc.center).norm();
  arc.u = (a - arc.center) / arc.radius;

  const Vec3 w = (b - arc.center) / arc.radius;
  const Vec3 in_plane = w - w.dot(arc.u) * arc.u;
  if (in_plane.norm() > 1e-12) {
    arc.v = in_plane.normalized();
  } else {
    // B diametrically opposite A on the circle; both arcs are congruent
    arc.v = n.normalized().cross(arc.u);
  }
  arc.angle = std::atan2(arc.u.cross(w).norm(), arc.u.dot(w));
  return arc;
}

namespace {

Vec3 arc_point(const CircleArc& arc, double phi) {
  const Vec3 p = arc.center + arc.radius * (std::cos(phi) * arc.u + std::sin(phi) * arc.v);
  return p.normalized();  // points of the circle lie on the unit sphere
}

}  // namespace

std::vector<GeodesicCurvePoint> curve_points(const Vec3& a, const Vec3& b, const Vec3& c,
                                             std::span<const double> taus,
                                             const TolerancePolicy& tol) {
  const CircleArc arc = circle_through(a, b, c, tol);
  const double span_short = arc.angle;
  const double span_long = 2.0 * std::numbers::pi - arc.angle;

  std::vector<GeodesicCurvePoint> out;
  out.reserve(taus.size());
  for (const double tau : taus) {
    if (!(tau >= 0.0 && tau <= 1.0))
      throw Error("curve_points: tau = " + std::to_string(tau) + " outside [0, 1]");
    const double phi = chord_ratio_root_bisect(span_short, tau);
    const double psi = chord_ratio_root_bisect(span_long, tau);
    // both roots exist, one per arc; keep the one chordally closer to A
    const double rho_short = std::sin(0.5 * phi);
    const double rho_long = std::sin(0.5 * psi);
    GeodesicCurvePoint p;
    p.tau = tau;
    if (rho_short <= rho_long) {
      p.branch = 1;
      p.position = arc_point(arc, phi);
    } else {
      p.branch = 2;
      p.position = arc_point(arc, -psi);
    }
    out.push_back(p);
  }
  return out;
}

double curve_length(const Vec3& a, const Vec3& b, const Vec3& c, int steps,
                    const TolerancePolicy& tol) {
  if (steps < 16) throw Error("curve_length: steps must be >= 16");
  const CircleArc arc = circle_through(a, b, c, tol);
  const double span = arc.angle;
  const double sin_half = std::sin(0.5 * span);
  const double cos_half = std::cos(0.5 * span);

  double length = 0.0;
  double prev_phi = 0.0;
  for (int i = 1; i <= steps; ++i) {
    const double tau = static_cast<double>(i) / static_cast<double>(steps);
    const double phi = i == steps ? span : chord_ratio_root(tau, sin_half, cos_half);
    if (phi < prev_phi - 1e-9)
      throw InternalError("curve_length: branch progression broke at tau = " +
                          std::to_string(tau));
    length += 2.0 * arc.radius * std::sin(0.5 * (phi - prev_phi));
    prev_phi = phi;
  }
  return length;
}

IntrinsicDistance intrinsic_metric(const Vec3& a_in, const Vec3& b_in, std::span<const Vec3> cs,
                                   int steps, const TolerancePolicy& tol) {
  const Vec3 a = require_unit(a_in, "A");
  const Vec3 b = require_unit(b_in, "B");
  if ((a - b).norm() <= tol.rel_eps * 1e3)
    throw Error("intrinsic_metric: A and B coincide");
  if (cs.empty()) throw Error("intrinsic_metric: no candidate third points");

  IntrinsicDistance best;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const Vec3 c = require_unit(cs[i], "candidate C");
    // a candidate on top of an end point spans no circle; skip it
    if ((c - a).norm() <= 1e-9 || (c - b).norm() <= 1e-9) continue;
    const double l = curve_length(a, b, c, steps, tol);
    if (best.best_index < 0 || l < best.length) {
      best.length = l;
      best.best_c = c;
      best.best_index = static_cast<Eigen::Index>(i);
    }
  }
  if (best.best_index < 0)
    throw Error("intrinsic_metric: every candidate coincides with an end point");
  return best;
}

double great_circle_distance(const Vec3& a, const Vec3& b) {
  const double half_chord = 0.5 * (a - b).norm();
  return 2.0 * std::asin(std::min(1.0, half_chord));
}

Vec3 great_circle_witness(const Vec3& a, const Vec3& b) {
  const Vec3 mid = a + b;
  if (mid.norm() > 1e-9) return mid.normalized();
  // antipodal pair: every circle through a and b is great; any orthogonal
  // direction serves
  Vec3 axis = Vec3::UnitX();
  if (std::abs(a.x()) > 0.9) axis = Vec3::UnitY();
  return a.cross(axis).normalized();
}

std::vector<Vec3> fibonacci_sphere(int count) {
  if (count < 1) throw Error("fibonacci_sphere: count must be >= 1");
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(count));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double t = golden * i;
    out.emplace_back(r * std::cos(t), r * std::sin(t), z);
  }
  return out;
}

std::vector<Vec3> default_c_candidates(const Vec3& a, const Vec3& b, int count) {
  std::vector<Vec3> out = fibonacci_sphere(count);
  out.push_back(great_circle_witness(a, b));
  return out;
}

}  // namespace tgeo
