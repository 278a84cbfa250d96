#include "tgeo/gram.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <string>

#include "tgeo/error.hpp"

namespace tgeo {

double gamma(const WorldFunction& wf, PointId origin, PointId p, PointId q) {
  return wf.sigma(origin, p) + wf.sigma(origin, q) - wf.sigma(p, q);
}

double vector_dot(const WorldFunction& wf, PointId p0, PointId p1, PointId q0, PointId q1) {
  if (p0 == p1 || q0 == q1) return 0.0;  // null pair, and antisymmetry forces the exact zero
  double flip = 1.0;
  if (p1.index < p0.index) {
    std::swap(p0, p1);
    flip = -flip;
  }
  if (q1.index < q0.index) {
    std::swap(q0, q1);
    flip = -flip;
  }
  if (q0.index < p0.index || (q0.index == p0.index && q1.index < p1.index)) {
    std::swap(p0, q0);
    std::swap(p1, q1);
  }
  return flip * (wf.sigma(p0, q1) + wf.sigma(p1, q0) - wf.sigma(p0, q0) - wf.sigma(p1, q1));
}

double det_lu(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

GramDet gram_det(const FiniteSigmaSpace& fs) {
  const Eigen::MatrixXd g = gram_matrix(fs.sigma_table);
  GramDet out;
  out.order = static_cast<int>(g.rows());
  out.gamma_max = g.size() > 0 ? g.cwiseAbs().maxCoeff() : 0.0;
  out.value = det_lu(g);
  return out;
}

double gram_determinant(const FiniteSigmaSpace& fs) { return gram_det(fs).value; }

double gram_determinant(const WorldFunction& wf, std::span<const PointId> points) {
  return gram_det(extract_finite_subspace(wf, points)).value;
}

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

std::optional<double> simplex_volume(const FiniteSigmaSpace& fs, const TolerancePolicy& tol) {
  const GramDet d = gram_det(fs);
  if (d.is_zero(tol)) return 0.0;
  if (d.value < 0.0) return std::nullopt;
  return std::sqrt(d.value) / factorial(d.order);
}

std::optional<double> simplex_volume(const WorldFunction& wf, std::span<const PointId> points,
                                     const TolerancePolicy& tol) {
  return simplex_volume(extract_finite_subspace(wf, points), tol);
}

Multivector make_multivector(const WorldFunction& wf, std::vector<PointId> points, int sign) {
  if (points.size() < 2) throw Error("make_multivector: a vector needs at least two points");
  if (sign != 1 && sign != -1) throw Error("make_multivector: sign must be +1 or -1");
  for (const PointId p : points)
    if (p.index < 0 || p.index >= wf.size())
      throw Error("make_multivector: point index " + std::to_string(p.index) + " out of range");
  return Multivector{&wf, std::move(points), sign};
}

double multivector_dot(const Multivector& a, const Multivector& b) {
  if (a.space == nullptr || b.space == nullptr)
    throw Error("multivector_dot: operand has no world function");
  if (a.space != b.space)
    throw Error("multivector_dot: operands belong to different world functions");
  if (a.order() != b.order())
    throw Error("multivector_dot: operands must have the same order");
  if (a.order() < 1) throw Error("multivector_dot: operands must have order >= 1");
  if (a.points[0] != b.points[0])
    throw Error("multivector_dot: operands must share a common origin; products across "
                "distinct origins are undefined");

  const WorldFunction& wf = *a.space;
  const PointId p0 = a.points[0];
  const Eigen::Index n = a.order();
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k)
      m(i, k) = gamma(wf, p0, a.points[static_cast<std::size_t>(i + 1)],
                      b.points[static_cast<std::size_t>(k + 1)]);
  return static_cast<double>(a.sign * b.sign) * det_lu(m);
}

LengthValue classify_length(const GramDet& det, const TolerancePolicy& tol) {
  LengthValue out;
  out.squared = det.value;
  out.magnitude = std::sqrt(std::abs(det.value));
  if (det.is_zero(tol))
    out.klass = LengthClass::null;
  else
    out.klass = det.value > 0.0 ? LengthClass::real : LengthClass::imaginary;
  return out;
}

LengthValue multivector_length(const Multivector& a, const TolerancePolicy& tol) {
  if (a.space == nullptr) throw Error("multivector_length: operand has no world function");
  const GramDet d = gram_det(extract_finite_subspace(*a.space, a.points));
  return classify_length(d, tol);
}

int permutation_sign(std::span<const PointId> before, std::span<const PointId> after) {
  const std::size_t n = before.size();
  if (after.size() != n)
    throw Error("permutation_sign: tuples differ in size");
  std::vector<std::size_t> target(n);  // target[i] = position of after[i] inside before
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (!used[j] && before[j] == after[i]) {
        target[i] = j;
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found)
      throw Error("permutation_sign: tuples are not rearrangements of each other");
  }
  // parity by cycle decomposition
  std::vector<bool> seen(n, false);
  int sign = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = target[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

CollinearVerdict collinear(const Multivector& a, const Multivector& b,
                           const TolerancePolicy& tol) {
  if (a.space == nullptr || b.space == nullptr)
    throw Error("collinear: operand has no world function");
  if (a.space != b.space) throw Error("collinear: operands belong to different world functions");
  if (a.order() != 1 || b.order() != 1)
    throw Error("collinear: defined for vectors (order-1 multivectors) only");

  const WorldFunction& wf = *a.space;
  const double d = static_cast<double>(a.sign * b.sign) *
                   vector_dot(wf, a.points[0], a.points[1], b.points[0], b.points[1]);
  const double fa = 2.0 * wf.sigma(a.points[0], a.points[1]);
  const double fb = 2.0 * wf.sigma(b.points[0], b.points[1]);

  // (a.b)^2 - |a|^2 |b|^2 compares order-2 products; normalize accordingly.
  const double m = std::max({std::abs(d), std::abs(fa), std::abs(fb)});
  const double residual = d * d - fa * fb;
  if (!tol.zero(residual, m * m)) return CollinearVerdict::not_collinear;

  const bool a_real = fa > 0.0 && !tol.det_zero(fa, std::abs(fa), 1);
  const bool b_real = fb > 0.0 && !tol.det_zero(fb, std::abs(fb), 1);
  if (!a_real || !b_real) return CollinearVerdict::collinear_indefinite;
  return d > 0.0 ? CollinearVerdict::parallel : CollinearVerdict::antiparallel;
}

namespace {

// Shared quantifier for the linear-operation searches: keep R when
// predicate(R, Q) holds for every Q of the whole domain.
template <typename Predicate>
std::vector<PointId> filter_for_all_q(const WorldFunction& wf,
                                      std::span<const PointId> candidates,
                                      Predicate&& predicate) {
  std::vector<PointId> out;
  for (const PointId r : candidates) {
    bool ok = true;
    for (Eigen::Index q = 0; q < wf.size() && ok; ++q) ok = predicate(r, PointId{q});
    if (ok) out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<PointId> find_vector_sum(const WorldFunction& wf, PointId origin, PointId p1,
                                     PointId p2, std::span<const PointId> candidates,
                                     const TolerancePolicy& tol) {
  return filter_for_all_q(wf, candidates, [&](PointId r, PointId q) {
    const double lhs = gamma(wf, origin, r, q);
    const double rhs = gamma(wf, origin, p1, q) + gamma(wf, origin, p2, q);
    return tol.close(lhs, rhs);
  });
}

std::vector<PointId> find_vector_scale(const WorldFunction& wf, PointId origin, PointId p,
                                       double a, std::span<const PointId> candidates,
                                       const TolerancePolicy& tol) {
  if (!std::isfinite(a)) throw Error("find_vector_scale: scale must be finite");
  return filter_for_all_q(wf, candidates, [&](PointId r, PointId q) {
    const double lhs = gamma(wf, origin, r, q);
    const double rhs = a * gamma(wf, origin, p, q);
    return tol.close(lhs, rhs);
  });
}

}  // namespace tgeo
