#include "tgeo/tube.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tgeo/error.hpp"
#include "tgeo/sampling.hpp"

namespace tgeo {

TubeBasis::TubeBasis(const WorldFunction& wf, std::vector<PointId> points,
                     const TolerancePolicy& tol)
    : wf_(&wf), points_(std::move(points)) {
  if (points_.empty()) throw Error("TubeBasis: at least one point required");
  const FiniteSigmaSpace fs = extract_finite_subspace(wf, points_);
  table_ = fs.sigma_table;
  fn_ = gram_det(fs);
  if (fn_.is_zero(tol))
    throw Error("TubeBasis: degenerate basis, F_" + std::to_string(order()) +
                " vanishes under tolerance");
}

TubeMembershipReport tube_membership(const TubeBasis& basis, PointId r,
                                     const TolerancePolicy& tol) {
  const WorldFunction& wf = basis.world();
  const Eigen::Index n = basis.order();
  const Eigen::Index m = n + 2;  // basis points + r
  Eigen::MatrixXd sigma(m, m);
  sigma.topLeftCorner(m - 1, m - 1) = basis.sigma_table();
  for (Eigen::Index i = 0; i < m - 1; ++i) {
    const double s = wf.sigma(basis.points()[static_cast<std::size_t>(i)], r);
    sigma(i, m - 1) = s;
    sigma(m - 1, i) = s;
  }
  sigma(m - 1, m - 1) = 0.0;

  const Eigen::MatrixXd g = gram_matrix(sigma);
  TubeMembershipReport out;
  out.point = r;
  out.residual = det_lu(g);
  const double gamma_max = g.cwiseAbs().maxCoeff();
  out.member = tol.det_zero(out.residual, gamma_max, static_cast<int>(n) + 1);
  return out;
}

std::vector<TubeMembershipReport> tube_scan(const TubeBasis& basis,
                                            std::span<const PointId> candidates,
                                            const TolerancePolicy& tol) {
  std::vector<TubeMembershipReport> out;
  out.reserve(candidates.size());
  for (const PointId r : candidates) out.push_back(tube_membership(basis, r, tol));
  return out;
}

namespace {

double pair_length(const WorldFunction& wf, PointId a, PointId b) {
  const double s = wf.sigma(a, b);
  if (s < 0.0)
    throw Error("first-order tube geometry needs sigma >= 0; sigma(" +
                std::to_string(a.index) + ", " + std::to_string(b.index) + ") = " +
                std::to_string(s));
  return std::sqrt(2.0 * s);
}

}  // namespace

SegmentFactors first_order_locate(const WorldFunction& wf, PointId p0, PointId p1, PointId r,
                                  const TolerancePolicy& tol) {
  const double s01 = pair_length(wf, p0, p1);
  const double s0r = pair_length(wf, p0, r);
  const double s1r = pair_length(wf, p1, r);

  SegmentFactors out;
  out.s_plus = s01 + s0r + s1r;
  out.s2_segment = s0r + s1r - s01;
  out.s2_ray_p1 = s01 + s1r - s0r;
  out.s2_ray_p0 = s01 + s0r - s1r;

  if (tol.zero(out.s_plus, out.s_plus))
    throw Error("first_order_locate: all pair lengths vanish, tube undefined");

  const double scale = out.s_plus;
  if (tol.zero(out.s2_segment, scale))
    out.classification = SegmentClass::segment;
  else if (tol.zero(out.s2_ray_p1, scale))
    out.classification = SegmentClass::ray_beyond_p1;
  else if (tol.zero(out.s2_ray_p0, scale))
    out.classification = SegmentClass::ray_beyond_p0;
  else if (out.s2_segment < 0.0)
    out.classification = SegmentClass::interior_violation;
  else
    out.classification = SegmentClass::exterior;
  return out;
}

std::vector<PointId> tube_section(const TubeBasis& basis, PointId at,
                                  std::span<const PointId> candidates,
                                  const TolerancePolicy& tol) {
  if (!tube_membership(basis, at, tol).member)
    throw Error("tube_section: point " + std::to_string(at.index) + " is not a tube member");

  const WorldFunction& wf = basis.world();
  const std::size_t k = basis.points().size();
  std::vector<double> profile(k);
  for (std::size_t l = 0; l < k; ++l) profile[l] = wf.sigma(basis.points()[l], at);

  std::vector<PointId> out;
  bool saw_at = false;
  for (const PointId c : candidates) {
    saw_at = saw_at || (c == at);
    bool matches = true;
    for (std::size_t l = 0; l < k && matches; ++l)
      matches = tol.close(wf.sigma(basis.points()[l], c), profile[l]);
    if (matches && tube_membership(basis, c, tol).member) out.push_back(c);
  }
  if (!saw_at) out.push_back(at);
  return out;
}

DefinitenessReport check_definiteness(const TubeBasis& basis, std::span<const PointId> candidates,
                                      const TolerancePolicy& tol, int max_bases) {
  const WorldFunction& wf = basis.world();
  const std::vector<TubeMembershipReport> reference = tube_scan(basis, candidates, tol);
  std::vector<PointId> members;
  for (const TubeMembershipReport& r : reference)
    if (r.member) members.push_back(r.point);

  std::vector<PointId> original = basis.points();
  std::sort(original.begin(), original.end());

  DefinitenessReport out;
  const int k = basis.order() + 1;
  if (static_cast<int>(members.size()) < k) return out;  // vacuous

  std::vector<Eigen::Index> combo = first_combination(k);
  const Eigen::Index m = static_cast<Eigen::Index>(members.size());
  do {
    if (out.bases_checked >= max_bases) break;
    std::vector<PointId> alt;
    alt.reserve(static_cast<std::size_t>(k));
    for (const Eigen::Index i : combo) alt.push_back(members[static_cast<std::size_t>(i)]);

    std::vector<PointId> alt_sorted = alt;
    std::sort(alt_sorted.begin(), alt_sorted.end());
    if (alt_sorted == original) continue;

    const GramDet fn = gram_det(extract_finite_subspace(wf, alt));
    if (fn.is_zero(tol)) continue;  // not a basis

    const TubeBasis alt_basis(wf, alt, tol);
    ++out.bases_checked;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const bool flag = tube_membership(alt_basis, candidates[i], tol).member;
      if (flag != reference[i].member) {
        out.verdict = CheckVerdict::fails;
        out.witness_basis = alt;
        out.witness_point = candidates[i];
        return out;
      }
    }
  } while (next_combination(combo, m));

  out.verdict = out.bases_checked > 0 ? CheckVerdict::holds : CheckVerdict::vacuous;
  return out;
}

MinimalityReport check_section_minimality(const TubeBasis& basis,
                                          std::span<const PointId> candidates,
                                          const TolerancePolicy& tol) {
  MinimalityReport out;
  for (const TubeMembershipReport& r : tube_scan(basis, candidates, tol)) {
    if (!r.member) continue;
    const std::vector<PointId> section = tube_section(basis, r.point, candidates, tol);
    if (section.size() > 1) {
      out.verdict = CheckVerdict::fails;
      out.witness_at = r.point;
      out.witness_other = section[0] == r.point ? section[1] : section[0];
      return out;
    }
  }
  out.verdict = CheckVerdict::holds;
  return out;
}

ExtremalityReport classify_extremality(const TubeBasis& basis, std::span<const PointId> candidates,
                                       const TolerancePolicy& tol, int max_bases) {
  ExtremalityReport out;
  out.definiteness = check_definiteness(basis, candidates, tol, max_bases);
  out.minimality = check_section_minimality(basis, candidates, tol);
  out.geodesic = out.definiteness.verdict != CheckVerdict::fails &&
                 out.minimality.verdict == CheckVerdict::holds;
  return out;
}

DegeneracyReport degeneracy_report(const WorldFunction& wf, PointId p0, PointId p1,
                                   std::span<const PointId> candidates,
                                   const TolerancePolicy& tol) {
  const double s01 = pair_length(wf, p0, p1);
  DegeneracyReport out;
  for (const PointId r : candidates) {
    const double s0r = pair_length(wf, p0, r);
    const double s1r = pair_length(wf, p1, r);
    const double s2 = s0r + s1r - s01;
    const double scale = s01 + s0r + s1r;
    if (tol.zero(s2, scale)) {
      ++out.on_segment;
      if (r != p0 && r != p1) ++out.non_endpoint_on_segment;
    } else if (s2 < 0.0) {
      ++out.interior_violations;
    } else {
      ++out.outside;
    }
  }
  if (out.interior_violations > 0)
    out.verdict = DegeneracyClass::nondegenerate;
  else if (out.non_endpoint_on_segment > 0)
    out.verdict = DegeneracyClass::degenerate;
  else
    out.verdict = DegeneracyClass::ultradegenerate;
  return out;
}

double oriented_segment_dot(const WorldFunction& wf, PointId p0, PointId p1, PointId q,
                            PointId anchor) {
  if (anchor != p0 && anchor != p1)
    throw Error("oriented_segment_dot: anchor must be one of the segment end points");
  return vector_dot(wf, p0, p1, anchor, q);
}

}  // namespace tgeo
