#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "tgeo/gram.hpp"
#include "tgeo/point.hpp"
#include "tgeo/tolerance.hpp"
#include "tgeo/world_function.hpp"

namespace tgeo {

// ============================================================================
// Tubes: zero sets of the next Gram determinant over a non-degenerate basis
// ============================================================================

/// n+1 points whose F_n does not vanish under the policy. Order 0 (a single
/// point) is always a valid basis; its tube is the sigma-zero set of the
/// point. The basis sigma table and F_n are cached at construction.
class TubeBasis {
 public:
  TubeBasis(const WorldFunction& wf, std::vector<PointId> points,
            const TolerancePolicy& tol = {});

  const WorldFunction& world() const { return *wf_; }
  const std::vector<PointId>& points() const { return points_; }
  int order() const { return static_cast<int>(points_.size()) - 1; }
  double determinant() const { return fn_.value; }
  const GramDet& determinant_info() const { return fn_; }
  const Eigen::MatrixXd& sigma_table() const { return table_; }

 private:
  const WorldFunction* wf_;
  std::vector<PointId> points_;
  Eigen::MatrixXd table_;
  GramDet fn_;
};

struct TubeMembershipReport {
  PointId point{};
  double residual = 0.0;  ///< F_{n+1} of basis + point
  bool member = false;
};

/// Membership of r in the tube of the basis: F_{n+1}(basis, r) classified
/// against zero at matrix order n+1. Set tol.abs_override for a per-query
/// absolute residual gate.
TubeMembershipReport tube_membership(const TubeBasis& basis, PointId r,
                                     const TolerancePolicy& tol = {});

/// Membership for every candidate, preserving candidate order.
std::vector<TubeMembershipReport> tube_scan(const TubeBasis& basis,
                                            std::span<const PointId> candidates,
                                            const TolerancePolicy& tol = {});

// ============================================================================
// First-order tube decomposition (segment / rays) via S_2 factors
// ============================================================================

enum class SegmentClass {
  segment,             ///< S_2(P0,R,P1) = 0: between the end points
  ray_beyond_p1,       ///< S_2(P0,P1,R) = 0: on the prolongation past P1
  ray_beyond_p0,       ///< S_2(P1,P0,R) = 0: on the prolongation past P0
  interior_violation,  ///< S_2(P0,R,P1) < 0: triangle inequality fails
  exterior             ///< S_2(P0,R,P1) > 0 and no factor vanishes
};

/// Factor values behind a first-order classification. S = sqrt(2 sigma);
/// S_2(X,Y,Z) = S(X,Y) + S(Y,Z) - S(X,Z); s_plus is the sum of all three
/// pair lengths and sets the tolerance scale.
struct SegmentFactors {
  SegmentClass classification = SegmentClass::exterior;
  double s_plus = 0.0;
  double s2_segment = 0.0;  ///< S_2(P0,R,P1)
  double s2_ray_p1 = 0.0;   ///< S_2(P0,P1,R)
  double s2_ray_p0 = 0.0;   ///< S_2(P1,P0,R)
};

/// Classifies r against the first-order tube of (p0, p1). Requires a
/// sigma >= 0 region (rejects indefinite metrics) and s_plus != 0 (all
/// three points coincide otherwise and the tube is undefined). Points
/// within tolerance of both the segment and a ray (i.e. near an end point)
/// classify as segment.
SegmentFactors first_order_locate(const WorldFunction& wf, PointId p0, PointId p1, PointId r,
                                  const TolerancePolicy& tol = {});

// ============================================================================
// Sections, definiteness, minimality, degeneracy
// ============================================================================

/// Section of the tube through member point `at`: every candidate that is
/// itself a member and matches sigma(P_l, .) = sigma(P_l, at) for all basis
/// points P_l. Candidate order is preserved; `at` is appended when absent
/// from the candidates. Rejects `at` when it is not a tube member.
std::vector<PointId> tube_section(const TubeBasis& basis, PointId at,
                                  std::span<const PointId> candidates,
                                  const TolerancePolicy& tol = {});

enum class CheckVerdict { holds, fails, vacuous };

/// Result of re-deriving the tube from alternative bases drawn from the
/// scanned members. `holds` when every alternative basis regenerates the
/// same member set over the candidates, `vacuous` when no alternative basis
/// exists among them.
struct DefinitenessReport {
  CheckVerdict verdict = CheckVerdict::vacuous;
  int bases_checked = 0;
  std::vector<PointId> witness_basis;  ///< first disagreeing basis (fails)
  PointId witness_point{};             ///< first point whose membership flips
};

/// Alternative bases are the size-(n+1) subsets of the scanned members with
/// non-vanishing F_n, enumerated in lexicographic order, the original basis
/// set excluded, capped at max_bases.
DefinitenessReport check_definiteness(const TubeBasis& basis, std::span<const PointId> candidates,
                                      const TolerancePolicy& tol = {}, int max_bases = 64);

struct MinimalityReport {
  CheckVerdict verdict = CheckVerdict::holds;
  PointId witness_at{};     ///< member whose section is not minimal (fails)
  PointId witness_other{};  ///< a second point of that section
};

/// Holds when the section at every scanned member contains that member
/// alone.
MinimalityReport check_section_minimality(const TubeBasis& basis,
                                          std::span<const PointId> candidates,
                                          const TolerancePolicy& tol = {});

/// geodesic is true when definiteness does not fail (vacuous counts as
/// trivially satisfied) and minimality holds; both sub-reports are kept.
/// Verdicts are valid at the scan resolution of the candidate set.
struct ExtremalityReport {
  bool geodesic = false;
  DefinitenessReport definiteness;
  MinimalityReport minimality;
};

ExtremalityReport classify_extremality(const TubeBasis& basis, std::span<const PointId> candidates,
                                       const TolerancePolicy& tol = {}, int max_bases = 64);

enum class DegeneracyClass {
  nondegenerate,    ///< some candidate violates the triangle inequality
  degenerate,       ///< no violation, but a non-end-point candidate sits on the segment
  ultradegenerate   ///< no violation and the segment holds only its end points
};

/// Counts of S_2(P0,R,P1) signs over the candidates. The verdict is a
/// statement at scan resolution: it sees only the candidates given.
struct DegeneracyReport {
  DegeneracyClass verdict = DegeneracyClass::ultradegenerate;
  Eigen::Index interior_violations = 0;      ///< S_2 < 0
  Eigen::Index on_segment = 0;               ///< S_2 = 0 under tolerance
  Eigen::Index outside = 0;                  ///< S_2 > 0
  Eigen::Index non_endpoint_on_segment = 0;  ///< on the segment, id differs from both ends
};

/// Requires sigma >= 0 over every evaluated pair (rejects indefinite
/// metrics).
DegeneracyReport degeneracy_report(const WorldFunction& wf, PointId p0, PointId p1,
                                   std::span<const PointId> candidates,
                                   const TolerancePolicy& tol = {});

/// Scalar product of the oriented segment p0->p1 with the pair anchor->q.
/// anchor must be p0 or p1. Swapping p0 and p1 flips the sign bit-exactly.
double oriented_segment_dot(const WorldFunction& wf, PointId p0, PointId p1, PointId q,
                            PointId anchor);

}  // namespace tgeo
