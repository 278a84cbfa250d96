#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>
#include <vector>

#include "tgeo/point.hpp"
#include "tgeo/tolerance.hpp"
#include "tgeo/world_function.hpp"

namespace tgeo {

// ============================================================================
// Scalar sigma-products and the Gram determinant series
// ============================================================================

/// Gamma(P0, P, Q) = sigma(P0,P) + sigma(P0,Q) - sigma(P,Q).
/// The scalar sigma-product of the directed pairs P0->P and P0->Q; symmetric
/// in (P, Q), and equal to the ordinary dot product (P-P0).(Q-P0) whenever
/// sigma comes from a Euclidean metric.
double gamma(const WorldFunction& wf, PointId origin, PointId p, PointId q);

/// First-order sigma-product of directed pairs with independent anchors:
/// (p0->p1).(q0->q1) = sigma(p0,q1) + sigma(p1,q0) - sigma(p0,q0) - sigma(p1,q1).
/// Antisymmetric under swapping either pair, bit-exactly (pairs are
/// canonicalized internally).
double vector_dot(const WorldFunction& wf, PointId p0, PointId p1, PointId q0, PointId q1);

/// Gamma matrix of an ordered tuple (P0..Pn) given its sigma table:
/// entry (i-1, k-1) = Gamma(P0, Pi, Pk) for i,k = 1..n. Order n yields an
/// n x n matrix; a single point yields the empty matrix.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> gram_matrix(
    const Eigen::MatrixBase<Derived>& sigma_table) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = sigma_table.rows() - 1;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> g(n, n);
  for (Eigen::Index i = 1; i <= n; ++i)
    for (Eigen::Index k = 1; k <= n; ++k)
      g(i - 1, k - 1) = sigma_table(0, i) + sigma_table(0, k) - sigma_table(i, k);
  return g;
}

/// Determinant by LU with partial pivoting; the empty matrix gives 1.
double det_lu(const Eigen::MatrixXd& m);

/// A Gram determinant together with the data its zero test needs.
struct GramDet {
  double value = 1.0;          ///< F_n
  double gamma_max = 0.0;      ///< largest |Gamma| entry of the matrix
  int order = 0;               ///< n

  bool is_zero(const TolerancePolicy& tol) const {
    return tol.det_zero(value, gamma_max, order);
  }
};

/// F_n of an ordered tuple: det of its Gamma matrix. F_0 = 1, F_1 = 2 sigma.
GramDet gram_det(const FiniteSigmaSpace& fs);
double gram_determinant(const FiniteSigmaSpace& fs);
double gram_determinant(const WorldFunction& wf, std::span<const PointId> points);

/// Simplex volume S_n = sqrt(F_n) / n!. Zero-classified F_n gives 0; F_n
/// negative beyond tolerance has no real volume and yields nullopt.
std::optional<double> simplex_volume(const FiniteSigmaSpace& fs, const TolerancePolicy& tol = {});
std::optional<double> simplex_volume(const WorldFunction& wf, std::span<const PointId> points,
                                     const TolerancePolicy& tol = {});

// ============================================================================
// Multivectors
// ============================================================================

/// An ordered point tuple acting as an n-th order multivector; the first
/// point is the origin. `sign` carries the +-1 accumulated by formal point
/// swaps, so -P0P1 is {P0,P1} with sign -1 (and equals P1P0 in products).
struct Multivector {
  const WorldFunction* space = nullptr;
  std::vector<PointId> points;
  int sign = +1;

  Eigen::Index order() const { return static_cast<Eigen::Index>(points.size()) - 1; }
};

/// Validates and builds a multivector: at least two points (order >= 1),
/// indices in range, sign +-1. Repeated points are legal (null vectors).
Multivector make_multivector(const WorldFunction& wf, std::vector<PointId> points, int sign = +1);

/// Scalar product of equal-order multivectors anchored at a common origin:
/// det of Gamma(P0, a_i, b_k) times both sign flags. Operands of different
/// order, different origin, or different world functions are rejected;
/// products across distinct origins are undefined here (vector_dot covers
/// the first-order case).
double multivector_dot(const Multivector& a, const Multivector& b);

enum class LengthClass { real, null, imaginary };

/// |P|^2 = (P.P) with its classification; magnitude = sqrt(|squared|).
struct LengthValue {
  double squared = 0.0;
  double magnitude = 0.0;
  LengthClass klass = LengthClass::null;
};

LengthValue classify_length(const GramDet& det, const TolerancePolicy& tol = {});
LengthValue multivector_length(const Multivector& a, const TolerancePolicy& tol = {});

/// Parity of the permutation taking `before` to `after`: +1 even, -1 odd.
/// Rejects tuples that are not rearrangements of each other.
int permutation_sign(std::span<const PointId> before, std::span<const PointId> after);

// ============================================================================
// Collinearity and linear-operation existence
// ============================================================================

/// parallel / antiparallel require (a.b) = +-|a||b| with both squared
/// lengths positive. When the collinearity equation (a.b)^2 = |a|^2 |b|^2
/// holds but either squared length is zero or negative, the direction
/// comparison is undefined and the verdict is collinear_indefinite.
enum class CollinearVerdict { parallel, antiparallel, collinear_indefinite, not_collinear };

CollinearVerdict collinear(const Multivector& a, const Multivector& b,
                           const TolerancePolicy& tol = {});

/// All R among `candidates` with (P0->R).(P0->Q) = (P0->p1).(P0->Q) +
/// (P0->p2).(P0->Q) for every Q of the whole domain. May be empty (sums
/// need not exist in a finite domain) or have several entries.
std::vector<PointId> find_vector_sum(const WorldFunction& wf, PointId origin, PointId p1,
                                     PointId p2, std::span<const PointId> candidates,
                                     const TolerancePolicy& tol = {});

/// All R among `candidates` with (P0->R).(P0->Q) = a * (P0->p).(P0->Q) for
/// every Q of the whole domain.
std::vector<PointId> find_vector_scale(const WorldFunction& wf, PointId origin, PointId p,
                                       double a, std::span<const PointId> candidates,
                                       const TolerancePolicy& tol = {});

}  // namespace tgeo
