#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "tgeo/point.hpp"

namespace tgeo {

/// How sigma values are produced for a finite point domain.
///
///  euclidean        sigma = 1/2 (x-y)^T g (x-y), g constant positive-definite
///                   (identity when no metric is given)
///  pseudo_euclidean sigma = 1/2 sum_i s_i (x_i-y_i)^2 with s_i in {+1,-1}
///  sphere_chordal   sigma = 1/2 |x-y|^2 on the closed unit ball
///  sphere_intrinsic sigma = 2 asin(sqrt(sigma_chordal/2))^2, the squared
///                   half great-circle form on the closed unit ball
///  matrix           sigma read from a validated symmetric table
enum class GeneratorKind { euclidean, pseudo_euclidean, sphere_chordal, sphere_intrinsic, matrix };

/// Whether a raw matrix holds sigma values or plain distances rho
/// (converted via sigma = rho^2 / 2). Never guessed from data.
enum class TableValues { sigma, rho };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::euclidean;
  Eigen::Index dimension = 0;
  std::vector<int> signature;  ///< pseudo_euclidean only, one +-1 per axis
  Eigen::MatrixXd metric;      ///< euclidean only; empty means identity
};

/// A world function: symmetric scalar sigma over a finite point domain with
/// sigma(P,P) = 0. Negative values are legal (indefinite metrics). Pairs are
/// canonicalized (lower index first) before evaluation, so symmetry holds
/// bit for bit. Evaluation is pure and safe to call from multiple threads.
class WorldFunction {
 public:
  double sigma(PointId p, PointId q) const;

  /// rho^2 = 2 sigma; the usual squared distance where sigma >= 0.
  double rho_squared(PointId p, PointId q) const { return 2.0 * sigma(p, q); }

  Eigen::Index size() const { return size_; }
  GeneratorKind kind() const { return kind_; }

  /// Coordinate arity for generator-backed domains, 0 for matrix-backed.
  Eigen::Index dimension() const { return coords_.cols(); }

  /// size x dimension rows of registered coordinates (empty when matrix-backed).
  const Eigen::MatrixXd& coordinates() const { return coords_; }

  friend WorldFunction make_world_function(const GeneratorSpec& spec,
                                           const Eigen::MatrixXd& coordinates);
  friend WorldFunction make_world_function(const Eigen::MatrixXd& table, TableValues values);

 private:
  WorldFunction() = default;

  GeneratorKind kind_ = GeneratorKind::matrix;
  Eigen::Index size_ = 0;
  Eigen::MatrixXd coords_;  ///< generator kinds: one row per point
  Eigen::MatrixXd metric_;  ///< euclidean / pseudo_euclidean: constant g
  Eigen::MatrixXd table_;   ///< matrix kind: full symmetric sigma table
};

/// Builds a generator-backed world function over the given coordinate rows.
/// Rejects dimension mismatches, non-finite coordinates, signatures that are
/// not +-1 lists, non-positive-definite euclidean metrics, and sphere points
/// outside the closed unit ball.
WorldFunction make_world_function(const GeneratorSpec& spec, const Eigen::MatrixXd& coordinates);

/// Builds a matrix-backed world function. The table must be square and
/// finite with zero diagonal and exact symmetry; rejections name the
/// offending pair. With TableValues::rho, entries are distances (all
/// non-negative) and are converted as sigma = rho^2 / 2.
WorldFunction make_world_function(const Eigen::MatrixXd& table, TableValues values);

/// An ordered tuple of points with their sigma values tabulated. order() is
/// the tuple size minus one; the first point acts as origin downstream.
struct FiniteSigmaSpace {
  std::vector<PointId> points;
  Eigen::MatrixXd sigma_table;  ///< (n+1) x (n+1), symmetric, zero diagonal

  Eigen::Index order() const { return static_cast<Eigen::Index>(points.size()) - 1; }
};

/// Tabulates sigma over the given points, preserving their order. Repeats
/// are allowed; out-of-range indices are rejected.
FiniteSigmaSpace extract_finite_subspace(const WorldFunction& wf, std::span<const PointId> points);

}  // namespace tgeo
