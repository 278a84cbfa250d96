#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tgeo/point.hpp"
#include "tgeo/tolerance.hpp"
#include "tgeo/world_function.hpp"

namespace tgeo {

// ============================================================================
// Covariant coordinates and the basis metric tensor
// ============================================================================

/// Covariant coordinates of p over the basis (P0..Pn):
/// x_i(p) = Gamma(P0, p, P_i), i = 1..n.
Eigen::VectorXd covariant_coordinates(const WorldFunction& wf, std::span<const PointId> basis,
                                      PointId p);

/// g_ik = Gamma(P0, P_i, P_k) over a basis with F_n != 0, plus its inverse.
/// inverse_error records max |g g^-1 - I|; the tensor may be indefinite.
struct MetricTensor {
  std::vector<PointId> basis;
  Eigen::MatrixXd covariant;
  Eigen::MatrixXd contravariant;
  double inverse_error = 0.0;
};

MetricTensor metric_tensor(const WorldFunction& wf, std::span<const PointId> basis,
                           const TolerancePolicy& tol = {});

/// | Gamma(P0,p,q) - x(p)^T g^-1 x(q) |, the defect of the sigma bilinear
/// form at one pair. Zero everywhere exactly when sigma is the world
/// function of a flat space with that basis metric.
double sigma_form_residual(const WorldFunction& wf, const MetricTensor& metric, PointId p,
                           PointId q);

// ============================================================================
// Flat-structure detection on a finite sample
// ============================================================================

enum class StructureCondition { none, rank, sigma_form, uniqueness };

/// Outcome of euclidean_structure_check. When the structure holds,
/// `coordinates` carries one row per candidate in an axis frame normalized
/// so that sigma(p,q) = 1/2 sum_j axis_signature[j] (z_j(p) - z_j(q))^2;
/// all-positive signature means proper Euclidean. Surjectivity onto a
/// continuum cannot be decided from finite data, so existence_checked
/// stays false and the verdict covers injectivity only.
struct EmbeddingReport {
  bool has_structure = false;
  StructureCondition failing_condition = StructureCondition::none;
  double max_residual = 0.0;
  std::vector<PointId> witness;  ///< failing tuple or pair, empty otherwise
  std::vector<PointId> basis;    ///< basis used (greedy, conditioning-driven)
  Eigen::MatrixXd coordinates;   ///< candidates x n, present when has_structure
  Eigen::VectorXd axis_signature;
  bool existence_checked = false;
};

/// Decides whether the sampled sigma is that of an n-dimensional flat
/// (possibly indefinite) space: a basis with F_n != 0 must exist, every
/// sampled F_{n+1} must vanish (all (n+2)-tuples when there are at most
/// max_tuples of them, otherwise a seeded sample of max_tuples), the sigma
/// bilinear form must reproduce Gamma on all candidate pairs, and distinct
/// candidates must map to distinct coordinates.
EmbeddingReport euclidean_structure_check(const WorldFunction& wf,
                                          std::span<const PointId> candidates, int n,
                                          const TolerancePolicy& tol = {},
                                          std::uint64_t seed = 0,
                                          Eigen::Index max_tuples = 10000);

// ============================================================================
// Isometric embedding of a finite sigma space into proper Euclidean space
// ============================================================================

/// Result of isometric_embed_finite. Embeddable iff the Gamma matrix of the
/// tuple is positive semidefinite within tolerance; dim is its numerical
/// rank; coordinates are (n+1) x dim with the first point at the origin,
/// reproducing the sigma table (max_roundtrip_error records the check).
struct FlatEmbedding {
  bool embeddable = false;
  Eigen::Index dim = 0;
  Eigen::MatrixXd coordinates;
  double min_eigenvalue = 0.0;  ///< witness when not embeddable
  std::optional<std::pair<PointId, PointId>> negative_sigma_witness;
  double max_roundtrip_error = 0.0;
};

FlatEmbedding isometric_embed_finite(const FiniteSigmaSpace& fs, const TolerancePolicy& tol = {});

}  // namespace tgeo
