#include "tgeo/euclidean.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <string>

#include "tgeo/error.hpp"
#include "tgeo/gram.hpp"
#include "tgeo/sampling.hpp"

namespace tgeo {

Eigen::VectorXd covariant_coordinates(const WorldFunction& wf, std::span<const PointId> basis,
                                      PointId p) {
  if (basis.size() < 2) throw Error("covariant_coordinates: basis needs at least two points");
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size()) - 1;
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i)
    x(i) = gamma(wf, basis[0], p, basis[static_cast<std::size_t>(i + 1)]);
  return x;
}

MetricTensor metric_tensor(const WorldFunction& wf, std::span<const PointId> basis,
                           const TolerancePolicy& tol) {
  if (basis.size() < 2) throw Error("metric_tensor: basis needs at least two points");
  const FiniteSigmaSpace fs = extract_finite_subspace(wf, basis);
  const GramDet det = gram_det(fs);
  if (det.is_zero(tol))
    throw Error("metric_tensor: degenerate basis, F_" + std::to_string(det.order) + " vanishes");

  MetricTensor out;
  out.basis.assign(basis.begin(), basis.end());
  out.covariant = gram_matrix(fs.sigma_table);
  out.contravariant = out.covariant.fullPivLu().inverse();
  out.inverse_error =
      (out.covariant * out.contravariant - Eigen::MatrixXd::Identity(det.order, det.order))
          .cwiseAbs()
          .maxCoeff();
  return out;
}

double sigma_form_residual(const WorldFunction& wf, const MetricTensor& metric, PointId p,
                           PointId q) {
  const Eigen::VectorXd xp = covariant_coordinates(wf, metric.basis, p);
  const Eigen::VectorXd xq = covariant_coordinates(wf, metric.basis, q);
  const double form = xp.dot(metric.contravariant * xq);
  return std::abs(gamma(wf, metric.basis[0], p, q) - form);
}

namespace {

// Greedy conditioning-driven basis: the pair with the largest |F_1|, then
// repeatedly the candidate giving the largest |F_k|.
std::vector<PointId> greedy_basis(const WorldFunction& wf, std::span<const PointId> candidates,
                                  int n, const TolerancePolicy& tol, bool& ok) {
  ok = false;
  std::vector<PointId> basis;

  double best = -1.0;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      const double f1 = std::abs(2.0 * wf.sigma(candidates[i], candidates[j]));
      if (f1 > best) {
        best = f1;
        basis = {candidates[i], candidates[j]};
      }
    }
  if (basis.empty() || tol.det_zero(best, best, 1)) return basis;

  while (static_cast<int>(basis.size()) < n + 1) {
    double best_f = -1.0;
    PointId best_p{};
    GramDet best_det;
    for (const PointId c : candidates) {
      if (std::find(basis.begin(), basis.end(), c) != basis.end()) continue;
      std::vector<PointId> trial = basis;
      trial.push_back(c);
      const GramDet d = gram_det(extract_finite_subspace(wf, trial));
      if (std::abs(d.value) > best_f) {
        best_f = std::abs(d.value);
        best_p = c;
        best_det = d;
      }
    }
    if (best_f < 0.0 || best_det.is_zero(tol)) return basis;  // rank exhausted
    basis.push_back(best_p);
  }
  ok = true;
  return basis;
}

}  // namespace

EmbeddingReport euclidean_structure_check(const WorldFunction& wf,
                                          std::span<const PointId> candidates, int n,
                                          const TolerancePolicy& tol, std::uint64_t seed,
                                          Eigen::Index max_tuples) {
  if (n < 1) throw Error("euclidean_structure_check: n must be >= 1");
  if (candidates.size() < static_cast<std::size_t>(n) + 1)
    throw Error("euclidean_structure_check: need at least n+1 candidates");

  EmbeddingReport report;

  bool basis_ok = false;
  std::vector<PointId> basis = greedy_basis(wf, candidates, n, tol, basis_ok);
  if (!basis_ok) {
    report.failing_condition = StructureCondition::rank;
    report.witness = basis;  // the longest non-degenerate prefix found
    return report;
  }
  report.basis = basis;

  // Every sampled (n+2)-tuple must satisfy F_{n+1} = 0.
  const Eigen::Index count = static_cast<Eigen::Index>(candidates.size());
  const int k = n + 2;
  if (count >= k) {
    const std::uint64_t total = combination_count(count, k);
    auto test_tuple = [&](const std::vector<Eigen::Index>& idx) -> bool {
      std::vector<PointId> tuple;
      tuple.reserve(idx.size());
      for (const Eigen::Index i : idx) tuple.push_back(candidates[static_cast<std::size_t>(i)]);
      const GramDet d = gram_det(extract_finite_subspace(wf, tuple));
      if (!d.is_zero(tol)) {
        report.failing_condition = StructureCondition::rank;
        report.witness = tuple;
        report.max_residual = std::abs(d.value);
        return false;
      }
      return true;
    };
    if (total <= static_cast<std::uint64_t>(max_tuples)) {
      std::vector<Eigen::Index> combo = first_combination(k);
      do {
        if (!test_tuple(combo)) return report;
      } while (next_combination(combo, count));
    } else {
      SplitMix64 rng(seed);
      for (Eigen::Index t = 0; t < max_tuples; ++t)
        if (!test_tuple(sample_subset(rng, count, k))) return report;
    }
  }

  // Sigma bilinear form against Gamma on all candidate pairs.
  const MetricTensor metric = metric_tensor(wf, basis, tol);
  const Eigen::Index nn = n;
  Eigen::MatrixXd x(count, nn);
  for (Eigen::Index i = 0; i < count; ++i)
    x.row(i) = covariant_coordinates(wf, basis, candidates[static_cast<std::size_t>(i)]);

  for (Eigen::Index i = 0; i < count; ++i)
    for (Eigen::Index j = i; j < count; ++j) {
      const double g0 = gamma(wf, basis[0], candidates[static_cast<std::size_t>(i)],
                              candidates[static_cast<std::size_t>(j)]);
      const double form = x.row(i).dot(metric.contravariant * x.row(j).transpose());
      const double residual = std::abs(g0 - form);
      report.max_residual = std::max(report.max_residual, residual);
      const double m = std::max({std::abs(g0), x.row(i).cwiseAbs().maxCoeff(),
                                 x.row(j).cwiseAbs().maxCoeff()});
      if (!tol.zero(residual, m * m)) {
        report.failing_condition = StructureCondition::sigma_form;
        report.witness = {candidates[static_cast<std::size_t>(i)],
                          candidates[static_cast<std::size_t>(j)]};
        return report;
      }
    }

  // Injectivity of the coordinate map over the candidates.
  const double coord_scale = x.size() > 0 ? x.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index i = 0; i < count; ++i)
    for (Eigen::Index j = i + 1; j < count; ++j) {
      if (candidates[static_cast<std::size_t>(i)] == candidates[static_cast<std::size_t>(j)])
        continue;
      const double gap = (x.row(i) - x.row(j)).cwiseAbs().maxCoeff();
      if (tol.zero(gap, coord_scale)) {
        report.failing_condition = StructureCondition::uniqueness;
        report.witness = {candidates[static_cast<std::size_t>(i)],
                          candidates[static_cast<std::size_t>(j)]};
        return report;
      }
    }

  // Normalized axis frame: covariant g = V L V^T gives z = |L|^{-1/2} V^T x
  // with sigma(p,q) = 1/2 sum_j sign(L_j) (z_j(p) - z_j(q))^2.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(metric.covariant);
  if (eig.info() != Eigen::Success)
    throw InternalError("euclidean_structure_check: eigendecomposition failed");
  Eigen::VectorXd lambda = eig.eigenvalues();
  Eigen::MatrixXd v = eig.eigenvectors();
  // signed-descending order puts positive axes first; sign carries the signature
  std::vector<Eigen::Index> order(static_cast<std::size_t>(nn));
  for (Eigen::Index i = 0; i < nn; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (lambda(a) != lambda(b)) return lambda(a) > lambda(b);
    return a < b;
  });

  report.axis_signature.resize(nn);
  Eigen::MatrixXd transform(nn, nn);
  for (Eigen::Index j = 0; j < nn; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    const double l = lambda(src);
    report.axis_signature(j) = l >= 0.0 ? 1.0 : -1.0;
    transform.col(j) = v.col(src) / std::sqrt(std::abs(l));
  }
  report.coordinates = x * transform;
  report.has_structure = true;
  return report;
}

FlatEmbedding isometric_embed_finite(const FiniteSigmaSpace& fs, const TolerancePolicy& tol) {
  const Eigen::Index m = fs.sigma_table.rows();
  if (m < 1 || fs.sigma_table.cols() != m) throw Error("isometric_embed_finite: empty or non-square tuple");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (fs.sigma_table(i, i) != 0.0)
      throw Error("isometric_embed_finite: nonzero diagonal at (" + std::to_string(i) + ", " +
                  std::to_string(i) + ")");
    for (Eigen::Index j = i + 1; j < m; ++j)
      if (fs.sigma_table(i, j) != fs.sigma_table(j, i))
        throw Error("isometric_embed_finite: asymmetric sigma table at (" + std::to_string(i) +
                    ", " + std::to_string(j) + ")");
  }

  FlatEmbedding out;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j)
      if (fs.sigma_table(i, j) < 0.0) {
        out.embeddable = false;
        out.min_eigenvalue = fs.sigma_table(i, j);
        out.negative_sigma_witness = {fs.points[static_cast<std::size_t>(i)],
                                      fs.points[static_cast<std::size_t>(j)]};
        return out;
      }

  const Eigen::MatrixXd g = gram_matrix(fs.sigma_table);
  const Eigen::Index n = g.rows();
  if (n == 0) {
    out.embeddable = true;
    out.coordinates.resize(1, 0);
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
  if (eig.info() != Eigen::Success)
    throw InternalError("isometric_embed_finite: eigendecomposition failed");
  const Eigen::VectorXd lambda = eig.eigenvalues();
  const double norm_inf = std::max(1.0, g.cwiseAbs().rowwise().sum().maxCoeff());
  const double threshold = tol.rel_eps * norm_inf;

  out.min_eigenvalue = lambda.minCoeff();
  if (out.min_eigenvalue < -threshold) {
    out.embeddable = false;
    return out;
  }

  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (lambda(i) > threshold) ++rank;

  out.embeddable = true;
  out.dim = rank;
  out.coordinates.setZero(m, rank);
  // eigenvalues ascend; keep the top `rank`, largest axis first
  for (Eigen::Index j = 0; j < rank; ++j) {
    const Eigen::Index src = n - 1 - j;
    out.coordinates.block(1, j, n, 1) =
        std::sqrt(std::max(lambda(src), 0.0)) * eig.eigenvectors().col(src);
  }

  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double rt = 0.5 * (out.coordinates.row(i) - out.coordinates.row(j)).squaredNorm();
      out.max_roundtrip_error =
          std::max(out.max_roundtrip_error, std::abs(rt - fs.sigma_table(i, j)));
    }
  return out;
}

}  // namespace tgeo
