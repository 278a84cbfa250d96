#include "tgeo/world_function.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

#include "tgeo/error.hpp"

namespace tgeo {
namespace {

std::string pair_text(Eigen::Index i, Eigen::Index j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j)))
        throw Error(std::string(what) + ": non-finite entry at " + pair_text(i, j));
}

// Largest tolerated |x|^2 - 1 overshoot for sphere generator points; keeps
// asin arguments inside [0, 1] after clamping.
constexpr double kBallSlack = 1e-9;

}  // namespace

double WorldFunction::sigma(PointId p, PointId q) const {
  Eigen::Index a = p.index;
  Eigen::Index b = q.index;
  if (a < 0 || a >= size_) throw Error("sigma: point index " + std::to_string(a) + " out of range");
  if (b < 0 || b >= size_) throw Error("sigma: point index " + std::to_string(b) + " out of range");
  if (a == b) return 0.0;
  if (a > b) std::swap(a, b);

  switch (kind_) {
    case GeneratorKind::matrix:
      return table_(a, b);
    case GeneratorKind::euclidean:
    case GeneratorKind::pseudo_euclidean: {
      const Eigen::RowVectorXd d = coords_.row(a) - coords_.row(b);
      if (metric_.size() == 0) return 0.5 * d.squaredNorm();
      return 0.5 * (d * metric_ * d.transpose()).value();
    }
    case GeneratorKind::sphere_chordal: {
      const Eigen::RowVectorXd d = coords_.row(a) - coords_.row(b);
      return 0.5 * d.squaredNorm();
    }
    case GeneratorKind::sphere_intrinsic: {
      const Eigen::RowVectorXd d = coords_.row(a) - coords_.row(b);
      const double chordal = 0.5 * d.squaredNorm();
      const double arg = std::min(1.0, std::sqrt(0.5 * chordal));
      const double half_angle = std::asin(arg);
      return 2.0 * half_angle * half_angle;
    }
  }
  throw InternalError("sigma: unhandled generator kind");
}

WorldFunction make_world_function(const GeneratorSpec& spec, const Eigen::MatrixXd& coordinates) {
  if (spec.kind == GeneratorKind::matrix)
    throw Error("make_world_function: matrix-backed domains take a table, not coordinates");
  if (coordinates.rows() < 1) throw Error("make_world_function: empty point set");
  if (spec.dimension < 1) throw Error("make_world_function: dimension must be >= 1");
  if (coordinates.cols() != spec.dimension)
    throw Error("make_world_function: coordinate arity " + std::to_string(coordinates.cols()) +
                " does not match dimension " + std::to_string(spec.dimension));
  require_finite(coordinates, "make_world_function");

  WorldFunction wf;
  wf.kind_ = spec.kind;
  wf.size_ = coordinates.rows();
  wf.coords_ = coordinates;

  switch (spec.kind) {
    case GeneratorKind::euclidean: {
      if (!spec.signature.empty())
        throw Error("make_world_function: signature is only valid for pseudo_euclidean");
      if (spec.metric.size() != 0) {
        if (spec.metric.rows() != spec.dimension || spec.metric.cols() != spec.dimension)
          throw Error("make_world_function: metric must be dimension x dimension");
        require_finite(spec.metric, "make_world_function metric");
        if (!spec.metric.isApprox(spec.metric.transpose(), 1e-12))
          throw Error("make_world_function: metric must be symmetric");
        Eigen::LLT<Eigen::MatrixXd> llt(spec.metric);
        if (llt.info() != Eigen::Success)
          throw Error("make_world_function: euclidean metric must be positive-definite");
        wf.metric_ = spec.metric;
      }
      break;
    }
    case GeneratorKind::pseudo_euclidean: {
      if (static_cast<Eigen::Index>(spec.signature.size()) != spec.dimension)
        throw Error("make_world_function: signature needs one entry per axis");
      Eigen::MatrixXd g = Eigen::MatrixXd::Zero(spec.dimension, spec.dimension);
      for (Eigen::Index i = 0; i < spec.dimension; ++i) {
        const int s = spec.signature[static_cast<std::size_t>(i)];
        if (s != 1 && s != -1)
          throw Error("make_world_function: signature entries must be +1 or -1");
        g(i, i) = s;
      }
      wf.metric_ = g;
      break;
    }
    case GeneratorKind::sphere_chordal:
    case GeneratorKind::sphere_intrinsic: {
      if (!spec.signature.empty())
        throw Error("make_world_function: signature is only valid for pseudo_euclidean");
      if (spec.metric.size() != 0)
        throw Error("make_world_function: sphere generators take no metric");
      for (Eigen::Index i = 0; i < coordinates.rows(); ++i) {
        const double n2 = coordinates.row(i).squaredNorm();
        if (n2 > 1.0 + kBallSlack)
          throw Error("make_world_function: point " + std::to_string(i) +
                      " lies outside the closed unit ball");
      }
      break;
    }
    case GeneratorKind::matrix:
      break;  // unreachable, rejected above
  }
  return wf;
}

WorldFunction make_world_function(const Eigen::MatrixXd& table, TableValues values) {
  if (table.rows() < 1 || table.rows() != table.cols())
    throw Error("make_world_function: table must be square and non-empty");
  require_finite(table, "make_world_function table");
  for (Eigen::Index i = 0; i < table.rows(); ++i)
    if (table(i, i) != 0.0)
      throw Error("make_world_function: nonzero diagonal at " + pair_text(i, i));
  for (Eigen::Index i = 0; i < table.rows(); ++i)
    for (Eigen::Index j = i + 1; j < table.cols(); ++j)
      if (table(i, j) != table(j, i))
        throw Error("make_world_function: asymmetric table at " + pair_text(i, j));

  WorldFunction wf;
  wf.kind_ = GeneratorKind::matrix;
  wf.size_ = table.rows();
  if (values == TableValues::rho) {
    for (Eigen::Index i = 0; i < table.rows(); ++i)
      for (Eigen::Index j = 0; j < table.cols(); ++j)
        if (table(i, j) < 0.0)
          throw Error("make_world_function: negative distance at " + pair_text(i, j));
    wf.table_ = 0.5 * table.cwiseProduct(table);
  } else {
    wf.table_ = table;
  }
  return wf;
}

FiniteSigmaSpace extract_finite_subspace(const WorldFunction& wf, std::span<const PointId> points) {
  if (points.empty()) throw Error("extract_finite_subspace: empty point tuple");
  for (PointId p : points)
    if (p.index < 0 || p.index >= wf.size())
      throw Error("extract_finite_subspace: point index " + std::to_string(p.index) +
                  " out of range");
  FiniteSigmaSpace fs;
  fs.points.assign(points.begin(), points.end());
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  fs.sigma_table.setZero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double s = wf.sigma(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
      fs.sigma_table(i, j) = s;
      fs.sigma_table(j, i) = s;
    }
  return fs;
}

}  // namespace tgeo
