#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <string>

#include "tgeo/world_function.hpp"

namespace tgeo {

/// Parsed point-cloud file: the generator recipe plus coordinate rows.
struct PointCloudInput {
  GeneratorSpec spec;
  Eigen::MatrixXd points;
};

/// Reads a JSON point cloud:
///   { "generator": "euclidean" | "pseudo_euclidean" | "sphere_chordal" |
///                  "sphere_intrinsic",
///     "dimension": d,
///     "signature": [+-1, ...],   // pseudo_euclidean only
///     "points": [[f64, ...], ...] }
PointCloudInput load_point_cloud_json(const std::filesystem::path& file);

/// Reads a CSV matrix: either a full square or the lower triangle including
/// the diagonal (row i holding i+1 entries). Returns the full symmetric
/// matrix; content validation happens in make_world_function.
Eigen::MatrixXd load_matrix_csv(const std::filesystem::path& file);

/// Looks for "<file>.json" next to a CSV matrix and reads its
/// { "values": "sigma" | "rho" } declaration, if present.
std::optional<TableValues> read_values_sidecar(const std::filesystem::path& csv_file);

/// Builds a world function from either input kind. JSON point clouds carry
/// their own generator; CSV matrices need a values declaration from the
/// sidecar or the caller (flag), which must agree when both exist. Guessing
/// is never done.
WorldFunction load_world_function(const std::filesystem::path& file,
                                  std::optional<TableValues> values_flag);

GeneratorKind parse_generator_kind(const std::string& name);
std::string generator_kind_name(GeneratorKind kind);

/// Shortest decimal digits that parse back to the same IEEE-754 double.
std::string format_double(double v);

}  // namespace tgeo
