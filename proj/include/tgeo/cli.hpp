#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tgeo/world_function.hpp"

namespace tgeo {

/// Everything a run depends on. Two runs with equal configs (seed included)
/// write byte-identical output.
struct RunConfig {
  std::string command;

  std::filesystem::path input;
  std::optional<TableValues> values;

  // Reinterpretation of JSON point clouds: swap the generator or its
  // signature without touching the coordinates. --dim only asserts.
  std::optional<GeneratorKind> generator;
  std::optional<Eigen::Index> dim;
  std::optional<std::string> signature;

  std::vector<int> orders;                 ///< classify
  std::optional<int> structure_order;      ///< embed-check
  std::vector<Eigen::Index> basis;         ///< tube, section, degeneracy
  std::optional<Eigen::Index> at;          ///< section
  double rel_eps = 1e-9;
  std::uint64_t seed = 0;
  std::filesystem::path out;               ///< empty writes to stdout
  std::string format = "csv";

  int pairs = 20;      ///< sphere-demo
  int csamples = 512;  ///< sphere-demo
  int steps = 4096;    ///< sphere-demo
};

/// Parses argv, runs the subcommand, writes the report. Returns the process
/// exit code: 0 success, 1 negative verdict, 2 bad input, 3 internal
/// inconsistency.
int run_cli(int argc, const char* const* argv);

}  // namespace tgeo
