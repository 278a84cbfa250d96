#pragma once

#include <Eigen/Core>
#include <compare>
#include <cstdint>
#include <vector>

namespace tgeo {

/// Handle of a point inside a world-function domain. Identity is the index
/// alone; coordinates (if any) live with the owning WorldFunction.
struct PointId {
  Eigen::Index index = 0;

  friend constexpr auto operator<=>(PointId, PointId) = default;
};

/// [0, count) as PointIds, the usual way to address a whole domain.
inline std::vector<PointId> index_points(Eigen::Index count) {
  std::vector<PointId> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i) out.push_back(PointId{i});
  return out;
}

}  // namespace tgeo
