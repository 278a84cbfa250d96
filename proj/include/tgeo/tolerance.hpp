#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

namespace tgeo {

/// Zero / equality classification for Gram-type quantities.
///
/// Determinant comparisons are normalized by max(1, m^k), where m is the
/// largest |Gamma| entry of the matrix and k its order, so the same policy
/// works for tables at any scale. `abs_override`, when set, replaces the
/// scaled test with a plain absolute threshold; callers use it for
/// per-query membership overrides.
struct TolerancePolicy {
  double rel_eps = 1e-9;
  std::optional<double> abs_override;

  double det_scale(double max_abs_entry, int order) const {
    return std::max(1.0, std::pow(std::max(max_abs_entry, 0.0), order));
  }

  bool det_zero(double value, double max_abs_entry, int order) const {
    if (abs_override) return std::abs(value) <= *abs_override;
    return std::abs(value) <= rel_eps * det_scale(max_abs_entry, order);
  }

  /// |v| <= rel_eps * max(1, scale)
  bool zero(double v, double scale = 0.0) const {
    if (abs_override) return std::abs(v) <= *abs_override;
    return std::abs(v) <= rel_eps * std::max(1.0, scale);
  }

  /// |a - b| <= rel_eps * max(1, |a|, |b|)
  bool close(double a, double b) const {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (abs_override) return std::abs(a - b) <= *abs_override;
    return std::abs(a - b) <= rel_eps * scale;
  }
};

}  // namespace tgeo
