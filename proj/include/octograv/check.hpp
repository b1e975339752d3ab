#pragma once

#include <cstddef>
#include <string>
#include <utility>

namespace octograv {

/// Outcome of one named invariant or identity check.
struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool passed = false;
  std::string detail;
};

/// passed iff max_residual <= tolerance (exact checks use tolerance 0).
inline CheckResult make_check(std::string name, double max_residual,
                              double tolerance, std::size_t samples,
                              std::string detail = {}) {
  return CheckResult{std::move(name), max_residual, tolerance, samples,
                     max_residual <= tolerance, std::move(detail)};
}

}  // namespace octograv
