#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "batchcot/grpo.hpp"

namespace batchcot {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Central differences of f at x with step h, one coordinate at a time.
std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> x, double h);

/// max |a - b| / max(max|a|, max|b|, floor)
double relative_error(std::span<const double> a, std::span<const double> b, double floor = 1e-8);

struct GradientCheckStats {
  std::size_t configurations = 0;
  std::size_t failures = 0;
  double worst_relative_error = 0.0;
};

/// Random (theta, old theta, group, beta, advantage mode) configurations with
/// beta cycling through {0, 0.01, 0.1}; analytic gradient of grpo_loss versus
/// central differences at step h.
GradientCheckStats check_grpo_gradient(ObjectiveMode mode, std::size_t configurations,
                                       std::uint64_t seed, double h = 1e-5,
                                       double tolerance = 1e-6);

/// Runs the gradient, advantage, KL and improvement checks.
std::vector<CheckResult> run_grpo_selfcheck(std::uint64_t seed);

}  // namespace batchcot
