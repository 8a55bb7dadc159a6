//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RINGCTL_LBFGS_HPP_
#define RINGCTL_LBFGS_HPP_

#include <functional>

#include "ringctl/types.hpp"

namespace ringctl {

using Objective = std::function<Real(const RealVector &)>;

/// Central-difference gradient, one step size for every coordinate.
RealVector central_difference_gradient(const Objective &f, const RealVector &x,
                                       Real step);

/// Richardson extrapolation of central differences at steps h and h/2:
/// (4 D(h/2) - D(h)) / 3, fourth-order accurate.
RealVector richardson_gradient(const Objective &f, const RealVector &x,
                               Real step);

struct LbfgsConfig {
  int history = 10;
  int max_iters = 500;
  Real gradient_tol = 1e-12;
  /// Stop once the objective drops below this value.
  Real target_value = 1e-15;
  /// Stop when the relative decrease over one iteration falls below this.
  Real rel_decrease_tol = 1e-14;
  int max_line_search = 40;
};

enum class LbfgsStatus {
  kTargetReached,
  kGradientSmall,
  kStalled,
  kMaxIterations,
  kLineSearchFailed,
};

struct LbfgsResult {
  RealVector x;
  Real value = 0;
  int iterations = 0;
  long evaluations = 0;
  LbfgsStatus status = LbfgsStatus::kMaxIterations;
};

using GradientFn = std::function<RealVector(const RealVector &)>;

/// Unconstrained L-BFGS (two-loop recursion) with a backtracking Armijo
/// line search. Pairs failing the curvature condition s.y > 0 are not
/// stored. The returned value never exceeds f(x0).
LbfgsResult lbfgs_minimize(const Objective &f, const GradientFn &grad,
                           RealVector x0, const LbfgsConfig &cfg = {});

const char *to_string(LbfgsStatus status);

}  // namespace ringctl

#endif  // RINGCTL_LBFGS_HPP_
