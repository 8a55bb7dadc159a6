//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ringctl/lbfgs.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace ringctl {

RealVector central_difference_gradient(const Objective &f, const RealVector &x,
                                       Real step) {
  RealVector g(x.size());
  RealVector xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + step;
    const Real fp = f(xp);
    xp[i] = x[i] - step;
    const Real fm = f(xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2 * step);
  }
  return g;
}

RealVector richardson_gradient(const Objective &f, const RealVector &x,
                               Real step) {
  const RealVector coarse = central_difference_gradient(f, x, step);
  const RealVector fine = central_difference_gradient(f, x, step / 2);
  return (4 * fine - coarse) / 3;
}

const char *to_string(LbfgsStatus status) {
  switch (status) {
  case LbfgsStatus::kTargetReached:
    return "target_reached";
  case LbfgsStatus::kGradientSmall:
    return "gradient_small";
  case LbfgsStatus::kStalled:
    return "stalled";
  case LbfgsStatus::kMaxIterations:
    return "max_iterations";
  case LbfgsStatus::kLineSearchFailed:
    return "line_search_failed";
  }
  return "unknown";
}

LbfgsResult lbfgs_minimize(const Objective &f, const GradientFn &grad,
                           RealVector x0, const LbfgsConfig &cfg) {
  LbfgsResult res;
  res.x = std::move(x0);
  res.value = f(res.x);
  res.evaluations = 1;

  if (res.value <= cfg.target_value) {
    res.status = LbfgsStatus::kTargetReached;
    return res;
  }

  struct Pair {
    RealVector s, y;
    Real rho;
  };
  std::deque<Pair> memory;

  RealVector g = grad(res.x);
  constexpr Real kArmijo = 1e-4;

  for (res.iterations = 0; res.iterations < cfg.max_iters; ++res.iterations) {
    if (!g.allFinite()) {
      res.status = LbfgsStatus::kLineSearchFailed;
      return res;
    }
    if (g.lpNorm<Eigen::Infinity>() <= cfg.gradient_tol) {
      res.status = LbfgsStatus::kGradientSmall;
      return res;
    }

    // Two-loop recursion.
    RealVector d = -g;
    std::vector<Real> alpha(memory.size());
    for (std::size_t i = memory.size(); i-- > 0;) {
      alpha[i] = memory[i].rho * memory[i].s.dot(d);
      d -= alpha[i] * memory[i].y;
    }
    if (!memory.empty()) {
      const auto &last = memory.back();
      d *= last.s.dot(last.y) / last.y.squaredNorm();
    } else {
      d /= std::max<Real>(1, g.norm());
    }
    for (std::size_t i = 0; i < memory.size(); ++i) {
      const Real beta = memory[i].rho * memory[i].y.dot(d);
      d += (alpha[i] - beta) * memory[i].s;
    }

    Real slope = g.dot(d);
    if (!(slope < 0)) {
      memory.clear();
      d = -g / std::max<Real>(1, g.norm());
      slope = g.dot(d);
    }

    Real step = 1;
    RealVector x_new;
    Real f_new = std::numeric_limits<Real>::infinity();
    bool accepted = false;
    for (int ls = 0; ls < cfg.max_line_search; ++ls) {
      x_new = res.x + step * d;
      f_new = f(x_new);
      ++res.evaluations;
      if (std::isfinite(f_new) && f_new <= res.value + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }

    if (!accepted) {
      if (!memory.empty()) {
        // Retry along steepest descent before giving up.
        memory.clear();
        continue;
      }
      res.status = LbfgsStatus::kLineSearchFailed;
      return res;
    }

    const RealVector g_new = grad(x_new);
    Pair p{ x_new - res.x, g_new - g, 0 };
    const Real sy = p.s.dot(p.y);
    if (sy > 1e-300) {
      p.rho = 1 / sy;
      memory.push_back(std::move(p));
      if (static_cast<int>(memory.size()) > cfg.history)
        memory.pop_front();
    }

    const Real decrease = res.value - f_new;
    res.x = std::move(x_new);
    res.value = f_new;
    g = g_new;

    if (res.value <= cfg.target_value) {
      ++res.iterations;
      res.status = LbfgsStatus::kTargetReached;
      return res;
    }
    if (decrease <= cfg.rel_decrease_tol * std::max<Real>(std::abs(res.value), 1e-300)) {
      ++res.iterations;
      res.status = LbfgsStatus::kStalled;
      return res;
    }
  }

  res.status = LbfgsStatus::kMaxIterations;
  return res;
}

}  // namespace ringctl
