//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RINGCTL_CW_HPP_
#define RINGCTL_CW_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ringctl/lbfgs.hpp"
#include "ringctl/model.hpp"
#include "ringctl/propagate.hpp"
#include "ringctl/protocols.hpp"

namespace ringctl {

struct CwOptConfig {
  Real field_lo = 0;
  Real field_hi = 2 * kPi;
  int grid_points = 1024;   // samples for the field extrema
  int n_seed_samples = 200;
  int n_local_searches = 4;
  Real seed_noise_sigma = 0.2;
  int max_iters = 300;
  Real gradient_step = 1e-6;
  Real fidelity_threshold = 0.99;
  int removal_attempts = 5;
  std::uint64_t rng_seed = 1;
  int threads = 1;
  IntegratorConfig integrator;
};

struct FieldExtrema {
  Real min_x, max_x, min_y, max_y;
};

/// Extrema of B_x and B_y on a uniform grid over [0, T], endpoints included.
FieldExtrema field_extrema(const SinePulse &pulse, int grid_points);

/// Penalty added to the infidelity for fields leaving [lo, hi):
/// Theta(max B - hi) max B - Theta(lo - min B) min B per axis, Theta(0) = 0.
Real field_penalty(const SinePulse &pulse, const CwOptConfig &cfg);

/// Infidelity of evolve_cw(|0...0>) against the target.
Real cw_infidelity(const SinePulse &pulse, const TargetState &target,
                   const RingModel &model, const IntegratorConfig &integrator = {});

/// cw_infidelity + field_penalty.
Real cw_loss(const SinePulse &pulse, const TargetState &target,
             const RingModel &model, const CwOptConfig &cfg);

struct CwResult {
  SinePulse pulse;
  Real loss = 1;
  Real infidelity = 1;
  LbfgsStatus status = LbfgsStatus::kMaxIterations;
  int iterations = 0;
};

/// L-BFGS over the active coefficients with central-difference gradients.
CwResult cw_local_optimize(const SinePulse &pulse0, const TargetState &target,
                           const RingModel &model, const CwOptConfig &cfg);

/// Gaussian perturbations of the raise-and-fall seed (b_1 = 1 on both
/// axes), local searches from the lowest-loss samples, sorted by loss.
std::vector<CwResult> informed_multistart(const TargetState &target, int m,
                                          Real horizon, const RingModel &model,
                                          const CwOptConfig &cfg);

struct RemovalStep {
  Axis axis;
  int harmonic;
  Real magnitude;   // |b| before removal
  Real loss;        // after re-optimization
  bool accepted;
};

struct SimplifyResult {
  SinePulse pulse;
  int remaining = 0;   // active component count of `pulse`
  Real loss = 1;
  std::vector<RemovalStep> history;
};

/// Iterative removal of the smallest-magnitude active coefficient with
/// re-optimization seeded from the survivors. When a removal cannot reach
/// the threshold the next-smallest candidate is tried; the procedure stops
/// after `removal_attempts` consecutive failures.
SimplifyResult simplify_pulse(const SinePulse &pulse0, const TargetState &target,
                              const RingModel &model, const CwOptConfig &cfg);

std::string coefficient_name(Axis axis, int harmonic);

}  // namespace ringctl

#endif  // RINGCTL_CW_HPP_
