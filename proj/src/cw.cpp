//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ringctl/cw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <tuple>

#include "ringctl/parallel.hpp"

namespace ringctl {

std::string coefficient_name(Axis axis, int harmonic) {
  return std::string(axis == Axis::X ? "bx" : "by") + std::to_string(harmonic);
}

FieldExtrema field_extrema(const SinePulse &pulse, int grid_points) {
  if (grid_points < 2)
    throw DomainError("field grid needs at least two samples");
  FieldExtrema e{ +INFINITY, -INFINITY, +INFINITY, -INFINITY };
  for (int i = 0; i < grid_points; ++i) {
    const Real t = pulse.horizon * i / (grid_points - 1);
    const Real bx = field_value(pulse, Axis::X, t);
    const Real by = field_value(pulse, Axis::Y, t);
    e.min_x = std::min(e.min_x, bx);
    e.max_x = std::max(e.max_x, bx);
    e.min_y = std::min(e.min_y, by);
    e.max_y = std::max(e.max_y, by);
  }
  return e;
}

Real field_penalty(const SinePulse &pulse, const CwOptConfig &cfg) {
  if (!(cfg.field_lo < cfg.field_hi))
    throw DomainError("field range must satisfy lo < hi");
  const auto e = field_extrema(pulse, cfg.grid_points);
  Real penalty = 0;
  for (Real hi: { e.max_x, e.max_y })
    if (hi > cfg.field_hi)
      penalty += hi;
  for (Real lo: { e.min_x, e.min_y })
    if (lo < cfg.field_lo)
      penalty -= lo;
  return penalty;
}

Real cw_infidelity(const SinePulse &pulse, const TargetState &target,
                   const RingModel &model, const IntegratorConfig &integrator) {
  if (target.n != model.num_qubits())
    throw DomainError("target and model qubit counts differ");
  const StateVector psi =
      evolve_cw(model.ground_reduced(), pulse, model, integrator);
  return std::clamp(1 - fidelity(target.reduced, psi), Real{ 0 }, Real{ 1 });
}

Real cw_loss(const SinePulse &pulse, const TargetState &target,
             const RingModel &model, const CwOptConfig &cfg) {
  return cw_infidelity(pulse, target, model, cfg.integrator)
         + field_penalty(pulse, cfg);
}

CwResult cw_local_optimize(const SinePulse &pulse0, const TargetState &target,
                           const RingModel &model, const CwOptConfig &cfg) {
  Objective loss = [&](const RealVector &x) {
    SinePulse p = pulse0;
    p.unpack_active(x);
    // Trial points whose ODE solve fails are rejected by the line search.
    try {
      return cw_loss(p, target, model, cfg);
    } catch (const IntegrationError &) {
      return std::numeric_limits<Real>::infinity();
    }
  };
  GradientFn grad = [&](const RealVector &x) {
    return central_difference_gradient(loss, x, cfg.gradient_step);
  };

  LbfgsConfig lcfg;
  lcfg.max_iters = cfg.max_iters;
  lcfg.target_value = 0;
  lcfg.rel_decrease_tol = 1e-10;
  lcfg.gradient_tol = 1e-9;
  const auto opt = lbfgs_minimize(loss, grad, pulse0.pack_active(), lcfg);

  CwResult res;
  res.pulse = pulse0;
  res.pulse.unpack_active(opt.x);
  res.loss = opt.value;
  res.infidelity = cw_infidelity(res.pulse, target, model, cfg.integrator);
  res.status = opt.status;
  res.iterations = opt.iterations;
  return res;
}

namespace {
  bool cw_result_less(const CwResult &a, const CwResult &b) {
    return a.loss < b.loss;
  }
}  // namespace

std::vector<CwResult> informed_multistart(const TargetState &target, int m,
                                          Real horizon, const RingModel &model,
                                          const CwOptConfig &cfg) {
  if (m < 1)
    throw DomainError("the raise-and-fall seed needs harmonic cutoff M >= 1");
  if (cfg.n_seed_samples < 1 || cfg.n_local_searches < 1)
    throw DomainError("multistart budgets must be positive");

  const SinePulse seed = SinePulse::raise_and_fall(m, horizon);
  std::mt19937_64 rng(cfg.rng_seed);
  std::normal_distribution<Real> noise(0.0, 1.0);

  std::vector<SinePulse> samples;
  samples.reserve(cfg.n_seed_samples);
  for (int s = 0; s < cfg.n_seed_samples; ++s) {
    SinePulse p = seed;
    for (Axis axis: { Axis::X, Axis::Y })
      for (int h = 0; h <= m; ++h)
        p.coeffs(axis)[h] += cfg.seed_noise_sigma * noise(rng);
    samples.push_back(std::move(p));
  }

  std::vector<Real> losses(samples.size());
  parallel_for(samples.size(), cfg.threads, [&](std::size_t i) {
    losses[i] = cw_loss(samples[i], target, model, cfg);
  });

  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t n_local =
      std::min<std::size_t>(cfg.n_local_searches, samples.size());
  std::partial_sort(order.begin(), order.begin() + n_local, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return std::tie(losses[a], a) < std::tie(losses[b], b);
                    });

  std::vector<CwResult> results(n_local);
  parallel_for(n_local, cfg.threads, [&](std::size_t i) {
    results[i] = cw_local_optimize(samples[order[i]], target, model, cfg);
  });
  std::stable_sort(results.begin(), results.end(), cw_result_less);
  return results;
}

SimplifyResult simplify_pulse(const SinePulse &pulse0, const TargetState &target,
                              const RingModel &model, const CwOptConfig &cfg) {
  const Real threshold = 1 - cfg.fidelity_threshold;
  const Real loss0 = cw_loss(pulse0, target, model, cfg);
  if (loss0 > threshold)
    throw DomainError("simplify_pulse needs a starting pulse that meets the "
                      "fidelity threshold");

  SimplifyResult out;
  out.pulse = pulse0;
  out.loss = loss0;

  struct Candidate {
    Axis axis;
    int harmonic;
    Real magnitude;
  };

  while (out.pulse.active_count() > 1) {
    std::vector<Candidate> candidates;
    for (Axis axis: { Axis::X, Axis::Y })
      for (int h = 0; h <= out.pulse.cutoff(); ++h)
        if (out.pulse.active(axis)[h])
          candidates.push_back({ axis, h, std::abs(out.pulse.coeffs(axis)[h]) });
    // Smallest magnitude first; ties go to x before y, then lower harmonic.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate &a, const Candidate &b) {
                       return a.magnitude < b.magnitude;
                     });

    bool removed = false;
    const int attempts =
        std::min<int>(cfg.removal_attempts, static_cast<int>(candidates.size()));
    for (int a = 0; a < attempts; ++a) {
      const auto &c = candidates[a];
      SinePulse trial = out.pulse;
      trial.active(c.axis)[c.harmonic] = false;
      trial.coeffs(c.axis)[c.harmonic] = 0;

      CwResult opt = cw_local_optimize(trial, target, model, cfg);
      const bool ok = opt.loss <= threshold;
      out.history.push_back({ c.axis, c.harmonic, c.magnitude, opt.loss, ok });
      if (ok) {
        out.pulse = std::move(opt.pulse);
        out.loss = opt.loss;
        removed = true;
        break;
      }
    }
    if (!removed)
      break;
  }

  out.remaining = out.pulse.active_count();
  return out;
}

}  // namespace ringctl
