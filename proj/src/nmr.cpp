//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ringctl/nmr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

#include "ringctl/parallel.hpp"

namespace ringctl {

Real interaction_period(int n) { return n < 3 ? kPi : kPi / 2; }

namespace {
  Real wrap(Real value, Real period) {
    Real w = std::fmod(value, period);
    if (w < 0)
      w += period;
    // fmod of a value just below a multiple of the period can round up.
    if (w >= period)
      w = 0;
    return w;
  }
}  // namespace

NmrSequence wrap_into_box(const NmrSequence &seq, int n) {
  NmrSequence out = seq;
  const Real xi_period = interaction_period(n);
  for (Eigen::Index j = 0; j < out.alphas.size(); ++j) {
    out.alphas[j] = wrap(out.alphas[j], kPi);
    out.phis[j] = wrap(out.phis[j], 2 * kPi);
  }
  for (Eigen::Index j = 0; j < out.xis.size(); ++j)
    out.xis[j] = wrap(out.xis[j], xi_period);
  return out;
}

bool within_box(const NmrSequence &seq, int n) {
  auto in = [](const RealVector &v, Real hi) {
    return (v.array() >= 0).all() && (v.array() < hi).all();
  };
  return in(seq.alphas, kPi) && in(seq.phis, 2 * kPi)
         && in(seq.xis, interaction_period(n));
}

StateVector simulate_sequence(const NmrSequence &seq, const RingModel &model,
                              const KrylovConfig &krylov) {
  return propagate_sequence(seq, model.ground_reduced(), model,
                            Representation::Reduced, krylov);
}

Real nmr_loss(const NmrSequence &seq, const TargetState &target,
              const RingModel &model, const KrylovConfig &krylov) {
  if (target.n != model.num_qubits())
    throw DomainError("target and model qubit counts differ");
  const Real f = fidelity(target.reduced, simulate_sequence(seq, model, krylov));
  return std::clamp(1 - f, Real{ 0 }, Real{ 1 });
}

Real total_interaction_time(const NmrSequence &seq) { return seq.xis.sum(); }

bool nmr_result_less(const NmrResult &a, const NmrResult &b, Real tie_floor) {
  auto key = [tie_floor](const NmrResult &r) {
    return std::make_tuple(std::max(r.loss, tie_floor),
                           total_interaction_time(r.seq), r.seq.pack().norm());
  };
  return key(a) < key(b);
}

NmrResult local_optimize(const NmrSequence &seq0, const TargetState &target,
                         const RingModel &model, const NmrOptConfig &cfg) {
  const int m = seq0.num_layers();
  const int n = model.num_qubits();
  Objective loss = [&](const RealVector &x) {
    return nmr_loss(NmrSequence::unpack(x, m), target, model, cfg.krylov);
  };
  GradientFn grad = [&](const RealVector &x) {
    return central_difference_gradient(loss, x, cfg.gradient_step);
  };

  LbfgsConfig lcfg;
  lcfg.max_iters = cfg.max_iters;
  const auto opt = lbfgs_minimize(loss, grad, seq0.pack(), lcfg);

  NmrResult res;
  res.seq = wrap_into_box(NmrSequence::unpack(opt.x, m), n);
  res.loss = nmr_loss(res.seq, target, model, cfg.krylov);
  res.status = opt.status;
  res.iterations = opt.iterations;

  const Real loss0 = nmr_loss(seq0, target, model, cfg.krylov);
  if (res.loss > loss0) {
    // Only reachable through rounding at the wrap; keep the start point.
    res.seq = seq0;
    res.loss = loss0;
  }
  return res;
}

std::vector<NmrResult> multistart_search(const TargetState &target, int m,
                                         const RingModel &model,
                                         const NmrOptConfig &cfg) {
  if (m < 0)
    throw DomainError("number of interaction pulses must be non-negative");
  if (cfg.n_random_guesses < 1 || cfg.n_local_searches < 1)
    throw DomainError("multistart budgets must be positive");

  const int n = model.num_qubits();
  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_real_distribution<Real> unit(0.0, 1.0);

  std::vector<NmrSequence> guesses;
  guesses.reserve(cfg.n_random_guesses);
  for (int g = 0; g < cfg.n_random_guesses; ++g) {
    NmrSequence seq(m);
    for (int j = 0; j <= m; ++j) {
      seq.alphas[j] = kPi * unit(rng);
      seq.phis[j] = 2 * kPi * unit(rng);
    }
    for (int j = 0; j < m; ++j)
      seq.xis[j] = interaction_period(n) * unit(rng);
    guesses.push_back(wrap_into_box(seq, n));
  }

  std::vector<Real> losses(guesses.size());
  parallel_for(guesses.size(), cfg.threads, [&](std::size_t i) {
    losses[i] = nmr_loss(guesses[i], target, model, cfg.krylov);
  });

  std::vector<std::size_t> order(guesses.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t n_local =
      std::min<std::size_t>(cfg.n_local_searches, guesses.size());
  std::partial_sort(order.begin(), order.begin() + n_local, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return std::tie(losses[a], a) < std::tie(losses[b], b);
                    });

  std::vector<NmrResult> results(n_local);
  parallel_for(n_local, cfg.threads, [&](std::size_t i) {
    results[i] = local_optimize(guesses[order[i]], target, model, cfg);
  });

  std::stable_sort(results.begin(), results.end(),
                   [&](const NmrResult &a, const NmrResult &b) {
                     return nmr_result_less(a, b, cfg.tie_floor);
                   });
  return results;
}

BisectionReport bisect_min_m(const TargetState &target, int m_lo, int m_hi,
                             const RingModel &model, const NmrOptConfig &cfg) {
  if (m_lo < 0 || m_lo >= m_hi)
    throw DomainError("bisection needs 0 <= M_lo < M_hi");

  const Real loss_threshold = 1 - cfg.fidelity_threshold;
  BisectionReport report;
  std::map<int, std::vector<NmrResult>> cache;

  auto feasible = [&](int m) {
    auto results = multistart_search(target, m, model, cfg);
    const Real best = results.front().loss;
    report.best_loss_by_m.emplace_back(m, best);
    cache[m] = std::move(results);
    return best <= loss_threshold;
  };

  if (!feasible(m_hi))
    return report;

  int lo = m_lo - 1, hi = m_hi;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  report.min_m = hi;
  report.results_at_min = cache.at(hi);
  return report;
}

}  // namespace ringctl
