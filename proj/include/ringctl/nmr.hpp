//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RINGCTL_NMR_HPP_
#define RINGCTL_NMR_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ringctl/lbfgs.hpp"
#include "ringctl/model.hpp"
#include "ringctl/propagate.hpp"
#include "ringctl/protocols.hpp"

namespace ringctl {

/// Period of U_ZZ up to a global phase: pi for N < 3, pi/2 otherwise.
Real interaction_period(int n);

/// Maps every parameter into its box: alpha in [0, pi), phi in [0, 2 pi),
/// xi in [0, interaction_period(N)). Exact operator periodicities make the
/// loss invariant under this map.
NmrSequence wrap_into_box(const NmrSequence &seq, int n);
bool within_box(const NmrSequence &seq, int n);

/// Evolves |0...0> through the sequence in the reduced representation.
StateVector simulate_sequence(const NmrSequence &seq, const RingModel &model,
                              const KrylovConfig &krylov = {});

/// 1 - |<target|simulate_sequence(seq)>|^2, in [0, 1].
Real nmr_loss(const NmrSequence &seq, const TargetState &target,
              const RingModel &model, const KrylovConfig &krylov = {});

/// Sum of interaction durations (units of 1/J).
Real total_interaction_time(const NmrSequence &seq);

struct NmrOptConfig {
  int n_random_guesses = 20000;
  int n_local_searches = 500;
  Real fidelity_threshold = 1 - 1e-10;
  int max_iters = 500;
  Real gradient_step = 1e-7;
  std::uint64_t rng_seed = 1;
  int threads = 1;
  /// Losses below this floor compare equal when ranking results, so ties
  /// resolve by total interaction time and then parameter norm.
  Real tie_floor = 1e-14;
  KrylovConfig krylov;
};

struct NmrResult {
  NmrSequence seq;
  Real loss = 1;
  LbfgsStatus status = LbfgsStatus::kMaxIterations;
  int iterations = 0;
};

/// Orders by (max(loss, tie_floor), total interaction time, parameter norm).
bool nmr_result_less(const NmrResult &a, const NmrResult &b, Real tie_floor);

/// L-BFGS on the infidelity with central-difference gradients. Iterates are
/// unconstrained; the loss is evaluated through the exact periodicities and
/// the returned sequence is wrapped into the box.
NmrResult local_optimize(const NmrSequence &seq0, const TargetState &target,
                         const RingModel &model, const NmrOptConfig &cfg);

/// Uniform sampling of the box, then local searches from the best samples.
/// Results are sorted by nmr_result_less and depend only on the seed.
std::vector<NmrResult> multistart_search(const TargetState &target, int m,
                                         const RingModel &model,
                                         const NmrOptConfig &cfg);

struct BisectionReport {
  std::optional<int> min_m;        // empty when M_hi misses the threshold
  std::vector<std::pair<int, Real>> best_loss_by_m;  // in test order
  std::vector<NmrResult> results_at_min;
};

/// Bisection over the number of interaction pulses in [m_lo, m_hi]. Each
/// tested M gets the full multistart budget, so the reported minimum is an
/// upper bound on the true one.
BisectionReport bisect_min_m(const TargetState &target, int m_lo, int m_hi,
                             const RingModel &model, const NmrOptConfig &cfg);

}  // namespace ringctl

#endif  // RINGCTL_NMR_HPP_
