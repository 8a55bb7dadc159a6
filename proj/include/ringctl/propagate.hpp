//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RINGCTL_PROPAGATE_HPP_
#define RINGCTL_PROPAGATE_HPP_

#include "ringctl/integrator.hpp"
#include "ringctl/krylov.hpp"
#include "ringctl/model.hpp"
#include "ringctl/protocols.hpp"

namespace ringctl {

enum class Representation { Full, Reduced };

/// U_xy(alpha, phi) = exp[-i alpha (H_x cos phi + H_y sin phi)] v.
///
/// Full representation: product of single-qubit rotations
/// cos(alpha) 1 - i sin(alpha) (n.sigma), exact. Reduced representation:
/// Krylov expmv on the reduced control Hamiltonian.
StateVector apply_uxy(const Eigen::Ref<const StateVector> &v, Real alpha,
                      Real phi, const RingModel &model,
                      Representation rep = Representation::Reduced,
                      const KrylovConfig &krylov = {});

/// U_ZZ(xi) = exp(-i xi H_ZZ) v, a diagonal phase in both representations.
StateVector apply_uzz(const Eigen::Ref<const StateVector> &v, Real xi,
                      const RingModel &model,
                      Representation rep = Representation::Reduced);

/// Right-to-left product U_xy(M+1) prod_j U_ZZ(xi_j) U_xy(j) acting on v0.
StateVector propagate_sequence(const NmrSequence &seq,
                               const Eigen::Ref<const StateVector> &v0,
                               const RingModel &model,
                               Representation rep = Representation::Reduced,
                               const KrylovConfig &krylov = {});

struct CwEvolution {
  StateVector state;   // renormalized
  Real raw_norm = 1;   // norm before renormalization
  IntegrationStats stats;
};

/// Integrates the Schrodinger equation under H_ZZ + B_x(t) H_x + B_y(t) H_y
/// over [0, T] and divides the final state by its norm.
CwEvolution integrate_cw(const Eigen::Ref<const StateVector> &v0,
                         const SinePulse &pulse, const RingModel &model,
                         const IntegratorConfig &cfg = {},
                         Representation rep = Representation::Reduced);

inline StateVector evolve_cw(const Eigen::Ref<const StateVector> &v0,
                             const SinePulse &pulse, const RingModel &model,
                             const IntegratorConfig &cfg = {},
                             Representation rep = Representation::Reduced) {
  return integrate_cw(v0, pulse, model, cfg, rep).state;
}

/// Reference evaluation on dense 2^N matrices, starting from |0...0>:
/// rotations by Hermitian eigendecomposition of the full control
/// Hamiltonian, continuous pulses by tight-tolerance integration of the
/// dense full-space equation. N <= 10.
StateVector dense_oracle(const Protocol &protocol, const RingModel &model);

}  // namespace ringctl

#endif  // RINGCTL_PROPAGATE_HPP_
