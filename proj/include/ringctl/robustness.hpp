//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RINGCTL_ROBUSTNESS_HPP_
#define RINGCTL_ROBUSTNESS_HPP_

#include <string>
#include <vector>

#include "ringctl/cw.hpp"
#include "ringctl/model.hpp"
#include "ringctl/nmr.hpp"
#include "ringctl/protocols.hpp"

namespace ringctl {

/// Which protocol parameter an error acts on. Rotation and interaction
/// indices are 1-based (alpha_1 is the first pulse); sine harmonics start
/// at 0 (the DC term).
struct ParamId {
  enum class Kind { Alpha, Phi, Xi, Coeff };
  Kind kind;
  int index;
  Axis axis = Axis::X;

  static ParamId parse(const std::string &name);
  std::string name() const;

  friend bool operator==(const ParamId &, const ParamId &) = default;
};

/// Every parameter an error can act on: 3M+2 for sequences, the active
/// coefficients for sine pulses.
std::vector<ParamId> protocol_parameters(const Protocol &protocol);

/// Relative error on alpha, xi and b_m; absolute error on phi. No
/// re-wrapping. A negative interaction duration is rejected.
Protocol perturb(const Protocol &protocol, const ParamId &param, Real eps);

/// Symmetric error grid [-half_width, half_width] with an odd number of
/// points, so the centre is exactly 0.
struct EpsGrid {
  Real half_width = 0.05;
  int points = 101;

  RealVector values() const;
  static EpsGrid parse(const std::string &spec);  // "0.05:101" or "+-0.05:101"
};

struct EvalOptions {
  bool dense = false;   // evaluate with dense_oracle instead
  KrylovConfig krylov;
  IntegratorConfig integrator;
};

/// 1 - F of a protocol against the target (no field penalty).
Real protocol_infidelity(const Protocol &protocol, const TargetState &target,
                         const RingModel &model, const EvalOptions &opts = {});

struct SweepResult {
  RealVector eps_a;
  RealVector eps_b;           // empty for 1D sweeps
  RealMatrix infidelity;      // eps_a.size() x max(1, eps_b.size())
  Real baseline = 0;
  Real score = 0;             // trapezoid integral, 1D only
  std::vector<std::string> failures;  // per-point errors, sweep continues
};

SweepResult sweep_1d(const Protocol &protocol, const TargetState &target,
                     const RingModel &model, const ParamId &param,
                     const EpsGrid &grid, const EvalOptions &opts = {});

SweepResult sweep_2d(const Protocol &protocol, const TargetState &target,
                     const RingModel &model, const ParamId &param_a,
                     const ParamId &param_b, const EpsGrid &grid,
                     const EvalOptions &opts = {});

/// Trapezoid rule of samples y over abscissae x.
template <typename DerivedX, typename DerivedY>
Real trapezoid(const Eigen::MatrixBase<DerivedX> &x,
               const Eigen::MatrixBase<DerivedY> &y) {
  Real acc = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i)
    acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

/// Sum over all parameters of the integrated 1D infidelity curve.
Real robustness_score(const Protocol &protocol, const TargetState &target,
                      const RingModel &model, const EpsGrid &grid,
                      const EvalOptions &opts = {});

struct Selection {
  std::size_t index;
  Real score;
  Real baseline;
};

/// argmin of robustness_score, ties broken by lower baseline infidelity.
Selection select_most_robust(const std::vector<Protocol> &candidates,
                             const TargetState &target, const RingModel &model,
                             const EpsGrid &grid, const EvalOptions &opts = {});

/// Pearson correlation between the columns of `samples` (one realization
/// per row). Entries involving a zero-variance column are NaN.
RealMatrix pearson_matrix(const Eigen::Ref<const RealMatrix> &samples);

}  // namespace ringctl

#endif  // RINGCTL_ROBUSTNESS_HPP_
