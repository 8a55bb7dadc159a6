//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RINGCTL_PROTOCOLS_HPP_
#define RINGCTL_PROTOCOLS_HPP_

#include <variant>
#include <vector>

#include "ringctl/types.hpp"

namespace ringctl {

/// Instantaneous global rotations U_xy(alpha_j, phi_j), j = 1..M+1,
/// interleaved with Ising evolutions U_ZZ(xi_j), j = 1..M. The sequence
/// starts and ends with a rotation.
struct NmrSequence {
  RealVector alphas;  // M+1
  RealVector phis;    // M+1
  RealVector xis;     // M, units of 1/J

  NmrSequence() = default;
  explicit NmrSequence(int m)
      : alphas(RealVector::Zero(m + 1)), phis(RealVector::Zero(m + 1)),
        xis(RealVector::Zero(m)) { }
  NmrSequence(RealVector a, RealVector p, RealVector x);

  int num_layers() const noexcept { return static_cast<int>(xis.size()); }
  Eigen::Index num_params() const noexcept { return 3 * xis.size() + 2; }

  /// Packed as [alphas, phis, xis].
  RealVector pack() const;
  static NmrSequence unpack(const Eigen::Ref<const RealVector> &x, int m);
};

enum class Axis { X, Y };

/// B_{x,y}(t) = b_0 + sum_{m=1}^{M} b_m sin(m pi t / T), restricted to the
/// coefficients whose mask entry is set.
struct SinePulse {
  Real horizon = 4.0;
  RealVector coeffs_x, coeffs_y;  // M+1 each
  std::vector<bool> active_x, active_y;

  SinePulse() = default;
  SinePulse(int m, Real horizon);

  int cutoff() const noexcept { return static_cast<int>(coeffs_x.size()) - 1; }
  int active_count() const noexcept;

  const RealVector &coeffs(Axis axis) const noexcept {
    return axis == Axis::X ? coeffs_x : coeffs_y;
  }
  RealVector &coeffs(Axis axis) noexcept {
    return axis == Axis::X ? coeffs_x : coeffs_y;
  }
  const std::vector<bool> &active(Axis axis) const noexcept {
    return axis == Axis::X ? active_x : active_y;
  }
  std::vector<bool> &active(Axis axis) noexcept {
    return axis == Axis::X ? active_x : active_y;
  }

  /// Active coefficients, x axis first then y, each by harmonic index.
  RealVector pack_active() const;
  void unpack_active(const Eigen::Ref<const RealVector> &x);

  /// Raise-and-fall seed: b_1 = 1 on both axes, everything else zero.
  static SinePulse raise_and_fall(int m, Real horizon);
};

Real field_value(const SinePulse &pulse, Axis axis, Real t);

using Protocol = std::variant<NmrSequence, SinePulse>;

}  // namespace ringctl

#endif  // RINGCTL_PROTOCOLS_HPP_
