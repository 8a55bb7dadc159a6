//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ringctl/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ringctl {

NmrSequence::NmrSequence(RealVector a, RealVector p, RealVector x)
    : alphas(std::move(a)), phis(std::move(p)), xis(std::move(x)) {
  if (alphas.size() != xis.size() + 1 || phis.size() != xis.size() + 1)
    throw DomainError("an NMR sequence has M+1 rotations and M interactions");
}

RealVector NmrSequence::pack() const {
  RealVector x(num_params());
  x << alphas, phis, xis;
  return x;
}

NmrSequence NmrSequence::unpack(const Eigen::Ref<const RealVector> &x, int m) {
  if (x.size() != 3 * m + 2)
    throw DomainError("parameter vector length must be 3M+2");
  return NmrSequence(x.segment(0, m + 1), x.segment(m + 1, m + 1),
                     x.segment(2 * m + 2, m));
}

SinePulse::SinePulse(int m, Real horizon_)
    : horizon(horizon_), coeffs_x(RealVector::Zero(m + 1)),
      coeffs_y(RealVector::Zero(m + 1)), active_x(m + 1, true),
      active_y(m + 1, true) {
  if (m < 0)
    throw DomainError("harmonic cutoff must be non-negative");
  if (!(horizon > 0))
    throw DomainError("pulse horizon must be positive");
}

int SinePulse::active_count() const noexcept {
  return static_cast<int>(std::count(active_x.begin(), active_x.end(), true)
                          + std::count(active_y.begin(), active_y.end(), true));
}

RealVector SinePulse::pack_active() const {
  RealVector x(active_count());
  Eigen::Index k = 0;
  for (Axis axis: { Axis::X, Axis::Y })
    for (int m = 0; m <= cutoff(); ++m)
      if (active(axis)[m])
        x[k++] = coeffs(axis)[m];
  return x;
}

void SinePulse::unpack_active(const Eigen::Ref<const RealVector> &x) {
  if (x.size() != active_count())
    throw DomainError("parameter vector does not match the active mask");
  Eigen::Index k = 0;
  for (Axis axis: { Axis::X, Axis::Y })
    for (int m = 0; m <= cutoff(); ++m)
      if (active(axis)[m])
        coeffs(axis)[m] = x[k++];
}

SinePulse SinePulse::raise_and_fall(int m, Real horizon) {
  SinePulse pulse(m, horizon);
  if (m >= 1) {
    pulse.coeffs_x[1] = 1.0;
    pulse.coeffs_y[1] = 1.0;
  }
  return pulse;
}

Real field_value(const SinePulse &pulse, Axis axis, Real t) {
  const auto &b = pulse.coeffs(axis);
  const auto &mask = pulse.active(axis);
  Real value = mask[0] ? b[0] : 0.0;
  const Real w = kPi * t / pulse.horizon;
  for (int m = 1; m <= pulse.cutoff(); ++m)
    if (mask[m])
      value += b[m] * std::sin(m * w);
  return value;
}

}  // namespace ringctl
