//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RINGCTL_INTEGRATOR_HPP_
#define RINGCTL_INTEGRATOR_HPP_

#include <algorithm>
#include <array>
#include <cmath>

#include "ringctl/types.hpp"

namespace ringctl {

struct IntegratorConfig {
  Real abs_tol = 1e-10;
  Real rel_tol = 1e-10;
  long max_steps = 1000000;
};

/// Tsitouras 5(4) embedded pair (FSAL). `b` equals the last row of `a`.
struct Tsit5Tableau {
  static constexpr std::array<Real, 7> c = {
    0.0, 0.161, 0.327, 0.9, 0.9800255409045097, 1.0, 1.0
  };
  static constexpr std::array<std::array<Real, 6>, 7> a = { {
      { 0, 0, 0, 0, 0, 0 },
      { 0.161, 0, 0, 0, 0, 0 },
      { -0.008480655492356989, 0.335480655492357, 0, 0, 0, 0 },
      { 2.897153057105493, -6.359448489975075, 4.3622954328695815, 0, 0, 0 },
      { 5.325864828439257, -11.748883564062828, 7.4955393428898365,
        -0.09249506636175525, 0, 0 },
      { 5.86145544294642, -12.92096931784711, 8.159367898576159,
        -0.071584973281401, -0.028269050394068383, 0 },
      { 0.09646076681806523, 0.01, 0.4798896504144996, 1.379008574103742,
        -3.290069515436081, 2.324710524099774 },
  } };
  /// Difference between the 5th- and 4th-order weights.
  static constexpr std::array<Real, 7> btilde = {
    -0.00178001105222577714, -0.0008164344596567469, 0.007880878010261995,
    -0.1447110071732629,     0.5823571654525552,     -0.45808210592918697,
    1.0 / 66.0
  };
};

struct IntegrationStats {
  long accepted = 0;
  long rejected = 0;
};

/// Integrates dpsi/dt = -i H(t) psi from t0 to t1 (t1 may be < t0) with
/// PI step-size control. `apply_h(t, psi, out)` must write H(t) psi into
/// `out`. Returns the raw (not renormalized) final state.
template <typename ApplyH>
StateVector integrate_tdse(ApplyH &&apply_h,
                           const Eigen::Ref<const StateVector> &psi0, Real t0,
                           Real t1, const IntegratorConfig &cfg,
                           IntegrationStats *stats = nullptr) {
  using Tab = Tsit5Tableau;
  if (!(cfg.abs_tol > 0) || !(cfg.rel_tol > 0))
    throw DomainError("integrator tolerances must be positive");

  const Eigen::Index n = psi0.size();
  StateVector y = psi0;
  if (t1 == t0)
    return y;

  const Real dir = t1 > t0 ? 1.0 : -1.0;
  std::array<StateVector, 7> k;
  for (auto &ki: k)
    ki.resize(n);
  StateVector tmp(n), ynew(n), err(n);

  auto rhs = [&](Real t, const StateVector &psi, StateVector &out) {
    apply_h(t, psi, out);
    out *= Complex(0, -1);
  };

  auto error_norm = [&](const StateVector &y0, const StateVector &y1,
                        const StateVector &e) {
    Real acc = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Real sc = cfg.abs_tol
                      + cfg.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      const Real r = std::abs(e[i]) / sc;
      acc += r * r;
    }
    return std::sqrt(acc / static_cast<Real>(n));
  };

  Real t = t0;
  rhs(t, y, k[0]);

  // Starting step (Hairer, Norsett & Wanner, II.4).
  Real h;
  {
    StateVector sc(n);
    Real d0 = 0, d1 = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Real s = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
      d0 += std::norm(y[i]) / (s * s);
      d1 += std::norm(k[0][i]) / (s * s);
    }
    d0 = std::sqrt(d0 / n);
    d1 = std::sqrt(d1 / n);
    Real h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, std::abs(t1 - t0));
    tmp = y + dir * h0 * k[0];
    rhs(t + dir * h0, tmp, k[1]);
    Real d2 = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Real s = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
      d2 += std::norm(k[1][i] - k[0][i]) / (s * s);
    }
    d2 = std::sqrt(d2 / n) / h0;
    const Real h1 = std::max(d1, d2) <= 1e-15
                        ? std::max(1e-6, h0 * 1e-3)
                        : std::pow(0.01 / std::max(d1, d2), 1.0 / 5.0);
    h = std::min(100 * h0, h1);
  }

  constexpr Real kSafety = 0.9, kMinFactor = 0.2, kMaxFactor = 10.0;
  constexpr Real kBeta1 = 0.7 / 5.0, kBeta2 = 0.4 / 5.0;
  Real err_prev = 1e-4;
  IntegrationStats local;

  while (dir * (t1 - t) > 0) {
    if (local.accepted + local.rejected >= cfg.max_steps)
      throw IntegrationError("integrator step budget exhausted", t);

    bool last = false;
    if (h >= std::abs(t1 - t)) {
      h = std::abs(t1 - t);
      last = true;
    }
    const Real hs = dir * h;

    for (int s = 1; s < 7; ++s) {
      tmp = y;
      for (int j = 0; j < s; ++j)
        if (Tab::a[s][j] != 0)
          tmp.noalias() += (hs * Tab::a[s][j]) * k[j];
      if (s == 6)
        ynew = tmp;
      rhs(t + hs * Tab::c[s], s == 6 ? ynew : tmp, k[s]);
    }

    err.setZero();
    for (int j = 0; j < 7; ++j)
      err.noalias() += (hs * Tab::btilde[j]) * k[j];
    const Real e = std::max(error_norm(y, ynew, err), 1e-16);

    if (e <= 1.0) {
      t = last ? t1 : t + hs;
      y.swap(ynew);
      k[0].swap(k[6]);
      ++local.accepted;
      const Real factor = kSafety * std::pow(e, -kBeta1) * std::pow(err_prev, kBeta2);
      h *= std::clamp(factor, kMinFactor, kMaxFactor);
      err_prev = std::max(e, 1e-4);
    } else {
      ++local.rejected;
      h *= std::max(kMinFactor, kSafety * std::pow(e, -1.0 / 5.0));
    }
    if (h < 1e-14 * std::max<Real>(1, std::abs(t)))
      throw IntegrationError("integrator step size underflow", t);
  }

  if (stats) {
    stats->accepted += local.accepted;
    stats->rejected += local.rejected;
  }
  return y;
}

}  // namespace ringctl

#endif  // RINGCTL_INTEGRATOR_HPP_
