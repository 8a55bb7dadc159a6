//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RINGCTL_KRYLOV_HPP_
#define RINGCTL_KRYLOV_HPP_

#include <algorithm>
#include <cmath>

#include "ringctl/types.hpp"

namespace ringctl {

struct KrylovConfig {
  Real tolerance = 1e-12;
  int max_subspace = 30;
};

/// exp(-i theta H) v for Hermitian H, by Lanczos projection with
/// substepping. `H` is anything supporting `H * vector` (dense or sparse
/// Eigen matrices). The result is renormalized to the norm of v.
///
/// Each substep builds an orthonormal Krylov basis V and the real
/// tridiagonal T = V^H H V, then takes the largest step tau for which the
/// a-posteriori estimate beta * h_{m+1,m} * |e_m^T exp(-i tau T) e_1| stays
/// below tolerance. A happy breakdown (invariant subspace) makes the step
/// exact for any tau.
template <typename Operator>
StateVector expmv(const Operator &H, const Eigen::Ref<const StateVector> &v,
                  Real theta, const KrylovConfig &cfg = {}) {
  if (!(cfg.tolerance > 0) || cfg.max_subspace < 2)
    throw DomainError("invalid Krylov configuration");
  if (H.rows() != v.size() || H.cols() != v.size())
    throw DomainError("operator and vector dimensions differ");

  StateVector w = v;
  const Real norm0 = v.norm();
  if (theta == 0 || norm0 == 0)
    return w;

  const Eigen::Index n = v.size();
  const int m_max = static_cast<int>(std::min<Eigen::Index>(cfg.max_subspace, n));
  const Real sign = theta < 0 ? -1.0 : 1.0;
  Real remaining = std::abs(theta);

  ComplexMatrix V(n, m_max);
  RealVector diag(m_max), offdiag(m_max);
  StateVector r(n);

  constexpr int kMaxSubsteps = 100000;
  for (int substep = 0; remaining > 0; ++substep) {
    if (substep >= kMaxSubsteps)
      throw IterationError("Krylov expmv exceeded the substep budget");

    const Real beta = w.norm();
    V.col(0) = w / beta;

    int m = 0;
    bool breakdown = false;
    Real h_next = 0;
    Real scale = 0;
    for (int j = 0; j < m_max; ++j) {
      r.noalias() = H * V.col(j);
      // Full reorthogonalization, applied twice.
      for (int pass = 0; pass < 2; ++pass) {
        auto coef = (V.leftCols(j + 1).adjoint() * r).eval();
        r.noalias() -= V.leftCols(j + 1) * coef;
        if (pass == 0)
          diag[j] = coef[j].real();
        else
          diag[j] += coef[j].real();
      }
      const Real b = r.norm();
      scale = std::max(scale, std::abs(diag[j]) + (j > 0 ? offdiag[j - 1] : 0) + b);
      m = j + 1;
      if (b <= 1e-13 * std::max<Real>(scale, 1)) {
        breakdown = true;
        break;
      }
      h_next = b;
      if (j + 1 < m_max) {
        offdiag[j] = b;
        V.col(j + 1) = r / b;
      }
    }

    RealMatrix T = RealMatrix::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      T(j, j) = diag[j];
      if (j + 1 < m)
        T(j, j + 1) = T(j + 1, j) = offdiag[j];
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(T);
    const RealMatrix &Q = eig.eigenvectors();
    const RealVector &lambda = eig.eigenvalues();

    auto small_exp = [&](Real tau) {
      StateVector phase(m);
      for (int j = 0; j < m; ++j)
        phase[j] = std::polar(Q(0, j), -sign * tau * lambda[j]);
      return StateVector(Q.cast<Complex>() * phase);
    };

    Real tau = remaining;
    StateVector y = small_exp(tau);
    if (!breakdown) {
      int halvings = 0;
      while (beta * h_next * std::abs(y[m - 1]) > cfg.tolerance) {
        if (++halvings > 60)
          throw IterationError("Krylov expmv failed to converge");
        tau *= 0.5;
        y = small_exp(tau);
      }
    }

    w.noalias() = beta * (V.leftCols(m) * y);
    remaining -= tau;
    if (remaining < 1e-15 * std::abs(theta))
      remaining = 0;
  }

  return w * (norm0 / w.norm());
}

}  // namespace ringctl

#endif  // RINGCTL_KRYLOV_HPP_
