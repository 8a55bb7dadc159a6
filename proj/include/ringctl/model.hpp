//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RINGCTL_MODEL_HPP_
#define RINGCTL_MODEL_HPP_

#include <memory>

#include "ringctl/symmetry.hpp"
#include "ringctl/types.hpp"

namespace ringctl {

/// Full-space ring operators. H_ZZ = J sum_n s^z_n s^z_{n+1} with s_{N+1} =
/// s_1 taken literally, so N = 2 counts its single bond twice and N = 1
/// gives J times the identity.
RealVector hzz_diagonal(int n, Real coupling = 1.0);
SparseOperator build_hzz(int n, Real coupling = 1.0);
SparseOperator build_hx(int n);
SparseOperator build_hy(int n);
/// sum_n sigma^z_n, diagonal.
RealVector total_z_diagonal(int n);

/// Ising ring with global transverse controls, held in both the full and
/// the D_N-reduced representation. Immutable once built.
class RingModel {
public:
  explicit RingModel(int n, Real coupling = 1.0);

  int num_qubits() const noexcept { return n_; }
  Real coupling() const noexcept { return J_; }
  const SymmetryBasis &basis() const noexcept { return *basis_; }
  Eigen::Index reduced_dim() const noexcept { return basis_->dim(); }
  Eigen::Index full_dim() const noexcept { return basis_->full_dim(); }

  const RealVector &hzz_full() const noexcept { return hzz_full_; }
  const SparseOperator &hx_full() const noexcept { return hx_full_; }
  const SparseOperator &hy_full() const noexcept { return hy_full_; }

  const RealVector &hzz_reduced() const noexcept { return hzz_reduced_; }
  const ComplexMatrix &hx_reduced() const noexcept { return hx_reduced_; }
  const ComplexMatrix &hy_reduced() const noexcept { return hy_reduced_; }

  /// |0...0> in either representation.
  StateVector ground_reduced() const;
  StateVector ground_full() const;

private:
  int n_;
  Real J_;
  std::shared_ptr<const SymmetryBasis> basis_;
  RealVector hzz_full_;
  SparseOperator hx_full_, hy_full_;
  RealVector hzz_reduced_;
  ComplexMatrix hx_reduced_, hy_reduced_;
};

enum class TargetKind { W, Dicke };

struct TargetState {
  TargetKind kind;
  int n;
  int k;
  StateVector full;
  StateVector reduced;
};

/// Equal-weight superposition of all weight-k strings, normalized.
TargetState dicke_state(int n, int k);
TargetState w_state(int n);

/// |<a|b>|^2.
Real fidelity(const Eigen::Ref<const StateVector> &a,
              const Eigen::Ref<const StateVector> &b);

/// Nearest-neighbour van-der-Waals coupling C6 / R^6.
Real rydberg_coupling(Real c6, Real spacing);

/// Binomial coefficient as a real, exact for the qubit counts used here.
Real binomial(int n, int k);

}  // namespace ringctl

#endif  // RINGCTL_MODEL_HPP_
