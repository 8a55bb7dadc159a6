//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ringctl/model.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

namespace ringctl {

namespace {
  void check_full_space(int n) {
    if (n < 1 || n > kMaxFullSpaceQubits)
      throw CapacityError("qubit count " + std::to_string(n)
                          + " outside supported range [1, "
                          + std::to_string(kMaxFullSpaceQubits) + "]");
  }

  // sum_n sigma^mu_n with mu in {x, y}: flips qubit n, phase 1 for x and
  // +-i for y (sigma^y|0> = i|1>, sigma^y|1> = -i|0>).
  SparseOperator build_transverse(int n, bool y_axis) {
    check_full_space(n);
    const std::uint32_t dim = 1U << n;
    std::vector<Eigen::Triplet<Complex>> entries;
    entries.reserve(static_cast<std::size_t>(dim) * n);
    for (std::uint32_t x = 0; x < dim; ++x) {
      for (int q = 0; q < n; ++q) {
        const std::uint32_t y = x ^ (1U << q);
        Complex amp = 1.0;
        if (y_axis)
          amp = ((x >> q) & 1U) ? Complex(0, -1) : Complex(0, 1);
        entries.emplace_back(static_cast<int>(y), static_cast<int>(x), amp);
      }
    }
    SparseOperator H(dim, dim);
    H.setFromTriplets(entries.begin(), entries.end());
    H.makeCompressed();
    return H;
  }
}  // namespace

RealVector hzz_diagonal(int n, Real coupling) {
  check_full_space(n);
  const std::uint32_t dim = 1U << n;
  RealVector diag(dim);
  for (std::uint32_t x = 0; x < dim; ++x) {
    Real sum = 0;
    for (int q = 0; q < n; ++q) {
      const int next = (q + 1) % n;
      const bool a = (x >> q) & 1U, b = (x >> next) & 1U;
      sum += (a == b) ? 1.0 : -1.0;
    }
    diag[x] = coupling * sum;
  }
  return diag;
}

SparseOperator build_hzz(int n, Real coupling) {
  const RealVector diag = hzz_diagonal(n, coupling);
  SparseOperator H(diag.size(), diag.size());
  H.reserve(Eigen::VectorXi::Ones(diag.size()));
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    H.insert(i, i) = diag[i];
  H.makeCompressed();
  return H;
}

SparseOperator build_hx(int n) { return build_transverse(n, false); }
SparseOperator build_hy(int n) { return build_transverse(n, true); }

RealVector total_z_diagonal(int n) {
  check_full_space(n);
  const std::uint32_t dim = 1U << n;
  RealVector diag(dim);
  for (std::uint32_t x = 0; x < dim; ++x)
    diag[x] = n - 2 * std::popcount(x);
  return diag;
}

RingModel::RingModel(int n, Real coupling)
    : n_(n), J_(coupling), basis_(std::make_shared<SymmetryBasis>(n)),
      hzz_full_(hzz_diagonal(n, coupling)), hx_full_(build_hx(n)),
      hy_full_(build_hy(n)) {
  // H_ZZ is constant on orbits, so its reduction stays diagonal.
  hzz_reduced_.resize(basis_->dim());
  for (Eigen::Index o = 0; o < basis_->dim(); ++o)
    hzz_reduced_[o] = hzz_full_[basis_->orbits()[o].members.front()];
  hx_reduced_ = reduce_operator(hx_full_, *basis_);
  hy_reduced_ = reduce_operator(hy_full_, *basis_);
}

StateVector RingModel::ground_reduced() const {
  StateVector v = StateVector::Zero(reduced_dim());
  v[0] = 1.0;
  return v;
}

StateVector RingModel::ground_full() const {
  StateVector v = StateVector::Zero(full_dim());
  v[0] = 1.0;
  return v;
}

Real binomial(int n, int k) {
  if (k < 0 || k > n)
    return 0;
  Real out = 1;
  for (int i = 1; i <= k; ++i)
    out = out * (n - k + i) / i;
  return std::round(out);
}

TargetState dicke_state(int n, int k) {
  check_full_space(n);
  if (k < 0 || k > n)
    throw DomainError("excitation number must satisfy 0 <= k <= N");

  SymmetryBasis basis(n);
  const Real count = binomial(n, k);
  const Real amp = 1.0 / std::sqrt(count);

  StateVector full = StateVector::Zero(basis.full_dim());
  for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(full.size()); ++x)
    if (std::popcount(x) == k)
      full[x] = amp;

  StateVector reduced = StateVector::Zero(basis.dim());
  for (Eigen::Index o = 0; o < basis.dim(); ++o) {
    const auto &orbit = basis.orbits()[o];
    if (orbit.hamming_weight() == k)
      reduced[o] = std::sqrt(orbit.size() / count);
  }

  return { k == 1 ? TargetKind::W : TargetKind::Dicke, n, k, std::move(full),
           std::move(reduced) };
}

TargetState w_state(int n) {
  auto state = dicke_state(n, 1);
  state.kind = TargetKind::W;
  return state;
}

Real fidelity(const Eigen::Ref<const StateVector> &a,
              const Eigen::Ref<const StateVector> &b) {
  if (a.size() != b.size())
    throw DomainError("fidelity of vectors with different dimensions");
  return std::norm(a.dot(b));
}

Real rydberg_coupling(Real c6, Real spacing) {
  if (!(spacing > 0))
    throw DomainError("interatomic spacing must be positive");
  return c6 / std::pow(spacing, 6);
}

}  // namespace ringctl
