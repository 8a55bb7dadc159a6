//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ringctl/symmetry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace ringctl {

namespace {
  void check_qubits(int n, int cap) {
    if (n < 1 || n > cap)
      throw CapacityError("qubit count " + std::to_string(n)
                          + " outside supported range [1, "
                          + std::to_string(cap) + "]");
  }

  std::uint32_t mask(int n) {
    return n >= 32 ? ~0U : ((1U << n) - 1U);
  }
}  // namespace

BitString::BitString(std::uint32_t bits, int n): bits_(bits), n_(n) {
  if (n < 1 || n > 31)
    throw DomainError("bit string length must be in [1, 31]");
  if ((bits & ~mask(n)) != 0)
    throw DomainError("bit pattern wider than the string length");
}

BitString BitString::from_string(std::string_view text) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      bits |= 1U << i;
    else if (text[i] != '0')
      throw DomainError("bit strings contain only '0' and '1'");
  }
  return BitString(bits, static_cast<int>(text.size()));
}

int BitString::hamming_weight() const noexcept {
  return std::popcount(bits_);
}

int BitString::domain_walls() const noexcept {
  if (n_ == 1)
    return 0;
  std::uint32_t rotated = ((bits_ >> 1) | ((bits_ & 1U) << (n_ - 1)));
  return std::popcount(bits_ ^ rotated);
}

BitString BitString::reversed() const noexcept {
  std::uint32_t out = 0;
  for (int i = 0; i < n_; ++i)
    if ((bits_ >> i) & 1U)
      out |= 1U << (n_ - 1 - i);
  return BitString(out, n_);
}

std::string BitString::to_string() const {
  std::string s(n_, '0');
  for (int i = 0; i < n_; ++i)
    if ((*this)[i])
      s[i] = '1';
  return s;
}

BitString apply_group_element(const GroupElement &g, const BitString &b) {
  const int n = b.size();
  if (g.shift < 0 || g.shift >= n)
    throw DomainError("group element shift out of range [0, N)");

  // Position i (0-based) of the shifted string holds a_{i+s}.
  std::uint32_t bits = b.index();
  std::uint32_t shifted =
      g.shift == 0 ? bits
                   : (((bits >> g.shift) | (bits << (n - g.shift))) & mask(n));
  BitString out(shifted, n);
  return g.reflect ? out.reversed() : out;
}

std::vector<GroupElement> dihedral_elements(int n) {
  std::vector<GroupElement> elems;
  elems.reserve(2 * n);
  for (bool reflect: { false, true })
    for (int s = 0; s < n; ++s)
      elems.push_back({ s, reflect });
  return elems;
}

std::vector<Orbit> enumerate_orbits(int n) {
  check_qubits(n, kMaxFullSpaceQubits);

  const std::uint32_t dim = 1U << n;
  const auto group = dihedral_elements(n);
  std::vector<bool> seen(dim, false);
  std::vector<Orbit> orbits;

  for (std::uint32_t x = 0; x < dim; ++x) {
    if (seen[x])
      continue;

    BitString bx(x, n);
    std::vector<std::uint32_t> members;
    members.reserve(group.size());
    for (const auto &g: group)
      members.push_back(apply_group_element(g, bx).index());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());

    auto rep = *std::min_element(members.begin(), members.end(),
                                 [n](std::uint32_t a, std::uint32_t b) {
                                   return BitString(a, n).lex_key()
                                          < BitString(b, n).lex_key();
                                 });
    for (auto m: members)
      seen[m] = true;
    orbits.push_back({ std::move(members), BitString(rep, n) });
  }

  std::sort(orbits.begin(), orbits.end(), [](const Orbit &a, const Orbit &b) {
    if (a.hamming_weight() != b.hamming_weight())
      return a.hamming_weight() < b.hamming_weight();
    return a.representative.lex_key() < b.representative.lex_key();
  });
  return orbits;
}

SymmetryBasis::SymmetryBasis(int n)
    : n_(n), orbits_(enumerate_orbits(n)), orbit_of_(std::size_t{1} << n, -1),
      P_(full_dim(), dim()) {
  std::vector<Eigen::Triplet<Real>> entries;
  entries.reserve(orbit_of_.size());
  for (int o = 0; o < dim(); ++o) {
    const auto &orbit = orbits_[o];
    const Real amp = 1.0 / std::sqrt(static_cast<Real>(orbit.size()));
    for (auto m: orbit.members) {
      orbit_of_[m] = o;
      entries.emplace_back(static_cast<int>(m), o, amp);
    }
  }
  P_.setFromTriplets(entries.begin(), entries.end());
  P_.makeCompressed();
}

int SymmetryBasis::find_orbit(const BitString &b) const {
  if (b.size() != n_)
    throw DomainError("bit string length does not match the basis");
  return orbit_of_[b.index()];
}

StateVector SymmetryBasis::lift(const Eigen::Ref<const StateVector> &reduced) const {
  if (reduced.size() != dim())
    throw DomainError("reduced vector dimension mismatch");
  return P_.cast<Complex>() * reduced;
}

StateVector SymmetryBasis::project(const Eigen::Ref<const StateVector> &full) const {
  if (full.size() != full_dim())
    throw DomainError("full-space vector dimension mismatch");
  return P_.transpose().cast<Complex>() * full;
}

ComplexMatrix reduce_operator(const SparseOperator &op,
                              const SymmetryBasis &basis) {
  if (op.rows() != basis.full_dim() || op.cols() != basis.full_dim())
    throw DomainError("operator dimension does not match the basis");
  const SparseOperator P = basis.projector().cast<Complex>();
  const SparseOperator reduced = SparseOperator(P.adjoint()) * op * P;
  return ComplexMatrix(reduced);
}

ComplexMatrix reduce_operator(const Eigen::Ref<const ComplexMatrix> &op,
                              const SymmetryBasis &basis) {
  if (op.rows() != basis.full_dim() || op.cols() != basis.full_dim())
    throw DomainError("operator dimension does not match the basis");
  const SparseOperator P = basis.projector().cast<Complex>();
  const ComplexMatrix HP = op * P;
  return P.adjoint() * HP;
}

Eigen::SparseMatrix<Real> group_permutation(const GroupElement &g, int n) {
  check_qubits(n, kMaxFullSpaceQubits);
  const std::uint32_t dim = 1U << n;
  std::vector<Eigen::Triplet<Real>> entries;
  entries.reserve(dim);
  for (std::uint32_t x = 0; x < dim; ++x)
    entries.emplace_back(
        static_cast<int>(apply_group_element(g, BitString(x, n)).index()),
        static_cast<int>(x), 1.0);
  Eigen::SparseMatrix<Real> G(dim, dim);
  G.setFromTriplets(entries.begin(), entries.end());
  return G;
}

namespace {
  // K|x> = phase(x) |target(x)> for the three parity operators.
  Complex parity_phase(ParityKind kind, int n, std::uint32_t x) {
    const int weight = std::popcount(x);
    switch (kind) {
    case ParityKind::X:
      return 1.0;
    case ParityKind::Z:
      return (weight % 2 == 0) ? 1.0 : -1.0;
    case ParityKind::Y: {
      // sigma^y|0> = i|1>, sigma^y|1> = -i|0>: phase (-1)^Ham i^N.
      static const Complex ipow[4] = { { 1, 0 }, { 0, 1 }, { -1, 0 }, { 0, -1 } };
      Complex phase = ipow[n % 4];
      return (weight % 2 == 0) ? phase : -phase;
    }
    }
    return 1.0;
  }

  std::uint32_t parity_target(ParityKind kind, int n, std::uint32_t x) {
    return kind == ParityKind::Z ? x : (x ^ mask(n));
  }
}  // namespace

StateVector apply_parity(ParityKind kind, int n,
                         const Eigen::Ref<const StateVector> &v) {
  check_qubits(n, kMaxFullSpaceQubits);
  if (v.size() != (Eigen::Index{1} << n))
    throw DomainError("vector dimension does not match 2^N");
  StateVector out(v.size());
  for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(v.size()); ++x)
    out[parity_target(kind, n, x)] = parity_phase(kind, n, x) * v[x];
  return out;
}

SparseOperator parity_operator(ParityKind kind, int n) {
  check_qubits(n, kMaxFullSpaceQubits);
  const std::uint32_t dim = 1U << n;
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(dim);
  for (std::uint32_t x = 0; x < dim; ++x)
    entries.emplace_back(static_cast<int>(parity_target(kind, n, x)),
                         static_cast<int>(x), parity_phase(kind, n, x));
  SparseOperator K(dim, dim);
  K.setFromTriplets(entries.begin(), entries.end());
  return K;
}

std::vector<StateVector> parity_restricted_basis(
    const std::vector<StateVector> &basis, ParityKind kind, int sign) {
  if (kind == ParityKind::Z)
    throw DomainError("parity restriction is defined for X_P and Y_P");
  if (sign != 1 && sign != -1)
    throw DomainError("parity sign must be +1 or -1");

  std::vector<StateVector> out;
  if (basis.empty())
    return out;

  const Eigen::Index dim = basis.front().size();
  const int n = std::countr_zero(static_cast<std::uint64_t>(dim));
  if ((Eigen::Index{1} << n) != dim)
    throw DomainError("basis vectors must live in a 2^N-dimensional space");

  constexpr Real kNullTol = 1e-12;
  for (const auto &phi: basis) {
    if (phi.size() != dim)
      throw DomainError("basis vectors differ in dimension");
    StateVector v =
        (phi + static_cast<Real>(sign) * apply_parity(kind, n, phi))
        / std::sqrt(2.0);
    const Real norm = v.norm();
    if (norm < kNullTol)
      continue;
    v /= norm;
    bool repeated = std::any_of(out.begin(), out.end(), [&](const auto &u) {
      return std::abs(u.dot(v)) > 1.0 - kNullTol;
    });
    if (!repeated)
      out.push_back(std::move(v));
  }
  return out;
}

}  // namespace ringctl
