//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RINGCTL_SYMMETRY_HPP_
#define RINGCTL_SYMMETRY_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ringctl/types.hpp"

namespace ringctl {

inline constexpr int kMaxFullSpaceQubits = 14;
inline constexpr int kMaxDenseQubits = 10;

/// N-qubit computational basis state. Qubit n (1-based) is stored in bit
/// n-1, so `index()` is the little-endian position of the state in the
/// 2^N-dimensional Hilbert space. Text form lists a_1 ... a_N left to right.
class BitString {
public:
  BitString(std::uint32_t bits, int n);

  static BitString from_string(std::string_view text);

  int size() const noexcept { return n_; }
  std::uint32_t index() const noexcept { return bits_; }
  bool operator[](int qubit) const noexcept { return (bits_ >> qubit) & 1U; }

  int hamming_weight() const noexcept;
  /// Adjacent unequal pairs, counted cyclically (a_N is adjacent to a_1).
  int domain_walls() const noexcept;
  /// a_1 ... a_N reversed.
  BitString reversed() const noexcept;
  /// Integer whose binary digits read a_1 ... a_N (most significant first),
  /// i.e. the key of lexicographic order on the text form.
  std::uint32_t lex_key() const noexcept { return reversed().bits_; }

  std::string to_string() const;

  friend bool operator==(const BitString &, const BitString &) = default;

private:
  std::uint32_t bits_;
  int n_;
};

/// Element of the dihedral group D_N: the cyclic shift C^s, or the
/// reflected shift R C^s when `reflect` is set.
struct GroupElement {
  int shift = 0;
  bool reflect = false;
};

/// C^s|a_1..a_N> = |a_{s+1}..a_N a_1..a_s>, R C^s = reverse of that.
BitString apply_group_element(const GroupElement &g, const BitString &b);

/// All 2N elements: rotations first, then reflections, each by shift.
std::vector<GroupElement> dihedral_elements(int n);

struct Orbit {
  std::vector<std::uint32_t> members;  // sorted basis indices
  BitString representative;            // lexicographically smallest member

  int size() const noexcept { return static_cast<int>(members.size()); }
  int hamming_weight() const noexcept {
    return representative.hamming_weight();
  }
};

/// Partitions all 2^N basis states into D_N orbits, ordered by
/// (Hamming weight, lexicographic representative).
std::vector<Orbit> enumerate_orbits(int n);

/// Orthonormal basis of the D_N-invariant subspace. Column o of the
/// projector is the normalized equal superposition of orbit o.
class SymmetryBasis {
public:
  explicit SymmetryBasis(int n);

  int num_qubits() const noexcept { return n_; }
  Eigen::Index full_dim() const noexcept { return Eigen::Index{1} << n_; }
  Eigen::Index dim() const noexcept {
    return static_cast<Eigen::Index>(orbits_.size());
  }

  const std::vector<Orbit> &orbits() const noexcept { return orbits_; }
  const Eigen::SparseMatrix<Real> &projector() const noexcept { return P_; }
  /// Orbit index of every computational basis state.
  const std::vector<int> &orbit_of() const noexcept { return orbit_of_; }

  /// Orbit whose representative is `b`'s orbit representative.
  int find_orbit(const BitString &b) const;

  StateVector lift(const Eigen::Ref<const StateVector> &reduced) const;
  StateVector project(const Eigen::Ref<const StateVector> &full) const;

private:
  int n_;
  std::vector<Orbit> orbits_;
  std::vector<int> orbit_of_;
  Eigen::SparseMatrix<Real> P_;
};

inline SymmetryBasis build_projector(int n) { return SymmetryBasis(n); }

/// P^H H P for a full-space operator (dense or sparse).
ComplexMatrix reduce_operator(const SparseOperator &op,
                              const SymmetryBasis &basis);
ComplexMatrix reduce_operator(const Eigen::Ref<const ComplexMatrix> &op,
                              const SymmetryBasis &basis);

/// Permutation matrix of a group element on the 2^N-dimensional space.
Eigen::SparseMatrix<Real> group_permutation(const GroupElement &g, int n);

enum class ParityKind { X, Y, Z };

/// X_P = sigma^x_1 ... sigma^x_N, likewise Y_P and Z_P, applied to a
/// full-space vector.
StateVector apply_parity(ParityKind kind, int n,
                         const Eigen::Ref<const StateVector> &v);

SparseOperator parity_operator(ParityKind kind, int n);

/// Normalized vectors (1 +- K)|phi>/sqrt(2) for each |phi> in `basis`
/// (full-space columns), K in {X_P, Y_P}. Null and repeated (up to phase)
/// vectors are dropped.
std::vector<StateVector> parity_restricted_basis(
    const std::vector<StateVector> &basis, ParityKind kind, int sign);

}  // namespace ringctl

#endif  // RINGCTL_SYMMETRY_HPP_
