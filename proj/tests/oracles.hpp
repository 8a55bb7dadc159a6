//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Test-only reference computations, written against plain strings and
// dense matrices so they share no code path with the library.

#ifndef RINGCTL_TESTS_ORACLES_HPP_
#define RINGCTL_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <string>

#include <Eigen/Dense>

namespace oracle {

// Little-endian index -> "a_1 ... a_N".
inline std::string to_text(unsigned x, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i)
    if ((x >> i) & 1U)
      s[i] = '1';
  return s;
}

// Lexicographically smallest image of s under all rotations and
// reflections of the ring.
inline std::string bracelet_canonical(const std::string &s) {
  std::string best = s;
  const int n = static_cast<int>(s.size());
  for (int r = 0; r < n; ++r) {
    std::string rot = s.substr(r) + s.substr(0, r);
    std::string rev(rot.rbegin(), rot.rend());
    best = std::min({ best, rot, rev });
  }
  return best;
}

inline int bracelet_count(int n) {
  std::set<std::string> classes;
  for (unsigned x = 0; x < (1U << n); ++x)
    classes.insert(bracelet_canonical(to_text(x, n)));
  return static_cast<int>(classes.size());
}

// exp(-i theta H) v through a full Hermitian eigendecomposition.
inline Eigen::VectorXcd dense_expmv(const Eigen::MatrixXcd &H,
                                    const Eigen::VectorXcd &v, double theta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H);
  Eigen::VectorXcd c = eig.eigenvectors().adjoint() * v;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c[i] *= std::polar(1.0, -theta * eig.eigenvalues()[i]);
  return eig.eigenvectors() * c;
}

}  // namespace oracle

#endif  // RINGCTL_TESTS_ORACLES_HPP_
