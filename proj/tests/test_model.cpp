//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>

#include <doctest.h>

#include "ringctl/model.hpp"

using namespace ringctl;

namespace {
StateVector ket(const std::string &bits) {
  StateVector v = StateVector::Zero(Eigen::Index{ 1 } << bits.size());
  v[BitString::from_string(bits).index()] = 1;
  return v;
}
}  // namespace

TEST_CASE("Dicke states") {
  const auto d32 = dicke_state(3, 2);
  const StateVector expected32 = (ket("110") + ket("101") + ket("011")) / std::sqrt(3.0);
  CHECK((d32.full - expected32).norm() < 1e-15);

  const auto d42 = dicke_state(4, 2);
  StateVector expected42 = StateVector::Zero(16);
  for (const char *s: { "1100", "1010", "1001", "0110", "0101", "0011" })
    expected42 += ket(s) / std::sqrt(6.0);
  CHECK((d42.full - expected42).norm() < 1e-15);

  CHECK((dicke_state(2, 0).full - ket("00")).norm() == 0.0);

  CHECK_THROWS_AS(dicke_state(3, 4), DomainError);
  CHECK_THROWS_AS(dicke_state(3, -1), DomainError);
}

TEST_CASE("W states") {
  const auto w3 = w_state(3);
  CHECK(w3.kind == TargetKind::W);
  CHECK((w3.full - (ket("001") + ket("010") + ket("100")) / std::sqrt(3.0)).norm()
        < 1e-15);
  CHECK((w_state(1).full - ket("1")).norm() == 0.0);

  const auto w5 = w_state(5);
  StateVector e1 = StateVector::Zero(w5.reduced.size());
  e1[1] = 1;
  CHECK((w5.reduced - e1).norm() < 1e-15);
}

TEST_CASE("target states agree across representations") {
  for (int n = 1; n <= 8; ++n) {
    const SymmetryBasis basis(n);
    for (int k = 0; k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const auto t = dicke_state(n, k);
      CHECK(t.full.norm() == doctest::Approx(1.0));
      CHECK(t.reduced.norm() == doctest::Approx(1.0));
      CHECK(fidelity(basis.lift(t.reduced), t.full) == doctest::Approx(1.0).epsilon(1e-14));
      for (Eigen::Index o = 0; o < basis.dim(); ++o) {
        const auto &orbit = basis.orbits()[o];
        const Real expected = orbit.hamming_weight() == k
                                  ? std::sqrt(orbit.size() / binomial(n, k))
                                  : 0.0;
        CHECK(t.reduced[o].real() == doctest::Approx(expected));
      }
    }
  }
}

TEST_CASE("fidelity") {
  const StateVector a = ket("00");
  const StateVector b = (ket("00") + ket("11")) / std::sqrt(2.0);
  CHECK(fidelity(a, a) == 1.0);
  CHECK(fidelity(a, ket("01")) == 0.0);
  CHECK(fidelity(a, b) == doctest::Approx(0.5));
  CHECK(fidelity(b, a) == doctest::Approx(0.5));
  CHECK(fidelity(std::polar(1.0, 0.7) * a, b) == doctest::Approx(0.5));
  CHECK_THROWS_AS(fidelity(a, ket("000")), DomainError);
}

TEST_CASE("van-der-Waals coupling") {
  CHECK(rydberg_coupling(8.66e5, 6.65) == doctest::Approx(10.0).epsilon(0.01));
  CHECK(rydberg_coupling(0, 6.65) == 0.0);
  CHECK(rydberg_coupling(8.66e5, 5.0) == doctest::Approx(55.424));
  CHECK_THROWS_AS(rydberg_coupling(8.66e5, 0.0), DomainError);
  CHECK_THROWS_AS(rydberg_coupling(8.66e5, -1.0), DomainError);
}

TEST_CASE("ring Hamiltonian structure") {
  for (int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    const RealVector diag = hzz_diagonal(n, 1.5);
    for (std::uint32_t x = 0; x < (1U << n); ++x)
      CHECK(diag[x] == 1.5 * (n - 2 * BitString(x, n).domain_walls()));

    const ComplexMatrix hx = ComplexMatrix(build_hx(n));
    const ComplexMatrix hy = ComplexMatrix(build_hy(n));
    CHECK(hx.isApprox(hx.adjoint()));
    CHECK(hy.isApprox(hy.adjoint()));
  }

  // Both N = 2 bonds are the same pair: H_ZZ = 2 sigma^z sigma^z.
  const RealVector two = hzz_diagonal(2);
  CHECK(two[0] == 2.0);
  CHECK(two[1] == -2.0);
  CHECK(two[2] == -2.0);
  CHECK(two[3] == 2.0);
  CHECK(hzz_diagonal(1)[0] == 1.0);
}

TEST_CASE("H_x connects Dicke states only between neighbouring weights") {
  for (int n = 1; n <= 6; ++n) {
    const SparseOperator hx = build_hx(n);
    for (int k = 0; k <= n; ++k) {
      for (int kp = 0; kp <= n; ++kp) {
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(kp);
        const Complex elem =
            dicke_state(n, k).full.dot(hx * dicke_state(n, kp).full);
        if (std::abs(k - kp) == 1)
          CHECK(std::abs(elem) > 1e-3);
        else
          CHECK(std::abs(elem) < 1e-14);
      }
    }
  }
}

TEST_CASE("X parity maps D(N,k) onto D(N,N-k)") {
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK((apply_parity(ParityKind::X, n, dicke_state(n, k).full)
             - dicke_state(n, n - k).full)
                .norm()
            == 0.0);
}

TEST_CASE("ring model") {
  const RingModel model(4, 2.0);
  CHECK(model.reduced_dim() == 6);
  CHECK(model.full_dim() == 16);
  CHECK(model.hzz_reduced()[0] == 8.0);
  CHECK(model.hx_reduced().isApprox(model.hx_reduced().adjoint()));
  CHECK(model.hy_reduced().isApprox(model.hy_reduced().adjoint()));
  CHECK(model.ground_reduced()[0] == 1.0);
  CHECK(model.ground_full()[0] == 1.0);
  CHECK_THROWS_AS(RingModel(0), CapacityError);
}
