//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>

#include <doctest.h>

#include "oracles.hpp"
#include "ringctl/model.hpp"
#include "ringctl/symmetry.hpp"

using namespace ringctl;

TEST_CASE("group action follows the shift and reflection formulas") {
  const auto b = BitString::from_string("0001");
  CHECK(apply_group_element({ 1, false }, b).to_string() == "0010");
  CHECK(apply_group_element({ 0, false }, b) == b);
  CHECK(apply_group_element({ 1, true }, BitString::from_string("0111"))
            .to_string()
        == "0111");
  // R C^2 |a1 a2 a3 a4 a5> = |a2 a1 a5 a4 a3>
  CHECK(apply_group_element({ 2, true }, BitString::from_string("10000"))
            .to_string()
        == "01000");
  CHECK_THROWS_AS(apply_group_element({ 4, false }, b), DomainError);
  CHECK_THROWS_AS(apply_group_element({ -1, true }, b), DomainError);
}

TEST_CASE("bit string helpers") {
  const auto b = BitString::from_string("0110");
  CHECK(b.index() == 6);
  CHECK(b.hamming_weight() == 2);
  CHECK(b.domain_walls() == 2);
  CHECK(BitString::from_string("0101").domain_walls() == 4);
  CHECK(BitString::from_string("1").domain_walls() == 0);
  CHECK(BitString::from_string("0010").lex_key() == 2);
  CHECK_THROWS_AS(BitString::from_string("01a"), DomainError);
}

TEST_CASE("orbits of three qubits") {
  const auto orbits = enumerate_orbits(3);
  REQUIRE(orbits.size() == 4);
  CHECK(orbits[0].members == std::vector<std::uint32_t>{ 0 });
  CHECK(orbits[1].members == std::vector<std::uint32_t>{ 1, 2, 4 });
  CHECK(orbits[1].representative.to_string() == "001");
  CHECK(orbits[2].members == std::vector<std::uint32_t>{ 3, 5, 6 });
  CHECK(orbits[2].representative.to_string() == "011");
  CHECK(orbits[3].members == std::vector<std::uint32_t>{ 7 });
  CHECK(enumerate_orbits(1).size() == 2);
  CHECK(enumerate_orbits(4).size() == 6);
  CHECK_THROWS_AS(enumerate_orbits(0), CapacityError);
  CHECK_THROWS_AS(enumerate_orbits(kMaxFullSpaceQubits + 1), CapacityError);
}

TEST_CASE("orbit counts match the string-based bracelet enumerator") {
  for (int n = 1; n <= 10; ++n) {
    CAPTURE(n);
    const auto orbits = enumerate_orbits(n);
    CHECK(static_cast<int>(orbits.size()) == oracle::bracelet_count(n));

    std::size_t total = 0;
    for (const auto &o: orbits) {
      total += o.members.size();
      CHECK(o.size() <= 2 * n);
      const auto canon = oracle::bracelet_canonical(o.representative.to_string());
      CHECK(canon == o.representative.to_string());
      for (auto m: o.members) {
        const BitString b(m, n);
        CHECK(b.hamming_weight() == o.hamming_weight());
        CHECK(b.domain_walls() == o.representative.domain_walls());
        CHECK(oracle::bracelet_canonical(b.to_string()) == canon);
        for (const auto &g: dihedral_elements(n)) {
          const auto img = apply_group_element(g, b).index();
          CHECK(std::binary_search(o.members.begin(), o.members.end(), img));
        }
      }
    }
    CHECK(total == (std::size_t{ 1 } << n));
  }
}

TEST_CASE("projector columns are orthonormal orbit superpositions") {
  for (int n = 1; n <= 10; ++n) {
    CAPTURE(n);
    const SymmetryBasis basis(n);
    const RealMatrix P = RealMatrix(basis.projector());
    const RealMatrix gram = P.transpose() * P;
    CHECK((gram - RealMatrix::Identity(basis.dim(), basis.dim())).cwiseAbs().maxCoeff()
          < 1e-12);
  }

  const SymmetryBasis b3(3);
  const RealMatrix P3 = RealMatrix(b3.projector());
  CHECK(P3.rows() == 8);
  CHECK(P3.cols() == 4);
  for (int i: { 1, 2, 4 })
    CHECK(P3(i, 1) == doctest::Approx(1 / std::sqrt(3.0)));
  CHECK(P3.col(1).cwiseAbs().sum() == doctest::Approx(3 / std::sqrt(3.0)));

  const SymmetryBasis b1(1);
  CHECK(RealMatrix(b1.projector()).isIdentity());
  CHECK(SymmetryBasis(4).dim() == 6);
}

TEST_CASE("operator reduction") {
  const RingModel model4(4);
  const SymmetryBasis &basis4 = model4.basis();
  const ComplexMatrix id =
      reduce_operator(ComplexMatrix::Identity(16, 16).eval(), basis4);
  CHECK(id.isIdentity(1e-14));

  const ComplexMatrix hzz = reduce_operator(build_hzz(4), basis4);
  CHECK(hzz(0, 0).real() == doctest::Approx(4.0));
  CHECK((hzz - ComplexMatrix(hzz.diagonal().asDiagonal())).norm() < 1e-14);

  // <000| H_x (|001> + |010> + |100>)/sqrt(3) = 3/sqrt(3)
  const RingModel model3(3);
  CHECK(std::abs(model3.hx_reduced()(0, 1) - std::sqrt(3.0)) < 1e-14);
  CHECK(std::abs(model3.hx_reduced()(1, 0) - std::sqrt(3.0)) < 1e-14);

  CHECK_THROWS_AS(reduce_operator(build_hx(3), basis4), DomainError);
}

TEST_CASE("reduced H_ZZ is diagonal with J (N - 2 walls)") {
  for (int n = 1; n <= 9; ++n) {
    CAPTURE(n);
    const Real J = 0.7;
    const RingModel model(n, J);
    const ComplexMatrix full_reduced = reduce_operator(build_hzz(n, J), model.basis());
    for (Eigen::Index o = 0; o < model.reduced_dim(); ++o) {
      const auto &rep = model.basis().orbits()[o].representative;
      CHECK(model.hzz_reduced()[o] == doctest::Approx(J * (n - 2 * rep.domain_walls())));
      CHECK(full_reduced(o, o).real() == doctest::Approx(model.hzz_reduced()[o]));
    }
    CHECK((full_reduced - ComplexMatrix(full_reduced.diagonal().asDiagonal()))
              .cwiseAbs()
              .maxCoeff()
          < 1e-13);
  }
}

TEST_CASE("ring operators commute with every group element") {
  for (int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    const SparseOperator ops[] = { build_hzz(n), build_hx(n), build_hy(n) };
    for (const auto &g: dihedral_elements(n)) {
      const SparseOperator G = group_permutation(g, n).cast<Complex>();
      for (const auto &O: ops) {
        const SparseOperator conj =
            SparseOperator(G * O * SparseOperator(G.transpose()));
        CHECK(ComplexMatrix(conj - O).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}

TEST_CASE("parity operators") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    const auto X = parity_operator(ParityKind::X, n);
    const auto Y = parity_operator(ParityKind::Y, n);
    const auto Z = parity_operator(ParityKind::Z, n);
    const auto dim = Eigen::Index{ 1 } << n;
    for (const auto *K: { &X, &Y, &Z })
      CHECK(ComplexMatrix(SparseOperator(*K * *K)).isIdentity(1e-14));

    const SparseOperator hzz = build_hzz(n), hx = build_hx(n), hy = build_hy(n);
    auto commutator_norm = [](const SparseOperator &a, const SparseOperator &b) {
      return ComplexMatrix(SparseOperator(a * b - b * a)).cwiseAbs().maxCoeff();
    };
    CHECK(commutator_norm(hzz, X) == 0.0);
    CHECK(commutator_norm(hx, X) == 0.0);
    CHECK(commutator_norm(hzz, Y) == 0.0);
    CHECK(commutator_norm(hy, Y) < 1e-14);

    // Y_P = (-1)^Ham i^N X_P on each basis state.
    StateVector v = StateVector::Random(dim);
    const StateVector yv = apply_parity(ParityKind::Y, n, v);
    CHECK((yv - Y * v).norm() < 1e-13);
    // Dense cross-check: kron of single-qubit sigma^y.
    ComplexMatrix sy(2, 2);
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    ComplexMatrix kron = ComplexMatrix::Identity(1, 1);
    for (int q = n - 1; q >= 0; --q) {
      ComplexMatrix next(kron.rows() * 2, kron.cols() * 2);
      for (int r = 0; r < kron.rows(); ++r)
        for (int c = 0; c < kron.cols(); ++c)
          next.block(2 * r, 2 * c, 2, 2) = kron(r, c) * sy;
      kron = next;
    }
    CHECK((kron - ComplexMatrix(Y)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("parity-restricted bases") {
  auto basis_vec = [](unsigned idx, int n) {
    StateVector v = StateVector::Zero(Eigen::Index{ 1 } << n);
    v[idx] = 1;
    return v;
  };

  const auto plus = parity_restricted_basis({ basis_vec(0, 2) }, ParityKind::X, +1);
  REQUIRE(plus.size() == 1);
  CHECK(std::abs(plus[0][0] - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(plus[0][3] - 1 / std::sqrt(2.0)) < 1e-15);

  StateVector even = (basis_vec(0, 2) + basis_vec(3, 2)) / std::sqrt(2.0);
  CHECK(parity_restricted_basis({ even }, ParityKind::X, -1).empty());

  const auto ypar = parity_restricted_basis({ basis_vec(0, 2) }, ParityKind::Y, +1);
  REQUIRE(ypar.size() == 1);
  StateVector expected = (basis_vec(0, 2) - basis_vec(3, 2)) / std::sqrt(2.0);
  CHECK(fidelity(ypar[0], expected) == doctest::Approx(1.0));

  // |00> and |11> give the same X_P-symmetric vector; one copy survives.
  CHECK(parity_restricted_basis({ basis_vec(0, 2), basis_vec(3, 2) }, ParityKind::X, +1)
            .size()
        == 1);

  // Over the whole symmetrized basis the +- sectors split the space.
  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    const SymmetryBasis basis(n);
    std::vector<StateVector> cols;
    for (Eigen::Index o = 0; o < basis.dim(); ++o) {
      StateVector e = StateVector::Zero(basis.dim());
      e[o] = 1;
      cols.push_back(basis.lift(e));
    }
    for (auto kind: { ParityKind::X, ParityKind::Y }) {
      const auto p = parity_restricted_basis(cols, kind, +1);
      const auto m = parity_restricted_basis(cols, kind, -1);
      CHECK(static_cast<Eigen::Index>(p.size() + m.size()) == basis.dim());
      for (const auto &v: p)
        CHECK((apply_parity(kind, n, v) - v).norm() < 1e-12);
      for (const auto &v: m)
        CHECK((apply_parity(kind, n, v) + v).norm() < 1e-12);
    }
  }

  CHECK_THROWS_AS(parity_restricted_basis({ basis_vec(0, 2) }, ParityKind::Z, 1),
                  DomainError);
}
