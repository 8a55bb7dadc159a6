//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "ringctl/propagate.hpp"

using namespace ringctl;

namespace {
StateVector all_ones(int n) {
  StateVector v = StateVector::Zero(Eigen::Index{ 1 } << n);
  v[v.size() - 1] = 1;
  return v;
}

StateVector random_state(Eigen::Index dim, std::mt19937_64 &rng) {
  std::normal_distribution<Real> g;
  StateVector v(dim);
  for (auto &x: v)
    x = Complex(g(rng), g(rng));
  return v.normalized();
}

NmrSequence random_sequence(int m, std::mt19937_64 &rng) {
  std::uniform_real_distribution<Real> u(0, 1);
  NmrSequence seq(m);
  for (auto &a: seq.alphas)
    a = kPi * u(rng);
  for (auto &p: seq.phis)
    p = 2 * kPi * u(rng);
  for (auto &x: seq.xis)
    x = kPi / 2 * u(rng);
  return seq;
}

SinePulse random_pulse(int m, Real horizon, std::mt19937_64 &rng) {
  std::uniform_real_distribution<Real> u(-1.5, 1.5);
  SinePulse pulse(m, horizon);
  for (auto &b: pulse.coeffs_x)
    b = u(rng);
  for (auto &b: pulse.coeffs_y)
    b = u(rng);
  return pulse;
}
}  // namespace

TEST_CASE("Tsit5 tableau satisfies its order conditions") {
  using Tab = Tsit5Tableau;
  for (int s = 1; s < 7; ++s) {
    Real row = 0;
    for (int j = 0; j < s; ++j)
      row += Tab::a[s][j];
    CHECK(row == doctest::Approx(Tab::c[s]).epsilon(1e-13));
  }
  // The last row is the 5th-order solution weight vector.
  Real bsum = 0;
  for (int j = 0; j < 6; ++j)
    bsum += Tab::a[6][j];
  CHECK(bsum == doctest::Approx(1.0).epsilon(1e-13));
  // Both solutions share the lower-order conditions, so the difference kills
  // polynomials up to degree 3.
  for (int k = 0; k <= 3; ++k) {
    Real acc = 0;
    for (int j = 0; j < 7; ++j)
      acc += Tab::btilde[j] * std::pow(Tab::c[j], k);
    CAPTURE(k);
    CHECK(std::abs(acc) < 1e-12);
  }
  // 5th-order weights: sum b_j c_j^k = 1/(k+1).
  for (int k = 0; k <= 4; ++k) {
    Real acc = 0;
    for (int j = 0; j < 6; ++j)
      acc += Tab::a[6][j] * std::pow(Tab::c[j], k);
    CAPTURE(k);
    CHECK(acc == doctest::Approx(1.0 / (k + 1)).epsilon(1e-10));
  }
}

TEST_CASE("integrator converges at fifth order on a scalar oscillator") {
  // psi' = -i w psi
  const Real w = 1.3;
  auto apply = [&](Real, const StateVector &psi, StateVector &out) { out = w * psi; };
  StateVector psi0(1);
  psi0[0] = 1;
  IntegratorConfig cfg;
  cfg.abs_tol = cfg.rel_tol = 1e-12;
  IntegrationStats stats;
  const StateVector psi = integrate_tdse(apply, psi0, 0, 5, cfg, &stats);
  CHECK(std::abs(psi[0] - std::polar(1.0, -w * 5)) < 1e-9);
  CHECK(stats.accepted > 0);

  const StateVector back = integrate_tdse(apply, psi, 5, 0, cfg);
  CHECK(std::abs(back[0] - 1.0) < 1e-9);

  cfg.max_steps = 3;
  CHECK_THROWS_AS(integrate_tdse(apply, psi0, 0, 50, cfg), IntegrationError);
}

TEST_CASE("Krylov expmv against dense exponentials") {
  std::mt19937_64 rng(7);
  std::normal_distribution<Real> g;
  for (int d: { 1, 2, 5, 16, 33, 64 }) {
    ComplexMatrix A(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        A(i, j) = Complex(g(rng), g(rng));
    const ComplexMatrix H = (A + A.adjoint()) / 2;
    const StateVector v = random_state(d, rng);
    for (Real theta: { 0.0, 0.3, -1.7, 4.0 }) {
      CAPTURE(d);
      CAPTURE(theta);
      const StateVector ref = oracle::dense_expmv(H, v, theta);
      CHECK((expmv(H, v, theta) - ref).norm() < 1e-11);
    }
  }

  // diagonal operator: closed form
  ComplexMatrix D = ComplexMatrix::Zero(3, 3);
  D.diagonal() << 1, -2, 0.5;
  StateVector v = StateVector::Ones(3) / std::sqrt(3.0);
  const StateVector out = expmv(D, v, 0.9);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(out[i] - std::polar(1 / std::sqrt(3.0), -0.9 * D(i, i).real()))
          < 1e-13);

  CHECK((expmv(D, v, 0.0) - v).norm() == 0.0);
  CHECK_THROWS_AS(expmv(D, StateVector::Ones(4).eval(), 1.0), DomainError);
}

TEST_CASE("global rotations") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    const RingModel model(n);
    const StateVector g_full = model.ground_full();
    const StateVector g_red = model.ground_reduced();

    CHECK((apply_uxy(g_full, 0, 0.4, model, Representation::Full) - g_full).norm() == 0);
    CHECK((apply_uxy(g_red, 0, 0.4, model) - g_red).norm() == 0);

    const StateVector flip = apply_uxy(g_full, kPi / 2, 0, model, Representation::Full);
    const Complex phase = std::pow(Complex(0, -1), n);
    CHECK((flip - phase * all_ones(n)).norm() < 1e-14);
    const StateVector flip_red = apply_uxy(g_red, kPi / 2, 0, model);
    CHECK(fidelity(model.basis().lift(flip_red), all_ones(n)) > 1 - 1e-12);

    std::mt19937_64 rng(n);
    const StateVector v = random_state(model.full_dim(), rng);
    for (Real phi: { 0.0, 1.1, 3.0 }) {
      const StateVector w = apply_uxy(v, kPi, phi, model, Representation::Full);
      CHECK(fidelity(w, v) == doctest::Approx(1.0).epsilon(1e-13));
    }

    // per-qubit closed form vs dense exponential of the collective generator
    const ComplexMatrix Hgen = std::cos(0.8) * ComplexMatrix(model.hx_full())
                               + std::sin(0.8) * ComplexMatrix(model.hy_full());
    CHECK((apply_uxy(v, 0.37, 0.8, model, Representation::Full)
           - oracle::dense_expmv(Hgen, v, 0.37))
              .norm()
          < 1e-12);
  }
}

TEST_CASE("Ising evolution") {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 7; ++n) {
    CAPTURE(n);
    const RingModel model(n);
    const StateVector v = random_state(model.reduced_dim(), rng);
    CHECK((apply_uzz(v, 0, model) - v).norm() == 0);

    const Real period = n >= 3 ? kPi / 2 : kPi;
    const StateVector a = apply_uzz(v, 0.3, model);
    const StateVector b = apply_uzz(v, 0.3 + period, model);
    CHECK(fidelity(a, b) == doctest::Approx(1.0).epsilon(1e-13));

    const StateVector c = apply_uzz(apply_uzz(v, 0.2, model), 0.45, model);
    CHECK((c - apply_uzz(v, 0.65, model)).norm() < 1e-14);
    CHECK(apply_uzz(v, 0.7, model).norm() == doctest::Approx(1.0).epsilon(1e-14));

    const StateVector vf = model.basis().lift(v);
    CHECK((model.basis().lift(a) - apply_uzz(vf, 0.3, model, Representation::Full)).norm()
          < 1e-13);
  }
  // N = 3 has a non-trivial spectrum for which a quarter period is not a symmetry
  const RingModel m3(3);
  std::mt19937_64 rng3(11);
  const StateVector v = random_state(m3.reduced_dim(), rng3);
  CHECK(fidelity(apply_uzz(v, 0.1, m3), apply_uzz(v, 0.1 + kPi / 4, m3)) < 0.999);
}

TEST_CASE("NMR sequences agree with the dense oracle") {
  std::mt19937_64 rng(2026);
  for (int n = 3; n <= 6; ++n) {
    const RingModel model(n);
    for (int rep = 0; rep < 10; ++rep) {
      CAPTURE(n);
      CAPTURE(rep);
      const auto seq = random_sequence(1 + rep % 4, rng);
      const StateVector red = propagate_sequence(seq, model.ground_reduced(), model);
      CHECK(red.norm() == doctest::Approx(1.0).epsilon(1e-12));
      const StateVector dense = dense_oracle(seq, model);
      CHECK(fidelity(model.basis().lift(red), dense) > 1 - 1e-10);
      const StateVector full =
          propagate_sequence(seq, model.ground_full(), model, Representation::Full);
      CHECK(fidelity(full, dense) > 1 - 1e-12);
    }
  }

  const RingModel model(4);
  CHECK((dense_oracle(NmrSequence(0), model) - model.ground_full()).norm() < 1e-14);
  NmrSequence pi(0);
  pi.alphas[0] = kPi / 2;
  CHECK(fidelity(dense_oracle(pi, model), all_ones(4)) > 1 - 1e-14);
  CHECK_THROWS_AS(dense_oracle(pi, RingModel(kMaxDenseQubits + 1)), CapacityError);
}

TEST_CASE("continuous-wave evolution") {
  SUBCASE("zero pulse leaves H_ZZ eigenstates alone") {
    const RingModel model(4);
    const SinePulse pulse(2, 3.0);
    CHECK(fidelity(evolve_cw(model.ground_reduced(), pulse, model), model.ground_reduced())
          > 1 - 1e-14);
  }

  SUBCASE("constant field matches a time-independent exponential") {
    for (int n: { 3, 4, 5 }) {
      CAPTURE(n);
      const RingModel model(n);
      SinePulse pulse(1, 2.5);
      pulse.coeffs_x[0] = 0.8;
      const ComplexMatrix H = ComplexMatrix(model.hzz_reduced().cast<Complex>().asDiagonal())
                              + 0.8 * model.hx_reduced();
      const StateVector ref = expmv(H, model.ground_reduced(), 2.5);
      const StateVector out = evolve_cw(model.ground_reduced(), pulse, model);
      CHECK((out - ref).norm() < 1e-8);
    }
  }

  SUBCASE("norm drift") {
    const RingModel model(4);
    std::mt19937_64 rng(5);
    const auto pulse = random_pulse(3, 4.0, rng);
    const auto evo = integrate_cw(model.ground_reduced(), pulse, model);
    CHECK(std::abs(evo.raw_norm - 1) < 1e-8);
    CHECK(evo.state.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(evo.stats.accepted > 0);
  }

  SUBCASE("backward integration recovers the initial state") {
    const RingModel model(4);
    std::mt19937_64 rng(9);
    const auto pulse = random_pulse(3, 4.0, rng);
    const StateVector v0 = random_state(model.reduced_dim(), rng);
    const ComplexMatrix hx = model.hx_reduced(), hy = model.hy_reduced();
    const RealVector hzz = model.hzz_reduced();
    auto apply = [&](Real t, const StateVector &psi, StateVector &out) {
      out = hzz.cast<Complex>().cwiseProduct(psi);
      out.noalias() += field_value(pulse, Axis::X, t) * (hx * psi);
      out.noalias() += field_value(pulse, Axis::Y, t) * (hy * psi);
    };
    const StateVector fwd = evolve_cw(v0, pulse, model);
    const StateVector back = integrate_tdse(apply, fwd, pulse.horizon, 0, IntegratorConfig{});
    CHECK(fidelity(back, v0) > 1 - 1e-7);
  }

  SUBCASE("random pulses agree with the dense oracle") {
    std::mt19937_64 rng(42);
    for (int n = 3; n <= 6; ++n) {
      const RingModel model(n);
      for (int rep = 0; rep < 10; ++rep) {
        CAPTURE(n);
        CAPTURE(rep);
        const auto pulse = random_pulse(1 + rep % 4, 1.0 + rep % 3, rng);
        const StateVector red = evolve_cw(model.ground_reduced(), pulse, model);
        CHECK(fidelity(model.basis().lift(red), dense_oracle(pulse, model)) > 1 - 1e-9);
      }
    }
  }
}
