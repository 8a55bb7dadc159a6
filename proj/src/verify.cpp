//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ringctl/verify.hpp"

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "ringctl/cw.hpp"
#include "ringctl/nmr.hpp"

namespace ringctl {

namespace {
  std::string sci(Real v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
  }

  InvariantCheck check(std::string name, bool ok, std::string detail) {
    return { std::move(name), ok, std::move(detail) };
  }

  StateVector random_state(Eigen::Index dim, std::mt19937_64 &rng) {
    std::normal_distribution<Real> g;
    StateVector v(dim);
    for (auto &x: v)
      x = Complex(g(rng), g(rng));
    return v.normalized();
  }

  NmrSequence random_sequence(int m, int n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<Real> u(0, 1);
    NmrSequence seq(m);
    for (auto &a: seq.alphas)
      a = kPi * u(rng);
    for (auto &p: seq.phis)
      p = 2 * kPi * u(rng);
    for (auto &x: seq.xis)
      x = interaction_period(n) * u(rng);
    return seq;
  }

  SinePulse random_pulse(int m, std::mt19937_64 &rng) {
    std::uniform_real_distribution<Real> u(0, 1.5);
    SinePulse p(m, 4.0);
    for (auto &b: p.coeffs_x)
      b = u(rng);
    for (auto &b: p.coeffs_y)
      b = u(rng);
    return p;
  }
}  // namespace

std::vector<InvariantCheck> verify_invariants(int n, std::uint64_t seed) {
  std::vector<InvariantCheck> out;
  std::mt19937_64 rng(seed);
  const RingModel model(n);
  const SymmetryBasis &basis = model.basis();
  const bool dense_ok = n <= kMaxDenseQubits;

  {
    // Group every string by the smallest index in its image set.
    std::set<std::uint32_t> classes;
    const auto group = dihedral_elements(n);
    for (std::uint32_t x = 0; x < (1U << n); ++x) {
      std::uint32_t lo = x;
      for (const auto &g: group)
        lo = std::min(lo, apply_group_element(g, BitString(x, n)).index());
      classes.insert(lo);
    }
    const auto dim = static_cast<std::size_t>(basis.dim());
    out.push_back(check("orbit count", classes.size() == dim,
                        std::to_string(dim) + " orbits, brute force "
                            + std::to_string(classes.size())));
  }

  {
    const RealMatrix P = RealMatrix(basis.projector());
    const Real err =
        (P.transpose() * P - RealMatrix::Identity(basis.dim(), basis.dim())).cwiseAbs().maxCoeff();
    out.push_back(check("projector orthonormality", err < 1e-12, "max |P^T P - I| = " + sci(err)));
  }

  {
    Real err = 0;
    for (const auto &g: dihedral_elements(n)) {
      const SparseOperator G = group_permutation(g, n).cast<Complex>();
      for (const SparseOperator *O: { &model.hx_full(), &model.hy_full() }) {
        const SparseOperator d = SparseOperator(G * *O * SparseOperator(G.transpose())) - *O;
        for (int k = 0; k < d.outerSize(); ++k)
          for (SparseOperator::InnerIterator it(d, k); it; ++it)
            err = std::max(err, std::abs(it.value()));
      }
    }
    out.push_back(check("drive terms are D_N invariant", err == 0.0, "max deviation " + sci(err)));
  }

  {
    Real worst = 0;
    for (int k = 0; k <= n; ++k) {
      const auto t = dicke_state(n, k);
      worst = std::max(worst, (basis.lift(t.reduced) - t.full).norm());
    }
    out.push_back(check("Dicke states lift exactly", worst < 1e-12, "max error " + sci(worst)));
  }

  if (dense_ok) {
    Real worst = 0;
    for (int rep = 0; rep < 5; ++rep) {
      const auto seq = random_sequence(1 + rep % 3, n, rng);
      const Real f = fidelity(basis.lift(simulate_sequence(seq, model)), dense_oracle(seq, model));
      worst = std::max(worst, 1 - f);
    }
    out.push_back(check("NMR reduced vs dense", worst < 1e-9, "max infidelity " + sci(worst)));

    worst = 0;
    for (int rep = 0; rep < 3; ++rep) {
      const auto pulse = random_pulse(2 + rep, rng);
      const Real f = fidelity(basis.lift(evolve_cw(model.ground_reduced(), pulse, model)),
                              dense_oracle(pulse, model));
      worst = std::max(worst, 1 - f);
    }
    out.push_back(check("CW reduced vs dense", worst < 1e-9, "max infidelity " + sci(worst)));

    const StateVector v = random_state(model.full_dim(), rng);
    const StateVector a = apply_uxy(v, 0.4, 1.3, model, Representation::Full);
    const StateVector b = basis.lift(apply_uxy(basis.project(v), 0.4, 1.3, model));
    const StateVector sym = basis.lift(basis.project(v));
    const Real err =
        (basis.lift(basis.project(a)) - b).norm() / std::max<Real>(sym.norm(), 1e-300);
    out.push_back(check("rotation closed form vs Krylov", err < 1e-10, "error " + sci(err)));

    worst = 0;
    for (int k = 0; k <= n; ++k) {
      const auto seq = random_sequence(2, n, rng);
      const StateVector psi = basis.lift(simulate_sequence(seq, model));
      const Real lhs = fidelity(apply_parity(ParityKind::X, n, psi), dicke_state(n, n - k).full);
      const Real rhs = fidelity(psi, dicke_state(n, k).full);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    out.push_back(check("Dicke mirror identity", worst < 1e-14, "max difference " + sci(worst)));
  } else {
    out.push_back(check("dense cross-checks", true,
                        "skipped above N=" + std::to_string(kMaxDenseQubits)));
  }

  {
    const StateVector v = random_state(model.reduced_dim(), rng);
    const Real period = interaction_period(n);
    const Real f = fidelity(apply_uzz(v, 0.3, model), apply_uzz(v, 0.3 + period, model));
    out.push_back(check("Ising period", std::abs(1 - f) < 1e-12, "1 - F = " + sci(1 - f)));
  }

  {
    const auto target = w_state(n);
    const auto seq = random_sequence(2, n, rng);
    const Objective f = [&](const RealVector &x) {
      return nmr_loss(NmrSequence::unpack(x, 2), target, model);
    };
    const RealVector g1 = central_difference_gradient(f, seq.pack(), 1e-7);
    const RealVector g2 = richardson_gradient(f, seq.pack(), 1e-3);
    const Real rel = (g1 - g2).norm() / std::max<Real>(g2.norm(), 1e-300);
    out.push_back(check("finite-difference gradient", rel < 1e-6, "relative error " + sci(rel)));
  }

  {
    const auto pulse = random_pulse(3, rng);
    const auto evo = integrate_cw(model.ground_reduced(), pulse, model);
    const Real drift = std::abs(evo.raw_norm - 1);
    out.push_back(check("integrator norm drift", drift < 1e-8, "drift " + sci(drift)));
  }

  {
    const CwOptConfig cfg;
    const Real pen = field_penalty(SinePulse::raise_and_fall(9, 4.0), cfg);
    out.push_back(check("penalty-free seed", pen == 0.0, "penalty " + sci(pen)));
  }

  return out;
}

}  // namespace ringctl
