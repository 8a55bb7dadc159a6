//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ringctl/propagate.hpp"

#include <cmath>
#include <string>

namespace ringctl {

namespace {
  void check_rep_dim(const Eigen::Ref<const StateVector> &v,
                     const RingModel &model, Representation rep) {
    const Eigen::Index expected = rep == Representation::Full
                                      ? model.full_dim()
                                      : model.reduced_dim();
    if (v.size() != expected)
      throw DomainError("state dimension does not match the representation");
  }

  // In-place single-qubit gate on every qubit of a full-space vector.
  void apply_global_rotation(StateVector &v, int n, const Eigen::Matrix2cd &u) {
    const Eigen::Index dim = v.size();
    for (int q = 0; q < n; ++q) {
      const Eigen::Index stride = Eigen::Index{1} << q;
      for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
        for (Eigen::Index i = base; i < base + stride; ++i) {
          const Complex a0 = v[i], a1 = v[i + stride];
          v[i] = u(0, 0) * a0 + u(0, 1) * a1;
          v[i + stride] = u(1, 0) * a0 + u(1, 1) * a1;
        }
      }
    }
  }
}  // namespace

StateVector apply_uxy(const Eigen::Ref<const StateVector> &v, Real alpha,
                      Real phi, const RingModel &model, Representation rep,
                      const KrylovConfig &krylov) {
  check_rep_dim(v, model, rep);
  if (alpha == 0)
    return v;

  if (rep == Representation::Full) {
    // n.sigma = [[0, e^{-i phi}], [e^{i phi}, 0]]
    const Real c = std::cos(alpha), s = std::sin(alpha);
    Eigen::Matrix2cd u;
    u << c, Complex(0, -s) * std::polar(1.0, -phi),
        Complex(0, -s) * std::polar(1.0, phi), c;
    StateVector out = v;
    apply_global_rotation(out, model.num_qubits(), u);
    return out;
  }

  const ComplexMatrix H =
      std::cos(phi) * model.hx_reduced() + std::sin(phi) * model.hy_reduced();
  return expmv(H, v, alpha, krylov);
}

StateVector apply_uzz(const Eigen::Ref<const StateVector> &v, Real xi,
                      const RingModel &model, Representation rep) {
  check_rep_dim(v, model, rep);
  const RealVector &diag =
      rep == Representation::Full ? model.hzz_full() : model.hzz_reduced();
  StateVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out[i] = std::polar(1.0, -xi * diag[i]) * v[i];
  return out;
}

StateVector propagate_sequence(const NmrSequence &seq,
                               const Eigen::Ref<const StateVector> &v0,
                               const RingModel &model, Representation rep,
                               const KrylovConfig &krylov) {
  StateVector v = apply_uxy(v0, seq.alphas[0], seq.phis[0], model, rep, krylov);
  for (int j = 0; j < seq.num_layers(); ++j) {
    v = apply_uzz(v, seq.xis[j], model, rep);
    v = apply_uxy(v, seq.alphas[j + 1], seq.phis[j + 1], model, rep, krylov);
  }
  return v;
}

CwEvolution integrate_cw(const Eigen::Ref<const StateVector> &v0,
                         const SinePulse &pulse, const RingModel &model,
                         const IntegratorConfig &cfg, Representation rep) {
  check_rep_dim(v0, model, rep);
  if (!(pulse.horizon > 0))
    throw DomainError("pulse horizon must be positive");

  CwEvolution result;
  auto run = [&](const auto &hzz, const auto &hx, const auto &hy) {
    StateVector scratch(v0.size());
    auto apply_h = [&](Real t, const StateVector &psi, StateVector &out) {
      out = hzz.cwiseProduct(psi);
      const Real bx = field_value(pulse, Axis::X, t);
      const Real by = field_value(pulse, Axis::Y, t);
      if (bx != 0) {
        scratch.noalias() = hx * psi;
        out += bx * scratch;
      }
      if (by != 0) {
        scratch.noalias() = hy * psi;
        out += by * scratch;
      }
    };
    return integrate_tdse(apply_h, v0, 0.0, pulse.horizon, cfg, &result.stats);
  };

  StateVector raw =
      rep == Representation::Full
          ? run(model.hzz_full().cast<Complex>().eval(), model.hx_full(),
                model.hy_full())
          : run(model.hzz_reduced().cast<Complex>().eval(), model.hx_reduced(),
                model.hy_reduced());

  result.raw_norm = raw.norm();
  result.state = raw / result.raw_norm;
  return result;
}

namespace {
  struct DenseVisitor {
    const RingModel &model;
    ComplexMatrix hx, hy;
    RealVector hzz;

    explicit DenseVisitor(const RingModel &m)
        : model(m), hx(ComplexMatrix(m.hx_full())),
          hy(ComplexMatrix(m.hy_full())), hzz(m.hzz_full()) { }

    StateVector rotate(const StateVector &v, Real alpha, Real phi) const {
      const ComplexMatrix H = std::cos(phi) * hx + std::sin(phi) * hy;
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(H);
      const auto &Q = eig.eigenvectors();
      StateVector coeffs = Q.adjoint() * v;
      for (Eigen::Index i = 0; i < coeffs.size(); ++i)
        coeffs[i] *= std::polar(1.0, -alpha * eig.eigenvalues()[i]);
      return Q * coeffs;
    }

    StateVector operator()(const NmrSequence &seq) const {
      StateVector v = model.ground_full();
      v = rotate(v, seq.alphas[0], seq.phis[0]);
      for (int j = 0; j < seq.num_layers(); ++j) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
          v[i] *= std::exp(Complex(0, -seq.xis[j] * hzz[i]));
        v = rotate(v, seq.alphas[j + 1], seq.phis[j + 1]);
      }
      return v;
    }

    StateVector operator()(const SinePulse &pulse) const {
      IntegratorConfig tight;
      tight.abs_tol = 1e-13;
      tight.rel_tol = 1e-13;
      auto apply_h = [&](Real t, const StateVector &psi, StateVector &out) {
        out = hzz.cast<Complex>().cwiseProduct(psi);
        out.noalias() += field_value(pulse, Axis::X, t) * (hx * psi);
        out.noalias() += field_value(pulse, Axis::Y, t) * (hy * psi);
      };
      StateVector raw =
          integrate_tdse(apply_h, model.ground_full(), 0.0, pulse.horizon, tight);
      return raw / raw.norm();
    }
  };
}  // namespace

StateVector dense_oracle(const Protocol &protocol, const RingModel &model) {
  if (model.num_qubits() > kMaxDenseQubits)
    throw CapacityError("dense oracle supports at most "
                        + std::to_string(kMaxDenseQubits) + " qubits");
  return std::visit(DenseVisitor(model), protocol);
}

}  // namespace ringctl
