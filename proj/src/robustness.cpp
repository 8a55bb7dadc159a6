//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ringctl/robustness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace ringctl {

namespace {
  template <class... Ts>
  struct overloaded : Ts... {
    using Ts::operator()...;
  };

  int parse_int(std::string_view s, const std::string &context) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw DomainError("malformed parameter name '" + context + "'");
    return value;
  }
}  // namespace

ParamId ParamId::parse(const std::string &name) {
  auto tail = [&](std::size_t prefix) {
    return parse_int(std::string_view(name).substr(prefix), name);
  };
  if (name.starts_with("alpha"))
    return { Kind::Alpha, tail(5) };
  if (name.starts_with("phi"))
    return { Kind::Phi, tail(3) };
  if (name.starts_with("xi"))
    return { Kind::Xi, tail(2) };
  if (name.starts_with("bx"))
    return { Kind::Coeff, tail(2), Axis::X };
  if (name.starts_with("by"))
    return { Kind::Coeff, tail(2), Axis::Y };
  throw DomainError("unknown parameter '" + name + "'");
}

std::string ParamId::name() const {
  switch (kind) {
  case Kind::Alpha:
    return "alpha" + std::to_string(index);
  case Kind::Phi:
    return "phi" + std::to_string(index);
  case Kind::Xi:
    return "xi" + std::to_string(index);
  case Kind::Coeff:
    return coefficient_name(axis, index);
  }
  return {};
}

std::vector<ParamId> protocol_parameters(const Protocol &protocol) {
  std::vector<ParamId> out;
  std::visit(overloaded{
                 [&](const NmrSequence &seq) {
                   const int m = seq.num_layers();
                   for (int j = 1; j <= m + 1; ++j)
                     out.push_back({ ParamId::Kind::Alpha, j });
                   for (int j = 1; j <= m + 1; ++j)
                     out.push_back({ ParamId::Kind::Phi, j });
                   for (int j = 1; j <= m; ++j)
                     out.push_back({ ParamId::Kind::Xi, j });
                 },
                 [&](const SinePulse &pulse) {
                   for (Axis axis: { Axis::X, Axis::Y })
                     for (int h = 0; h <= pulse.cutoff(); ++h)
                       if (pulse.active(axis)[h])
                         out.push_back({ ParamId::Kind::Coeff, h, axis });
                 },
             },
             protocol);
  return out;
}

Protocol perturb(const Protocol &protocol, const ParamId &param, Real eps) {
  return std::visit(
      overloaded{
          [&](NmrSequence seq) -> Protocol {
            const int m = seq.num_layers();
            const int j = param.index - 1;
            switch (param.kind) {
            case ParamId::Kind::Alpha:
              if (j < 0 || j > m)
                break;
              seq.alphas[j] *= 1 + eps;
              return seq;
            case ParamId::Kind::Phi:
              if (j < 0 || j > m)
                break;
              seq.phis[j] += eps;
              return seq;
            case ParamId::Kind::Xi:
              if (j < 0 || j >= m)
                break;
              seq.xis[j] *= 1 + eps;
              if (seq.xis[j] < 0)
                throw DomainError("perturbed interaction duration is negative");
              return seq;
            case ParamId::Kind::Coeff:
              break;
            }
            throw DomainError("parameter " + param.name()
                              + " does not exist in this sequence");
          },
          [&](SinePulse pulse) -> Protocol {
            if (param.kind != ParamId::Kind::Coeff || param.index < 0
                || param.index > pulse.cutoff()
                || !pulse.active(param.axis)[param.index])
              throw DomainError("parameter " + param.name()
                                + " is not an active pulse coefficient");
            pulse.coeffs(param.axis)[param.index] *= 1 + eps;
            return pulse;
          },
      },
      protocol);
}

RealVector EpsGrid::values() const {
  if (points < 1 || points % 2 == 0)
    throw DomainError("error grid needs an odd number of points");
  if (!(half_width >= 0))
    throw DomainError("error grid half-width must be non-negative");
  if (points == 1)
    return RealVector::Zero(1);
  RealVector v = RealVector::LinSpaced(points, -half_width, half_width);
  v[points / 2] = 0;
  return v;
}

EpsGrid EpsGrid::parse(const std::string &spec) {
  std::string s = spec;
  for (const char *prefix: { "+-", "±", "+/-" })
    if (s.starts_with(prefix))
      s = s.substr(std::string_view(prefix).size());
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw DomainError("error grid must look like 0.05:101");
  EpsGrid g;
  try {
    g.half_width = std::stod(s.substr(0, colon));
  } catch (const std::exception &) {
    throw DomainError("malformed error grid '" + spec + "'");
  }
  g.points = parse_int(std::string_view(s).substr(colon + 1), spec);
  g.values();
  return g;
}

Real protocol_infidelity(const Protocol &protocol, const TargetState &target,
                         const RingModel &model, const EvalOptions &opts) {
  if (opts.dense) {
    const StateVector psi = dense_oracle(protocol, model);
    return std::clamp(1 - fidelity(target.full, psi), Real{ 0 }, Real{ 1 });
  }
  return std::visit(
      overloaded{
          [&](const NmrSequence &seq) {
            return nmr_loss(seq, target, model, opts.krylov);
          },
          [&](const SinePulse &pulse) {
            return cw_infidelity(pulse, target, model, opts.integrator);
          },
      },
      protocol);
}

namespace {
  Real evaluate_point(const Protocol &p, const TargetState &target,
                      const RingModel &model, const EvalOptions &opts,
                      std::vector<std::string> &failures,
                      const std::string &label) {
    try {
      return protocol_infidelity(p, target, model, opts);
    } catch (const std::exception &e) {
      failures.push_back(label + ": " + e.what());
      return std::numeric_limits<Real>::quiet_NaN();
    }
  }
}  // namespace

SweepResult sweep_1d(const Protocol &protocol, const TargetState &target,
                     const RingModel &model, const ParamId &param,
                     const EpsGrid &grid, const EvalOptions &opts) {
  SweepResult out;
  out.eps_a = grid.values();
  out.infidelity.resize(out.eps_a.size(), 1);
  out.baseline = protocol_infidelity(protocol, target, model, opts);
  perturb(protocol, param, 0);  // validates the parameter id

  for (Eigen::Index i = 0; i < out.eps_a.size(); ++i) {
    const Real eps = out.eps_a[i];
    if (eps == 0) {
      out.infidelity(i, 0) = out.baseline;
      continue;
    }
    const std::string label = param.name() + "@" + std::to_string(eps);
    try {
      out.infidelity(i, 0) =
          evaluate_point(perturb(protocol, param, eps), target, model, opts,
                         out.failures, label);
    } catch (const DomainError &e) {
      out.failures.push_back(label + ": " + e.what());
      out.infidelity(i, 0) = std::numeric_limits<Real>::quiet_NaN();
    }
  }
  out.score = trapezoid(out.eps_a, out.infidelity.col(0));
  return out;
}

SweepResult sweep_2d(const Protocol &protocol, const TargetState &target,
                     const RingModel &model, const ParamId &param_a,
                     const ParamId &param_b, const EpsGrid &grid,
                     const EvalOptions &opts) {
  if (param_a == param_b)
    throw DomainError("2D sweep needs two distinct parameters");
  perturb(protocol, param_a, 0);
  perturb(protocol, param_b, 0);

  SweepResult out;
  out.eps_a = grid.values();
  out.eps_b = out.eps_a;
  out.baseline = protocol_infidelity(protocol, target, model, opts);
  out.infidelity.resize(out.eps_a.size(), out.eps_b.size());

  for (Eigen::Index i = 0; i < out.eps_a.size(); ++i) {
    for (Eigen::Index j = 0; j < out.eps_b.size(); ++j) {
      const Real ea = out.eps_a[i], eb = out.eps_b[j];
      if (ea == 0 && eb == 0) {
        out.infidelity(i, j) = out.baseline;
        continue;
      }
      const std::string label = param_a.name() + "@" + std::to_string(ea) + ","
                                + param_b.name() + "@" + std::to_string(eb);
      try {
        const Protocol p = perturb(perturb(protocol, param_a, ea), param_b, eb);
        out.infidelity(i, j) =
            evaluate_point(p, target, model, opts, out.failures, label);
      } catch (const DomainError &e) {
        out.failures.push_back(label + ": " + e.what());
        out.infidelity(i, j) = std::numeric_limits<Real>::quiet_NaN();
      }
    }
  }
  return out;
}

Real robustness_score(const Protocol &protocol, const TargetState &target,
                      const RingModel &model, const EpsGrid &grid,
                      const EvalOptions &opts) {
  Real score = 0;
  for (const auto &param: protocol_parameters(protocol))
    score += sweep_1d(protocol, target, model, param, grid, opts).score;
  return score;
}

Selection select_most_robust(const std::vector<Protocol> &candidates,
                             const TargetState &target, const RingModel &model,
                             const EpsGrid &grid, const EvalOptions &opts) {
  if (candidates.empty())
    throw DomainError("no candidate protocols to select from");

  Selection best{ 0, std::numeric_limits<Real>::infinity(),
                  std::numeric_limits<Real>::infinity() };
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Real score = robustness_score(candidates[i], target, model, grid, opts);
    const Real baseline = protocol_infidelity(candidates[i], target, model, opts);
    // NaN scores (failed sweep points) never win.
    if (std::isnan(score))
      continue;
    if (score < best.score || (score == best.score && baseline < best.baseline))
      best = { i, score, baseline };
  }
  return best;
}

RealMatrix pearson_matrix(const Eigen::Ref<const RealMatrix> &samples) {
  if (samples.rows() < 3)
    throw DomainError("Pearson correlations need at least 3 realizations");

  const RealMatrix centered = samples.rowwise() - samples.colwise().mean();
  const RealVector ss = centered.colwise().squaredNorm().transpose();
  const Eigen::Index p = samples.cols();
  RealMatrix rho(p, p);

  // A column counts as constant when its spread is at rounding level.
  auto constant = [&](Eigen::Index c) {
    const Real scale = std::max<Real>(samples.col(c).cwiseAbs().maxCoeff(), 1);
    return std::sqrt(ss[c] / samples.rows()) <= 1e-14 * scale;
  };

  for (Eigen::Index a = 0; a < p; ++a) {
    for (Eigen::Index b = a; b < p; ++b) {
      Real r = std::numeric_limits<Real>::quiet_NaN();
      if (!constant(a) && !constant(b)) {
        r = a == b ? 1.0
                   : std::clamp(centered.col(a).dot(centered.col(b))
                                    / std::sqrt(ss[a] * ss[b]),
                                Real{ -1 }, Real{ 1 });
      }
      rho(a, b) = rho(b, a) = r;
    }
  }
  return rho;
}

}  // namespace ringctl
