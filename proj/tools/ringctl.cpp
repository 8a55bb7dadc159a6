//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end.
//

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ringctl/io.hpp"
#include "ringctl/robustness.hpp"
#include "ringctl/verify.hpp"

using namespace ringctl;
namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::uint64_t seed = 1;
  int threads = 1;
  bool json = false;
};

struct Units {
  std::string name = "dimensionless";
  Real J = 1;

  bool physical() const { return name == "rad-per-us"; }
  void validate() const {
    if (name != "dimensionless" && name != "rad-per-us")
      throw DomainError("--units must be 'dimensionless' or 'rad-per-us'");
    if (!(J > 0))
      throw DomainError("--J must be positive");
  }
};

int default_threads() {
  if (const char *env = std::getenv("RINGCTL_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1)
      return t;
  }
  return 1;
}

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
  cmd->add_option("--threads", c.threads, "worker threads (env RINGCTL_THREADS)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--json", c.json, "machine-readable output on stdout");
}

void add_units(CLI::App *cmd, Units &u) {
  cmd->add_option("--units", u.name, "dimensionless | rad-per-us")->capture_default_str();
  cmd->add_option("--J", u.J, "Ising coupling in the chosen units")->capture_default_str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(Real v, int precision = 6) {
  if (std::isnan(v))
    return "nan";
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

Json nmr_result_json(const NmrResult &r) {
  return { { "protocol", to_json(r.seq) },
           { "loss", r.loss },
           { "status", to_string(r.status) },
           { "iterations", r.iterations } };
}

Json cw_result_json(const CwResult &r) {
  return { { "protocol", to_json(r.pulse) },
           { "loss", r.loss },
           { "infidelity", r.infidelity },
           { "status", to_string(r.status) },
           { "iterations", r.iterations } };
}

Json target_config(const TargetSpec &t) { return to_json(t); }

Json physical_report(const NmrSequence &seq, int n, const Units &u) {
  const Real T = total_interaction_time(seq);
  Json j = { { "units", u.name },
             { "J", u.J },
             { "total_interaction_time", T },
             { "bound", n >= 3 ? seq.num_layers() * kPi / 2 : seq.num_layers() * kPi } };
  if (u.physical()) {
    j["T_exp_us"] = T / u.J;
    j["bound_exp_us"] = j["bound"].get<Real>() / u.J;
  }
  return j;
}

void emit(const Json &j, bool as_json, const std::string &text) {
  if (as_json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

TargetSpec make_target(const std::string &kind, int k, int n) {
  const auto t = TargetSpec::parse(kind, k);
  t.build(n);  // validates k against n
  return t;
}

void check_n(int n) {
  if (n < 1 || n > kMaxFullSpaceQubits)
    throw CapacityError("N must be between 1 and " + std::to_string(kMaxFullSpaceQubits));
}

// ---------------------------------------------------------------- basis

struct BasisArgs {
  Common common;
  int n = 3;
};

int run_basis(const BasisArgs &a) {
  check_n(a.n);
  const RingModel model(a.n);
  const Json rows = orbit_table(model.basis(), model);
  std::ostringstream os;
  os << "N=" << a.n << "  orbits=" << model.reduced_dim() << "  full dimension="
     << model.full_dim() << '\n';
  os << std::left << std::setw(7) << "index" << std::setw(a.n + 4) << "rep" << std::setw(6)
     << "size" << std::setw(8) << "weight"
     << "H_ZZ/J\n";
  for (const auto &r: rows)
    os << std::left << std::setw(7) << r["index"].get<int>() << std::setw(a.n + 4)
       << r["representative"].get<std::string>() << std::setw(6) << r["size"].get<int>()
       << std::setw(8) << r["hamming_weight"].get<int>() << r["hzz"].get<Real>() << '\n';
  emit({ { "n", a.n }, { "dim", model.reduced_dim() }, { "full_dim", model.full_dim() },
         { "orbits", rows } },
       a.common.json, os.str());
  return 0;
}

// ---------------------------------------------------------------- state

struct StateArgs {
  Common common;
  int n = 3;
  std::string target = "w";
  int k = 1;
  bool full = false;
};

Json amplitudes_json(const StateVector &v, const SymmetryBasis &basis, bool full) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) < 1e-15)
      continue;
    const std::string label = full ? BitString(static_cast<std::uint32_t>(i),
                                               basis.num_qubits())
                                         .to_string()
                                   : basis.orbits()[i].representative.to_string();
    rows.push_back({ { "index", i }, { "label", label }, { "re", v[i].real() },
                     { "im", v[i].imag() } });
  }
  return rows;
}

std::string amplitudes_text(const Json &rows) {
  std::ostringstream os;
  for (const auto &r: rows)
    os << "  " << std::left << std::setw(16) << r["label"].get<std::string>()
       << std::right << std::setw(18) << fmt(r["re"].get<Real>(), 10) << ' '
       << std::setw(18) << fmt(r["im"].get<Real>(), 10) << '\n';
  return os.str();
}

int run_state(const StateArgs &a) {
  check_n(a.n);
  const auto spec = make_target(a.target, a.k, a.n);
  const auto t = spec.build(a.n);
  const SymmetryBasis basis(a.n);
  const Json rows = amplitudes_json(a.full ? t.full : t.reduced, basis, a.full);
  emit({ { "n", a.n }, { "target", to_json(spec) },
         { "representation", a.full ? "full" : "reduced" }, { "amplitudes", rows } },
       a.common.json,
       "target " + std::string(spec.kind == TargetKind::W ? "W" : "Dicke") + " N="
           + std::to_string(a.n) + " k=" + std::to_string(spec.k) + " ("
           + (a.full ? "full" : "reduced") + " basis)\n" + amplitudes_text(rows));
  return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  Common common;
  std::string protocol;
  int n = 0;
  std::string target;
  int k = -1;
  bool dense = false;
  bool full = false;
};

int run_simulate(const SimulateArgs &a) {
  auto file = load_protocol(a.protocol);
  if (a.n > 0)
    file.n = a.n;
  check_n(file.n);
  if (!a.target.empty())
    file.target = TargetSpec::parse(a.target, a.k >= 0 ? a.k : file.target.k);
  else if (a.k >= 0)
    file.target.k = a.k;

  const RingModel model(file.n, file.coupling);
  const auto target = file.target.build(file.n);
  StateVector psi;
  bool full = a.full || a.dense;
  if (a.dense) {
    psi = dense_oracle(file.protocol, model);
  } else {
    psi = std::visit(
        [&](const auto &p) -> StateVector {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, NmrSequence>)
            return simulate_sequence(p, model);
          else
            return evolve_cw(model.ground_reduced(), p, model);
        },
        file.protocol);
    if (full)
      psi = model.basis().lift(psi);
  }
  const Real f = fidelity(full ? target.full : target.reduced, psi);
  const Real infid = std::clamp(1 - f, Real{ 0 }, Real{ 1 });
  const Json rows = amplitudes_json(psi, model.basis(), full);
  std::ostringstream os;
  os << "N=" << file.n << "  fidelity=" << fmt(f, 17) << "  infidelity=" << fmt(infid, 6)
     << (a.dense ? "  (dense)" : "") << '\n'
     << amplitudes_text(rows);
  emit({ { "n", file.n },
         { "target", to_json(file.target) },
         { "fidelity", f },
         { "infidelity", infid },
         { "dense", a.dense },
         { "amplitudes", rows } },
       a.common.json, os.str());
  return 0;
}

// ---------------------------------------------------------------- optimize-nmr

struct NmrArgs {
  Common common;
  Units units;
  int n = 3;
  std::string target = "w";
  int k = 1;
  int m = -1;
  bool bisect = false;
  int m_lo = 0;
  int m_hi = 8;
  NmrOptConfig cfg;
  Real threshold = 1 - 1e-10;
  std::string out;
};

int run_optimize_nmr(NmrArgs a) {
  check_n(a.n);
  a.units.validate();
  if (!a.bisect && a.m < 0)
    throw DomainError("give --m or --bisect");
  const auto spec = make_target(a.target, a.k, a.n);
  const auto target = spec.build(a.n);
  const RingModel model(a.n);
  a.cfg.rng_seed = a.common.seed;
  a.cfg.threads = a.common.threads;
  a.cfg.fidelity_threshold = a.threshold;

  Json config = { { "n", a.n },
                  { "J", 1.0 },
                  { "target", target_config(spec) },
                  { "scheme", "nmr" },
                  { "bisect", a.bisect },
                  { "m", a.m },
                  { "m_lo", a.m_lo },
                  { "m_hi", a.m_hi },
                  { "n_random_guesses", a.cfg.n_random_guesses },
                  { "n_local_searches", a.cfg.n_local_searches },
                  { "fidelity_threshold", a.cfg.fidelity_threshold },
                  { "max_iters", a.cfg.max_iters },
                  { "gradient_step", a.cfg.gradient_step },
                  { "tie_floor", a.cfg.tie_floor },
                  { "krylov_tolerance", a.cfg.krylov.tolerance },
                  { "krylov_subspace", a.cfg.krylov.max_subspace },
                  { "rng_seed", a.cfg.rng_seed },
                  { "threads", a.cfg.threads } };
  Json record = make_run_record("nmr", config);

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<NmrResult> results;
  if (a.bisect) {
    const auto report = bisect_min_m(target, a.m_lo, a.m_hi, model, a.cfg);
    Json by_m = Json::array();
    for (const auto &[m, loss]: report.best_loss_by_m)
      by_m.push_back({ { "m", m }, { "best_loss", loss } });
    record["results"]["bisection"] = { { "found", report.min_m.has_value() },
                                       { "min_m", report.min_m ? Json(*report.min_m)
                                                               : Json(nullptr) },
                                       { "best_loss_by_m", by_m },
                                       { "upper_bound", true } };
    results = report.results_at_min;
  } else {
    results = multistart_search(target, a.m, model, a.cfg);
  }
  const double wall = seconds_since(t0);

  Json locals = Json::array();
  for (const auto &r: results)
    locals.push_back(nmr_result_json(r));
  record["results"]["local_results"] = locals;
  record["results"]["wall_time_s"] = wall;

  std::ostringstream os;
  Json summary = { { "wall_time_s", wall } };
  if (a.bisect) {
    const auto &b = record["results"]["bisection"];
    os << "bisection over M in [" << a.m_lo << ", " << a.m_hi << "]:\n";
    for (const auto &row: b["best_loss_by_m"])
      os << "  M=" << row["m"].get<int>() << "  best loss " << fmt(row["best_loss"]) << '\n';
    summary["min_m"] = b["min_m"];
    summary["found"] = b["found"];
    if (!b["found"].get<bool>())
      os << "threshold not met at M_hi=" << a.m_hi << '\n';
  }
  if (!results.empty()) {
    const auto &best = results.front();
    const ProtocolFile pf{ a.n, 1.0, spec, best.seq, best.loss };
    record["results"]["best"] = to_json(pf);
    record["results"]["best_loss"] = best.loss;
    const Json phys = physical_report(best.seq, a.n, a.units);
    record["results"]["physical"] = phys;
    int exact = 0;
    for (const auto &r: results)
      exact += r.loss <= 1 - a.cfg.fidelity_threshold;
    record["results"]["n_meeting_threshold"] = exact;

    os << "M=" << best.seq.num_layers() << "  best loss " << fmt(best.loss) << "  ("
       << exact << "/" << results.size() << " local searches meet the threshold)\n"
       << "total interaction time T=" << fmt(phys["total_interaction_time"].get<Real>())
       << "/J  (bound " << fmt(phys["bound"].get<Real>()) << "/J)\n";
    if (a.units.physical())
      os << "T_exp=" << fmt(phys["T_exp_us"].get<Real>()) << " us at J=" << a.units.J
         << " rad/us\n";
    summary["best_loss"] = best.loss;
    summary["m"] = best.seq.num_layers();
    summary["physical"] = phys;
  }
  os << "wall time " << fmt(wall, 3) << " s\n";

  if (!a.out.empty()) {
    write_json(a.out, record);
    os << "wrote " << a.out << '\n';
  }
  emit(summary, a.common.json, os.str());
  return 0;
}

// ---------------------------------------------------------------- optimize-cw

struct CwArgs {
  Common common;
  int n = 2;
  std::string target = "w";
  int k = 1;
  int m = 9;
  Real horizon = 4;
  CwOptConfig cfg;
  std::string out;
};

Json cw_config_json(const CwOptConfig &cfg) {
  return { { "field_lo", cfg.field_lo },
           { "field_hi", cfg.field_hi },
           { "grid_points", cfg.grid_points },
           { "n_seed_samples", cfg.n_seed_samples },
           { "n_local_searches", cfg.n_local_searches },
           { "seed_noise_sigma", cfg.seed_noise_sigma },
           { "max_iters", cfg.max_iters },
           { "gradient_step", cfg.gradient_step },
           { "fidelity_threshold", cfg.fidelity_threshold },
           { "removal_attempts", cfg.removal_attempts },
           { "abs_tol", cfg.integrator.abs_tol },
           { "rel_tol", cfg.integrator.rel_tol },
           { "rng_seed", cfg.rng_seed },
           { "threads", cfg.threads } };
}

int run_optimize_cw(CwArgs a) {
  check_n(a.n);
  const auto spec = make_target(a.target, a.k, a.n);
  const auto target = spec.build(a.n);
  const RingModel model(a.n);
  a.cfg.rng_seed = a.common.seed;
  a.cfg.threads = a.common.threads;

  Json config = { { "n", a.n },        { "J", 1.0 },
                  { "target", target_config(spec) },
                  { "scheme", "cw" },  { "m", a.m },
                  { "horizon", a.horizon } };
  config.update(cw_config_json(a.cfg));
  Json record = make_run_record("cw", config);

  const auto t0 = std::chrono::steady_clock::now();
  const auto results = informed_multistart(target, a.m, a.horizon, model, a.cfg);
  const double wall = seconds_since(t0);

  Json locals = Json::array();
  for (const auto &r: results)
    locals.push_back(cw_result_json(r));
  const auto &best = results.front();
  record["results"] = { { "local_results", locals },
                        { "best", to_json(ProtocolFile{ a.n, 1.0, spec, best.pulse,
                                                        best.infidelity }) },
                        { "best_loss", best.loss },
                        { "best_infidelity", best.infidelity },
                        { "wall_time_s", wall } };

  std::ostringstream os;
  os << "M=" << a.m << " T=" << a.horizon << "  best loss " << fmt(best.loss)
     << "  infidelity " << fmt(best.infidelity) << "  (" << results.size()
     << " local searches)\nwall time " << fmt(wall, 3) << " s\n";
  if (!a.out.empty()) {
    write_json(a.out, record);
    os << "wrote " << a.out << '\n';
  }
  emit({ { "best_loss", best.loss }, { "best_infidelity", best.infidelity },
         { "wall_time_s", wall } },
       a.common.json, os.str());
  return 0;
}

// ---------------------------------------------------------------- simplify

struct SimplifyArgs {
  Common common;
  std::string in;
  CwOptConfig cfg;
  std::string out;
};

int run_simplify(SimplifyArgs a) {
  const auto file = load_protocol(a.in);
  const auto *pulse = std::get_if<SinePulse>(&file.protocol);
  if (!pulse)
    throw DomainError("simplify needs a continuous-wave protocol");
  const RingModel model(file.n, file.coupling);
  const auto target = file.target.build(file.n);
  a.cfg.rng_seed = a.common.seed;
  a.cfg.threads = a.common.threads;

  Json config = { { "n", file.n },
                  { "J", file.coupling },
                  { "target", to_json(file.target) },
                  { "scheme", "cw-simplify" },
                  { "input", a.in },
                  { "input_protocol", to_json(*pulse) } };
  config.update(cw_config_json(a.cfg));
  Json record = make_run_record("cw-simplify", config);

  const auto t0 = std::chrono::steady_clock::now();
  const auto res = simplify_pulse(*pulse, target, model, a.cfg);
  const double wall = seconds_since(t0);
  const Real infid = cw_infidelity(res.pulse, target, model, a.cfg.integrator);

  Json history = Json::array();
  std::ostringstream os;
  for (const auto &h: res.history) {
    history.push_back({ { "component", coefficient_name(h.axis, h.harmonic) },
                        { "magnitude", h.magnitude },
                        { "loss", h.loss },
                        { "accepted", h.accepted } });
    os << (h.accepted ? "  removed " : "  kept    ") << std::left << std::setw(5)
       << coefficient_name(h.axis, h.harmonic) << " |b|=" << std::setw(12)
       << fmt(h.magnitude) << " loss after re-optimization " << fmt(h.loss) << '\n';
  }
  Json remaining = Json::array();
  for (const auto &p: protocol_parameters(res.pulse))
    remaining.push_back(p.name());
  record["results"] = { { "history", history },
                        { "remaining", res.remaining },
                        { "remaining_components", remaining },
                        { "best", to_json(ProtocolFile{ file.n, file.coupling, file.target,
                                                        res.pulse, infid }) },
                        { "best_loss", res.loss },
                        { "best_infidelity", infid },
                        { "wall_time_s", wall } };
  os << "remaining components M~=" << res.remaining << " (" << remaining.dump()
     << ")  loss " << fmt(res.loss) << '\n';
  if (!a.out.empty()) {
    write_json(a.out, record);
    os << "wrote " << a.out << '\n';
  }
  emit(record["results"], a.common.json, os.str());
  return 0;
}

// ---------------------------------------------------------------- robustness

struct RobustnessArgs {
  Common common;
  std::string in;
  std::string mode = "1d";
  std::vector<std::string> params;
  std::string grid;
  std::string csv;
  bool dense = false;
  bool select = false;
  Real max_loss = -1;
  std::string out;
};

std::string csv_value(Real v) {
  if (std::isnan(v))
    return "";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

int run_robustness(const RobustnessArgs &a) {
  auto file = load_protocol(a.in);
  const RingModel model(file.n, file.coupling);
  const auto target = file.target.build(file.n);
  EvalOptions opts;
  opts.dense = a.dense;
  EpsGrid grid = a.grid.empty() ? (a.mode == "2d" ? EpsGrid{ 0.05, 41 } : EpsGrid{})
                                : EpsGrid::parse(a.grid);
  if (a.mode != "1d" && a.mode != "2d")
    throw DomainError("--mode must be 1d or 2d");

  Json out = { { "n", file.n }, { "target", to_json(file.target) },
               { "grid", { { "half_width", grid.half_width }, { "points", grid.points } } },
               { "dense", a.dense } };
  std::ostringstream os;

  if (a.select) {
    const Json record = read_json(a.in);
    if (!record.contains("results") || !record["results"].contains("local_results"))
      throw DomainError("--select needs a run record with local results");
    const bool nmr = std::holds_alternative<NmrSequence>(file.protocol);
    const Real max_loss = a.max_loss >= 0 ? a.max_loss : (nmr ? 1e-10 : 1e-2);
    std::vector<Protocol> candidates;
    for (const auto &r: record["results"]["local_results"]) {
      const Real loss = r.contains("infidelity") ? r["infidelity"].get<Real>()
                                                 : r["loss"].get<Real>();
      if (loss <= max_loss)
        candidates.push_back(protocol_from_json(r["protocol"]));
    }
    if (candidates.empty())
      throw DomainError("no local result meets --max-loss");
    // Selection uses the 1D score regardless of --mode.
    const EpsGrid sel_grid = a.grid.empty() ? EpsGrid{} : grid;
    const auto sel = select_most_robust(candidates, target, model, sel_grid, opts);
    file.protocol = candidates[sel.index];
    file.loss = sel.baseline;
    out["selection"] = { { "candidates", candidates.size() },
                         { "index", sel.index },
                         { "score", sel.score },
                         { "baseline", sel.baseline } };
    os << "selected candidate " << sel.index << " of " << candidates.size()
       << "  score " << fmt(sel.score) << "  baseline " << fmt(sel.baseline) << '\n';
    if (!a.out.empty()) {
      write_json(a.out, to_json(file));
      os << "wrote " << a.out << '\n';
    }
  }

  std::vector<ParamId> params;
  for (const auto &p: a.params)
    params.push_back(ParamId::parse(p));

  if (a.mode == "1d") {
    if (params.empty())
      params = protocol_parameters(file.protocol);
    std::ofstream csv;
    if (!a.csv.empty()) {
      csv.open(a.csv);
      if (!csv)
        throw DomainError("cannot write " + a.csv);
      csv << "param,eps,infidelity\n";
    }
    Json sweeps = Json::array();
    Real total = 0;
    std::size_t failures = 0;
    for (const auto &p: params) {
      const auto s = sweep_1d(file.protocol, target, model, p, grid, opts);
      total += s.score;
      failures += s.failures.size();
      const Real worst = s.infidelity.col(0).maxCoeff();
      sweeps.push_back({ { "param", p.name() },
                         { "score", real_or_null(s.score) },
                         { "max_infidelity", real_or_null(worst) },
                         { "baseline", s.baseline },
                         { "failures", s.failures } });
      os << "  " << std::left << std::setw(8) << p.name() << " score " << std::setw(12)
         << fmt(s.score) << " max infidelity " << fmt(worst) << '\n';
      if (csv)
        for (Eigen::Index i = 0; i < s.eps_a.size(); ++i)
          csv << p.name() << ',' << csv_value(s.eps_a[i]) << ','
              << csv_value(s.infidelity(i, 0)) << '\n';
    }
    out["sweeps"] = sweeps;
    out["score"] = real_or_null(total);
    out["failures"] = failures;
    os << "robustness score " << fmt(total) << '\n';
  } else {
    if (params.size() != 2)
      throw DomainError("2d mode needs --params a,b");
    const auto s = sweep_2d(file.protocol, target, model, params[0], params[1], grid, opts);
    if (!a.csv.empty()) {
      std::ofstream csv(a.csv);
      if (!csv)
        throw DomainError("cannot write " + a.csv);
      csv << "eps_a,eps_b,infidelity\n";
      for (Eigen::Index i = 0; i < s.eps_a.size(); ++i)
        for (Eigen::Index j = 0; j < s.eps_b.size(); ++j)
          csv << csv_value(s.eps_a[i]) << ',' << csv_value(s.eps_b[j]) << ','
              << csv_value(s.infidelity(i, j)) << '\n';
    }
    const Real worst = s.infidelity.maxCoeff();
    out["params"] = { params[0].name(), params[1].name() };
    out["baseline"] = s.baseline;
    out["max_infidelity"] = real_or_null(worst);
    out["failures"] = s.failures;
    os << params[0].name() << " x " << params[1].name() << "  baseline " << fmt(s.baseline)
       << "  max infidelity " << fmt(worst) << '\n';
  }
  if (!a.csv.empty())
    os << "wrote " << a.csv << '\n';
  emit(out, a.common.json, os.str());
  return 0;
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
  Common common;
  std::vector<std::string> runs;
  std::string pearson;
  Real exact_loss = 1e-14;
  int m = -1;
};

int run_stats(const StatsArgs &a) {
  std::vector<fs::path> files;
  for (const auto &r: a.runs) {
    if (fs::is_directory(r)) {
      for (const auto &e: fs::directory_iterator(r))
        if (e.path().extension() == ".json")
          files.push_back(e.path());
    } else {
      files.emplace_back(r);
    }
  }
  std::sort(files.begin(), files.end());

  std::map<int, std::vector<NmrSequence>> by_m;
  for (const auto &f: files) {
    const Json rec = read_json(f);
    if (!rec.contains("results") || !rec["results"].contains("local_results"))
      continue;
    for (const auto &r: rec["results"]["local_results"]) {
      if (r["protocol"].value("kind", "") != "nmr" || r["loss"].get<Real>() > a.exact_loss)
        continue;
      auto seq = std::get<NmrSequence>(protocol_from_json(r["protocol"]));
      by_m[seq.num_layers()].push_back(std::move(seq));
    }
  }
  if (by_m.empty())
    throw DomainError("no exact NMR realizations found (loss <= "
                      + fmt(a.exact_loss) + ")");

  int m = a.m;
  if (m < 0) {
    std::size_t most = 0;
    for (const auto &[mm, v]: by_m)
      if (v.size() > most) {
        most = v.size();
        m = mm;
      }
  }
  if (!by_m.count(m))
    throw DomainError("no exact realizations with M=" + std::to_string(m));
  const auto &seqs = by_m[m];

  RealVector times(seqs.size());
  for (std::size_t i = 0; i < seqs.size(); ++i)
    times[i] = total_interaction_time(seqs[i]);
  const Real mean = times.mean();
  const Real stdev = seqs.size() > 1 ? std::sqrt((times.array() - mean).square().sum()
                                                 / (seqs.size() - 1))
                                     : 0.0;

  Json out = { { "files", files.size() },
               { "m", m },
               { "realizations", seqs.size() },
               { "total_time_mean", mean },
               { "total_time_std", stdev } };
  std::ostringstream os;
  os << seqs.size() << " exact realizations at M=" << m << " from " << files.size()
     << " run files\ntotal interaction time " << fmt(mean) << " +- " << fmt(stdev)
     << " /J\n";

  if (!a.pearson.empty()) {
    const NmrSequence ref(m);
    RealMatrix samples(seqs.size(), ref.num_params());
    for (std::size_t i = 0; i < seqs.size(); ++i)
      samples.row(i) = seqs[i].pack().transpose();
    const RealMatrix rho = pearson_matrix(samples);
    std::vector<std::string> names;
    for (const auto &p: protocol_parameters(ref))
      names.push_back(p.name());
    std::ofstream csv(a.pearson);
    if (!csv)
      throw DomainError("cannot write " + a.pearson);
    csv << "param";
    for (const auto &n: names)
      csv << ',' << n;
    csv << '\n';
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      csv << names[i];
      for (Eigen::Index j = 0; j < rho.cols(); ++j)
        csv << ',' << csv_value(rho(i, j));
      csv << '\n';
    }
    out["pearson_csv"] = a.pearson;
    os << "wrote " << a.pearson << '\n';
  }
  emit(out, a.common.json, os.str());
  return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  Common common;
  int n = 4;
};

int run_verify(const VerifyArgs &a) {
  check_n(a.n);
  const auto checks = verify_invariants(a.n, a.common.seed);
  Json rows = Json::array();
  std::ostringstream os;
  bool ok = true;
  for (const auto &c: checks) {
    ok = ok && c.passed;
    rows.push_back({ { "name", c.name }, { "passed", c.passed }, { "detail", c.detail } });
    os << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  " << c.detail << '\n';
  }
  emit({ { "n", a.n }, { "passed", ok }, { "checks", rows } }, a.common.json, os.str());
  return ok ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{ "Optimal control of ring-shaped qubit arrays" };
  app.require_subcommand(1);
  app.set_version_flag("--version", kSoftwareVersion);

  const int threads = default_threads();

  BasisArgs basis;
  basis.common.threads = threads;
  auto *c_basis = app.add_subcommand("basis", "symmetry-adapted basis table");
  c_basis->add_option("--n", basis.n, "number of qubits")->required();
  add_common(c_basis, basis.common);

  StateArgs state;
  state.common.threads = threads;
  auto *c_state = app.add_subcommand("state", "target state amplitudes");
  c_state->add_option("--n", state.n, "number of qubits")->required();
  c_state->add_option("--target", state.target, "w | dicke")->capture_default_str();
  c_state->add_option("--k", state.k, "Dicke excitation number")->capture_default_str();
  c_state->add_flag("--full", state.full, "full 2^N amplitudes");
  add_common(c_state, state.common);

  SimulateArgs sim;
  sim.common.threads = threads;
  auto *c_sim = app.add_subcommand("simulate", "re-simulate a protocol file");
  c_sim->add_option("--protocol", sim.protocol, "protocol or run file")->required();
  c_sim->add_option("--n", sim.n, "override the number of qubits");
  c_sim->add_option("--target", sim.target, "override the target (w | dicke)");
  c_sim->add_option("--k", sim.k, "override the Dicke excitation number");
  c_sim->add_flag("--dense", sim.dense, "use dense full-space matrices");
  c_sim->add_flag("--full", sim.full, "print full-space amplitudes");
  add_common(c_sim, sim.common);

  NmrArgs nmr;
  nmr.common.threads = threads;
  auto *c_nmr = app.add_subcommand("optimize-nmr", "optimize pulse-interaction sequences");
  c_nmr->add_option("--n", nmr.n, "number of qubits")->required();
  c_nmr->add_option("--target", nmr.target, "w | dicke")->capture_default_str();
  c_nmr->add_option("--k", nmr.k, "Dicke excitation number")->capture_default_str();
  c_nmr->add_option("--m", nmr.m, "number of interaction pulses");
  c_nmr->add_flag("--bisect", nmr.bisect, "search for the minimal M");
  c_nmr->add_option("--m-lo", nmr.m_lo, "bisection lower bound")->capture_default_str();
  c_nmr->add_option("--m-hi", nmr.m_hi, "bisection upper bound")->capture_default_str();
  c_nmr->add_option("--guesses", nmr.cfg.n_random_guesses, "random initial guesses")
      ->capture_default_str();
  c_nmr->add_option("--local", nmr.cfg.n_local_searches, "local searches")
      ->capture_default_str();
  c_nmr->add_option("--threshold", nmr.threshold, "fidelity threshold")
      ->capture_default_str();
  c_nmr->add_option("--max-iters", nmr.cfg.max_iters, "iterations per local search")
      ->capture_default_str();
  c_nmr->add_option("--out", nmr.out, "run record (JSON)");
  add_common(c_nmr, nmr.common);
  add_units(c_nmr, nmr.units);

  CwArgs cw;
  cw.common.threads = threads;
  auto *c_cw = app.add_subcommand("optimize-cw", "optimize sine-series pulses");
  c_cw->add_option("--n", cw.n, "number of qubits")->required();
  c_cw->add_option("--target", cw.target, "w | dicke")->capture_default_str();
  c_cw->add_option("--k", cw.k, "Dicke excitation number")->capture_default_str();
  c_cw->add_option("--m", cw.m, "harmonic cutoff")->capture_default_str();
  c_cw->add_option("--horizon", cw.horizon, "pulse duration (units 1/J)")
      ->capture_default_str();
  c_cw->add_option("--seed-samples", cw.cfg.n_seed_samples, "perturbed seed samples")
      ->capture_default_str();
  c_cw->add_option("--sigma", cw.cfg.seed_noise_sigma, "seed perturbation width")
      ->capture_default_str();
  c_cw->add_option("--local", cw.cfg.n_local_searches, "local searches")
      ->capture_default_str();
  c_cw->add_option("--max-iters", cw.cfg.max_iters, "iterations per local search")
      ->capture_default_str();
  c_cw->add_option("--field-hi", cw.cfg.field_hi, "upper field bound")->capture_default_str();
  c_cw->add_option("--out", cw.out, "run record (JSON)");
  add_common(c_cw, cw.common);

  SimplifyArgs simp;
  simp.common.threads = threads;
  auto *c_simp = app.add_subcommand("simplify", "iterative component removal");
  c_simp->add_option("--in", simp.in, "pulse or run file")->required();
  c_simp->add_option("--threshold", simp.cfg.fidelity_threshold, "fidelity threshold")
      ->capture_default_str();
  c_simp->add_option("--attempts", simp.cfg.removal_attempts, "removal attempts per round")
      ->capture_default_str();
  c_simp->add_option("--max-iters", simp.cfg.max_iters, "iterations per re-optimization")
      ->capture_default_str();
  c_simp->add_option("--out", simp.out, "run record (JSON)");
  add_common(c_simp, simp.common);

  RobustnessArgs rob;
  rob.common.threads = threads;
  auto *c_rob = app.add_subcommand("robustness", "parameter error sweeps");
  c_rob->add_option("--in", rob.in, "protocol or run file")->required();
  c_rob->add_option("--mode", rob.mode, "1d | 2d")->capture_default_str();
  c_rob->add_option("--params", rob.params, "parameter names")->delimiter(',');
  c_rob->add_option("--grid", rob.grid, "error grid, e.g. +-0.05:101");
  c_rob->add_option("--csv", rob.csv, "CSV output");
  c_rob->add_flag("--dense", rob.dense, "use dense full-space matrices");
  c_rob->add_flag("--select", rob.select,
                  "pick the most robust local result of a run record first");
  c_rob->add_option("--max-loss", rob.max_loss, "candidate filter for --select");
  c_rob->add_option("--out", rob.out, "selected protocol (JSON)");
  add_common(c_rob, rob.common);

  StatsArgs stats;
  stats.common.threads = threads;
  auto *c_stats = app.add_subcommand("stats", "statistics over exact NMR realizations");
  c_stats->add_option("--runs", stats.runs, "run files or directories")->required();
  c_stats->add_option("--pearson", stats.pearson, "Pearson matrix CSV");
  c_stats->add_option("--exact-loss", stats.exact_loss, "loss counted as exact")
      ->capture_default_str();
  c_stats->add_option("--m", stats.m, "restrict to this M");
  add_common(c_stats, stats.common);

  VerifyArgs verify;
  verify.common.threads = threads;
  auto *c_verify = app.add_subcommand("verify", "invariant self-test");
  c_verify->add_option("--n", verify.n, "number of qubits")->required();
  add_common(c_verify, verify.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*c_basis)
      return run_basis(basis);
    if (*c_state)
      return run_state(state);
    if (*c_sim)
      return run_simulate(sim);
    if (*c_nmr)
      return run_optimize_nmr(nmr);
    if (*c_cw)
      return run_optimize_cw(cw);
    if (*c_simp)
      return run_simplify(simp);
    if (*c_rob)
      return run_robustness(rob);
    if (*c_stats)
      return run_stats(stats);
    if (*c_verify)
      return run_verify(verify);
  } catch (const DomainError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CapacityError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Json::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}
