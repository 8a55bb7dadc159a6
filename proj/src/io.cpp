//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ringctl/io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ringctl {

namespace {
  Json vec_to_json(const RealVector &v) {
    return Json(std::vector<Real>(v.data(), v.data() + v.size()));
  }

  RealVector vec_from_json(const Json &j) {
    const auto values = j.get<std::vector<Real>>();
    return Eigen::Map<const RealVector>(values.data(),
                                        static_cast<Eigen::Index>(values.size()));
  }

  std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
  }
}  // namespace

TargetState TargetSpec::build(int n) const {
  return kind == TargetKind::W ? w_state(n) : dicke_state(n, k);
}

TargetSpec TargetSpec::parse(const std::string &kind, int k) {
  if (kind == "w" || kind == "W")
    return { TargetKind::W, 1 };
  if (kind == "dicke" || kind == "Dicke")
    return { TargetKind::Dicke, k };
  throw DomainError("target must be 'w' or 'dicke'");
}

Json to_json(const NmrSequence &seq) {
  return { { "kind", "nmr" },
           { "m", seq.num_layers() },
           { "alphas", vec_to_json(seq.alphas) },
           { "phis", vec_to_json(seq.phis) },
           { "xis", vec_to_json(seq.xis) },
           { "total_interaction_time", total_interaction_time(seq) } };
}

Json to_json(const SinePulse &pulse) {
  return { { "kind", "cw" },
           { "m", pulse.cutoff() },
           { "horizon", pulse.horizon },
           { "coeffs_x", vec_to_json(pulse.coeffs_x) },
           { "coeffs_y", vec_to_json(pulse.coeffs_y) },
           { "active_x", pulse.active_x },
           { "active_y", pulse.active_y },
           { "active_count", pulse.active_count() } };
}

Json to_json(const Protocol &protocol) {
  return std::visit([](const auto &p) { return to_json(p); }, protocol);
}

Json to_json(const TargetSpec &target) {
  return { { "kind", target.kind == TargetKind::W ? "w" : "dicke" },
           { "k", target.k } };
}

Json to_json(const ProtocolFile &file) {
  return { { "schema", "ringctl/protocol" },
           { "schema_version", kSchemaVersion },
           { "n", file.n },
           { "J", file.coupling },
           { "target", to_json(file.target) },
           { "protocol", to_json(file.protocol) },
           { "loss", file.loss } };
}

Protocol protocol_from_json(const Json &j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "nmr")
    return NmrSequence(vec_from_json(j.at("alphas")), vec_from_json(j.at("phis")),
                       vec_from_json(j.at("xis")));
  if (kind == "cw") {
    SinePulse p;
    p.horizon = j.at("horizon").get<Real>();
    p.coeffs_x = vec_from_json(j.at("coeffs_x"));
    p.coeffs_y = vec_from_json(j.at("coeffs_y"));
    p.active_x = j.at("active_x").get<std::vector<bool>>();
    p.active_y = j.at("active_y").get<std::vector<bool>>();
    const auto m1 = static_cast<std::size_t>(p.coeffs_x.size());
    if (m1 == 0 || p.coeffs_y.size() != p.coeffs_x.size()
        || p.active_x.size() != m1 || p.active_y.size() != m1)
      throw DomainError("sine pulse arrays must all have length M+1");
    if (!(p.horizon > 0))
      throw DomainError("pulse horizon must be positive");
    return p;
  }
  throw DomainError("unknown protocol kind '" + kind + "'");
}

TargetSpec target_from_json(const Json &j) {
  return TargetSpec::parse(j.at("kind").get<std::string>(), j.value("k", 1));
}

ProtocolFile protocol_file_from_json(const Json &j) {
  ProtocolFile f;
  f.n = j.at("n").get<int>();
  f.coupling = j.value("J", 1.0);
  f.target = target_from_json(j.at("target"));
  f.protocol = protocol_from_json(j.at("protocol"));
  f.loss = j.value("loss", 1.0);
  return f;
}

Json read_json(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw DomainError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception &e) {
    throw DomainError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path &path, const Json &j) {
  std::ofstream out(path);
  if (!out)
    throw DomainError("cannot write " + path.string());
  out << std::setw(2) << j << '\n';
}

ProtocolFile load_protocol(const std::filesystem::path &path) {
  const Json j = read_json(path);
  try {
    if (j.contains("results") && j.at("results").contains("best"))
      return protocol_file_from_json(j.at("results").at("best"));
    return protocol_file_from_json(j);
  } catch (const Json::exception &e) {
    throw DomainError("not a protocol file: " + path.string() + ": " + e.what());
  }
}

Json make_run_record(const std::string &scheme, const Json &config) {
  return { { "schema", "ringctl/run" },
           { "schema_version", kSchemaVersion },
           { "scheme", scheme },
           { "config", config },
           { "results", Json::object() },
           { "provenance",
             { { "timestamp", utc_timestamp() },
               { "software", "ringctl" },
               { "software_version", kSoftwareVersion } } } };
}

Json orbit_table(const SymmetryBasis &basis, const RingModel &model) {
  Json rows = Json::array();
  for (Eigen::Index o = 0; o < basis.dim(); ++o) {
    const auto &orbit = basis.orbits()[o];
    rows.push_back({ { "index", o },
                     { "representative", orbit.representative.to_string() },
                     { "size", orbit.size() },
                     { "hamming_weight", orbit.hamming_weight() },
                     { "hzz", model.hzz_reduced()[o] } });
  }
  return rows;
}

Json real_or_null(Real value) {
  return std::isfinite(value) ? Json(value) : Json(nullptr);
}

}  // namespace ringctl
