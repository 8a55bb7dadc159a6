//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RINGCTL_IO_HPP_
#define RINGCTL_IO_HPP_

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ringctl/cw.hpp"
#include "ringctl/model.hpp"
#include "ringctl/nmr.hpp"
#include "ringctl/protocols.hpp"
#include "ringctl/symmetry.hpp"

namespace ringctl {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char *kSoftwareVersion = "0.1.0";

using Json = nlohmann::json;

struct TargetSpec {
  TargetKind kind = TargetKind::W;
  int k = 1;

  TargetState build(int n) const;
  static TargetSpec parse(const std::string &kind, int k);
};

/// Protocol plus the context needed to re-simulate it.
struct ProtocolFile {
  int n = 0;
  Real coupling = 1;
  TargetSpec target;
  Protocol protocol;
  Real loss = 1;   // recorded infidelity
};

Json to_json(const NmrSequence &seq);
Json to_json(const SinePulse &pulse);
Json to_json(const Protocol &protocol);
Json to_json(const TargetSpec &target);
Json to_json(const ProtocolFile &file);

Protocol protocol_from_json(const Json &j);
TargetSpec target_from_json(const Json &j);
ProtocolFile protocol_file_from_json(const Json &j);

/// Accepts either a bare protocol file or a run record, in which case the
/// record's best protocol is returned.
ProtocolFile load_protocol(const std::filesystem::path &path);

Json read_json(const std::filesystem::path &path);
void write_json(const std::filesystem::path &path, const Json &j);

/// Skeleton of a run record: schema version, config echo and provenance.
Json make_run_record(const std::string &scheme, const Json &config);

Json orbit_table(const SymmetryBasis &basis, const RingModel &model);

/// Rendering of a real that survives a JSON round trip, NaN as null.
Json real_or_null(Real value);

}  // namespace ringctl

#endif  // RINGCTL_IO_HPP_
