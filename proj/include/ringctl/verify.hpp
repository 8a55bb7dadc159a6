//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RINGCTL_VERIFY_HPP_
#define RINGCTL_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ringctl/types.hpp"

namespace ringctl {

struct InvariantCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runtime self-test of the symmetry reduction, propagators and loss
/// plumbing for one ring size. Dense cross-checks are skipped above
/// kMaxDenseQubits.
std::vector<InvariantCheck> verify_invariants(int n, std::uint64_t seed = 1);

}  // namespace ringctl

#endif  // RINGCTL_VERIFY_HPP_
