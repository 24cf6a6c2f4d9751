// Copyright 2026 The rbkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "rbkit/superop.hpp"
#include "rbkit/twirl.hpp"

namespace rbkit {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// A small zoo of CPTP channels used by the property suites: depolarizing
/// channels, rotations, amplitude damping, Pauli channels and random
/// mixtures/compositions of those (tensor-extended for q = 2).
std::vector<Superoperator> channel_zoo(uint32_t qubits, int count, uint64_t seed);

/// Random SPAM pairs produced by passing the ideals through small CPTP maps.
struct SpamPair {
  EffectVec q;
  StateVec nu;
};
std::vector<SpamPair> spam_zoo(const PauliOperator& target, int count, uint64_t seed);

// Property suites. Each returns one result per named check.
std::vector<CheckResult> verify_irreps(uint32_t qubits, int schur_channels = 25,
                                       uint64_t seed = 2026);
std::vector<CheckResult> verify_lemmas(uint32_t qubits, int channels = 50,
                                       uint64_t seed = 2026);
std::vector<CheckResult> verify_bounds_soundness(int combos_per_q = 100,
                                                 uint64_t seed = 2026);
std::vector<CheckResult> verify_planner_roundtrip(uint64_t seed = 2026);
std::vector<CheckResult> verify_montecarlo(uint64_t seed = 2026);

}  // namespace rbkit
