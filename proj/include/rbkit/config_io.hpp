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

#include <json.hpp>

#include "rbkit/simulate.hpp"

namespace rbkit {

inline constexpr const char* kVersion = "0.1.0";

/// Channel spec document:
///   {"type": "depolarizing", "f": 0.99}
///   {"type": "unitary", "rotation": {"axis": "z", "theta": 0.1, "qubit": 0}}
///   {"type": "unitary", "matrix": {"re": [[..]], "im": [[..]]}}
///   {"type": "pauli", "probs": [ ... 4^q entries ... ]}
///   {"type": "amplitude_damping", "gamma": 0.01, "qubit": 0}
///   {"type": "mix", "terms": [{"weight": w, "channel": {...}}, ...]}
///   {"type": "compose", "channels": [first applied, ...]}
///   {"type": "tensor", "factors": [qubit-0 factor, ...]}
/// Single-qubit constructors embed into `qubits` wires via their "qubit" key.
Superoperator parse_channel(const nlohmann::json& spec, uint32_t qubits);

/// Experiment config document:
/// {
///   "qubits": q, "m_list": [...], "sequences": N, "seed": s, "shots": L,
///   "noise": {...} | {"left": {...}, "right": {...}},
///   "spam": {"target_pauli": "Z",
///            "nu": {"ideal": true} | {"perturb": {...}} | {"coeffs": [...]},
///            "Q":  same forms},
///   "threads": t
/// }
/// Omitted spam entries default to ideal; "shots" defaults to exact
/// expectation values.
RBConfig parse_rb_config(const nlohmann::json& doc);

nlohmann::json dataset_to_json(const DecayDataset& ds);
std::string dataset_to_csv(const DecayDataset& ds);
std::vector<DecayPoint> dataset_from_csv(const std::string& text);

/// Run manifest: command, resolved config, seed, version, timestamp and the
/// produced files. Outputs are bit-reproducible from the manifest's config at
/// infinite shots; the timestamp is metadata only.
nlohmann::json make_manifest(const std::string& command, const nlohmann::json& config,
                             uint64_t seed, const std::vector<std::string>& outputs);

}  // namespace rbkit
