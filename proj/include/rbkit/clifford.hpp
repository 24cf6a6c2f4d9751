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

#include <cstdint>
#include <random>
#include <vector>

#include "rbkit/pauli.hpp"

namespace rbkit {

/// A Clifford group element modulo global phase, stored as a tableau: the
/// signed Hermitian Pauli images of the generators X_j and Z_j under
/// conjugation. The induced map on symplectic bit vectors preserves the
/// binary symplectic form.
struct CliffordElement {
  uint32_t qubits = 1;
  // Image of X_j / Z_j: bit patterns plus a sign bit (1 means -1).
  std::vector<uint64_t> xi_x, xi_z;
  std::vector<uint64_t> zi_x, zi_z;
  std::vector<uint8_t> xi_sign, zi_sign;

  bool operator==(const CliffordElement&) const = default;
};

CliffordElement identity_clifford(uint32_t qubits);

// Generator tableaux.
CliffordElement hadamard(uint32_t qubits, uint32_t target);
CliffordElement phase_gate(uint32_t qubits, uint32_t target);  // S = diag(1, i)
CliffordElement cnot(uint32_t qubits, uint32_t control, uint32_t target);

/// Conjugation action g P g^dagger on a Hermitian Pauli. The result is a
/// signed Hermitian Pauli.
SignedPauli conjugate(const CliffordElement& g, const PauliOperator& p);

/// Composition: compose(a, b) acts as first b, then a.
CliffordElement compose(const CliffordElement& a, const CliffordElement& b);
CliffordElement invert(const CliffordElement& a);

/// Consistency check: images Hermitian, symplectic form preserved.
bool is_valid_tableau(const CliffordElement& g);

/// Stable byte encoding, usable as a hash/dedup key (identifies elements
/// modulo global phase).
std::string tableau_key(const CliffordElement& g);

/// Complete duplicate-free enumeration of the Clifford group modulo phase.
/// Sizes: 24 for q=1, 11520 for q=2. Refuses q > 2.
const std::vector<CliffordElement>& enumerate_clifford(uint32_t qubits);

/// Exactly uniform sample over the Clifford group modulo phase, drawn by
/// completing a random symplectic basis pair by pair (not by generator
/// walks) plus uniform sign bits.
CliffordElement sample_clifford_uniform(uint32_t qubits, std::mt19937_64& rng);

/// The Pauli transfer matrix of a Clifford element: a signed permutation of
/// the Hermitian Pauli basis. Index 0 (identity) is always fixed with sign +1.
struct SignedPermutationSuperop {
  uint32_t qubits = 1;
  std::vector<int> perm;     // basis index -> image index
  std::vector<int8_t> sign;  // +1 / -1
};

SignedPermutationSuperop clifford_to_ptm(const CliffordElement& g);

}  // namespace rbkit
