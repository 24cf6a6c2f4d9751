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

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace rbkit {

/// A q-qubit Pauli in symplectic form: the operator i^phase_power * X^x * Z^z,
/// where bit j of x/z refers to qubit j and X^x means the tensor product of X
/// on every qubit whose bit is set.
///
/// The Hermitian representative of a bit pattern (x, z) carries
/// phase_power = popcount(x & z) mod 4, so that Y = i XZ gets the i.
struct PauliOperator {
  uint32_t qubits = 1;
  uint64_t x = 0;
  uint64_t z = 0;
  uint8_t phase_power = 0;  // power of i, mod 4

  bool operator==(const PauliOperator&) const = default;
};

/// A Hermitian Pauli together with a real sign, as produced by Clifford
/// conjugation (Cliffords map Hermitian Paulis to signed Hermitian Paulis).
struct SignedPauli {
  PauliOperator op;  // Hermitian representative
  int sign = 1;      // +1 or -1
};

inline int popcount64(uint64_t v) { return __builtin_popcountll(v); }

/// Phase power of the Hermitian representative of bit pattern (x, z).
inline uint8_t hermitian_phase(uint64_t x, uint64_t z) {
  return static_cast<uint8_t>(popcount64(x & z) % 4);
}

/// The Hermitian Pauli with the given bit pattern.
PauliOperator hermitian_pauli(uint32_t qubits, uint64_t x, uint64_t z);

inline bool is_identity(const PauliOperator& p) {
  return p.x == 0 && p.z == 0 && p.phase_power % 4 == 0;
}

inline bool is_hermitian(const PauliOperator& p) {
  return p.phase_power % 4 == hermitian_phase(p.x, p.z);
}

/// Raw matrix product of two Paulis (phases composed, bits xored).
PauliOperator pauli_mul(const PauliOperator& a, const PauliOperator& b);

/// True iff [a, b] = 0. Paulis either commute or anticommute.
bool commutes(const PauliOperator& a, const PauliOperator& b);

/// Normalized product sigma_a . sigma_b := sqrt(d) sigma_a sigma_b of two
/// Hermitian normalized Paulis, split into a unit phase in {1, i, -1, -i}
/// and a Hermitian normalized Pauli.
struct NormalizedProduct {
  std::complex<double> phase;
  PauliOperator result;  // Hermitian
};
NormalizedProduct pauli_product(const PauliOperator& a, const PauliOperator& b);

/// Basis index of a Hermitian Pauli. Per-qubit digits I=0, X=1, Y=2, Z=3 with
/// qubit 0 the most significant digit, so index(sigma_A (x) sigma_B) is
/// consistent with Kronecker products of transfer matrices. Index 0 is the
/// identity (sigma_0).
int pauli_index(const PauliOperator& p);
PauliOperator pauli_from_index(uint32_t qubits, int index);

/// Parse strings like "Z", "XY", "IZX" (qubit 0 first).
PauliOperator pauli_from_string(const std::string& s);
std::string pauli_to_string(const PauliOperator& p);

/// The commuting set C_tau (non-identity Paulis commuting with tau, tau
/// excluded) and the anticommuting set N_tau. |C_tau| = d^2/2 - 2 and
/// |N_tau| = d^2/2.
struct CommutantSets {
  std::vector<PauliOperator> commuting;      // C_tau
  std::vector<PauliOperator> anticommuting;  // N_tau
};
CommutantSets commutant_sets(const PauliOperator& tau);

}  // namespace rbkit
