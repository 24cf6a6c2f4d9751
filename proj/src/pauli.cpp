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

#include "rbkit/pauli.hpp"

#include <stdexcept>

namespace rbkit {

namespace {

void check_same_qubits(const PauliOperator& a, const PauliOperator& b) {
  if (a.qubits != b.qubits) {
    throw std::invalid_argument("Pauli operators act on different qubit counts");
  }
}

}  // namespace

PauliOperator hermitian_pauli(uint32_t qubits, uint64_t x, uint64_t z) {
  if (qubits == 0 || qubits > 32) {
    throw std::invalid_argument("qubit count must be in [1, 32]");
  }
  uint64_t mask = qubits == 64 ? ~0ull : ((1ull << qubits) - 1);
  PauliOperator p;
  p.qubits = qubits;
  p.x = x & mask;
  p.z = z & mask;
  p.phase_power = hermitian_phase(p.x, p.z);
  return p;
}

PauliOperator pauli_mul(const PauliOperator& a, const PauliOperator& b) {
  check_same_qubits(a, b);
  // (X^xa Z^za)(X^xb Z^zb) = (-1)^{za.xb} X^{xa^xb} Z^{za^zb}
  PauliOperator c;
  c.qubits = a.qubits;
  c.x = a.x ^ b.x;
  c.z = a.z ^ b.z;
  c.phase_power = static_cast<uint8_t>(
      (a.phase_power + b.phase_power + 2 * popcount64(a.z & b.x)) % 4);
  return c;
}

bool commutes(const PauliOperator& a, const PauliOperator& b) {
  check_same_qubits(a, b);
  return ((popcount64(a.x & b.z) + popcount64(a.z & b.x)) % 2) == 0;
}

NormalizedProduct pauli_product(const PauliOperator& a, const PauliOperator& b) {
  if (!is_hermitian(a) || !is_hermitian(b)) {
    throw std::invalid_argument("pauli_product expects Hermitian representatives");
  }
  PauliOperator raw = pauli_mul(a, b);
  uint8_t h = hermitian_phase(raw.x, raw.z);
  int rel = (raw.phase_power + 4 - h) % 4;
  static const std::complex<double> kPhases[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  raw.phase_power = h;
  return {kPhases[rel], raw};
}

int pauli_index(const PauliOperator& p) {
  int idx = 0;
  for (uint32_t j = 0; j < p.qubits; ++j) {
    int xb = (p.x >> j) & 1, zb = (p.z >> j) & 1;
    int digit = xb ? (zb ? 2 : 1) : (zb ? 3 : 0);  // I,X,Y,Z -> 0,1,2,3
    idx = idx * 4 + digit;                          // qubit 0 most significant
  }
  return idx;
}

PauliOperator pauli_from_index(uint32_t qubits, int index) {
  if (index < 0 || index >= (1 << (2 * qubits))) {
    throw std::invalid_argument("pauli index out of range");
  }
  uint64_t x = 0, z = 0;
  for (uint32_t j = 0; j < qubits; ++j) {
    int digit = (index >> (2 * (qubits - 1 - j))) & 3;
    if (digit == 1 || digit == 2) x |= 1ull << j;
    if (digit == 2 || digit == 3) z |= 1ull << j;
  }
  return hermitian_pauli(qubits, x, z);
}

PauliOperator pauli_from_string(const std::string& s) {
  if (s.empty() || s.size() > 32) {
    throw std::invalid_argument("Pauli string must have 1..32 characters");
  }
  uint64_t x = 0, z = 0;
  for (size_t j = 0; j < s.size(); ++j) {
    switch (s[j]) {
      case 'I': case 'i': break;
      case 'X': case 'x': x |= 1ull << j; break;
      case 'Y': case 'y': x |= 1ull << j; z |= 1ull << j; break;
      case 'Z': case 'z': z |= 1ull << j; break;
      default:
        throw std::invalid_argument("Pauli string may contain only IXYZ");
    }
  }
  return hermitian_pauli(static_cast<uint32_t>(s.size()), x, z);
}

std::string pauli_to_string(const PauliOperator& p) {
  std::string s;
  for (uint32_t j = 0; j < p.qubits; ++j) {
    int xb = (p.x >> j) & 1, zb = (p.z >> j) & 1;
    s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return s;
}

CommutantSets commutant_sets(const PauliOperator& tau) {
  if (is_identity(tau)) {
    throw std::invalid_argument("commutant_sets requires a non-identity Pauli");
  }
  CommutantSets out;
  int n = 1 << (2 * tau.qubits);
  for (int idx = 1; idx < n; ++idx) {
    PauliOperator sigma = pauli_from_index(tau.qubits, idx);
    if (sigma.x == tau.x && sigma.z == tau.z) continue;
    if (commutes(sigma, tau)) {
      out.commuting.push_back(sigma);
    } else {
      out.anticommuting.push_back(sigma);
    }
  }
  return out;
}

}  // namespace rbkit
