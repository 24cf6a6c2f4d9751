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

#include "rbkit/clifford.hpp"

#include <array>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace rbkit {

namespace {

void check_qubit(uint32_t qubits, uint32_t t) {
  if (t >= qubits) throw std::invalid_argument("qubit index out of range");
}

// Accumulator for products of Paulis in raw (phase, x, z) form.
struct RawPauli {
  uint64_t x = 0, z = 0;
  int phase = 0;  // power of i, mod 4

  void mul_hermitian(uint64_t px, uint64_t pz, int sign_bit) {
    phase = (phase + hermitian_phase(px, pz) + 2 * sign_bit +
             2 * popcount64(z & px)) % 4;
    x ^= px;
    z ^= pz;
  }
};

uint64_t pack_vec(uint64_t x, uint64_t z, uint32_t q) { return x | (z << q); }
uint64_t vec_x(uint64_t v, uint32_t q) { return v & ((1ull << q) - 1); }
uint64_t vec_z(uint64_t v, uint32_t q) { return v >> q; }

int symplectic_form(uint64_t a, uint64_t b, uint32_t q) {
  return (popcount64(vec_x(a, q) & vec_z(b, q)) +
          popcount64(vec_z(a, q) & vec_x(b, q))) % 2;
}

}  // namespace

CliffordElement identity_clifford(uint32_t qubits) {
  if (qubits == 0 || qubits > 32) {
    throw std::invalid_argument("qubit count must be in [1, 32]");
  }
  CliffordElement g;
  g.qubits = qubits;
  g.xi_x.assign(qubits, 0);
  g.xi_z.assign(qubits, 0);
  g.zi_x.assign(qubits, 0);
  g.zi_z.assign(qubits, 0);
  g.xi_sign.assign(qubits, 0);
  g.zi_sign.assign(qubits, 0);
  for (uint32_t j = 0; j < qubits; ++j) {
    g.xi_x[j] = 1ull << j;
    g.zi_z[j] = 1ull << j;
  }
  return g;
}

CliffordElement hadamard(uint32_t qubits, uint32_t target) {
  check_qubit(qubits, target);
  CliffordElement g = identity_clifford(qubits);
  g.xi_x[target] = 0;
  g.xi_z[target] = 1ull << target;  // X -> Z
  g.zi_x[target] = 1ull << target;  // Z -> X
  g.zi_z[target] = 0;
  return g;
}

CliffordElement phase_gate(uint32_t qubits, uint32_t target) {
  check_qubit(qubits, target);
  CliffordElement g = identity_clifford(qubits);
  g.xi_x[target] = 1ull << target;  // X -> Y
  g.xi_z[target] = 1ull << target;
  return g;
}

CliffordElement cnot(uint32_t qubits, uint32_t control, uint32_t target) {
  check_qubit(qubits, control);
  check_qubit(qubits, target);
  if (control == target) throw std::invalid_argument("cnot needs distinct qubits");
  CliffordElement g = identity_clifford(qubits);
  g.xi_x[control] |= 1ull << target;  // X_c -> X_c X_t
  g.zi_z[target] |= 1ull << control;  // Z_t -> Z_c Z_t
  return g;
}

SignedPauli conjugate(const CliffordElement& g, const PauliOperator& p) {
  if (p.qubits != g.qubits) {
    throw std::invalid_argument("qubit count mismatch in conjugation");
  }
  if (!is_hermitian(p)) {
    throw std::invalid_argument("conjugate expects a Hermitian Pauli");
  }
  RawPauli acc;
  acc.phase = p.phase_power;
  for (uint32_t j = 0; j < g.qubits; ++j) {
    if ((p.x >> j) & 1) acc.mul_hermitian(g.xi_x[j], g.xi_z[j], g.xi_sign[j]);
  }
  for (uint32_t j = 0; j < g.qubits; ++j) {
    if ((p.z >> j) & 1) acc.mul_hermitian(g.zi_x[j], g.zi_z[j], g.zi_sign[j]);
  }
  int h = hermitian_phase(acc.x, acc.z);
  int rel = (acc.phase + 4 - h) % 4;
  if (rel != 0 && rel != 2) {
    throw std::logic_error("conjugation produced a non-Hermitian phase");
  }
  PauliOperator out;
  out.qubits = g.qubits;
  out.x = acc.x;
  out.z = acc.z;
  out.phase_power = static_cast<uint8_t>(h);
  return {out, rel == 0 ? 1 : -1};
}

CliffordElement compose(const CliffordElement& a, const CliffordElement& b) {
  if (a.qubits != b.qubits) {
    throw std::invalid_argument("qubit count mismatch in composition");
  }
  CliffordElement g = identity_clifford(a.qubits);
  for (uint32_t j = 0; j < a.qubits; ++j) {
    PauliOperator xj = hermitian_pauli(a.qubits, 1ull << j, 0);
    PauliOperator zj = hermitian_pauli(a.qubits, 0, 1ull << j);
    SignedPauli bx = conjugate(b, xj);
    SignedPauli abx = conjugate(a, bx.op);
    g.xi_x[j] = abx.op.x;
    g.xi_z[j] = abx.op.z;
    g.xi_sign[j] = (bx.sign * abx.sign) < 0 ? 1 : 0;
    SignedPauli bz = conjugate(b, zj);
    SignedPauli abz = conjugate(a, bz.op);
    g.zi_x[j] = abz.op.x;
    g.zi_z[j] = abz.op.z;
    g.zi_sign[j] = (bz.sign * abz.sign) < 0 ? 1 : 0;
  }
  return g;
}

CliffordElement invert(const CliffordElement& a) {
  uint32_t q = a.qubits;
  uint32_t n = 2 * q;
  // GF(2) inverse of the symplectic matrix whose columns are the images.
  // Rows are packed bit vectors over the 2q-dimensional space.
  std::vector<uint64_t> mat(n), inv(n);
  for (uint32_t j = 0; j < q; ++j) {
    mat[j] = pack_vec(a.xi_x[j], a.xi_z[j], q);
    mat[q + j] = pack_vec(a.zi_x[j], a.zi_z[j], q);
    inv[j] = 1ull << j;
    inv[q + j] = 1ull << (q + j);
  }
  // mat[c] holds the image of basis vector c; we row-reduce the transpose
  // problem: find coefficients expressing each e_k in terms of images.
  // Treat columns of M as vectors; Gaussian elimination on the list.
  std::vector<uint64_t> cols = mat, coeff = inv;
  for (uint32_t bit = 0, row = 0; bit < n && row < n; ++bit) {
    uint32_t piv = row;
    while (piv < n && !((cols[piv] >> bit) & 1)) ++piv;
    if (piv == n) continue;
    std::swap(cols[piv], cols[row]);
    std::swap(coeff[piv], coeff[row]);
    for (uint32_t r = 0; r < n; ++r) {
      if (r != row && ((cols[r] >> bit) & 1)) {
        cols[r] ^= cols[row];
        coeff[r] ^= coeff[row];
      }
    }
    ++row;
  }
  // Now cols should be a permutation-reduced identity; extract preimages.
  CliffordElement g = identity_clifford(q);
  for (uint32_t k = 0; k < n; ++k) {
    // Find row with cols == e_k, its coeff is the preimage of e_k.
    uint64_t pre = 0;
    bool found = false;
    for (uint32_t r = 0; r < n; ++r) {
      if (cols[r] == (1ull << k)) {
        pre = coeff[r];
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("tableau not invertible");
    // `pre` is the preimage of e_k expressed in the domain basis.
    uint64_t vx = vec_x(pre, q), vz = vec_z(pre, q);
    if (k < q) {
      g.xi_x[k] = vx;
      g.xi_z[k] = vz;
    } else {
      g.zi_x[k - q] = vx;
      g.zi_z[k - q] = vz;
    }
  }
  // Fix signs: require a(g(P)) = P for every generator P.
  for (uint32_t j = 0; j < q; ++j) {
    PauliOperator xj = hermitian_pauli(q, 1ull << j, 0);
    SignedPauli round = conjugate(a, conjugate(g, xj).op);
    if (round.op.x != xj.x || round.op.z != xj.z) {
      throw std::logic_error("inverse tableau inconsistent");
    }
    if (round.sign < 0) g.xi_sign[j] ^= 1;
    PauliOperator zj = hermitian_pauli(q, 0, 1ull << j);
    round = conjugate(a, conjugate(g, zj).op);
    if (round.op.x != zj.x || round.op.z != zj.z) {
      throw std::logic_error("inverse tableau inconsistent");
    }
    if (round.sign < 0) g.zi_sign[j] ^= 1;
  }
  return g;
}

bool is_valid_tableau(const CliffordElement& g) {
  uint32_t q = g.qubits;
  std::vector<uint64_t> img(2 * q);
  for (uint32_t j = 0; j < q; ++j) {
    img[j] = pack_vec(g.xi_x[j], g.xi_z[j], q);
    img[q + j] = pack_vec(g.zi_x[j], g.zi_z[j], q);
  }
  for (uint32_t a = 0; a < 2 * q; ++a) {
    for (uint32_t b = a + 1; b < 2 * q; ++b) {
      int want = (b == a + q) ? 1 : 0;
      if (symplectic_form(img[a], img[b], q) != want) return false;
    }
  }
  return true;
}

std::string tableau_key(const CliffordElement& g) {
  std::string key;
  key.reserve(g.qubits * 4 * 8 + 2 * g.qubits);
  auto put = [&key](uint64_t v) {
    for (int k = 0; k < 8; ++k) key.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
  };
  for (uint32_t j = 0; j < g.qubits; ++j) {
    put(g.xi_x[j]);
    put(g.xi_z[j]);
    put(g.zi_x[j]);
    put(g.zi_z[j]);
    key.push_back(static_cast<char>(g.xi_sign[j]));
    key.push_back(static_cast<char>(g.zi_sign[j]));
  }
  return key;
}

const std::vector<CliffordElement>& enumerate_clifford(uint32_t qubits) {
  if (qubits < 1 || qubits > 2) {
    throw std::invalid_argument(
        "exact Clifford enumeration is limited to 1 or 2 qubits; use sampling");
  }
  static std::mutex mu;
  static std::map<uint32_t, std::vector<CliffordElement>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(qubits);
  if (it != cache.end()) return it->second;

  std::vector<CliffordElement> gens;
  for (uint32_t t = 0; t < qubits; ++t) {
    gens.push_back(hadamard(qubits, t));
    gens.push_back(phase_gate(qubits, t));
  }
  if (qubits == 2) gens.push_back(cnot(qubits, 0, 1));

  std::vector<CliffordElement> out;
  std::unordered_set<std::string> seen;
  out.push_back(identity_clifford(qubits));
  seen.insert(tableau_key(out[0]));
  for (size_t head = 0; head < out.size(); ++head) {
    CliffordElement cur = out[head];
    for (const auto& gen : gens) {
      CliffordElement nxt = compose(gen, cur);
      std::string key = tableau_key(nxt);
      if (seen.insert(key).second) out.push_back(nxt);
    }
  }
  auto [pos, inserted] = cache.emplace(qubits, std::move(out));
  (void)inserted;
  return pos->second;
}

CliffordElement sample_clifford_uniform(uint32_t qubits, std::mt19937_64& rng) {
  uint32_t q = qubits;
  if (q == 0 || q > 32) throw std::invalid_argument("qubit count must be in [1, 32]");
  std::vector<uint64_t> basis(2 * q);
  for (uint32_t j = 0; j < 2 * q; ++j) basis[j] = 1ull << j;

  auto rand_bits = [&rng](uint32_t nbits) -> uint64_t {
    uint64_t v = rng();
    return nbits >= 64 ? v : (v & ((1ull << nbits) - 1));
  };

  CliffordElement g = identity_clifford(q);
  for (uint32_t j = 0; j < q; ++j) {
    uint32_t dim = static_cast<uint32_t>(basis.size());
    // v: uniform nonzero element of the remaining symplectic space.
    uint64_t c = 0;
    do {
      c = rand_bits(dim);
    } while (c == 0);
    uint64_t v = 0;
    for (uint32_t i = 0; i < dim; ++i) {
      if ((c >> i) & 1) v ^= basis[i];
    }
    // Pivot with symplectic pairing 1 against v.
    std::vector<uint64_t> zeros;
    zeros.reserve(dim - 1);
    uint64_t pivot = 0;
    bool have_pivot = false;
    for (uint32_t i = 0; i < dim; ++i) {
      if (symplectic_form(v, basis[i], q) == 1) {
        if (!have_pivot) {
          pivot = basis[i];
          have_pivot = true;
        } else {
          zeros.push_back(basis[i] ^ pivot);
        }
      } else {
        zeros.push_back(basis[i]);
      }
    }
    if (!have_pivot) throw std::logic_error("degenerate symplectic complement");
    // w: uniform over the 2^{dim-1} vectors pairing 1 with v.
    uint64_t w = pivot;
    uint64_t sel = rand_bits(static_cast<uint32_t>(zeros.size()));
    for (size_t i = 0; i < zeros.size(); ++i) {
      if ((sel >> i) & 1) w ^= zeros[i];
    }
    g.xi_x[j] = vec_x(v, q);
    g.xi_z[j] = vec_z(v, q);
    g.zi_x[j] = vec_x(w, q);
    g.zi_z[j] = vec_z(w, q);
    // Reduce the complement against the chosen pair.
    std::vector<uint64_t> next;
    next.reserve(dim - 2);
    for (uint64_t b : zeros) {
      uint64_t bb = b;
      if (symplectic_form(w, bb, q) == 1) bb ^= v;
      if (bb != 0) next.push_back(bb);
    }
    // Keep an independent set of size dim-2 (drop dependents).
    std::vector<uint64_t> indep;
    std::vector<uint64_t> echelon;
    for (uint64_t b : next) {
      uint64_t r = b;
      for (uint64_t e : echelon) {
        uint64_t low = e & ~(e - 1);
        if (r & low) r ^= e;
      }
      if (r != 0) {
        echelon.push_back(r);
        indep.push_back(b);
      }
      if (indep.size() == dim - 2) break;
    }
    if (indep.size() != dim - 2) throw std::logic_error("complement reduction failed");
    basis = std::move(indep);
  }
  for (uint32_t j = 0; j < q; ++j) {
    g.xi_sign[j] = static_cast<uint8_t>(rng() & 1);
    g.zi_sign[j] = static_cast<uint8_t>(rng() & 1);
  }
  return g;
}

SignedPermutationSuperop clifford_to_ptm(const CliffordElement& g) {
  SignedPermutationSuperop sp;
  sp.qubits = g.qubits;
  int n = 1 << (2 * g.qubits);
  sp.perm.resize(n);
  sp.sign.resize(n);
  sp.perm[0] = 0;
  sp.sign[0] = 1;
  for (int idx = 1; idx < n; ++idx) {
    SignedPauli image = conjugate(g, pauli_from_index(g.qubits, idx));
    sp.perm[idx] = pauli_index(image.op);
    sp.sign[idx] = static_cast<int8_t>(image.sign);
  }
  return sp;
}

}  // namespace rbkit
