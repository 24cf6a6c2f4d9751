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

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rbkit/superop.hpp"

namespace rbkit {

/// Orthonormal basis of the traceless-symmetric subspace V_TS: elements
/// S_{a,b} = (|ab>> + |ba>>)/sqrt(2) for non-identity Pauli indices a < b,
/// plus the diagonal |aa>>. dim V_TS = (d^2-1) d^2 / 2.
///
/// Each basis element falls into one of three classes that are permuted
/// among themselves by the Clifford action: diagonal pairs (a == b),
/// commuting off-diagonal pairs, anticommuting off-diagonal pairs.
struct TsBasis {
  uint32_t qubits = 1;
  int d = 2;
  int dim = 0;
  std::vector<std::pair<int, int>> pairs;  // (a, b) with 1 <= a <= b < d^2
  std::vector<int> pos;                    // flattened (a, b) -> ts index
  std::vector<int> pair_class;             // 0 diagonal, 1 commuting, 2 anticommuting

  int index_of(int a, int b) const {
    int lo = std::min(a, b), hi = std::max(a, b);
    return pos[static_cast<size_t>(lo) * (d * d) + hi];
  }
};

const TsBasis& ts_basis(uint32_t qubits);

/// The Clifford two-copy action restricted to V_TS is a signed permutation of
/// the S_{a,b} basis.
struct TsSignedPerm {
  std::vector<int> perm;
  std::vector<int8_t> sign;
};
TsSignedPerm ts_signed_perm(const TsBasis& basis, const SignedPermutationSuperop& g);

/// Restriction of E (x) E to V_TS (as a matrix in the S_{a,b} basis).
Eigen::MatrixXd ts_restrict_two_copy(const Superoperator& e);

/// Coordinates of the symmetric product v (x) v of a traceless vector
/// (identity coefficient ignored) in the S_{a,b} basis.
Eigen::VectorXd ts_pair_coords(const TsBasis& basis, const Eigen::VectorXd& traceless);

/// |Delta>> = sum_tau |tau tau>> / sqrt(d^2-1), the trivial-block unit vector.
Eigen::VectorXd ts_delta(const TsBasis& basis);

/// Exact single-copy twirl (1/|C|) sum_G G^T E G by group enumeration
/// (q <= 2). Equals the depolarizing channel with f = metrics(e).f.
Superoperator single_copy_twirl(const Superoperator& e);

/// Exact two-copy twirl restricted to V_TS, by group enumeration (q <= 2).
Eigen::MatrixXd two_copy_twirl_ts(const Superoperator& e);

/// One irreducible block of the two-copy Clifford action on V_TS.
struct IrrepBlock {
  std::string label;        // "tr", "1", "2", "[adj]", "[1]", "{1}", "{2}"
  int rank = 0;
  int pair_class = 0;       // 0 diagonal, 1 commuting, 2 anticommuting
  Eigen::MatrixXd projector;
};

/// Orthogonal projectors onto the inequivalent irreducible blocks, obtained
/// by two-copy-twirling a generic symmetric map and grouping eigenspaces.
/// Block labels are assigned by class membership (explicit spans) and then
/// ascending rank; "tr" is the rank-one block fixed by |Delta>>.
///
/// For q = 1 there are 3 blocks (ranks 1, 2, 3). For q = 2 there are 7
/// (ranks 1, 5, 9 diagonal; 15, 30 commuting; 15, 45 anticommuting): the
/// commutant of the two-copy action has dimension exactly 7 at q = 2
/// (integer character sum 80640/11520), so one of the eight generic labels
/// carries an empty subspace at this size.
struct IrrepDecomposition {
  uint32_t qubits = 1;
  std::vector<IrrepBlock> blocks;

  const IrrepBlock& block(const std::string& label) const;
  bool has_block(const std::string& label) const;
};

IrrepDecomposition extract_irreps(uint32_t qubits, uint64_t seed = 0x5eedULL);

/// chi_i = tr(P_i E(x)E) / tr(P_i) for each block, aligned with dec.blocks.
/// chi_tr equals the unitarity of E exactly.
std::vector<double> chi_coefficients(const Superoperator& e, const IrrepDecomposition& dec);

enum class VarianceRoute {
  kProjectors,   // sum_i <<Q x Q|P_i|nu x nu>> (chi_i^m - f^{2m})
  kTwirlPowers,  // <<Q x Q| T(E x E)^m - [T(E)^m] x [T(E)^m] |nu x nu>>
};

/// Exact per-sequence variance of the RB estimator at sequence length m.
/// Both routes agree to ~1e-12; the projector route is stable for large m.
double exact_variance(const Superoperator& e, const EffectVec& q_eff,
                      const StateVec& nu, long long m, const IrrepDecomposition& dec,
                      VarianceRoute route = VarianceRoute::kProjectors);

/// m -> infinity limit of the variance for unitary non-Clifford noise:
/// <<Q x Q|P_tr|nu x nu>>, independent of the particular unitary.
double haar_limit_variance(const Superoperator& e, const EffectVec& q_eff,
                           const StateVec& nu, const IrrepDecomposition& dec);

}  // namespace rbkit
