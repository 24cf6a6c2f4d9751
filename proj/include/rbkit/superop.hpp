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
#include <vector>

#include "rbkit/clifford.hpp"
#include "rbkit/pauli.hpp"

namespace rbkit {

/// A channel in the Liouville picture: a dense real d^2 x d^2 matrix over the
/// normalized Hermitian Pauli basis (sigma_0 first, then per-qubit digits
/// I,X,Y,Z with qubit 0 most significant). Composition is matrix product,
/// tensoring is the Kronecker product.
struct Superoperator {
  uint32_t qubits = 1;
  Eigen::MatrixXd mat;

  int dim() const { return 1 << qubits; }        // Hilbert-space dimension d
  int basis_size() const { return 1 << (2 * qubits); }  // d^2
};

/// Density operators and POVM effects as coefficient vectors in the same
/// basis. A density matrix has coefficient 1/sqrt(d) on sigma_0; the state
/// difference nu used by the protocol is traceless.
struct StateVec {
  uint32_t qubits = 1;
  Eigen::VectorXd coeffs;
};
struct EffectVec {
  uint32_t qubits = 1;
  Eigen::VectorXd coeffs;
};

struct ChannelMetrics {
  double f = 1;             // depolarizing parameter
  double r = 0;             // average infidelity, r = (1-f)(d-1)/d
  double u = 1;             // unitarity
  double nonunitality = 0;  // || E(1/d) - 1/d ||_2
};

struct CptpDiagnostic {
  bool trace_preserving = false;
  double tp_deviation = 0;    // max |first row - e_0|
  bool completely_positive = false;
  double min_choi_eigenvalue = 0;
};

Superoperator superop_identity(uint32_t qubits);
Superoperator depolarizing(double f, uint32_t qubits);
Superoperator unitary_channel(const Eigen::MatrixXcd& u);
Superoperator pauli_channel(const std::vector<double>& probs, uint32_t qubits);
Superoperator amplitude_damping(double gamma);  // single qubit
Superoperator convex_mix(const std::vector<std::pair<double, Superoperator>>& terms);
/// compose(after, before): apply `before` first.
Superoperator compose(const Superoperator& after, const Superoperator& before);
Superoperator tensor(const Superoperator& a, const Superoperator& b);
Superoperator adjoint_channel(const Superoperator& e);
Superoperator to_superoperator(const SignedPermutationSuperop& sp);
Superoperator to_superoperator(const CliffordElement& g);

/// Single-qubit rotation exp(-i theta P / 2) about a Pauli axis.
Eigen::MatrixXcd rotation_unitary(char axis, double theta);

/// Dense matrix of the normalized Hermitian Pauli with the given basis index.
Eigen::MatrixXcd dense_pauli(int index, uint32_t qubits);

ChannelMetrics metrics(const Superoperator& e);
CptpDiagnostic cptp_check(const Superoperator& e);

StateVec apply(const Superoperator& e, const StateVec& s);
EffectVec apply_adjoint(const Superoperator& e, const EffectVec& q);

/// Ideal preparations and measurement for a target Pauli P:
///   nu  = P / d          (half the difference of (1 +- P)/d)
///   Q   = (1 + P) / 2
StateVec ideal_nu(const PauliOperator& target);
EffectVec ideal_effect(const PauliOperator& target);

double overlap(const EffectVec& q, const StateVec& s);

}  // namespace rbkit
