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

#include "rbkit/superop.hpp"

#include <cmath>
#include <stdexcept>

namespace rbkit {

namespace {

constexpr double kTpTol = 1e-9;
constexpr double kUnitaryTol = 1e-10;
constexpr double kChoiTol = 1e-10;

void check_same_qubits(const Superoperator& a, const Superoperator& b) {
  if (a.qubits != b.qubits) {
    throw std::invalid_argument("superoperators act on different qubit counts");
  }
}

Eigen::MatrixXcd kron_c(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXd kron_d(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Eigen::MatrixXcd dense_pauli(int index, uint32_t qubits) {
  using cd = std::complex<double>;
  static const Eigen::Matrix2cd kI = Eigen::Matrix2cd::Identity();
  static const Eigen::Matrix2cd kX = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  static const Eigen::Matrix2cd kY =
      (Eigen::Matrix2cd() << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0)).finished();
  static const Eigen::Matrix2cd kZ = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  const Eigen::Matrix2cd* table[4] = {&kI, &kX, &kY, &kZ};
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (uint32_t j = 0; j < qubits; ++j) {
    int digit = (index >> (2 * (qubits - 1 - j))) & 3;
    out = kron_c(out, *table[digit]);
  }
  double d = static_cast<double>(1 << qubits);
  return out / std::sqrt(d);
}

Superoperator superop_identity(uint32_t qubits) {
  Superoperator e;
  e.qubits = qubits;
  e.mat = Eigen::MatrixXd::Identity(1 << (2 * qubits), 1 << (2 * qubits));
  return e;
}

Superoperator depolarizing(double f, uint32_t qubits) {
  Superoperator e = superop_identity(qubits);
  for (int i = 1; i < e.basis_size(); ++i) e.mat(i, i) = f;
  return e;
}

Superoperator unitary_channel(const Eigen::MatrixXcd& u) {
  int d = static_cast<int>(u.rows());
  if (u.cols() != d || d < 2 || (d & (d - 1)) != 0) {
    throw std::invalid_argument("unitary_channel expects a square 2^q matrix");
  }
  double dev = (u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > kUnitaryTol) {
    throw std::invalid_argument("matrix is not unitary within tolerance");
  }
  uint32_t q = 0;
  while ((1 << q) < d) ++q;
  int n = 1 << (2 * q);
  Superoperator e;
  e.qubits = q;
  e.mat.resize(n, n);
  std::vector<Eigen::MatrixXcd> rotated(n);
  for (int j = 0; j < n; ++j) rotated[j] = u * dense_pauli(j, q) * u.adjoint();
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd si = dense_pauli(i, q);
    for (int j = 0; j < n; ++j) {
      e.mat(i, j) = (si.adjoint() * rotated[j]).trace().real();
    }
  }
  return e;
}

Superoperator pauli_channel(const std::vector<double>& probs, uint32_t qubits) {
  int n = 1 << (2 * qubits);
  if (static_cast<int>(probs.size()) != n) {
    throw std::invalid_argument("pauli_channel needs 4^q probabilities");
  }
  double sum = 0;
  for (double p : probs) {
    if (p < -1e-12) throw std::invalid_argument("negative Pauli probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("Pauli probabilities must sum to 1");
  }
  Superoperator e = superop_identity(qubits);
  for (int i = 1; i < n; ++i) {
    PauliOperator sigma = pauli_from_index(qubits, i);
    double diag = 0;
    for (int gidx = 0; gidx < n; ++gidx) {
      PauliOperator g = pauli_from_index(qubits, gidx);
      diag += commutes(sigma, g) ? probs[gidx] : -probs[gidx];
    }
    e.mat(i, i) = diag;
  }
  return e;
}

Superoperator amplitude_damping(double gamma) {
  if (gamma < 0 || gamma > 1) throw std::invalid_argument("gamma must be in [0, 1]");
  Superoperator e = superop_identity(1);
  double s = std::sqrt(1 - gamma);
  e.mat(1, 1) = s;
  e.mat(2, 2) = s;
  e.mat(3, 3) = 1 - gamma;
  e.mat(3, 0) = gamma;  // E(1/d) picks up a Z component
  return e;
}

Superoperator convex_mix(const std::vector<std::pair<double, Superoperator>>& terms) {
  if (terms.empty()) throw std::invalid_argument("convex_mix needs at least one term");
  double wsum = 0;
  for (const auto& [w, e] : terms) {
    if (w < -1e-12) throw std::invalid_argument("negative mixture weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-9) {
    throw std::invalid_argument("mixture weights must sum to 1");
  }
  Superoperator out;
  out.qubits = terms[0].second.qubits;
  out.mat = Eigen::MatrixXd::Zero(terms[0].second.mat.rows(), terms[0].second.mat.cols());
  for (const auto& [w, e] : terms) {
    check_same_qubits(out, e);
    out.mat += w * e.mat;
  }
  return out;
}

Superoperator compose(const Superoperator& after, const Superoperator& before) {
  check_same_qubits(after, before);
  Superoperator out;
  out.qubits = after.qubits;
  out.mat = after.mat * before.mat;
  return out;
}

Superoperator tensor(const Superoperator& a, const Superoperator& b) {
  Superoperator out;
  out.qubits = a.qubits + b.qubits;
  out.mat = kron_d(a.mat, b.mat);
  return out;
}

Superoperator adjoint_channel(const Superoperator& e) {
  Superoperator out;
  out.qubits = e.qubits;
  out.mat = e.mat.transpose();
  return out;
}

Superoperator to_superoperator(const SignedPermutationSuperop& sp) {
  int n = static_cast<int>(sp.perm.size());
  Superoperator e;
  e.qubits = sp.qubits;
  e.mat = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) e.mat(sp.perm[j], j) = sp.sign[j];
  return e;
}

Superoperator to_superoperator(const CliffordElement& g) {
  return to_superoperator(clifford_to_ptm(g));
}

Eigen::MatrixXcd rotation_unitary(char axis, double theta) {
  using cd = std::complex<double>;
  Eigen::Matrix2cd p;
  switch (axis) {
    case 'x': case 'X': p << 0, 1, 1, 0; break;
    case 'y': case 'Y': p << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0); break;
    case 'z': case 'Z': p << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("rotation axis must be x, y or z");
  }
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return c * Eigen::Matrix2cd::Identity() - cd(0, 1) * s * p;
}

ChannelMetrics metrics(const Superoperator& e) {
  int n = e.basis_size();
  double tp_dev = std::abs(e.mat(0, 0) - 1.0);
  for (int j = 1; j < n; ++j) tp_dev = std::max(tp_dev, std::abs(e.mat(0, j)));
  if (tp_dev > kTpTol) {
    throw std::invalid_argument("metrics requires a trace-preserving map");
  }
  ChannelMetrics m;
  double d = e.dim();
  double trace_sum = 0, sq_sum = 0;
  for (int i = 1; i < n; ++i) {
    trace_sum += e.mat(i, i);
    for (int j = 1; j < n; ++j) sq_sum += e.mat(i, j) * e.mat(i, j);
  }
  m.f = trace_sum / (n - 1);
  m.u = sq_sum / (n - 1);
  m.r = (1 - m.f) * (d - 1) / d;
  m.nonunitality = e.mat.col(0).tail(n - 1).norm() / std::sqrt(d);
  return m;
}

CptpDiagnostic cptp_check(const Superoperator& e) {
  CptpDiagnostic diag;
  int n = e.basis_size();
  diag.tp_deviation = std::abs(e.mat(0, 0) - 1.0);
  for (int j = 1; j < n; ++j) {
    diag.tp_deviation = std::max(diag.tp_deviation, std::abs(e.mat(0, j)));
  }
  diag.trace_preserving = diag.tp_deviation <= kTpTol;
  // Choi matrix sum_{ij} R_ij sigma_j^T (x) sigma_i, Hermitian for real R.
  int d = e.dim();
  Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd si = dense_pauli(i, e.qubits);
    for (int j = 0; j < n; ++j) {
      if (e.mat(i, j) == 0.0) continue;
      choi += e.mat(i, j) * kron_c(dense_pauli(j, e.qubits).transpose(), si);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(choi);
  diag.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  diag.completely_positive = diag.min_choi_eigenvalue >= -kChoiTol;
  return diag;
}

StateVec apply(const Superoperator& e, const StateVec& s) {
  if (e.qubits != s.qubits) throw std::invalid_argument("qubit count mismatch");
  return {s.qubits, e.mat * s.coeffs};
}

EffectVec apply_adjoint(const Superoperator& e, const EffectVec& q) {
  if (e.qubits != q.qubits) throw std::invalid_argument("qubit count mismatch");
  return {q.qubits, e.mat.transpose() * q.coeffs};
}

StateVec ideal_nu(const PauliOperator& target) {
  if (is_identity(target)) throw std::invalid_argument("target Pauli must be non-identity");
  int n = 1 << (2 * target.qubits);
  double d = 1 << target.qubits;
  StateVec s;
  s.qubits = target.qubits;
  s.coeffs = Eigen::VectorXd::Zero(n);
  s.coeffs(pauli_index(target)) = 1.0 / std::sqrt(d);  // P/d in normalized coords
  return s;
}

EffectVec ideal_effect(const PauliOperator& target) {
  if (is_identity(target)) throw std::invalid_argument("target Pauli must be non-identity");
  int n = 1 << (2 * target.qubits);
  double d = 1 << target.qubits;
  EffectVec q;
  q.qubits = target.qubits;
  q.coeffs = Eigen::VectorXd::Zero(n);
  q.coeffs(0) = std::sqrt(d) / 2;                       // identity part of (1+P)/2
  q.coeffs(pauli_index(target)) = std::sqrt(d) / 2;     // P part
  return q;
}

double overlap(const EffectVec& q, const StateVec& s) {
  if (q.qubits != s.qubits) throw std::invalid_argument("qubit count mismatch");
  return q.coeffs.dot(s.coeffs);
}

}  // namespace rbkit
