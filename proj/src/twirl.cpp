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

#include "rbkit/twirl.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace rbkit {

namespace {

constexpr double kEigenGroupTol = 1e-8;
constexpr double kStructureTol = 1e-10;

void check_exact_twirl_qubits(uint32_t qubits) {
  if (qubits < 1 || qubits > 2) {
    throw std::invalid_argument("exact twirls are limited to 1 or 2 qubits");
  }
}

const std::vector<TsSignedPerm>& ts_group_perms(uint32_t qubits) {
  static std::mutex mu;
  static std::map<uint32_t, std::vector<TsSignedPerm>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(qubits);
  if (it != cache.end()) return it->second;
  const TsBasis& basis = ts_basis(qubits);
  const auto& group = enumerate_clifford(qubits);
  std::vector<TsSignedPerm> perms;
  perms.reserve(group.size());
  for (const auto& g : group) {
    perms.push_back(ts_signed_perm(basis, clifford_to_ptm(g)));
  }
  auto [pos, ok] = cache.emplace(qubits, std::move(perms));
  (void)ok;
  return pos->second;
}

// Deterministic chunked average of f(g) over the group: fixed chunk
// boundaries, chunk partials summed in index order regardless of the number
// of worker threads.
Eigen::MatrixXd averaged_conjugation(const Eigen::MatrixXd& b,
                                     const std::vector<TsSignedPerm>& perms) {
  const int n = static_cast<int>(b.rows());
  const size_t chunks = 32;
  const size_t per = (perms.size() + chunks - 1) / chunks;
  std::vector<std::future<Eigen::MatrixXd>> futures;
  for (size_t c = 0; c < chunks; ++c) {
    size_t lo = c * per, hi = std::min(perms.size(), (c + 1) * per);
    if (lo >= hi) break;
    futures.push_back(std::async(std::launch::async, [&, lo, hi]() {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
      for (size_t k = lo; k < hi; ++k) {
        const auto& p = perms[k].perm;
        const auto& s = perms[k].sign;
        for (int i = 0; i < n; ++i) {
          const double si = s[i];
          for (int j = 0; j < n; ++j) {
            acc(i, j) += si * s[j] * b(p[i], p[j]);
          }
        }
      }
      return acc;
    }));
  }
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(n, n);
  for (auto& f : futures) total += f.get();
  return total / static_cast<double>(perms.size());
}

}  // namespace

const TsBasis& ts_basis(uint32_t qubits) {
  static std::mutex mu;
  static std::map<uint32_t, TsBasis> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(qubits);
  if (it != cache.end()) return it->second;
  TsBasis b;
  b.qubits = qubits;
  b.d = 1 << qubits;
  int n = b.d * b.d;
  b.pos.assign(static_cast<size_t>(n) * n, -1);
  for (int a = 1; a < n; ++a) {
    PauliOperator pa = pauli_from_index(qubits, a);
    for (int c = a; c < n; ++c) {
      int idx = static_cast<int>(b.pairs.size());
      b.pairs.emplace_back(a, c);
      b.pos[static_cast<size_t>(a) * n + c] = idx;
      b.pos[static_cast<size_t>(c) * n + a] = idx;
      if (a == c) {
        b.pair_class.push_back(0);
      } else {
        b.pair_class.push_back(commutes(pa, pauli_from_index(qubits, c)) ? 1 : 2);
      }
    }
  }
  b.dim = static_cast<int>(b.pairs.size());
  auto [pos, ok] = cache.emplace(qubits, std::move(b));
  (void)ok;
  return pos->second;
}

TsSignedPerm ts_signed_perm(const TsBasis& basis, const SignedPermutationSuperop& g) {
  TsSignedPerm out;
  out.perm.resize(basis.dim);
  out.sign.resize(basis.dim);
  for (int k = 0; k < basis.dim; ++k) {
    auto [a, b] = basis.pairs[k];
    out.perm[k] = basis.index_of(g.perm[a], g.perm[b]);
    out.sign[k] = static_cast<int8_t>(g.sign[a] * g.sign[b]);
  }
  return out;
}

Eigen::MatrixXd ts_restrict_two_copy(const Superoperator& e) {
  const TsBasis& basis = ts_basis(e.qubits);
  const Eigen::MatrixXd& m = e.mat;
  Eigen::MatrixXd b(basis.dim, basis.dim);
  const double rt2 = std::sqrt(2.0);
  for (int k = 0; k < basis.dim; ++k) {
    auto [a, bb] = basis.pairs[k];
    for (int l = 0; l < basis.dim; ++l) {
      auto [c, ee] = basis.pairs[l];
      if (a < bb && c < ee) {
        b(k, l) = m(a, c) * m(bb, ee) + m(a, ee) * m(bb, c);
      } else if (a == bb && c < ee) {
        b(k, l) = rt2 * m(a, c) * m(a, ee);
      } else if (a < bb && c == ee) {
        b(k, l) = rt2 * m(a, c) * m(bb, c);
      } else {
        b(k, l) = m(a, c) * m(a, c);
      }
    }
  }
  return b;
}

Eigen::VectorXd ts_pair_coords(const TsBasis& basis, const Eigen::VectorXd& traceless) {
  if (traceless.size() != basis.d * basis.d) {
    throw std::invalid_argument("coefficient vector has wrong length");
  }
  Eigen::VectorXd v(basis.dim);
  const double rt2 = std::sqrt(2.0);
  for (int k = 0; k < basis.dim; ++k) {
    auto [a, b] = basis.pairs[k];
    v(k) = (a == b) ? traceless(a) * traceless(a) : rt2 * traceless(a) * traceless(b);
  }
  return v;
}

Eigen::VectorXd ts_delta(const TsBasis& basis) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(basis.dim);
  double norm = 1.0 / std::sqrt(static_cast<double>(basis.d * basis.d - 1));
  for (int k = 0; k < basis.dim; ++k) {
    auto [a, b] = basis.pairs[k];
    if (a == b) v(k) = norm;
  }
  return v;
}

Superoperator single_copy_twirl(const Superoperator& e) {
  check_exact_twirl_qubits(e.qubits);
  const auto& group = enumerate_clifford(e.qubits);
  int n = e.basis_size();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  for (const auto& g : group) {
    SignedPermutationSuperop sp = clifford_to_ptm(g);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        acc(i, j) += sp.sign[i] * sp.sign[j] * e.mat(sp.perm[i], sp.perm[j]);
      }
    }
  }
  Superoperator out;
  out.qubits = e.qubits;
  out.mat = acc / static_cast<double>(group.size());
  return out;
}

Eigen::MatrixXd two_copy_twirl_ts(const Superoperator& e) {
  check_exact_twirl_qubits(e.qubits);
  return averaged_conjugation(ts_restrict_two_copy(e), ts_group_perms(e.qubits));
}

const IrrepBlock& IrrepDecomposition::block(const std::string& label) const {
  for (const auto& b : blocks) {
    if (b.label == label) return b;
  }
  throw std::invalid_argument("no irreducible block labeled " + label);
}

bool IrrepDecomposition::has_block(const std::string& label) const {
  for (const auto& b : blocks) {
    if (b.label == label) return true;
  }
  return false;
}

IrrepDecomposition extract_irreps(uint32_t qubits, uint64_t seed) {
  check_exact_twirl_qubits(qubits);
  const TsBasis& basis = ts_basis(qubits);
  const auto& perms = ts_group_perms(qubits);
  const int n = basis.dim;

  for (int attempt = 0; attempt < 8; ++attempt) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * attempt);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd probe(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        double v = gauss(rng);
        probe(i, j) = v;
        probe(j, i) = v;
      }
    }
    Eigen::MatrixXd t = averaged_conjugation(probe, perms);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXd& w = es.eigenvalues();
    const Eigen::MatrixXd& v = es.eigenvectors();

    std::vector<std::pair<int, int>> groups;  // [start, end)
    int start = 0;
    for (int i = 1; i <= n; ++i) {
      if (i == n || std::abs(w(i) - w(i - 1)) > kEigenGroupTol) {
        groups.emplace_back(start, i);
        start = i;
      }
    }
    // Guard against near-collisions straddling the grouping tolerance.
    bool ambiguous = false;
    for (size_t gi = 0; gi + 1 < groups.size(); ++gi) {
      double gap = w(groups[gi + 1].first) - w(groups[gi].second - 1);
      if (gap < 100 * kEigenGroupTol) ambiguous = true;
    }
    if (ambiguous) continue;

    IrrepDecomposition dec;
    dec.qubits = qubits;
    bool crisp = true;
    for (auto [lo, hi] : groups) {
      IrrepBlock blk;
      blk.rank = hi - lo;
      Eigen::MatrixXd sub = v.middleCols(lo, hi - lo);
      blk.projector = sub * sub.transpose();
      // Class membership from diagonal mass over the three basis classes.
      double mass[3] = {0, 0, 0};
      for (int k = 0; k < n; ++k) mass[basis.pair_class[k]] += blk.projector(k, k);
      int cls = 0;
      double best = -1;
      for (int c = 0; c < 3; ++c) {
        if (mass[c] > best) {
          best = mass[c];
          cls = c;
        }
      }
      if (std::abs(best - blk.rank) > 1e-6) crisp = false;
      blk.pair_class = cls;
      dec.blocks.push_back(std::move(blk));
    }
    if (!crisp) continue;

    // Labels: "tr" is the rank-1 diagonal block fixed by Delta; remaining
    // diagonal blocks get 1, 2 by ascending rank. In the commuting class the
    // (d^2-1)-dimensional block is the adjoint; others follow by rank.
    Eigen::VectorXd delta = ts_delta(basis);
    std::vector<IrrepBlock*> diag, comm, anti;
    for (auto& b : dec.blocks) {
      (b.pair_class == 0 ? diag : b.pair_class == 1 ? comm : anti).push_back(&b);
    }
    auto by_rank = [](IrrepBlock* a, IrrepBlock* b) { return a->rank < b->rank; };
    std::sort(diag.begin(), diag.end(), by_rank);
    std::sort(comm.begin(), comm.end(), by_rank);
    std::sort(anti.begin(), anti.end(), by_rank);

    bool labeled_tr = false;
    int next_diag = 1;
    for (auto* b : diag) {
      double fix = delta.dot(b->projector * delta);
      if (!labeled_tr && b->rank == 1 && std::abs(fix - 1.0) < 1e-9) {
        b->label = "tr";
        labeled_tr = true;
      } else {
        b->label = std::to_string(next_diag++);
      }
    }
    int next_comm = 1;
    for (auto* b : comm) {
      if (b->rank == basis.d * basis.d - 1) {
        b->label = "[adj]";
      } else {
        b->label = "[" + std::to_string(next_comm++) + "]";
      }
    }
    int next_anti = 1;
    for (auto* b : anti) {
      b->label = "{" + std::to_string(next_anti++) + "}";
    }
    if (!labeled_tr) continue;

    // Structural verification: idempotence, orthogonality, completeness,
    // commutation with sampled two-copy Clifford actions.
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    bool valid = true;
    for (const auto& b : dec.blocks) {
      if ((b.projector * b.projector - b.projector).norm() > kStructureTol) valid = false;
      sum += b.projector;
    }
    if ((sum - Eigen::MatrixXd::Identity(n, n)).norm() > kStructureTol) valid = false;
    std::mt19937_64 grng(seed ^ 0xabcdef12345ULL);
    std::uniform_int_distribution<size_t> pick(0, perms.size() - 1);
    for (int trial = 0; trial < 20 && valid; ++trial) {
      const auto& p = perms[pick(grng)];
      for (const auto& b : dec.blocks) {
        // || P phi(g) - phi(g) P ||_F with phi(g) a signed permutation.
        double dev = 0;
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            double lhs = b.projector(i, p.perm[j]) * p.sign[j];
            double rhs = p.sign[i] * b.projector(p.perm[i], j);
            dev += (lhs - rhs) * (lhs - rhs);
          }
        }
        if (std::sqrt(dev) > kStructureTol) valid = false;
      }
    }
    if (!valid) continue;
    return dec;
  }
  throw std::runtime_error("irreducible block extraction failed to stabilize");
}

std::vector<double> chi_coefficients(const Superoperator& e, const IrrepDecomposition& dec) {
  if (e.qubits != dec.qubits) throw std::invalid_argument("qubit count mismatch");
  Eigen::MatrixXd b = ts_restrict_two_copy(e);
  std::vector<double> chis;
  chis.reserve(dec.blocks.size());
  for (const auto& blk : dec.blocks) {
    chis.push_back((blk.projector * b).trace() / blk.rank);
  }
  return chis;
}

double exact_variance(const Superoperator& e, const EffectVec& q_eff,
                      const StateVec& nu, long long m, const IrrepDecomposition& dec,
                      VarianceRoute route) {
  if (e.qubits != dec.qubits || q_eff.qubits != e.qubits || nu.qubits != e.qubits) {
    throw std::invalid_argument("qubit count mismatch");
  }
  if (m < 1) throw std::invalid_argument("sequence length must be >= 1");
  if (std::abs(nu.coeffs(0)) > 1e-12) {
    throw std::invalid_argument("state difference nu must be traceless");
  }
  const TsBasis& basis = ts_basis(e.qubits);
  Eigen::VectorXd qt = q_eff.coeffs;
  qt(0) = 0;  // the identity component never reaches the traceless sector
  Eigen::VectorXd w = ts_pair_coords(basis, qt);
  Eigen::VectorXd v = ts_pair_coords(basis, nu.coeffs);
  double f = metrics(e).f;
  long double f2m = std::pow(static_cast<long double>(f * f), static_cast<long double>(m));

  if (route == VarianceRoute::kProjectors) {
    std::vector<double> chis = chi_coefficients(e, dec);
    long double total = 0;
    for (size_t i = 0; i < dec.blocks.size(); ++i) {
      long double chim = std::pow(static_cast<long double>(chis[i]),
                                  static_cast<long double>(m));
      long double weight = w.dot(dec.blocks[i].projector * v);
      total += weight * (chim - f2m);
    }
    return static_cast<double>(total);
  }

  // Twirl-power route: eigendecompose the (symmetric) twirled two-copy map
  // once, then power the eigenvalues.
  Eigen::MatrixXd t = two_copy_twirl_ts(e);
  Eigen::MatrixXd tsym = (t + t.transpose()) / 2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tsym);
  Eigen::VectorXd wl = es.eigenvalues();
  const Eigen::MatrixXd& vec = es.eigenvectors();
  Eigen::VectorXd left = vec.transpose() * w;
  Eigen::VectorXd right = vec.transpose() * v;
  long double total = 0;
  for (int i = 0; i < wl.size(); ++i) {
    long double lam = std::pow(static_cast<long double>(wl(i)),
                               static_cast<long double>(m));
    total += static_cast<long double>(left(i)) * static_cast<long double>(right(i)) * lam;
  }
  total -= f2m * static_cast<long double>(w.dot(v));
  return static_cast<double>(total);
}

double haar_limit_variance(const Superoperator& e, const EffectVec& q_eff,
                           const StateVec& nu, const IrrepDecomposition& dec) {
  ChannelMetrics m = metrics(e);
  if (std::abs(m.u - 1.0) > 1e-9) {
    throw std::invalid_argument("haar_limit_variance requires unitary noise (u = 1)");
  }
  if (m.f >= 1.0 - 1e-12) return 0.0;  // identity noise: zero variance
  // Reject Clifford conjugations: their transfer matrix is a signed
  // permutation, and products of conjugated copies never equidistribute.
  bool signed_perm = true;
  for (int i = 0; i < e.mat.rows() && signed_perm; ++i) {
    for (int j = 0; j < e.mat.cols(); ++j) {
      double a = std::abs(e.mat(i, j));
      if (a > 1e-9 && std::abs(a - 1.0) > 1e-9) {
        signed_perm = false;
        break;
      }
    }
  }
  if (signed_perm) {
    throw std::invalid_argument("haar_limit_variance requires non-Clifford noise");
  }
  const TsBasis& basis = ts_basis(e.qubits);
  Eigen::VectorXd qt = q_eff.coeffs;
  qt(0) = 0;
  Eigen::VectorXd w = ts_pair_coords(basis, qt);
  Eigen::VectorXd v = ts_pair_coords(basis, nu.coeffs);
  const Eigen::MatrixXd& ptr = dec.block("tr").projector;
  return w.dot(ptr * v);
}

}  // namespace rbkit
