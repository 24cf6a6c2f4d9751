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

#include <optional>
#include <vector>

#include "rbkit/bounds.hpp"
#include "rbkit/superop.hpp"
#include "rbkit/twirl.hpp"

namespace rbkit {

/// Gate noise model.
///
/// Uniform model: every random gate is implemented as E o G (noise after the
/// gate); the closing inversion gate is applied ideally, so a sequence of
/// length m carries exactly m noise applications and the sequence average
/// decays as f(E)^m with amplitude <<Q|nu>>.
///
/// Two-sided model: every applied gate, the inversion included, becomes
/// L o G o R. The decay rate is then governed by f(R o L); the outer L and R
/// act like fixed SPAM on the measurement and preparation.
struct GateNoise {
  bool two_sided = false;
  Superoperator channel;             // uniform model
  Superoperator left, right;         // two-sided model

  static GateNoise uniform(Superoperator e);
  static GateNoise sandwich(Superoperator l, Superoperator r);
  uint32_t qubits() const { return two_sided ? left.qubits : channel.qubits; }
  /// The channel whose (r, u) enter the variance bounds: E or R o L.
  Superoperator effective_channel() const;
};

struct RBConfig {
  uint32_t qubits = 1;
  std::vector<long long> m_list;
  int n_sequences = 100;            // N, sequences per m (>= 2 for a variance)
  GateNoise noise;
  PauliOperator target;             // the protocol's target Pauli
  StateVec nu;                      // state difference (traceless)
  EffectVec effect;                 // measured POVM element Q
  uint64_t seed = 1;
  long long shots = 0;              // <= 0 means exact expectation (L = infinity)
  int threads = 0;                  // 0 means hardware default
  bool keep_sequence_values = false;
};

struct DecayPoint {
  long long m = 0;
  double mean = 0;              // K_{m,N}
  double sample_variance = 0;   // unbiased across sequences
  int n_sequences = 0;
  std::vector<double> sequence_values;  // kept on request
};

struct DecayDataset {
  uint32_t qubits = 1;
  uint64_t seed = 0;
  long long shots = 0;
  std::vector<DecayPoint> points;
};

/// k_m for one explicit gate sequence (exact expectation).
double run_sequence(const std::vector<CliffordElement>& gates, const GateNoise& noise,
                    const EffectVec& q, const StateVec& nu);

/// Finite-shot variant: each of the two preparations (1/d +- nu) is measured
/// `shots` times and the two empirical frequencies are differenced.
double run_sequence_shots(const std::vector<CliffordElement>& gates,
                          const GateNoise& noise, const EffectVec& q,
                          const StateVec& nu, long long shots, std::mt19937_64& rng);

/// Full protocol run: per m, n_sequences uniform random sequences, their
/// empirical mean and unbiased sample variance. Bit-reproducible from the
/// seed, independent of the thread count (per-sequence RNG streams, fixed
/// reduction order).
DecayDataset run_experiment(const RBConfig& cfg);

/// Exact E[K_m] (sequence average over the whole group) for this noise model:
/// f^m times the overlap of the effective measurement and preparation.
double expected_mean(const GateNoise& noise, const EffectVec& q, const StateVec& nu,
                     long long m);

struct FitResult {
  double amplitude = 0;   // A
  double f = 0;           // fitted decay
  double r = 0;           // (1 - f)(d - 1)/d
  double weighted_ssr = 0;
  int points_used = 0;
};

/// Weighted least squares of the means against A f^m, weights
/// n/max(sample_variance, floor); seeded by a log-domain regression and
/// refined by Gauss-Newton. Needs >= 2 distinct m with positive means.
FitResult fit_decay(const std::vector<DecayPoint>& points, int dim);

struct VarianceComparisonRow {
  long long m = 0;
  double empirical_variance = 0;
  double exact_variance = 0;      // NaN when unavailable (q > 2)
  double bound_spamfree = 0;
  double bound_small_m = 0;
  double bound_spam = 0;
  double trivial_quarter = 0.25;
};

/// Per-m comparison of the empirical across-sequence variance with the exact
/// value and the closed-form bounds (exact column needs q <= 2).
std::vector<VarianceComparisonRow> empirical_vs_bound(const RBConfig& cfg,
                                                      double eta_for_bounds = 0);

}  // namespace rbkit
