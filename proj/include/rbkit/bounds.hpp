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

#include <vector>

#include "rbkit/superop.hpp"
#include "rbkit/twirl.hpp"

namespace rbkit {

/// Inputs to the closed-form variance bounds.
struct BoundInputs {
  double r = 0;       // average infidelity, 0 <= r <= 1/3
  double u = 1;       // unitarity, f^2 <= u <= 1
  int dim = 2;        // Hilbert-space dimension d = 2^q
  long long m = 1;    // sequence length
  double eta = 0;     // SPAM factor, >= 0
};

/// Evaluation options for the closed-form bounds.
///
/// The m f-power term of the bound is derived with f^{2(m-1)}; setting
/// `single_power_linear_term` evaluates the weaker f^{m-1} variant instead.
///
/// The SPAM terms are derived with weights (1+4 eta) on the u-term and
/// 2 d eta / (d-1) on the linear term; `unit_spam_weights` replaces both
/// weights by eta alone. That variant is NOT a certified upper bound (it can
/// undercut the exact variance for coherent noise with skewed SPAM), but it
/// is the form behind commonly quoted sequence-count tables, so the planner
/// reports it alongside the certified value.
struct VarianceBoundOptions {
  bool single_power_linear_term = false;
  bool unit_spam_weights = false;
};

/// Second-order telescoping split of a^m - b^m:
///   linear    = m b^{m-1} (a - b)
///   quadratic = (a-b)^2 sum_{s=2}^m (s-1) a^{m-s} b^{s-2}
/// linear + quadratic equals a^m - b^m exactly.
struct TelescopingSplit {
  double linear = 0;
  double quadratic = 0;
};
TelescopingSplit telescoping_second_order(double a, double b, long long m);

/// sum_{s=2}^m (s-1) u^{m-s} f^{2(s-2)}, evaluated by closed form away from
/// the u -> f^2 degeneracy and by direct extended-precision summation near it
/// (the closed fraction cancels catastrophically there; the limit value is
/// m(m-1)/2).
double decay_weighted_series(double f, double u, long long m);

/// SPAM-free variance bound:
///   (d^2-2)/(4(d-1)^2) r^2 m f^{2(m-1)} + d^2/(d-1)^2 r^2 B(f, u, m).
/// Refuses r > 1/3 (the chi-versus-f^2 gap lemma needs it).
double variance_bound_spamfree(const BoundInputs& in,
                               const VarianceBoundOptions& opts = {});

/// Weaker, unitarity-optional bound:
///   (d^2-2)/(4(d-1)^2) r^2 + u^{m-2} d^2 m(m-1)/(2(d-1)^2) r^2,
/// with u = 1 when assume_u_one is set.
double variance_bound_small_m(const BoundInputs& in, bool assume_u_one = false);

/// SPAM-aware bound: the SPAM-free bound plus
///   4 eta * [u-term] + 2 eta d m r/(d-1) f^{2(m-1)}
/// (or the unit-weight variant, see VarianceBoundOptions). Reduces exactly to
/// the SPAM-free bound at eta = 0.
double variance_bound_spam(const BoundInputs& in,
                           const VarianceBoundOptions& opts = {});

/// Closed-form SPAM factor bound from the deviation norms
/// a = ||Q - Q_id||_2, b = ||nu - nu_id||_2:
///   c_d [ ||Q_id||^2 b^2 + a^2 ||nu_id||^2 + a^2 b^2 ]
/// + c_s [ a b (a b + 2 b ||Q_id|| + 2 a ||nu_id|| + 4 ||nu_id|| ||Q_id||) ]
/// with block-class counts (c_d, c_s) = (2,1) for q=1, (3,4) for q=2 and
/// (3,5) for q>=3. Zero at ideal SPAM.
double eta_bound(const EffectVec& q, const StateVec& nu, const PauliOperator& target);

/// Exact SPAM factor sum_i |<<Q x Q|P_i|nu x nu>> - Q_P^2 nu_P^2
/// <<sigma_P x sigma_P|P_i|sigma_P x sigma_P>>|; always <= eta_bound.
double eta_exact(const EffectVec& q, const StateVec& nu, const PauliOperator& target,
                 const IrrepDecomposition& dec);

/// Extra variance term arising when benchmarking with a state instead of a
/// state difference: T = (1/4) ||E(1/d) - 1/d||_2^2 (1-u^m)/(1-u), together
/// with its closed upper bound (d+1)^2/(2 d^2) r^2 (1-u^m)/(1-u).
struct RegularRbTerm {
  double value = 0;
  double upper_bound = 0;
};
RegularRbTerm regular_rb_extra_term(double nonunitality, double u, long long m,
                                    int dim, double r);

/// Diagnostic report for the channel-level inequalities backing the bounds.
struct LemmaReport {
  double f = 1, r = 0, u = 1;
  double diag_sq_mean = 1;     // (1/(d^2-1)) sum_tau E_tau,tau^2
  double diag_sq_lower = 1;    // f^2
  double diag_sq_upper = 1;    // 1 - 2dr/(d-1) + 2(d+1)r^2/(d-1)
  double chi_max = 1;          // max_i chi_i
  double chi_tr_minus_u = 0;   // chi_tr - u (identically ~0)
  double chi_gap_max = 0;      // max_i |chi_i - f^2|
  double chi_gap_bound = 0;    // 2dr/(d-1)
  bool diag_bounds_ok = false;
  bool chi_le_u_ok = false;
  bool chi_gap_ok = false;     // only meaningful for r <= 1/3
};
LemmaReport lemma_checks(const Superoperator& e, const IrrepDecomposition& dec);

/// Max-over-measurement variance sweep at m = 1 demonstrating the linear-in-r
/// scaling for coherent noise with free measurement direction (and the
/// quadratic floor for depolarizing noise).
struct AdversarialSweep {
  std::vector<double> r_values;
  std::vector<double> max_variance;
  double loglog_slope = 0;
};
enum class AdversarialNoise { kRotation, kDepolarizing };
AdversarialSweep adversarial_spam_demo(const IrrepDecomposition& dec_q1,
                                       const std::vector<double>& r_values,
                                       int random_directions, uint64_t seed,
                                       AdversarialNoise noise = AdversarialNoise::kRotation);

}  // namespace rbkit
