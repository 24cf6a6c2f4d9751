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

#include "rbkit/bounds.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace rbkit {

namespace {

long double powl_safe(long double base, long long exp) {
  return std::pow(base, static_cast<long double>(exp));
}

void validate_inputs(const BoundInputs& in) {
  if (in.r < 0) throw std::domain_error("infidelity r must be nonnegative");
  if (in.r > 1.0 / 3.0 + 1e-15) {
    throw std::domain_error(
        "variance bounds are only valid for r <= 1/3 (the chi-versus-f^2 gap "
        "inequality fails beyond that); refusing to extrapolate");
  }
  if (in.dim < 2) throw std::domain_error("dimension must be >= 2");
  if (in.m < 1) throw std::domain_error("sequence length must be >= 1");
  double f = 1.0 - in.dim * in.r / (in.dim - 1.0);
  if (in.u < f * f - 1e-9 || in.u > 1 + 1e-9) {
    throw std::domain_error("unitarity must satisfy f^2 <= u <= 1");
  }
  if (in.eta < 0) throw std::domain_error("eta must be nonnegative");
}

long double linear_term_power(long double f, long long m, bool single_power) {
  return single_power ? powl_safe(f, m - 1) : powl_safe(f, 2 * (m - 1));
}

}  // namespace

TelescopingSplit telescoping_second_order(double a, double b, long long m) {
  if (m < 1) throw std::domain_error("m must be >= 1");
  TelescopingSplit out;
  long double la = a, lb = b;
  out.linear = static_cast<double>(m * powl_safe(lb, m - 1) * (la - lb));
  long double sum = 0;
  // sum_{s=2}^m (s-1) a^{m-s} b^{s-2}
  long double term = powl_safe(la, m - 2);  // s = 2
  for (long long s = 2; s <= m; ++s) {
    sum += (s - 1) * term;
    if (la != 0) {
      term = term / la * lb;
    } else {
      term = powl_safe(la, m - s - 1) * powl_safe(lb, s - 1);
    }
  }
  out.quadratic = static_cast<double>((la - lb) * (la - lb) * sum);
  return out;
}

double decay_weighted_series(double f, double u, long long m) {
  if (m < 1) throw std::domain_error("m must be >= 1");
  if (m == 1) return 0.0;
  long double lf = f, lu = u;
  long double f2 = lf * lf;
  if (u <= 0) {
    // Only the s = m term survives u^0; fall through to direct summation.
  } else {
    long double x = f2 / lu;
    long double one_minus_x = 1.0L - x;
    if (std::abs(static_cast<double>(one_minus_x)) < 1e-14) {
      return static_cast<double>(powl_safe(lu, m - 2) *
                                 (static_cast<long double>(m) * (m - 1) / 2.0L));
    }
    if (one_minus_x > 0 && m * one_minus_x > 30.0L) {
      // x^m is negligible against the cancellation scale; the closed form
      // ((m-1)x^m - m x^{m-1} + 1)/(1-x)^2 is safe here.
      long double xm1 = powl_safe(x, m - 1);
      long double num = (m - 1) * xm1 * x - m * xm1 + 1.0L;
      return static_cast<double>(powl_safe(lu, m - 2) * num / (one_minus_x * one_minus_x));
    }
  }
  // Direct extended-precision summation.
  long double sum = 0;
  long double term = powl_safe(lu, m - 2);  // s = 2: u^{m-2} f^0
  long double ratio = (u > 0) ? f2 / lu : 0.0L;
  for (long long s = 2; s <= m; ++s) {
    sum += (s - 1) * term;
    if (u > 0) {
      term *= ratio;
    } else {
      term = powl_safe(lu, m - s - 1) * powl_safe(f2, s - 1);
    }
  }
  return static_cast<double>(sum);
}

double variance_bound_spamfree(const BoundInputs& in, const VarianceBoundOptions& opts) {
  validate_inputs(in);
  long double d = in.dim;
  long double r = in.r;
  long double f = 1.0L - d * r / (d - 1.0L);
  long double first = (d * d - 2.0L) / (4.0L * (d - 1.0L) * (d - 1.0L)) * r * r *
                      static_cast<long double>(in.m) *
                      linear_term_power(f, in.m, opts.single_power_linear_term);
  long double second = d * d / ((d - 1.0L) * (d - 1.0L)) * r * r *
                       static_cast<long double>(
                           decay_weighted_series(static_cast<double>(f), in.u, in.m));
  return static_cast<double>(first + second);
}

double variance_bound_small_m(const BoundInputs& in, bool assume_u_one) {
  validate_inputs(in);
  long double d = in.dim;
  long double r = in.r;
  long double u = assume_u_one ? 1.0L : static_cast<long double>(in.u);
  long double first = (d * d - 2.0L) / (4.0L * (d - 1.0L) * (d - 1.0L)) * r * r;
  long double second = powl_safe(u, in.m - 2) * d * d *
                       static_cast<long double>(in.m) * (in.m - 1) /
                       (2.0L * (d - 1.0L) * (d - 1.0L)) * r * r;
  return static_cast<double>(first + second);
}

double variance_bound_spam(const BoundInputs& in, const VarianceBoundOptions& opts) {
  validate_inputs(in);
  long double d = in.dim;
  long double r = in.r;
  long double eta = in.eta;
  long double f = 1.0L - d * r / (d - 1.0L);
  long double fpow = linear_term_power(f, in.m, opts.single_power_linear_term);
  long double series = decay_weighted_series(static_cast<double>(f), in.u, in.m);
  long double first = (d * d - 2.0L) / (4.0L * (d - 1.0L) * (d - 1.0L)) * r * r *
                      static_cast<long double>(in.m) * fpow;
  long double u_term = d * d / ((d - 1.0L) * (d - 1.0L)) * r * r * series;
  long double spam_u, spam_linear;
  if (opts.unit_spam_weights) {
    spam_u = eta * r * r * series;
    spam_linear = eta * static_cast<long double>(in.m) * fpow * r;
  } else {
    spam_u = 4.0L * eta * u_term;
    spam_linear = 2.0L * eta * d * static_cast<long double>(in.m) * r / (d - 1.0L) * fpow;
  }
  return static_cast<double>(first + u_term + spam_u + spam_linear);
}

double eta_bound(const EffectVec& q, const StateVec& nu, const PauliOperator& target) {
  if (q.qubits != nu.qubits || q.qubits != target.qubits) {
    throw std::invalid_argument("qubit count mismatch");
  }
  EffectVec qid = ideal_effect(target);
  StateVec nid = ideal_nu(target);
  double a = (q.coeffs - qid.coeffs).norm();
  double b = (nu.coeffs - nid.coeffs).norm();
  double qn = qid.coeffs.norm();   // sqrt(d/2)
  double nn = nid.coeffs.norm();   // 1/sqrt(d)
  double cd, cs;
  if (target.qubits == 1) {
    cd = 2, cs = 1;
  } else if (target.qubits == 2) {
    cd = 3, cs = 4;
  } else {
    cd = 3, cs = 5;
  }
  double diag_part = qn * qn * b * b + a * a * nn * nn + a * a * b * b;
  double cross_part = a * b * (a * b + 2 * b * qn + 2 * a * nn + 4 * nn * qn);
  return cd * diag_part + cs * cross_part;
}

double eta_exact(const EffectVec& q, const StateVec& nu, const PauliOperator& target,
                 const IrrepDecomposition& dec) {
  if (q.qubits != dec.qubits || nu.qubits != dec.qubits ||
      target.qubits != dec.qubits) {
    throw std::invalid_argument("qubit count mismatch");
  }
  const TsBasis& basis = ts_basis(dec.qubits);
  Eigen::VectorXd qt = q.coeffs;
  qt(0) = 0;
  Eigen::VectorXd w = ts_pair_coords(basis, qt);
  Eigen::VectorXd v = ts_pair_coords(basis, nu.coeffs);
  int pidx = pauli_index(target);
  int diag_idx = basis.index_of(pidx, pidx);
  double qp = q.coeffs(pidx);
  double np = nu.coeffs(pidx);
  double total = 0;
  for (const auto& blk : dec.blocks) {
    double actual = w.dot(blk.projector * v);
    double ideal = qp * qp * np * np * blk.projector(diag_idx, diag_idx);
    total += std::abs(actual - ideal);
  }
  return total;
}

RegularRbTerm regular_rb_extra_term(double nonunitality, double u, long long m,
                                    int dim, double r) {
  if (m < 1) throw std::domain_error("m must be >= 1");
  if (u < 0 || u > 1 + 1e-12) throw std::domain_error("unitarity must be in [0, 1]");
  long double geom;
  if (std::abs(1.0 - u) < 1e-14) {
    geom = static_cast<long double>(m);
  } else {
    geom = (1.0L - powl_safe(u, m)) / (1.0L - static_cast<long double>(u));
  }
  RegularRbTerm out;
  out.value = static_cast<double>(0.25L * nonunitality * nonunitality * geom);
  long double d = dim;
  out.upper_bound = static_cast<double>((d + 1.0L) * (d + 1.0L) /
                                        (2.0L * d * d) * r * r * geom);
  return out;
}

LemmaReport lemma_checks(const Superoperator& e, const IrrepDecomposition& dec) {
  LemmaReport rep;
  ChannelMetrics met = metrics(e);
  rep.f = met.f;
  rep.r = met.r;
  rep.u = met.u;
  int n = e.basis_size();
  double d = e.dim();
  double sq = 0;
  for (int i = 1; i < n; ++i) sq += e.mat(i, i) * e.mat(i, i);
  rep.diag_sq_mean = sq / (n - 1);
  rep.diag_sq_lower = rep.f * rep.f;
  rep.diag_sq_upper = 1 - 2 * d * rep.r / (d - 1) + 2 * (d + 1) * rep.r * rep.r / (d - 1);
  std::vector<double> chis = chi_coefficients(e, dec);
  rep.chi_max = *std::max_element(chis.begin(), chis.end());
  for (size_t i = 0; i < chis.size(); ++i) {
    if (dec.blocks[i].label == "tr") rep.chi_tr_minus_u = chis[i] - rep.u;
    rep.chi_gap_max = std::max(rep.chi_gap_max, std::abs(chis[i] - rep.f * rep.f));
  }
  rep.chi_gap_bound = 2 * d * rep.r / (d - 1);
  const double tol = 1e-10;
  rep.diag_bounds_ok = rep.diag_sq_mean >= rep.diag_sq_lower - tol &&
                       rep.diag_sq_mean <= rep.diag_sq_upper + tol;
  rep.chi_le_u_ok = rep.chi_max <= rep.u + tol;
  rep.chi_gap_ok = rep.chi_gap_max <= rep.chi_gap_bound + tol;
  return rep;
}

AdversarialSweep adversarial_spam_demo(const IrrepDecomposition& dec_q1,
                                       const std::vector<double>& r_values,
                                       int random_directions, uint64_t seed,
                                       AdversarialNoise noise) {
  if (dec_q1.qubits != 1) {
    throw std::invalid_argument("the adversarial sweep is a single-qubit demo");
  }
  PauliOperator target = pauli_from_string("Z");
  StateVec nu = ideal_nu(target);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  // Measurement directions: random Bloch directions plus the axes (which
  // include the noise eigenbasis of a z rotation).
  std::vector<Eigen::Vector3d> dirs;
  dirs.emplace_back(1, 0, 0);
  dirs.emplace_back(0, 1, 0);
  dirs.emplace_back(0, 0, 1);
  dirs.emplace_back(1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0);
  dirs.emplace_back(1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0));
  for (int k = 0; k < random_directions; ++k) {
    Eigen::Vector3d v(gauss(rng), gauss(rng), gauss(rng));
    if (v.norm() < 1e-9) continue;
    dirs.push_back(v.normalized());
  }

  AdversarialSweep sweep;
  sweep.r_values = r_values;
  const TsBasis& basis = ts_basis(1);
  for (double r : r_values) {
    Superoperator e;
    if (noise == AdversarialNoise::kRotation) {
      double theta = std::acos(1 - 3 * r);  // r = (1 - cos theta) / 3
      e = unitary_channel(rotation_unitary('z', theta));
    } else {
      e = depolarizing(1 - 2 * r, 1);  // f = 1 - dr/(d-1) at d = 2
    }
    std::vector<double> chis = chi_coefficients(e, dec_q1);
    double f = metrics(e).f;
    Eigen::VectorXd v = ts_pair_coords(basis, nu.coeffs);
    double best = 0;
    for (const auto& dir : dirs) {
      // Q = (1 + n.sigma)/2: traceless coefficients sqrt(d)/2 * n.
      Eigen::VectorXd qt = Eigen::VectorXd::Zero(4);
      double scale = std::sqrt(2.0) / 2;
      qt(1) = scale * dir(0);
      qt(2) = scale * dir(1);
      qt(3) = scale * dir(2);
      Eigen::VectorXd w = ts_pair_coords(basis, qt);
      double v2 = 0;
      for (size_t i = 0; i < dec_q1.blocks.size(); ++i) {
        v2 += w.dot(dec_q1.blocks[i].projector * v) * (chis[i] - f * f);
      }
      best = std::max(best, v2);
    }
    sweep.max_variance.push_back(best);
  }
  // Log-log regression of max variance against r.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (size_t i = 0; i < sweep.r_values.size(); ++i) {
    if (sweep.max_variance[i] <= 0) continue;
    double x = std::log(sweep.r_values[i]);
    double y = std::log(sweep.max_variance[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++cnt;
  }
  sweep.loglog_slope = cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0;
  return sweep;
}

}  // namespace rbkit
