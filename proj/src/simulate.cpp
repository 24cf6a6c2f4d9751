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

#include "rbkit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "rbkit/rng.hpp"

namespace rbkit {

namespace {

void apply_signed_perm(const SignedPermutationSuperop& sp, Eigen::VectorXd& v,
                       Eigen::VectorXd& scratch) {
  int n = static_cast<int>(sp.perm.size());
  for (int i = 0; i < n; ++i) scratch(sp.perm[i]) = sp.sign[i] * v(i);
  v.swap(scratch);
}

int resolved_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

// Propagate a coefficient vector through the noisy sequence plus inversion.
void propagate(const std::vector<SignedPermutationSuperop>& perms,
               const SignedPermutationSuperop& inv_perm, const GateNoise& noise,
               Eigen::VectorXd& v, Eigen::VectorXd& scratch) {
  if (!noise.two_sided) {
    for (const auto& sp : perms) {
      apply_signed_perm(sp, v, scratch);
      v = noise.channel.mat * v;
    }
    apply_signed_perm(inv_perm, v, scratch);
  } else {
    for (const auto& sp : perms) {
      v = noise.right.mat * v;
      apply_signed_perm(sp, v, scratch);
      v = noise.left.mat * v;
    }
    v = noise.right.mat * v;
    apply_signed_perm(inv_perm, v, scratch);
    v = noise.left.mat * v;
  }
}

struct SequenceContext {
  std::vector<SignedPermutationSuperop> perms;
  SignedPermutationSuperop inv_perm;
};

SequenceContext build_sequence(const std::vector<CliffordElement>& gates) {
  if (gates.empty()) throw std::invalid_argument("sequence must contain gates");
  SequenceContext ctx;
  ctx.perms.reserve(gates.size());
  CliffordElement total = gates[0];
  ctx.perms.push_back(clifford_to_ptm(gates[0]));
  for (size_t t = 1; t < gates.size(); ++t) {
    ctx.perms.push_back(clifford_to_ptm(gates[t]));
    total = compose(gates[t], total);
  }
  ctx.inv_perm = clifford_to_ptm(invert(total));
  return ctx;
}

double evaluate_sequence(const SequenceContext& ctx, const GateNoise& noise,
                         const EffectVec& q, const StateVec& nu, long long shots,
                         std::mt19937_64* rng) {
  int n = static_cast<int>(q.coeffs.size());
  Eigen::VectorXd scratch(n);
  if (shots <= 0) {
    Eigen::VectorXd v = nu.coeffs;
    propagate(ctx.perms, ctx.inv_perm, noise, v, scratch);
    return q.coeffs.dot(v);
  }
  // Finite shots: measure the two preparations 1/d +- nu separately.
  double d = static_cast<double>(1 << q.qubits);
  Eigen::VectorXd base = Eigen::VectorXd::Zero(n);
  base(0) = 1.0 / std::sqrt(d);
  double p[2];
  for (int s = 0; s < 2; ++s) {
    Eigen::VectorXd v = s == 0 ? (base + nu.coeffs).eval() : (base - nu.coeffs).eval();
    propagate(ctx.perms, ctx.inv_perm, noise, v, scratch);
    p[s] = clamp01(q.coeffs.dot(v));
  }
  std::binomial_distribution<long long> bplus(shots, p[0]);
  std::binomial_distribution<long long> bminus(shots, p[1]);
  double phat_plus = static_cast<double>(bplus(*rng)) / shots;
  double phat_minus = static_cast<double>(bminus(*rng)) / shots;
  return (phat_plus - phat_minus) / 2;
}

}  // namespace

GateNoise GateNoise::uniform(Superoperator e) {
  GateNoise n;
  n.two_sided = false;
  n.channel = std::move(e);
  return n;
}

GateNoise GateNoise::sandwich(Superoperator l, Superoperator r) {
  if (l.qubits != r.qubits) throw std::invalid_argument("qubit count mismatch");
  GateNoise n;
  n.two_sided = true;
  n.left = std::move(l);
  n.right = std::move(r);
  return n;
}

Superoperator GateNoise::effective_channel() const {
  return two_sided ? compose(right, left) : channel;
}

double run_sequence(const std::vector<CliffordElement>& gates, const GateNoise& noise,
                    const EffectVec& q, const StateVec& nu) {
  if (noise.qubits() != q.qubits || q.qubits != nu.qubits) {
    throw std::invalid_argument("dimension mismatch between noise, Q and nu");
  }
  SequenceContext ctx = build_sequence(gates);
  return evaluate_sequence(ctx, noise, q, nu, 0, nullptr);
}

double run_sequence_shots(const std::vector<CliffordElement>& gates,
                          const GateNoise& noise, const EffectVec& q,
                          const StateVec& nu, long long shots, std::mt19937_64& rng) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  SequenceContext ctx = build_sequence(gates);
  return evaluate_sequence(ctx, noise, q, nu, shots, &rng);
}

DecayDataset run_experiment(const RBConfig& cfg) {
  if (cfg.m_list.empty()) throw std::invalid_argument("m_list must not be empty");
  if (cfg.n_sequences < 2) {
    throw std::invalid_argument("need at least 2 sequences for a sample variance");
  }
  if (std::abs(cfg.nu.coeffs(0)) > 1e-12) {
    throw std::invalid_argument("state difference nu must be traceless");
  }
  DecayDataset ds;
  ds.qubits = cfg.qubits;
  ds.seed = cfg.seed;
  ds.shots = cfg.shots;
  int threads = resolved_threads(cfg.threads);

  for (long long m : cfg.m_list) {
    if (m < 1) throw std::invalid_argument("sequence lengths must be >= 1");
    std::vector<double> ks(cfg.n_sequences);
    auto worker = [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i) {
        std::mt19937_64 rng = derive_stream(cfg.seed, static_cast<uint64_t>(m),
                                            static_cast<uint64_t>(i));
        std::vector<CliffordElement> gates;
        gates.reserve(m);
        for (long long t = 0; t < m; ++t) {
          gates.push_back(sample_clifford_uniform(cfg.qubits, rng));
        }
        SequenceContext ctx = build_sequence(gates);
        std::mt19937_64 shot_rng = derive_stream(cfg.seed, static_cast<uint64_t>(m),
                                                 static_cast<uint64_t>(i), 1);
        ks[i] = evaluate_sequence(ctx, cfg.noise, cfg.effect, cfg.nu, cfg.shots,
                                  &shot_rng);
      }
    };
    if (threads <= 1 || cfg.n_sequences < 64) {
      worker(0, cfg.n_sequences);
    } else {
      std::vector<std::future<void>> futs;
      int per = (cfg.n_sequences + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        int lo = t * per, hi = std::min(cfg.n_sequences, (t + 1) * per);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, worker, lo, hi));
      }
      for (auto& f : futs) f.get();
    }
    // Fixed-order reduction (index order), so results never depend on the
    // thread count.
    long double sum = 0;
    for (double k : ks) sum += k;
    double mean = static_cast<double>(sum / cfg.n_sequences);
    long double sq = 0;
    for (double k : ks) sq += (k - mean) * static_cast<long double>(k - mean);
    DecayPoint pt;
    pt.m = m;
    pt.mean = mean;
    pt.sample_variance = static_cast<double>(sq / (cfg.n_sequences - 1));
    pt.n_sequences = cfg.n_sequences;
    if (cfg.keep_sequence_values) pt.sequence_values = std::move(ks);
    ds.points.push_back(std::move(pt));
  }
  return ds;
}

double expected_mean(const GateNoise& noise, const EffectVec& q, const StateVec& nu,
                     long long m) {
  Superoperator eff = noise.effective_channel();
  double f = metrics(eff).f;
  Eigen::VectorXd qeff = q.coeffs;
  Eigen::VectorXd nueff = nu.coeffs;
  if (noise.two_sided) {
    qeff = noise.left.mat.transpose() * qeff;
    nueff = noise.right.mat * nueff;
  }
  qeff(0) = 0;
  return std::pow(f, static_cast<double>(m)) * qeff.dot(nueff);
}

FitResult fit_decay(const std::vector<DecayPoint>& points, int dim) {
  std::vector<const DecayPoint*> pts;
  for (const auto& p : points) pts.push_back(&p);
  std::sort(pts.begin(), pts.end(),
            [](const DecayPoint* a, const DecayPoint* b) { return a->m < b->m; });
  long long last_m = -1;
  int distinct = 0;
  for (const auto* p : pts) {
    if (p->m != last_m) ++distinct;
    last_m = p->m;
  }
  if (distinct < 2) {
    throw std::invalid_argument("fit needs at least two distinct sequence lengths");
  }
  constexpr double kVarianceFloor = 1e-24;
  auto weight = [&](const DecayPoint& p) {
    return p.n_sequences / std::max(p.sample_variance, kVarianceFloor);
  };

  // Log-domain seed from the positive means.
  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  int positive = 0;
  for (const auto* p : pts) {
    if (p->mean <= 0) continue;
    ++positive;
    double w = weight(*p) * p->mean * p->mean;  // delta-method weight in log space
    double x = static_cast<double>(p->m);
    double y = std::log(p->mean);
    sw += w;
    swx += w * x;
    swy += w * y;
    swxx += w * x * x;
    swxy += w * x * y;
  }
  if (positive == 0) {
    throw std::invalid_argument("all means are nonpositive; nothing to fit");
  }
  double a0, f0;
  double det = sw * swxx - swx * swx;
  if (positive >= 2 && std::abs(det) > 1e-300) {
    double slope = (sw * swxy - swx * swy) / det;
    double inter = (swy - slope * swx) / sw;
    f0 = std::exp(slope);
    a0 = std::exp(inter);
  } else {
    f0 = 0.9;
    a0 = pts.front()->mean;
  }

  // Gauss-Newton on sum_m w (K_m - A f^m)^2.
  double A = a0, f = std::min(f0, 0.999999);
  double prev_ssr = -1;
  for (int it = 0; it < 100; ++it) {
    double j11 = 0, j12 = 0, j22 = 0, g1 = 0, g2 = 0, ssr = 0;
    for (const auto* p : pts) {
      double w = weight(*p);
      double fm = std::pow(f, static_cast<double>(p->m));
      double resid = p->mean - A * fm;
      double dA = -fm;
      double df = -A * p->m * std::pow(f, static_cast<double>(p->m - 1));
      j11 += w * dA * dA;
      j12 += w * dA * df;
      j22 += w * df * df;
      g1 += w * dA * resid;
      g2 += w * df * resid;
      ssr += w * resid * resid;
    }
    double det2 = j11 * j22 - j12 * j12;
    if (std::abs(det2) < 1e-300) break;
    double stepA = -(j22 * g1 - j12 * g2) / det2;
    double stepf = -(-j12 * g1 + j11 * g2) / det2;
    // Backtracking in case the full step overshoots.
    double scale = 1.0;
    double bestA = A, bestf = f, best_ssr = ssr;
    for (int bt = 0; bt < 20; ++bt) {
      double cA = A + scale * stepA;
      double cf = f + scale * stepf;
      if (cf > -1 && cf <= 1.5) {
        double cssr = 0;
        for (const auto* p : pts) {
          double resid = p->mean - cA * std::pow(cf, static_cast<double>(p->m));
          cssr += weight(*p) * resid * resid;
        }
        if (cssr < best_ssr) {
          bestA = cA;
          bestf = cf;
          best_ssr = cssr;
          break;
        }
      }
      scale /= 2;
    }
    if (best_ssr >= ssr - std::abs(ssr) * 1e-15 && it > 0) {
      prev_ssr = ssr;
      break;
    }
    A = bestA;
    f = bestf;
    prev_ssr = best_ssr;
  }

  FitResult out;
  out.amplitude = A;
  out.f = f;
  out.r = (1 - f) * (dim - 1) / dim;
  out.weighted_ssr = prev_ssr < 0 ? 0 : prev_ssr;
  out.points_used = static_cast<int>(pts.size());
  return out;
}

std::vector<VarianceComparisonRow> empirical_vs_bound(const RBConfig& cfg,
                                                      double eta_for_bounds) {
  DecayDataset ds = run_experiment(cfg);
  Superoperator eff = cfg.noise.effective_channel();
  ChannelMetrics met = metrics(eff);
  bool exact_available = cfg.qubits <= 2;
  IrrepDecomposition dec;
  if (exact_available) dec = extract_irreps(cfg.qubits);

  std::vector<VarianceComparisonRow> rows;
  for (const auto& pt : ds.points) {
    VarianceComparisonRow row;
    row.m = pt.m;
    row.empirical_variance = pt.sample_variance;
    if (exact_available) {
      EffectVec qeff = cfg.effect;
      StateVec nueff = cfg.nu;
      if (cfg.noise.two_sided) {
        qeff.coeffs = cfg.noise.left.mat.transpose() * qeff.coeffs;
        nueff.coeffs = cfg.noise.right.mat * nueff.coeffs;
      }
      row.exact_variance = exact_variance(eff, qeff, nueff, pt.m, dec);
    } else {
      row.exact_variance = std::numeric_limits<double>::quiet_NaN();
    }
    BoundInputs in{met.r, met.u, 1 << cfg.qubits, pt.m, eta_for_bounds};
    row.bound_spamfree = variance_bound_spamfree(in);
    row.bound_small_m = variance_bound_small_m(in);
    row.bound_spam = variance_bound_spam(in);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rbkit
