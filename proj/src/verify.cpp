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

#include "rbkit/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "rbkit/bounds.hpp"
#include "rbkit/planner.hpp"
#include "rbkit/rng.hpp"
#include "rbkit/simulate.hpp"

namespace rbkit {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Superoperator random_single_qubit_channel(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0, 1);
  std::uniform_int_distribution<int> pick(0, 4);
  switch (pick(rng)) {
    case 0:
      return depolarizing(0.85 + 0.15 * uni(rng), 1);
    case 1:
      return unitary_channel(rotation_unitary("xyz"[pick(rng) % 3], 0.5 * uni(rng)));
    case 2:
      return amplitude_damping(0.1 * uni(rng));
    case 3: {
      double p = 0.05 * uni(rng), q = 0.05 * uni(rng);
      return pauli_channel({1 - p - q, q, 0, p}, 1);
    }
    default: {
      Superoperator a = unitary_channel(rotation_unitary('z', 0.4 * uni(rng)));
      Superoperator b = amplitude_damping(0.08 * uni(rng));
      double w = uni(rng);
      return convex_mix({{w, a}, {1 - w, compose(a, b)}});
    }
  }
}

}  // namespace

std::vector<Superoperator> channel_zoo(uint32_t qubits, int count, uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> uni(0, 1);
  std::vector<Superoperator> zoo;
  zoo.reserve(count);
  while (static_cast<int>(zoo.size()) < count) {
    if (qubits == 1) {
      zoo.push_back(random_single_qubit_channel(rng));
      continue;
    }
    // q = 2: tensor products, optionally conjugated by a random Clifford and
    // mixed with a collective depolarizing channel.
    Superoperator a = random_single_qubit_channel(rng);
    Superoperator b = random_single_qubit_channel(rng);
    Superoperator e = tensor(a, b);
    if (uni(rng) < 0.5) {
      Superoperator g = to_superoperator(sample_clifford_uniform(qubits, rng));
      e = compose(compose(adjoint_channel(g), e), g);
    }
    if (uni(rng) < 0.5) {
      double w = 0.7 + 0.3 * uni(rng);
      e = convex_mix({{w, e}, {1 - w, depolarizing(0.9 + 0.1 * uni(rng), qubits)}});
    }
    zoo.push_back(e);
  }
  return zoo;
}

std::vector<SpamPair> spam_zoo(const PauliOperator& target, int count, uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed ^ 0xabcdULL));
  std::uniform_real_distribution<double> uni(0, 1);
  std::vector<SpamPair> out;
  EffectVec qid = ideal_effect(target);
  StateVec nid = ideal_nu(target);
  for (int i = 0; i < count; ++i) {
    SpamPair p{qid, nid};
    auto perturb = [&](bool effect_side) {
      uint32_t q = target.qubits;
      Superoperator c = superop_identity(q);
      for (uint32_t w = 0; w < q; ++w) {
        Superoperator one =
            (uni(rng) < 0.5)
                ? unitary_channel(rotation_unitary("xyz"[i % 3], 0.3 * uni(rng)))
                : convex_mix({{0.95, superop_identity(1)},
                              {0.05, amplitude_damping(0.5 * uni(rng))}});
        Superoperator em = w == 0 ? one : superop_identity(w);
        if (w != 0) em = tensor(em, one);
        if (w + 1 < q) em = tensor(em, superop_identity(q - w - 1));
        c = compose(em, c);
      }
      if (effect_side) {
        p.q = apply_adjoint(c, qid);
      } else {
        p.nu = apply(c, nid);
      }
    };
    int mode = i % 3;  // effect only, state only, both
    if (mode == 0 || mode == 2) perturb(true);
    if (mode == 1 || mode == 2) perturb(false);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<CheckResult> verify_irreps(uint32_t qubits, int schur_channels,
                                       uint64_t seed) {
  std::vector<CheckResult> results;
  IrrepDecomposition dec = extract_irreps(qubits, seed);
  const TsBasis& basis = ts_basis(qubits);
  int n = basis.dim;

  {
    int rank_sum = 0;
    for (const auto& b : dec.blocks) rank_sum += b.rank;
    std::ostringstream os;
    os << dec.blocks.size() << " blocks, ranks";
    for (const auto& b : dec.blocks) os << ' ' << b.label << ':' << b.rank;
    results.push_back({"block structure", rank_sum == n && dec.has_block("tr"),
                       os.str()});
  }
  {
    // Completeness and pairwise orthogonality.
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    double worst = 0;
    for (size_t i = 0; i < dec.blocks.size(); ++i) {
      sum += dec.blocks[i].projector;
      for (size_t j = i + 1; j < dec.blocks.size(); ++j) {
        worst = std::max(worst,
                         (dec.blocks[i].projector * dec.blocks[j].projector).norm());
      }
    }
    double dev = (sum - Eigen::MatrixXd::Identity(n, n)).norm();
    results.push_back({"projector completeness",
                       dev < 1e-12 * n && worst < 1e-12 * n,
                       "sum deviation " + fmt(dev) + ", max cross product " + fmt(worst)});
  }
  {
    // Schur form on random channels, group-sum route against projector route.
    auto zoo = channel_zoo(qubits, schur_channels, seed + 1);
    double worst = 0;
    for (const auto& e : zoo) {
      Eigen::MatrixXd t = two_copy_twirl_ts(e);
      std::vector<double> chis = chi_coefficients(e, dec);
      Eigen::MatrixXd model = Eigen::MatrixXd::Zero(n, n);
      for (size_t i = 0; i < dec.blocks.size(); ++i) {
        model += chis[i] * dec.blocks[i].projector;
      }
      worst = std::max(worst, (t - model).norm());
    }
    results.push_back({"Schur form on random channels", worst < 1e-10,
                       "max Frobenius deviation " + fmt(worst)});
  }
  {
    // Diagonal-pair values: <<s s|P_i|s s>> = rank/(d^2-1) on diagonal-class
    // blocks and 0 elsewhere, for every Pauli s.
    double worst = 0;
    int d2 = basis.d * basis.d;
    for (int s = 1; s < d2; ++s) {
      int k = basis.index_of(s, s);
      for (const auto& b : dec.blocks) {
        double want = b.pair_class == 0 ? b.rank / static_cast<double>(d2 - 1) : 0.0;
        worst = std::max(worst, std::abs(b.projector(k, k) - want));
      }
    }
    results.push_back({"diagonal projector values", worst < 1e-10,
                       "max deviation " + fmt(worst)});
  }
  {
    // Dimension identity of the three classes for d in {2,4,8,16}.
    bool ok = true;
    for (int d : {2, 4, 8, 16}) {
      long long lhs = static_cast<long long>(d * d - 1) +
                      static_cast<long long>(d * d - 1) * (d * d / 2 - 2) / 2 +
                      static_cast<long long>(d * d - 1) * d * d / 4;
      long long rhs = static_cast<long long>(d * d - 1) * d * d / 2;
      if (lhs != rhs) ok = false;
    }
    results.push_back({"class dimension identity", ok, "d in {2,4,8,16}"});
  }
  {
    // Single-copy twirl projects every zoo channel onto its depolarizing part.
    auto zoo = channel_zoo(qubits, 10, seed + 2);
    double worst = 0;
    for (const auto& e : zoo) {
      Superoperator t = single_copy_twirl(e);
      Superoperator target = depolarizing(metrics(e).f, qubits);
      worst = std::max(worst, (t.mat - target.mat).norm());
    }
    results.push_back({"single-copy twirl is depolarizing", worst < 1e-12,
                       "max deviation " + fmt(worst)});
  }
  return results;
}

std::vector<CheckResult> verify_lemmas(uint32_t qubits, int channels, uint64_t seed) {
  std::vector<CheckResult> results;
  IrrepDecomposition dec = extract_irreps(qubits, seed);
  auto zoo = channel_zoo(qubits, channels, seed + 3);
  double chi_tr_dev = 0, chi_excess = 0, gap_excess = 0;
  double diag_lower_margin = 0, diag_upper_margin = 0;
  for (const auto& e : zoo) {
    LemmaReport rep = lemma_checks(e, dec);
    chi_tr_dev = std::max(chi_tr_dev, std::abs(rep.chi_tr_minus_u));
    chi_excess = std::max(chi_excess, rep.chi_max - rep.u);
    if (rep.r <= 1.0 / 3) {
      gap_excess = std::max(gap_excess, rep.chi_gap_max - rep.chi_gap_bound);
    }
    diag_lower_margin = std::max(diag_lower_margin, rep.diag_sq_lower - rep.diag_sq_mean);
    diag_upper_margin = std::max(diag_upper_margin, rep.diag_sq_mean - rep.diag_sq_upper);
  }
  results.push_back({"chi_tr equals unitarity", chi_tr_dev < 1e-12,
                     "max |chi_tr - u| = " + fmt(chi_tr_dev)});
  results.push_back({"chi below unitarity", chi_excess < 1e-10,
                     "max chi - u = " + fmt(chi_excess)});
  results.push_back({"chi within 2dr/(d-1) of f^2", gap_excess < 1e-10,
                     "max excess " + fmt(gap_excess)});
  results.push_back({"diagonal square-sum bounds",
                     diag_lower_margin < 1e-10 && diag_upper_margin < 1e-10,
                     "lower excess " + fmt(diag_lower_margin) + ", upper excess " +
                         fmt(diag_upper_margin)});
  {
    // The extremal Pauli channel saturates the upper diagonal bound: all
    // residual weight on a single non-identity Pauli.
    int d = 1 << qubits;
    double f = 0.97;
    double w = 1 - (d * d - 1) * f / (d * d) - 1.0 / (d * d);
    std::vector<double> probs(static_cast<size_t>(d) * d, 0.0);
    probs[0] = 1 - w;
    probs[3] = w;  // weight on Z-type Pauli
    Superoperator e = pauli_channel(probs, qubits);
    LemmaReport rep = lemma_checks(e, dec);
    double gap = std::abs(rep.diag_sq_mean - rep.diag_sq_upper);
    results.push_back({"extremal Pauli channel saturates upper bound", gap < 1e-9,
                       "gap " + fmt(gap)});
  }
  {
    // Telescoping identity, random inputs.
    std::mt19937_64 rng(seed + 4);
    std::uniform_real_distribution<double> uni(0, 1);
    double worst = 0;
    for (int t = 0; t < 200; ++t) {
      double a = uni(rng), b = uni(rng);
      long long m = 1 + static_cast<long long>(uni(rng) * 49);
      TelescopingSplit ts = telescoping_second_order(a, b, m);
      double direct = std::pow(a, m) - std::pow(b, m);
      double scale = std::max({1e-30, std::abs(direct)});
      worst = std::max(worst, std::abs(ts.linear + ts.quadratic - direct) / scale);
    }
    results.push_back({"telescoping identity", worst < 1e-12,
                       "max relative deviation " + fmt(worst)});
  }
  return results;
}

std::vector<CheckResult> verify_bounds_soundness(int combos_per_q, uint64_t seed) {
  std::vector<CheckResult> results;
  std::mt19937_64 rng(seed + 5);
  std::uniform_int_distribution<int> mpick(1, 200);
  int checked = 0;
  double ideal_excess = -1, spam_excess = -1, dominance_excess = -1, eta_excess = -1;
  for (uint32_t q : {1u, 2u}) {
    IrrepDecomposition dec = extract_irreps(q, seed);
    PauliOperator target = pauli_from_string(q == 1 ? "Z" : "ZZ");
    EffectVec qid = ideal_effect(target);
    StateVec nid = ideal_nu(target);
    auto zoo = channel_zoo(q, combos_per_q, seed + 6 + q);
    auto spams = spam_zoo(target, combos_per_q, seed + 7 + q);
    for (int i = 0; i < combos_per_q; ++i) {
      const Superoperator& e = zoo[i];
      ChannelMetrics met = metrics(e);
      if (met.r > 1.0 / 3) continue;
      long long m = mpick(rng);
      BoundInputs in{met.r, met.u, 1 << q, m, 0};
      double exact_ideal = exact_variance(e, qid, nid, m, dec);
      double b_free = variance_bound_spamfree(in);
      ideal_excess = std::max(ideal_excess, exact_ideal - b_free);
      dominance_excess = std::max(dominance_excess,
                                  b_free - variance_bound_small_m(in));
      const SpamPair& sp = spams[i];
      double eta = eta_exact(sp.q, sp.nu, target, dec);
      eta_excess = std::max(eta_excess, eta - eta_bound(sp.q, sp.nu, target));
      in.eta = eta;
      double exact_spam = exact_variance(e, sp.q, sp.nu, m, dec);
      spam_excess = std::max(spam_excess, exact_spam - variance_bound_spam(in));
      ++checked;
    }
  }
  results.push_back({"exact <= SPAM-free bound (ideal SPAM)", ideal_excess < 1e-12,
                     fmt(ideal_excess) + " worst excess over " + fmt(checked) +
                         " combos"});
  results.push_back({"exact <= SPAM bound (eta = eta_exact)", spam_excess < 1e-12,
                     "worst excess " + fmt(spam_excess)});
  results.push_back({"SPAM-free <= small-m bound", dominance_excess < 1e-12,
                     "worst excess " + fmt(dominance_excess)});
  results.push_back({"eta_exact <= eta_bound", eta_excess < 1e-12,
                     "worst excess " + fmt(eta_excess)});
  return results;
}

std::vector<CheckResult> verify_planner_roundtrip(uint64_t seed) {
  std::vector<CheckResult> results;
  std::mt19937_64 rng(seed + 8);
  std::uniform_real_distribution<double> uni(0, 1);
  {
    bool ok = true;
    for (int t = 0; t < 200; ++t) {
      double v2 = 1e-6 + 0.24 * uni(rng);
      double eps = 1e-3 + 0.5 * uni(rng);
      if (eps + v2 > 1) continue;
      if (!(hoeffding_h(v2, eps) < hoeffding_h(std::min(4 * v2, 1 - eps), eps) ||
            4 * v2 + eps > 1)) {
        ok = false;
      }
    }
    results.push_back({"H increasing in variance", ok, "random sweep"});
  }
  {
    bool ok = true;
    double delta = 0.01;
    for (int t = 0; t < 100; ++t) {
      double v2 = 1e-5 + 0.2 * uni(rng);
      double eps = 1e-2 + 0.3 * uni(rng);
      if (eps + v2 > 1) continue;
      SequenceCount sc = sequences_needed(delta, eps, v2);
      if (achieved_confidence(sc.n, eps, v2) > delta * (1 + 1e-9)) ok = false;
      double eps_back = achieved_halfwidth(sc.n, delta, v2);
      // Re-planning at the recovered half-width must not need more sequences.
      if (sequences_needed(delta, eps_back, v2).n > sc.n) ok = false;
    }
    results.push_back({"ceiling round-trip", ok, "confidence and half-width inversions"});
  }
  {
    bool ok = true;
    PlanRequest req;
    req.delta = 0.01;
    req.epsilon = 1e-2;
    req.m = 100;
    req.r = 1e-4;
    req.dim = 2;
    double f = 1 - req.dim * req.r / (req.dim - 1);
    req.u = (1 + f * f) / 2;
    PlanReport a = plan(req);
    req.epsilon = 2e-2;
    PlanReport b = plan(req);
    if (b.n > a.n) ok = false;  // N nonincreasing in epsilon
    req.epsilon = 1e-2;
    req.bound = BoundChoice::kTrivial;
    PlanReport c = plan(req);
    if (c.n < a.n) ok = false;  // trivial baseline dominates
    results.push_back({"plan monotonicity", ok,
                       "N(eps), trivial baseline ordering"});
  }
  return results;
}

std::vector<CheckResult> verify_montecarlo(uint64_t seed) {
  std::vector<CheckResult> results;
  PauliOperator target = pauli_from_string("Z");
  {
    // Depolarizing noise: every sequence gives the same value.
    RBConfig cfg;
    cfg.qubits = 1;
    cfg.m_list = {8};
    cfg.n_sequences = 200;
    cfg.noise = GateNoise::uniform(depolarizing(0.98, 1));
    cfg.target = target;
    cfg.nu = ideal_nu(target);
    cfg.effect = ideal_effect(target);
    cfg.seed = seed;
    DecayDataset ds = run_experiment(cfg);
    double want = 0.5 * std::pow(0.98, 8);
    bool ok = ds.points[0].sample_variance < 1e-28 &&
              std::abs(ds.points[0].mean - want) < 1e-12;
    results.push_back({"depolarizing sequences are deterministic", ok,
                       "variance " + fmt(ds.points[0].sample_variance)});
  }
  {
    // Same seed, same dataset; different thread counts agree bit for bit.
    RBConfig cfg;
    cfg.qubits = 1;
    cfg.m_list = {4, 9};
    cfg.n_sequences = 300;
    cfg.noise = GateNoise::uniform(
        unitary_channel(rotation_unitary('z', 0.2)));
    cfg.target = target;
    cfg.nu = ideal_nu(target);
    cfg.effect = ideal_effect(target);
    cfg.seed = seed + 1;
    cfg.threads = 1;
    DecayDataset a = run_experiment(cfg);
    cfg.threads = 4;
    DecayDataset b = run_experiment(cfg);
    bool ok = true;
    for (size_t i = 0; i < a.points.size(); ++i) {
      if (a.points[i].mean != b.points[i].mean ||
          a.points[i].sample_variance != b.points[i].sample_variance) {
        ok = false;
      }
    }
    results.push_back({"thread-count independent datasets", ok, ""});
  }
  {
    // MC sample variance against the exact value (3 standard errors).
    RBConfig cfg;
    cfg.qubits = 1;
    cfg.m_list = {10};
    cfg.n_sequences = 20000;
    cfg.noise = GateNoise::uniform(unitary_channel(rotation_unitary('z', 0.1)));
    cfg.target = target;
    cfg.nu = ideal_nu(target);
    cfg.effect = ideal_effect(target);
    cfg.seed = seed + 2;
    DecayDataset ds = run_experiment(cfg);
    IrrepDecomposition dec = extract_irreps(1, seed);
    double exact = exact_variance(cfg.noise.channel, cfg.effect, cfg.nu, 10, dec);
    // Standard error of a sample variance ~ exact * sqrt(2/(N-1)) for a
    // near-Gaussian population; keep a generous kurtosis factor.
    double se = exact * std::sqrt(2.0 / (cfg.n_sequences - 1)) * 2;
    bool ok = std::abs(ds.points[0].sample_variance - exact) < 3 * se;
    results.push_back({"sample variance matches exact variance", ok,
                       "sample " + fmt(ds.points[0].sample_variance) + " vs exact " +
                           fmt(exact)});
  }
  {
    // Finite shots: the state-difference estimator is at most half as noisy
    // as the worse of the two single-state estimators.
    std::mt19937_64 rng(seed + 3);
    GateNoise noise = GateNoise::uniform(
        convex_mix({{0.9, unitary_channel(rotation_unitary('x', 0.15))},
                    {0.1, amplitude_damping(0.05)}}));
    EffectVec q = ideal_effect(target);
    StateVec nu = ideal_nu(target);
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<CliffordElement> gates;
      for (int t = 0; t < 6; ++t) gates.push_back(sample_clifford_uniform(1, rng));
      // Shot-noise variances from the underlying probabilities.
      Eigen::VectorXd base = Eigen::VectorXd::Zero(4);
      base(0) = 1.0 / std::sqrt(2.0);
      StateVec rho_plus{1, base + nu.coeffs};
      StateVec rho_minus{1, base - nu.coeffs};
      double pp = run_sequence(gates, noise, q, rho_plus);
      double pm = run_sequence(gates, noise, q, rho_minus);
      double v_diff = (pp * (1 - pp) + pm * (1 - pm)) / 4;
      double v_single = std::max(pp * (1 - pp), pm * (1 - pm));
      if (v_diff > 0.5 * v_single + 1e-15) ok = false;
    }
    results.push_back({"state-difference shot-noise advantage", ok,
                       "per-sequence variance halved"});
  }
  return results;
}

}  // namespace rbkit
