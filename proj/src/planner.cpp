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

#include "rbkit/planner.hpp"

#include <cmath>
#include <stdexcept>

namespace rbkit {

namespace {

long double log_h(long double v2, long double eps) {
  // log H = [ (1-e) log(1/(1-e)) + (v+e) log(v/(v+e)) ] / (v+1)
  long double first = (1.0L - eps) * (-std::log1p(-eps));
  long double second = (v2 + eps) * (std::log(v2) - std::log(v2 + eps));
  return (first + second) / (v2 + 1.0L);
}

void check_domain(double v2, double epsilon) {
  if (!(v2 > 0)) throw std::domain_error("variance must be positive");
  if (!(epsilon > 0 && epsilon < 1)) {
    throw std::domain_error("epsilon must lie in (0, 1)");
  }
  if (epsilon + v2 > 1 + 1e-12) {
    throw std::domain_error("epsilon + V^2 must not exceed 1");
  }
}

}  // namespace

double hoeffding_h(double v2, double epsilon) {
  check_domain(v2, epsilon);
  return static_cast<double>(std::exp(log_h(v2, epsilon)));
}

SequenceCount sequences_needed(double delta, double epsilon, double v2) {
  check_domain(v2, epsilon);
  if (!(delta > 0 && delta < 1)) throw std::domain_error("delta must lie in (0, 1)");
  long double lh = log_h(v2, epsilon);
  if (!(lh < 0)) throw std::domain_error("H >= 1: requested interval is unattainable");
  SequenceCount out;
  long double raw = std::log(2.0L / delta) / (-lh);
  out.raw = static_cast<double>(raw);
  out.n = static_cast<long long>(std::ceil(raw - 1e-9L));
  if (out.n < 1) out.n = 1;
  return out;
}

double achieved_confidence(long long n, double epsilon, double v2) {
  check_domain(v2, epsilon);
  if (n < 1) throw std::domain_error("n must be >= 1");
  long double val = 2.0L * std::exp(log_h(v2, epsilon) * n);
  return static_cast<double>(val > 1.0L ? 1.0L : val);
}

double achieved_halfwidth(long long n, double delta, double v2) {
  if (!(delta > 0 && delta < 1)) throw std::domain_error("delta must lie in (0, 1)");
  if (!(v2 > 0 && v2 < 1)) throw std::domain_error("variance must lie in (0, 1)");
  double hi = 1 - v2;
  if (achieved_confidence(n, hi, v2) > delta) {
    throw std::domain_error("no epsilon in (0, 1 - V^2] reaches the target confidence");
  }
  double lo = 1e-12;
  for (int it = 0; it < 200; ++it) {
    double mid = (lo + hi) / 2;
    if (achieved_confidence(n, mid, v2) <= delta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

PlanReport plan(const PlanRequest& req) {
  PlanReport rep;
  BoundInputs in{req.r, req.u, req.dim, req.m, req.eta};
  switch (req.bound) {
    case BoundChoice::kSpamFree:
      rep.variance_used = variance_bound_spamfree(in, req.bound_options);
      break;
    case BoundChoice::kSmallM:
      rep.variance_used = variance_bound_small_m(in);
      break;
    case BoundChoice::kSpam:
      rep.variance_used = variance_bound_spam(in, req.bound_options);
      break;
    case BoundChoice::kTrivial:
      rep.variance_used = 0.25;
      break;
    case BoundChoice::kExplicit:
      if (!(req.explicit_v2 > 0)) {
        throw std::domain_error("explicit variance must be positive");
      }
      rep.variance_used = req.explicit_v2;
      break;
  }
  if (rep.variance_used <= 0) {
    // A zero variance bound (r = 0 and eta = 0) needs no averaging at all.
    rep.n = 1;
    rep.n_raw = 0;
    rep.h = 0;
    rep.notes.push_back("variance bound is zero; a single sequence suffices");
  } else {
    rep.h = hoeffding_h(rep.variance_used, req.epsilon);
    SequenceCount sc = sequences_needed(req.delta, req.epsilon, rep.variance_used);
    rep.n_raw = sc.raw;
    rep.n = sc.n;
  }
  SequenceCount trivial = sequences_needed(req.delta, req.epsilon, 0.25);
  rep.n_trivial_raw = trivial.raw;
  rep.n_trivial = trivial.n;
  if (req.bound == BoundChoice::kSpam && !req.bound_options.unit_spam_weights) {
    VarianceBoundOptions unit = req.bound_options;
    unit.unit_spam_weights = true;
    rep.has_unit_weight_alternative = true;
    rep.unit_weight_variance = variance_bound_spam(in, unit);
    if (rep.unit_weight_variance > 0) {
      SequenceCount sc = sequences_needed(req.delta, req.epsilon, rep.unit_weight_variance);
      rep.n_unit_weight_raw = sc.raw;
      rep.n_unit_weight = sc.n;
    } else {
      rep.n_unit_weight_raw = 0;
      rep.n_unit_weight = 1;
    }
    rep.notes.push_back(
        "unit-weight SPAM variant reported for comparison; it is not a "
        "certified upper bound");
  }
  return rep;
}

}  // namespace rbkit
