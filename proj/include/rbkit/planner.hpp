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

#include <string>
#include <vector>

#include "rbkit/bounds.hpp"

namespace rbkit {

/// Concentration kernel for a unit-range variable with variance V^2:
///   H(V^2, e) = (1/(1-e))^{(1-e)/(V^2+1)} * (V^2/(V^2+e))^{(V^2+e)/(V^2+1)}.
/// The protocol's estimator lives in [-1/2, 1/2]; the affine shift to [0, 1]
/// leaves the variance unchanged, so V^2 can be used directly. Strictly
/// increasing in V^2, in (0, 1) on the domain 0 < e < 1, e + V^2 <= 1.
double hoeffding_h(double v2, double epsilon);

struct SequenceCount {
  double raw = 0;     // log(2/delta) / (-log H)
  long long n = 1;    // ceil(raw)
};

/// Number of random sequences for a 1-delta confidence interval of half-width
/// epsilon given variance (bound) v2. Reported as a ceiling; raw included
/// (quoted reference tables truncate instead, so they can sit one below).
SequenceCount sequences_needed(double delta, double epsilon, double v2);

/// Failure probability achieved by n sequences: 2 H^n (clamped to 1).
double achieved_confidence(long long n, double epsilon, double v2);

/// Smallest epsilon achieving failure probability delta with n sequences,
/// found by monotone bisection. Throws if no epsilon in (0, 1 - v2] works.
double achieved_halfwidth(long long n, double delta, double v2);

enum class BoundChoice { kSpamFree, kSmallM, kSpam, kTrivial, kExplicit };

struct PlanRequest {
  double delta = 0.01;
  double epsilon = 0.01;
  long long m = 100;
  double r = 1e-4;
  double u = 1;
  int dim = 2;
  double eta = 0;
  BoundChoice bound = BoundChoice::kSpamFree;
  double explicit_v2 = 0;  // used when bound == kExplicit
  VarianceBoundOptions bound_options;
};

struct PlanReport {
  double variance_used = 0;
  double h = 0;
  double n_raw = 0;
  long long n = 0;
  double n_trivial_raw = 0;   // baseline from the trivial V^2 = 1/4
  long long n_trivial = 0;
  // Companion count under unit SPAM weights (only filled for kSpam; this is
  // the uncertified variant behind commonly quoted tables).
  bool has_unit_weight_alternative = false;
  double unit_weight_variance = 0;
  double n_unit_weight_raw = 0;
  long long n_unit_weight = 0;
  std::vector<std::string> notes;
};

PlanReport plan(const PlanRequest& req);

}  // namespace rbkit
