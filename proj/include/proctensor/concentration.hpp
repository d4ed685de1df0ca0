// Copyright 2026 The proctensor Authors
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

// Empirical tail probabilities of sampled non-Markovianity against the
// analytic concentration bound.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "proctensor/measures.hpp"
#include "proctensor/process.hpp"

namespace proctensor::concentration {

/// Two-sided 99% normal quantile.
inline constexpr double kWilsonZ99 = 2.5758293035489004;

struct WilsonInterval {
  double lower = 0.0;
  double upper = 1.0;
  double radius = 0.5;  // half-width
};

/// Wilson score interval for `successes` out of `trials`.
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials,
                               double z = kWilsonZ99);

struct TailReport {
  process::Mode mode = process::Mode::kRandom;
  std::size_t d_e = 0, d_s = 0, k = 0;
  measures::Estimator estimator = measures::Estimator::kMaxMixed;
  std::size_t samples = 0;
  double avg_purity = 0.0;        // purity fed into B_k
  std::string purity_source;      // "ergodic" or "time-independent"
  double bk = 0.0;
  double concentration_c = 0.0;
  std::vector<double> eps;
  std::vector<std::size_t> exceed_counts;
  std::vector<double> fractions;
  std::vector<double> analytic;   // exp(−Cε²), 1 for ε ≤ 0
  std::vector<WilsonInterval> wilson;
  std::vector<bool> pass;         // Wilson lower bound ≤ analytic
  std::vector<double> estimates;  // per sample, in sample order
  bool all_pass() const;
};

/// Mean purity used for B_k: Eq. for independent unitaries in Random mode,
/// the exact constant-interaction sum in Constant mode (k ≤ 2).
double bound_purity(const process::ProcessSpec& spec, std::string* source = nullptr);

/// Draws `samples` processes (sample i uses haar::derive(spec.seed, i)) and
/// counts estimates ≥ B_k + ε for each ε. Requires samples ≥ 100 unless
/// `allow_small` is set.
TailReport tail_experiment(const process::ProcessSpec& spec, std::size_t samples,
                           const std::vector<double>& eps,
                           measures::Estimator estimator = measures::Estimator::kMaxMixed,
                           unsigned workers = 1, bool allow_small = false);

/// Counts from precomputed estimates (same pass rule).
TailReport tail_report_from_estimates(const process::ProcessSpec& spec,
                                      std::vector<double> estimates,
                                      const std::vector<double>& eps,
                                      measures::Estimator estimator);

}  // namespace proctensor::concentration
