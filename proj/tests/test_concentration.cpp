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


#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "proctensor/analytic.hpp"
#include "proctensor/concentration.hpp"
#include "proctensor/error.hpp"
#include "proctensor/parallel.hpp"

namespace proctensor {
namespace {

using concentration::wilson_interval;
using process::Mode;
using process::ProcessSpec;

ProcessSpec spec_of(std::size_t k, std::size_t de, Mode mode = Mode::kRandom) {
  ProcessSpec s;
  s.k = k;
  s.d_e = de;
  s.mode = mode;
  s.seed = {2718, 0};
  return s;
}

TEST(Wilson, ZeroSuccesses) {
  const double z = concentration::kWilsonZ99;
  const auto w = wilson_interval(0, 100);
  const double z2n = z * z / 100.0;
  EXPECT_DOUBLE_EQ(w.lower, 0.0);
  EXPECT_NEAR(w.upper, z2n / (1.0 + z2n), 1e-15);
  EXPECT_NEAR(w.upper, 0.0622, 1e-4);
}

TEST(Wilson, SymmetricAtHalf) {
  const auto w = wilson_interval(50, 100, 1.96);
  EXPECT_NEAR(0.5 * (w.lower + w.upper), 0.5, 1e-15);
  EXPECT_NEAR(w.lower, 0.4038, 1e-4);
  EXPECT_NEAR(w.upper - w.lower, 2.0 * w.radius, 1e-15);
  EXPECT_THROW(wilson_interval(1, 0), InvalidArgument);
  EXPECT_THROW(wilson_interval(5, 4), InvalidArgument);
}

TEST(TailReport, PointMass) {
  // d_E = 1, k = 0: every draw gives a pure Choi state with D = 1/2 = B_0.
  auto s = spec_of(0, 1);
  const auto r = concentration::tail_experiment(s, 100, {-0.1, 0.1});
  EXPECT_NEAR(r.bk, 0.5, 1e-12);
  EXPECT_EQ(r.fractions[0], 1.0);
  EXPECT_EQ(r.fractions[1], 0.0);
  EXPECT_EQ(r.analytic[0], 1.0);
  EXPECT_TRUE(r.all_pass());
}

TEST(TailReport, Validation) {
  const auto s = spec_of(1, 4);
  EXPECT_THROW(concentration::tail_experiment(s, 50, {0.1}), InvalidArgument);
  EXPECT_THROW(concentration::tail_experiment(s, 100, {}), InvalidArgument);
  EXPECT_THROW(concentration::tail_experiment(s, 100, {0.2, 0.1}), InvalidArgument);
  EXPECT_THROW(concentration::tail_experiment(s, 100, {0.1, 0.1}), InvalidArgument);
  EXPECT_NO_THROW(concentration::tail_experiment(s, 10, {0.1}, measures::Estimator::kMaxMixed,
                                                 1, true));
}

TEST(TailReport, WorkerInvariantAndMonotone) {
  const auto s = spec_of(1, 8);
  const std::vector<double> eps{-0.05, 0.0, 0.05, 0.1, 0.3};
  const auto a = concentration::tail_experiment(s, 120, eps);
  const auto b = concentration::tail_experiment(s, 120, eps, measures::Estimator::kMaxMixed, 3);
  EXPECT_EQ(a.estimates, b.estimates);
  EXPECT_EQ(a.exceed_counts, b.exceed_counts);
  for (std::size_t i = 1; i < eps.size(); ++i) {
    EXPECT_LE(a.fractions[i], a.fractions[i - 1]);
    EXPECT_LE(a.analytic[i], a.analytic[i - 1] + 1e-15);
  }
  EXPECT_EQ(a.purity_source, "ergodic");
  EXPECT_NEAR(a.avg_purity, analytic::ergodic_avg_purity(8, 2, 1), 1e-15);
}

TEST(TailReport, RandomBoundTighterThanConstant) {
  const auto r = concentration::tail_report_from_estimates(spec_of(1, 16), {0.1, 0.2}, {0.5},
                                                           measures::Estimator::kMaxMixed);
  const auto c = concentration::tail_report_from_estimates(
      spec_of(1, 16, Mode::kConstant), {0.1, 0.2}, {0.5}, measures::Estimator::kMaxMixed);
  EXPECT_NEAR(r.concentration_c, 2.0 * c.concentration_c, 1e-14);
  EXPECT_LT(r.analytic[0], c.analytic[0]);
  EXPECT_EQ(c.purity_source, "time-independent");
}

TEST(TailReport, SignificantViolationFails) {
  // All samples far above the bound: exceedance 1 with a tiny analytic tail.
  std::vector<double> est(400, 0.99);
  const auto r = concentration::tail_report_from_estimates(spec_of(1, 32), est, {0.2, 0.5},
                                                           measures::Estimator::kMaxMixed);
  EXPECT_FALSE(r.pass[1]);
  EXPECT_FALSE(r.all_pass());
}

TEST(BoundPurity, Sources) {
  std::string src;
  EXPECT_NEAR(concentration::bound_purity(spec_of(1, 2, Mode::kConstant), &src), 157.0 / 280.0,
              1e-15);
  EXPECT_EQ(src, "time-independent");
  concentration::bound_purity(spec_of(3, 2, Mode::kConstant), &src);
  EXPECT_EQ(src, "ergodic");
}

TEST(Workers, FromEnvironment) {
  ::setenv(kWorkersEnv, "6", 1);
  EXPECT_EQ(workers_from_env(1), 6u);
  ::setenv(kWorkersEnv, "zero", 1);
  EXPECT_EQ(workers_from_env(2), 2u);
  ::setenv(kWorkersEnv, "0", 1);
  EXPECT_EQ(workers_from_env(3), 3u);
  ::unsetenv(kWorkersEnv);
  EXPECT_EQ(workers_from_env(4), 4u);
}

TEST(ParallelFor, PropagatesExceptions) {
  std::vector<int> hits(50, 0);
  parallel_for(50, 4, [&](std::size_t i) { hits[i] = 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw NumericalError("boom");
                            }),
               NumericalError);
}

}  // namespace
}  // namespace proctensor
