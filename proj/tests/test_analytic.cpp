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

#include "proctensor/analytic.hpp"
#include "proctensor/error.hpp"
#include "proctensor/process.hpp"

namespace proctensor {
namespace {

using analytic::BoundInputs;
using linalg::ComplexMatrix;
using process::Mode;
using symgroup::BigRational;

BigRational q(long long num, long long den) { return BigRational(num) / den; }

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

ComplexMatrix ket0(std::size_t d) {
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  p(0, 0) = 1.0;
  return p;
}

TEST(Bound, K0Example) {
  const BoundInputs in{8, 2, 0, 10.0 / 17.0};
  EXPECT_NEAR(analytic::bk_bound(in), 0.5 * std::sqrt(3.0 / 17.0), 1e-14);
  EXPECT_NEAR(analytic::bk_bound(in), 0.2101, 1e-4);
}

TEST(Bound, BranchSelection) {
  // d_E < D selects the rank-limited branch
  const BoundInputs small_env{2, 2, 1, 0.56};
  EXPECT_DOUBLE_EQ(analytic::bk_bound(small_env), analytic::bk_large_branch(small_env));
  const BoundInputs big_env{16, 2, 1, 0.2};
  EXPECT_DOUBLE_EQ(analytic::bk_bound(big_env), analytic::bk_small_branch(big_env));
}

TEST(Bound, ContinuityAtBoundary) {
  for (auto [ds, k] : {std::pair<std::uint64_t, std::uint64_t>{2, 1}, {2, 2}, {3, 1}}) {
    const auto de = static_cast<std::uint64_t>(std::pow(ds, 2 * k + 1));
    const BoundInputs in{de, ds, k, analytic::ergodic_avg_purity(de, ds, k)};
    EXPECT_NEAR(analytic::bk_small_branch(in), analytic::bk_large_branch(in), 1e-14);
    const auto ex = analytic::bk_branches_exact(de, ds, k,
                                                analytic::ergodic_avg_purity_exact(de, ds, k));
    EXPECT_EQ(ex.small_radicand, ex.large_radicand);
    EXPECT_EQ(ex.large_offset, 0);
  }
}

TEST(Bound, MaximallyMixedGivesZero) {
  const BoundInputs in{64, 2, 1, 1.0 / 8.0};
  EXPECT_NEAR(analytic::bk_bound(in), 0.0, 1e-7);
}

TEST(Bound, Errors) {
  EXPECT_THROW(analytic::bk_bound({16, 2, 1, 0.05}), InvalidArgument);
  EXPECT_THROW(analytic::bk_bound({16, 2, 1, 1.5}), InvalidArgument);
  EXPECT_THROW(analytic::bk_small_branch({16, 2, 1, 0.05}), InvalidArgument);
  EXPECT_THROW(analytic::bk_bound({16, 1, 1, 0.5}), InvalidArgument);
}

TEST(ErgodicPurity, ClosedForms) {
  EXPECT_EQ(analytic::ergodic_avg_purity_exact(8, 2, 0), q(10, 17));
  for (std::uint64_t de : {1, 2, 3, 7})
    for (std::uint64_t ds : {2, 3})
      EXPECT_EQ(analytic::ergodic_avg_purity_exact(de, ds, 0),
                BigRational(de + ds) / BigRational(de * ds + 1));
  EXPECT_EQ(analytic::ergodic_avg_purity_exact(2, 2, 1), q(14, 25));
  EXPECT_NEAR(analytic::ergodic_avg_purity(8, 2, 1), 0.23945, 5e-6);
}

TEST(ErgodicPurity, Monotone) {
  for (std::uint64_t k = 0; k <= 4; ++k)
    for (std::uint64_t de = 2; de <= 64; ++de) {
      const auto p = analytic::ergodic_avg_purity_exact(de, 2, k);
      if (de < 64) EXPECT_GT(p, analytic::ergodic_avg_purity_exact(de + 1, 2, k));
      if (k < 4) EXPECT_GT(p, analytic::ergodic_avg_purity_exact(de, 2, k + 1));
    }
}

TEST(ErgodicPurity, Limits) {
  EXPECT_NEAR(analytic::ergodic_avg_purity(1000000, 2, 2), 1.0 / 32.0, 1e-4);
  EXPECT_NEAR(analytic::ergodic_avg_purity(4, 2, 60), 0.25, 1e-6);
  EXPECT_NEAR(analytic::ergodic_avg_purity(4, 2, 100), 0.25, 1e-12);
}

TEST(TiPurity, K0MatchesErgodic) {
  for (std::uint64_t de : {1, 2, 3, 8, 20})
    for (std::uint64_t ds : {2, 3})
      EXPECT_EQ(analytic::ti_avg_purity(de, ds, 0),
                analytic::ergodic_avg_purity_exact(de, ds, 0));
}

TEST(TiPurity, FrozenK1Values) {
  EXPECT_EQ(analytic::ti_avg_purity(2, 2, 1), q(157, 280));
  EXPECT_EQ(analytic::ti_avg_purity(3, 2, 1), q(53, 126));
  EXPECT_EQ(analytic::ti_avg_purity(4, 2, 1), q(1291, 3696));
}

TEST(TiPurity, LargeEnvironmentLimit) {
  double prev = 1.0;
  for (std::uint64_t de : {2, 4, 8, 16, 64, 256, 4096}) {
    const double v = symgroup::to_double(analytic::ti_avg_purity(de, 2, 1));
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_NEAR(prev, 1.0 / 8.0, 1e-3);
}

TEST(TiPurity, CloseToErgodic) {
  for (std::uint64_t k : {1, 2})
    for (std::uint64_t de : {2, 4, 8}) {
      const double ti = symgroup::to_double(analytic::ti_avg_purity(de, 2, k));
      EXPECT_LE(std::abs(ti - analytic::ergodic_avg_purity(de, 2, k)), 0.05)
          << de << " " << k;
    }
}

TEST(TiPurity, Gating) {
  EXPECT_THROW(analytic::ti_avg_purity(2, 2, 3), CapExceeded);
  EXPECT_THROW(analytic::ti_avg_purity(2, 2, 4), InvalidArgument);
  EXPECT_THROW(analytic::ti_avg_purity(2, 1, 1), InvalidArgument);
}

TEST(RandomContraction, ReproducesErgodicClosedForm) {
  for (std::uint64_t k = 0; k <= 3; ++k)
    for (std::uint64_t de : {1, 2, 5})
      for (std::uint64_t ds : {2, 3})
        EXPECT_EQ(analytic::avg_purity_exact(de, ds, k, Mode::kRandom),
                  analytic::ergodic_avg_purity_exact(de, ds, k))
            << k << " " << de << " " << ds;
}

TEST(DeltaContraction, PinsAndFreeIndices) {
  using analytic::IndexClass;
  analytic::DeltaContraction none;
  none.add_variable(IndexClass::kS);
  EXPECT_THROW(none.tally(), InvalidArgument);

  // E[U_00 conj(U_01)] vanishes through conflicting pinned columns.
  analytic::DeltaContraction off;
  const int e0 = off.add_pinned(IndexClass::kE, 0);
  const int s0 = off.add_pinned(IndexClass::kS, 0);
  const int s1 = off.add_pinned(IndexClass::kS, 1);
  off.add_group({{e0, s0, e0, s0}}, {{e0, s0, e0, s1}});
  EXPECT_EQ(analytic::DeltaContraction::evaluate(off.tally(), 3, 2), 0);

  // A spare free S index multiplies by d_S, an equated pair by d_S once.
  analytic::DeltaContraction spare;
  const int pe = spare.add_pinned(IndexClass::kE, 0);
  const int ps = spare.add_pinned(IndexClass::kS, 0);
  spare.add_group({{pe, ps, pe, ps}}, {{pe, ps, pe, ps}});
  const int a = spare.add_variable(IndexClass::kS);
  const int b = spare.add_variable(IndexClass::kS);
  spare.equate(a, b);
  EXPECT_EQ(analytic::DeltaContraction::evaluate(spare.tally(), 3, 2), q(1, 3));
}

TEST(DeltaContraction, SingleUnitaryMoments) {
  using analytic::IndexClass;
  // E|U_00|² = 1/d
  analytic::DeltaContraction one;
  const int e0 = one.add_pinned(IndexClass::kE, 0);
  const int s0 = one.add_pinned(IndexClass::kS, 0);
  one.add_group({{e0, s0, e0, s0}}, {{e0, s0, e0, s0}});
  EXPECT_EQ(analytic::DeltaContraction::evaluate(one.tally(), 3, 2), q(1, 6));
  // Σ_ij E|U_ij|² = d
  analytic::DeltaContraction all;
  const int re = all.add_variable(IndexClass::kE), rs = all.add_variable(IndexClass::kS);
  const int ce = all.add_variable(IndexClass::kE), cs = all.add_variable(IndexClass::kS);
  all.add_group({{re, rs, ce, cs}}, {{re, rs, ce, cs}});
  EXPECT_EQ(analytic::DeltaContraction::evaluate(all.tally(), 3, 2), 6);
  // E|U_00|⁴ = 2/(d(d+1))
  analytic::DeltaContraction four;
  const int e = four.add_pinned(IndexClass::kE, 0);
  const int s = four.add_pinned(IndexClass::kS, 0);
  four.add_group({{e, s, e, s}, {e, s, e, s}}, {{e, s, e, s}, {e, s, e, s}});
  EXPECT_EQ(analytic::DeltaContraction::evaluate(four.tally(2), 2, 2), q(1, 10));
  EXPECT_THROW(four.equate(e, s), InvalidArgument);
}

TEST(AvgState, Ergodic) {
  const auto c0 = analytic::avg_state_ergodic(4, 3, 0);
  EXPECT_LE(max_abs(c0.matrix - linalg::identity(3) / 3.0), 1e-15);
  EXPECT_NEAR(analytic::avg_state_ergodic(4, 2, 2).matrix.trace().real(), 1.0, 1e-12);
}

TEST(AvgState, ErgodicMonteCarlo) {
  process::ProcessSpec spec;
  spec.k = 1;
  spec.d_e = 4;
  const std::size_t n = 4000;
  ComplexMatrix mean = ComplexMatrix::Zero(8, 8);
  for (std::size_t i = 0; i < n; ++i) {
    spec.seed = {77, i};
    mean += process::build_choi(spec).matrix;
  }
  mean /= static_cast<double>(n);
  EXPECT_LE(max_abs(mean - analytic::avg_state_ergodic(4, 2, 1).matrix), 5e-3);
}

TEST(AvgState, TiK1ClosedForm) {
  for (std::uint64_t de : {1, 2, 3, 7}) {
    const auto c = analytic::avg_state_ti_k1(de, 2, ket0(2));
    EXPECT_NEAR(std::abs(c.matrix.trace() - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(linalg::purity(c.matrix), analytic::purity_of_avg_state_ti_k1(de, 2, 1.0),
                1e-12);
  }
  // Mixed ρ_S: direct trace of the square, e⁴s − 2e²/s + p(1 − 1/s²) − 1/s + 2/s³
  // over (e²s² − 1)². The closed-form purity agrees with it only at p = 1.
  const ComplexMatrix mixed = linalg::identity(3) / 3.0;
  const auto cm = analytic::avg_state_ti_k1(2, 3, mixed);
  const double e = 2, s = 3, p = 1.0 / 3.0, n = e * e * s * s - 1;
  const double direct =
      (e * e * e * e * s - 2 * e * e / s + p * (1 - 1 / (s * s)) - 1 / s + 2 / (s * s * s)) / (n * n);
  EXPECT_NEAR(linalg::purity(cm.matrix), direct, 1e-14);
  EXPECT_THROW(analytic::avg_state_ti_k1(2, 2, linalg::identity(3)), InvalidArgument);
}

TEST(AvgState, TiK1PurityLimitAndMonotone) {
  const double v = analytic::purity_of_avg_state_ti_k1(1000000, 2, 1.0);
  EXPECT_NEAR(v / (1.0 / 8.0), 1.0, 1e-9);
  for (std::uint64_t de = 2; de < 64; ++de)
    EXPECT_GT(analytic::purity_of_avg_state_ti_k1(de, 2, 1.0),
              analytic::purity_of_avg_state_ti_k1(de + 1, 2, 1.0));
}

TEST(AvgState, ContractionEngineAgreesWithClosedForms) {
  for (std::uint64_t de : {1, 3}) {
    const auto exact = analytic::avg_state_exact(de, 2, 1, Mode::kConstant);
    EXPECT_LE(max_abs(exact.matrix - analytic::avg_state_ti_k1(de, 2, ket0(2)).matrix),
              1e-14);
    const auto rnd = analytic::avg_state_exact(de, 2, 1, Mode::kRandom);
    EXPECT_LE(max_abs(rnd.matrix - linalg::identity(8) / 8.0), 1e-14);
  }
  const auto k0 = analytic::avg_state_exact(3, 2, 0, Mode::kConstant);
  EXPECT_LE(max_abs(k0.matrix - linalg::identity(2) / 2.0), 1e-14);
  EXPECT_THROW(analytic::avg_state_exact(2, 2, 3, Mode::kConstant), InvalidArgument);
}

TEST(Concentration, Constants) {
  EXPECT_DOUBLE_EQ(analytic::lipschitz_eta(2, 2), 7.0);
  EXPECT_DOUBLE_EQ(analytic::lipschitz_eta(2, 0), 1.0);
  for (std::uint64_t ds : {2, 3, 5})
    for (std::uint64_t k = 0; k <= 5; ++k) {
      double sum = 0.0, pw = 1.0;
      for (std::uint64_t l = 0; l <= k; ++l, pw *= ds) sum += pw;
      EXPECT_NEAR(analytic::lipschitz_eta(ds, k), sum, 1e-9);
    }
  EXPECT_THROW(analytic::lipschitz_eta(1, 2), InvalidArgument);
  EXPECT_NEAR(analytic::concentration_C(16, 2, 1, Mode::kConstant), 8.0 / 9.0, 1e-14);
  EXPECT_NEAR(analytic::concentration_C(16, 2, 1, Mode::kRandom), 16.0 / 9.0, 1e-14);
  EXPECT_NEAR(analytic::tail_bound(1.0, 8.0 / 9.0), std::exp(-8.0 / 9.0), 1e-15);
  EXPECT_NEAR(analytic::tail_bound(1.0, 8.0 / 9.0), 0.411, 5e-4);
  EXPECT_EQ(analytic::tail_bound(0.0, 2.0), 1.0);
  EXPECT_EQ(analytic::tail_bound(-0.5, 2.0), 1.0);
}

TEST(Concentration, EpsilonScale) {
  EXPECT_NEAR(analytic::epsilon_scale(8), 0.5, 1e-15);
  EXPECT_NEAR(analytic::epsilon_scale(1), 1.0, 1e-15);
  EXPECT_NEAR(analytic::epsilon_scale(1000), 0.1, 1e-15);
  EXPECT_THROW(analytic::epsilon_scale(0), InvalidArgument);
}

}  // namespace
}  // namespace proctensor
