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

#include <algorithm>
#include <numeric>
#include <random>

#include "proctensor/error.hpp"
#include "proctensor/haar.hpp"
#include "proctensor/symgroup.hpp"
#include "test_util.hpp"

namespace proctensor {
namespace {

using namespace symgroup;

BigRational q(long long num, long long den) { return BigRational(num) / den; }

TEST(Permutation, Validation) {
  EXPECT_THROW(Permutation({0, 0, 1}), InvalidArgument);
  EXPECT_THROW(Permutation({0, 3, 1}), InvalidArgument);
  EXPECT_NO_THROW(Permutation({2, 0, 1}));
}

TEST(Permutation, CycleCounts) {
  EXPECT_EQ(cycle_count(Permutation::identity(4)), 4);
  EXPECT_EQ(cycle_count(Permutation::transposition(4, 1, 3)), 3);
  EXPECT_EQ(cycle_count(Permutation::from_cycles(5, {{0, 1, 2}, {3, 4}})), 2);
}

TEST(Permutation, ComposeInverseIsIdentity) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + t % 8;
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(v.begin(), v.end(), rng);
    const Permutation p(v);
    EXPECT_EQ(compose(p, inverse(p)), Permutation::identity(n));
    EXPECT_EQ(compose(inverse(p), p), Permutation::identity(n));
  }
}

TEST(Permutation, ComposeOrderAndMismatch) {
  const auto a = Permutation::transposition(3, 0, 1);
  const auto b = Permutation::transposition(3, 1, 2);
  // (a∘b)(2) = a(b(2)) = a(1) = 0
  EXPECT_EQ(compose(a, b)(2), 0);
  EXPECT_THROW(compose(a, Permutation::identity(4)), InvalidArgument);
}

TEST(Permutation, AllPermutations) {
  const auto s4 = all_permutations(4);
  EXPECT_EQ(s4.size(), 24u);
  EXPECT_TRUE(std::is_sorted(s4.begin(), s4.end()));
  EXPECT_EQ(s4.front(), Permutation::identity(4));
}

TEST(CycleType, ParseAndFormat) {
  EXPECT_EQ(CycleType::parse("(3,1)").parts(), (std::vector<int>{3, 1}));
  EXPECT_EQ(CycleType::parse("1 3 1").parts(), (std::vector<int>{3, 1, 1}));
  EXPECT_EQ(CycleType({1, 2}).to_string(), "(2,1)");
  EXPECT_THROW(CycleType({0, 1}), InvalidArgument);
  EXPECT_EQ(cycle_type(Permutation::from_cycles(6, {{0, 5}, {1, 2, 3}})).parts(),
            (std::vector<int>{3, 2, 1}));
}

TEST(Partitions, Counts) {
  EXPECT_EQ(partitions(4).size(), 5u);
  EXPECT_EQ(partitions(8).size(), 22u);
  for (int n = 1; n <= 8; ++n)
    for (const auto& p : partitions(n)) EXPECT_EQ(p.n(), n);
  EXPECT_EQ(partitions(3).front().parts(), (std::vector<int>{3}));
  EXPECT_EQ(partitions(3).back().parts(), (std::vector<int>{1, 1, 1}));
}

TEST(Characters, HookDimension) {
  EXPECT_EQ(hook_dimension(CycleType({2, 1})), 2u);
  EXPECT_EQ(hook_dimension(CycleType({3, 2})), 5u);
  EXPECT_EQ(hook_dimension(CycleType({4, 2, 1, 1})), 90u);
}

TEST(Characters, IdentityClassIsDimension) {
  const CycleType id({1, 1, 1, 1, 1});
  for (const auto& l : partitions(5))
    EXPECT_EQ(character(l, id), static_cast<std::int64_t>(hook_dimension(l)));
  EXPECT_THROW(character(CycleType({2, 1}), CycleType({2, 2})), InvalidArgument);
}

TEST(Characters, KnownS4Values) {
  // χ^{(3,1)} on (1⁴),(2,1,1),(2,2),(3,1),(4) = 3,1,−1,0,−1
  const CycleType l({3, 1});
  EXPECT_EQ(character(l, CycleType({2, 1, 1})), 1);
  EXPECT_EQ(character(l, CycleType({2, 2})), -1);
  EXPECT_EQ(character(l, CycleType({3, 1})), 0);
  EXPECT_EQ(character(l, CycleType({4})), -1);
  EXPECT_EQ(character(CycleType({1, 1, 1, 1}), CycleType({4})), -1);
}

TEST(Characters, Orthogonality) {
  for (int n = 1; n <= 8; ++n) {
    const CharacterTable t(n);
    const auto& cls = t.classes();
    std::uint64_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    std::uint64_t total = 0;
    for (const auto& c : cls) total += class_size(c);
    EXPECT_EQ(total, fact);
    for (std::size_t a = 0; a < cls.size(); ++a)
      for (std::size_t b = 0; b < cls.size(); ++b) {
        std::int64_t row = 0, col = 0;
        for (std::size_t m = 0; m < cls.size(); ++m) {
          row += static_cast<std::int64_t>(class_size(cls[m])) * t.value(a, m) *
                 t.value(b, m);
          col += t.value(m, a) * t.value(m, b);
        }
        EXPECT_EQ(row, a == b ? static_cast<std::int64_t>(fact) : 0) << n;
        EXPECT_EQ(col, a == b ? static_cast<std::int64_t>(fact / class_size(cls[a])) : 0)
            << n;
      }
  }
}

TEST(Weingarten, S2ClosedForms) {
  for (std::uint64_t d : {2, 3, 4, 5, 10, 97}) {
    const long long dd = static_cast<long long>(d);
    EXPECT_EQ(weingarten(CycleType({1, 1}), 2, d), q(1, dd * dd - 1));
    EXPECT_EQ(weingarten(CycleType({2}), 2, d), q(-1, dd * (dd * dd - 1)));
  }
}

TEST(Weingarten, S1) {
  EXPECT_EQ(weingarten(CycleType({1}), 1, 7), q(1, 7));
}

TEST(Weingarten, S3ClosedForms) {
  for (long long d : {3, 4, 6, 11}) {
    const long long den = d * (d * d - 1) * (d * d - 4);
    EXPECT_EQ(weingarten(CycleType({1, 1, 1}), 3, d), q(d * d - 2, den));
    EXPECT_EQ(weingarten(CycleType({2, 1}), 3, d), q(-1, (d * d - 1) * (d * d - 4)));
    EXPECT_EQ(weingarten(CycleType({3}), 3, d), q(2, den));
  }
}

TEST(Weingarten, S4AtD5) {
  EXPECT_EQ(weingarten(CycleType({1, 1, 1, 1}), 4, 5), q(431, 201600));
  EXPECT_EQ(weingarten(CycleType({2, 1, 1}), 4, 5), q(-1, 1920));
  EXPECT_EQ(weingarten(CycleType({3, 1}), 4, 5), q(47, 201600));
  EXPECT_EQ(weingarten(CycleType({2, 2}), 4, 5), q(31, 201600));
  EXPECT_EQ(weingarten(CycleType({4}), 4, 5), q(-1, 8064));
}

TEST(Weingarten, SmallDimensionDropsLongPartitions) {
  // d = 1: only λ = (n) contributes, U is a phase, Wg = 1/n!² for every class.
  EXPECT_EQ(weingarten(CycleType({1, 1}), 2, 1), q(1, 4));
  EXPECT_EQ(weingarten(CycleType({2}), 2, 1), q(1, 4));
  EXPECT_EQ(weingarten(CycleType({2, 1}), 3, 1), q(1, 36));
  EXPECT_THROW(weingarten(CycleType({1}), 1, 0), InvalidArgument);
  EXPECT_THROW(weingarten(CycleType({2, 1}), 4, 5), InvalidArgument);
}

TEST(Weingarten, GramInverseOracle) {
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t d : {5, 6, 8}) {
      const auto row = gram_inverse_identity_row(n, d);
      const auto perms = all_permutations(n);
      ASSERT_EQ(row.size(), perms.size());
      const WeingartenTable wg(n, d);
      for (std::size_t i = 0; i < perms.size(); ++i)
        EXPECT_EQ(wg(perms[i]), row[i]) << n << " " << d;
    }
}

TEST(Weingarten, TableMatchesDirect) {
  const WeingartenTable t(4, 7);
  for (std::size_t c = 0; c < t.classes().size(); ++c) {
    EXPECT_EQ(t.by_class(c), weingarten(t.classes()[c], 4, 7));
    EXPECT_DOUBLE_EQ(t.by_class_double(c), to_double(t.by_class(c)));
  }
}

TEST(Weingarten, OrthogonalityRelation) {
  // Σ_τ Wg(στ⁻¹) d^{#τ} = δ_{σ,id}
  const int n = 4;
  const std::uint64_t d = 6;
  const WeingartenTable wg(n, d);
  const auto perms = all_permutations(n);
  for (const auto& s : perms) {
    BigRational acc = 0;
    for (const auto& t : perms) {
      BigRational pw = 1;
      for (int c = cycle_count(t); c > 0; --c) pw *= d;
      acc += wg(compose(s, inverse(t))) * pw;
    }
    EXPECT_EQ(acc, s == Permutation::identity(n) ? BigRational(1) : BigRational(0));
  }
}

TEST(Moments, SmallCases) {
  EXPECT_EQ(moment_integral_exact({0}, {0}, {0}, {0}, 5), q(1, 5));
  EXPECT_EQ(moment_integral_exact({0, 0}, {0, 0}, {0, 0}, {0, 0}, 4), q(1, 10));
  EXPECT_DOUBLE_EQ(moment_integral({0, 0}, {0, 0}, {0, 0}, {0, 0}, 4), 0.1);
  // unmatched multiset of row indices integrates to zero
  EXPECT_EQ(moment_integral_exact({0, 1}, {0, 0}, {0, 0}, {0, 0}, 4), 0);
  EXPECT_THROW(moment_integral({0}, {0, 1}, {0}, {0}, 4), InvalidArgument);
  EXPECT_THROW(moment_integral({4}, {0}, {0}, {0}, 4), InvalidArgument);
}

TEST(Moments, DistinctIndicesGiveIdentityWeingarten) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> ones(n, 1);
    EXPECT_EQ(moment_integral_exact(idx, idx, idx, idx, 5),
              weingarten(CycleType(ones), n, 5));
  }
}

TEST(Moments, MonteCarloSmall) {
  // E[U00 U11 conj(U01 U10)] at d=4 against 4·10⁴ draws
  const std::vector<int> i{0, 1}, j{0, 1}, ip{0, 1}, jp{1, 0};
  const double exact = moment_integral(i, j, ip, jp, 4);
  haar::HaarSampler s({13, 0});
  const int n = 40000;
  double m = 0, m2 = 0;
  for (int t = 0; t < n; ++t) {
    const auto u = s.unitary(4);
    const double v = (u(0, 0) * u(1, 1) * std::conj(u(0, 1) * u(1, 0))).real();
    m += v;
    m2 += v * v;
  }
  m /= n;
  const double se = std::sqrt((m2 / n - m * m) / (n - 1));
  EXPECT_NEAR(exact, -1.0 / 60.0, 1e-15);
  EXPECT_LE(std::abs(m - exact), 3.0 * se);
}

TEST(Twirl, TrivialCases) {
  const std::size_t d = 4;
  const auto rho = testing::random_density(d, 2, 5);
  const auto id = linalg::identity(d);
  EXPECT_NEAR(std::abs(two_moment_twirl(id, id, rho, d).trace() - 1.0), 0.0, 1e-12);
  EXPECT_LE((two_moment_twirl(id, id, id / 4.0, d) - id / 4.0).cwiseAbs().maxCoeff(),
            1e-14);
  EXPECT_THROW(two_moment_twirl(id, id, id, 1), InvalidArgument);
  EXPECT_THROW(two_moment_twirl(id, id, linalg::identity(3), d), InvalidArgument);
}

TEST(Asymptotics, Slopes) {
  const std::vector<std::uint64_t> ds{10, 20, 50, 100, 200, 500, 1000};
  const auto id2 = wg_asymptotic_check(CycleType({1, 1}), 2, ds);
  EXPECT_NEAR(id2.fitted_slope, -2.0, 0.1);
  EXPECT_TRUE(id2.pass);
  const auto tr2 = wg_asymptotic_check(CycleType({2}), 2, ds);
  EXPECT_NEAR(tr2.fitted_slope, -3.0, 0.1);
  EXPECT_TRUE(tr2.pass);
  // Wg((3), d) = 2/(d(d²−1)(d²−4)) ~ 2 d⁻⁵
  const auto c3 = wg_asymptotic_check(CycleType({3}), 3, ds);
  EXPECT_DOUBLE_EQ(c3.expected_slope, -5.0);
  EXPECT_NEAR(c3.fitted_slope, -5.0, 0.1);
  EXPECT_TRUE(c3.pass);
  EXPECT_THROW(wg_asymptotic_check(CycleType({2}), 2, {10, 5}), InvalidArgument);
}

TEST(BigRational, Formatting) {
  EXPECT_EQ(to_string(q(-2, 4)), "-1/2");
  EXPECT_EQ(to_string(BigRational(3)), "3/1");
  EXPECT_DOUBLE_EQ(to_double(q(1, 3)), 1.0 / 3.0);
}

}  // namespace
}  // namespace proctensor
