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
#include <vector>

#include "proctensor/error.hpp"
#include "proctensor/haar.hpp"
#include "test_util.hpp"

namespace proctensor {
namespace {

using linalg::Complex;
using linalg::ComplexMatrix;

TEST(HaarUnitary, OneDimensionalIsPhase) {
  const auto u = haar::haar_unitary(1, {1, 2});
  ASSERT_EQ(u.rows(), 1);
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-14);
  const auto s = haar::haar_state(1, {1, 2});
  EXPECT_NEAR(std::abs(s.amplitudes[0]), 1.0, 1e-14);
}

TEST(HaarUnitary, RejectsZeroDimension) {
  EXPECT_THROW(haar::haar_unitary(0, {1, 0}), InvalidArgument);
  EXPECT_THROW(haar::haar_state(0, {1, 0}), InvalidArgument);
}

TEST(HaarUnitary, Unitarity) {
  for (std::size_t d : {2, 3, 5, 8, 16, 64}) {
    EXPECT_LE(haar::unitarity_error(haar::haar_unitary(d, {42, d})), 1e-12) << d;
  }
}

TEST(HaarUnitary, DeterministicPerSeed) {
  const auto a = haar::haar_unitary(6, {7, 3});
  const auto b = haar::haar_unitary(6, {7, 3});
  EXPECT_EQ(a, b);
  const auto c = haar::haar_unitary(6, {7, 4});
  EXPECT_GT((a - c).norm(), 1e-3);
  const auto s1 = haar::haar_state(4, {7, 3});
  const auto s2 = haar::haar_state(4, {7, 4});
  EXPECT_GT((s1.amplitudes - s2.amplitudes).norm(), 1e-3);
}

TEST(HaarState, UnitNormAndFirstColumn) {
  const auto s = haar::haar_state(5, {3, 9});
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
  const auto u = haar::haar_unitary(5, {3, 9});
  EXPECT_LE((u.col(0) - s.amplitudes).norm(), 1e-14);
}

TEST(Derive, DistinctChildren) {
  const haar::SeedSpec p{11, 0};
  EXPECT_NE(haar::derive(p, 0), haar::derive(p, 1));
  EXPECT_EQ(haar::derive(p, 5), haar::derive(p, 5));
}

// Mean of U X U† over 10⁴ draws is tr(X)/d · I within 3 SE per entry.
TEST(HaarUnitary, OneFoldTwirl) {
  const std::size_t d = 4, n = 10000;
  const auto x = testing::random_hermitian(d, 77);
  const double target = x.trace().real() / d;
  haar::HaarSampler s({2024, 0});
  Eigen::MatrixXd s_re = Eigen::MatrixXd::Zero(d, d), s_im = s_re;
  Eigen::MatrixXd q_re = s_re, q_im = s_re;
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = s.unitary(d);
    const ComplexMatrix y = u * x * u.adjoint();
    s_re += y.real();
    s_im += y.imag();
    q_re += y.real().cwiseAbs2();
    q_im += y.imag().cwiseAbs2();
  }
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      const double mr = s_re(r, c) / n, mi = s_im(r, c) / n;
      const double ser = std::sqrt((q_re(r, c) / n - mr * mr) / (n - 1));
      const double sei = std::sqrt(std::max(0.0, q_im(r, c) / n - mi * mi) / (n - 1));
      EXPECT_LE(std::abs(mr - (r == c ? target : 0.0)), 3.0 * ser + 1e-12);
      EXPECT_LE(std::abs(mi), 3.0 * sei + 1e-12);
    }
}

TEST(HaarState, MeanProjectorIsMaximallyMixed) {
  const std::size_t d = 4, n = 10000;
  haar::HaarSampler s({99, 1});
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d), q = m;
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = s.state(d);
    const Eigen::MatrixXd p = (v * v.adjoint()).real();
    m += p;
    q += p.cwiseAbs2();
  }
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      const double mean = m(r, c) / n;
      const double se = std::sqrt((q(r, c) / n - mean * mean) / (n - 1));
      EXPECT_LE(std::abs(mean - (r == c ? 1.0 / d : 0.0)), 3.0 * se);
    }
}

TEST(HaarUnitary, MomentAndLeftInvariance) {
  const std::size_t d = 5, n = 10000;
  const auto v = haar::haar_unitary(d, {123, 0});
  haar::HaarSampler s({321, 0});
  double a = 0, a2 = 0, b = 0, b2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = s.unitary(d);
    const double f = std::norm(u(0, 0));
    const double g = std::norm((v * u)(0, 0));
    a += f;
    a2 += f * f;
    b += g;
    b2 += g * g;
  }
  const double ma = a / n, mb = b / n;
  const double sa = std::sqrt((a2 / n - ma * ma) / (n - 1));
  const double sb = std::sqrt((b2 / n - mb * mb) / (n - 1));
  EXPECT_LE(std::abs(ma - 1.0 / d), 3.0 * sa);
  EXPECT_LE(std::abs(ma - mb), 3.0 * std::hypot(sa, sb));
}

TEST(HaarSampler, GinibreVariance) {
  haar::HaarSampler s({5, 5});
  double acc = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) acc += std::norm(s.complex_normal());
  EXPECT_NEAR(acc / n, 1.0, 0.03);
  for (int i = 0; i < 1000; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace proctensor
