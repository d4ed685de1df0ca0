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

#include "proctensor/haar.hpp"

#include <cmath>
#include <numbers>

#include "proctensor/error.hpp"

namespace proctensor::haar {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeedSpec derive(const SeedSpec& parent, std::uint64_t child) {
  return {parent.master_seed, mix64(parent.stream_index ^ mix64(child + 1))};
}

namespace {

std::mt19937_64 make_engine(const SeedSpec& seed) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed.master_seed),
      static_cast<std::uint32_t>(seed.master_seed >> 32),
      static_cast<std::uint32_t>(seed.stream_index),
      static_cast<std::uint32_t>(seed.stream_index >> 32),
  };
  return std::mt19937_64(seq);
}

}  // namespace

HaarSampler::HaarSampler(const SeedSpec& seed) : engine_(make_engine(seed)) {}

double HaarSampler::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Complex HaarSampler::complex_normal() {
  // Box-Muller: radius for variance 1/2 per component.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

ComplexMatrix HaarSampler::ginibre(std::size_t d) {
  ComplexMatrix z(d, d);
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = complex_normal();
  }
  return z;
}

ComplexMatrix HaarSampler::unitary(std::size_t d) {
  if (d == 0) throw InvalidArgument("haar_unitary: dimension must be >= 1");
  const Eigen::MatrixXcd z = ginibre(d);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  // Q·Λ with Λ = diag(R_ii/|R_ii|) makes the distribution exactly Haar.
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    const Complex phase = mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

ComplexVector HaarSampler::state(std::size_t d) {
  return unitary(d).col(0);
}

ComplexMatrix haar_unitary(std::size_t d, const SeedSpec& seed) {
  HaarSampler s(seed);
  return s.unitary(d);
}

linalg::StateVector haar_state(std::size_t d, const SeedSpec& seed) {
  if (d == 0) throw InvalidArgument("haar_state: dimension must be >= 1");
  HaarSampler s(seed);
  return linalg::StateVector(s.state(d), linalg::SubsystemLayout({{"V", d}}));
}

double unitarity_error(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const ComplexMatrix prod = u.adjoint() * u;
  return (prod - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace proctensor::haar
