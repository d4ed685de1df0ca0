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

// Reproducible Haar sampling on U(d).

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "proctensor/linalg.hpp"

namespace proctensor::haar {

/// Identifies one random stream. Identical specs give identical output bytes
/// on a given platform.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
  bool operator==(const SeedSpec&) const = default;
};

/// Name of the generator recipe, recorded in campaign metadata.
inline constexpr std::string_view kPrngAlgorithm =
    "mt19937_64+seed_seq/box-muller";

/// SplitMix64 finaliser; used to derive child stream indices.
std::uint64_t mix64(std::uint64_t x);

/// Stream index for child `child` of `parent`.
SeedSpec derive(const SeedSpec& parent, std::uint64_t child);

/// Stateful sampler over one stream. Draws are sequential, so the n-th draw
/// of a given kind is a pure function of (seed, n, earlier draws).
class HaarSampler {
 public:
  explicit HaarSampler(const SeedSpec& seed);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Standard complex normal: real and imaginary parts N(0, 1/2).
  linalg::Complex complex_normal();

  /// d×d Ginibre matrix with standard complex normal entries.
  linalg::ComplexMatrix ginibre(std::size_t d);
  /// Haar-distributed unitary (QR with the phase correction of R's diagonal).
  linalg::ComplexMatrix unitary(std::size_t d);
  /// Haar-random unit vector (first column of a Haar unitary).
  linalg::ComplexVector state(std::size_t d);

 private:
  std::mt19937_64 engine_;
};

/// Haar unitary determined by `seed` alone. Throws InvalidArgument for d = 0.
linalg::ComplexMatrix haar_unitary(std::size_t d, const SeedSpec& seed);

/// Haar-random pure state on a single factor labelled "V".
linalg::StateVector haar_state(std::size_t d, const SeedSpec& seed);

/// max |U†U − I|.
double unitarity_error(const linalg::ComplexMatrix& u);

}  // namespace proctensor::haar
