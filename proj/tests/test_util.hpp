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


#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "proctensor/haar.hpp"
#include "proctensor/linalg.hpp"

namespace proctensor::testing {

using linalg::ComplexMatrix;

// Random density matrix of rank r from a Ginibre d×r block.
inline ComplexMatrix random_density(std::size_t d, std::size_t r,
                                    std::uint64_t seed) {
  haar::HaarSampler s({seed, 7});
  ComplexMatrix g(d, r);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < r; ++j) g(i, j) = s.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

inline ComplexMatrix random_hermitian(std::size_t d, std::uint64_t seed) {
  haar::HaarSampler s({seed, 11});
  const ComplexMatrix g = s.ginibre(d);
  return 0.5 * (g + g.adjoint());
}

inline std::vector<std::string> labels(std::initializer_list<const char*> l) {
  return std::vector<std::string>(l.begin(), l.end());
}

}  // namespace proctensor::testing
