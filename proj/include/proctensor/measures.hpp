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

// Upper bounds on non-Markovianity and related information measures.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "proctensor/haar.hpp"
#include "proctensor/process.hpp"

namespace proctensor::measures {

using linalg::ComplexMatrix;
using process::ChoiState;

enum class Estimator { kMaxMixed, kMarginalProduct, kMinOfBoth };
std::string to_string(Estimator e);
Estimator estimator_from_string(const std::string& s);

struct NmEstimate {
  double value = 0.0;
  Estimator estimator = Estimator::kMinOfBoth;
  double maxmixed = 0.0;
  double marginal = 0.0;
  std::optional<ChoiState> reference_choi;  // the Markov product, if requested
};

/// D(Υ, I/d_S^{2k+1}).
double nm_upper_maxmixed(const ChoiState& c);
/// D(Υ, product of Υ's own adjacent-step marginals); 0 for k = 0.
double nm_upper_marginal(const ChoiState& c);
/// Minimum of the two bounds. `keep_reference` stores the Markov product.
NmEstimate nm_estimate(const ChoiState& c, bool keep_reference = false);
/// The value of a single named estimator.
double nm_value(const ChoiState& c, Estimator e);

/// max_m ½|tr m(c − ref)| over Hermitian observables with spectrum in
/// [−1, 1]. Throws for an empty set or a dimension mismatch.
double restricted_nm(const ChoiState& c, const ChoiState& ref,
                     const std::vector<ComplexMatrix>& observables);

/// ℛ(c‖ref) − 2 D(c,ref)² in nats; +infinity when supp c ⊄ supp ref.
double pinsker_gap(const ChoiState& c, const ChoiState& ref);

/// `count` observables, each a Kronecker product of Haar-random rank-1
/// projectors, one per leg of `layout`.
std::vector<ComplexMatrix> product_projector_set(const linalg::SubsystemLayout& layout,
                                                 std::size_t count,
                                                 const haar::SeedSpec& seed);

}  // namespace proctensor::measures
