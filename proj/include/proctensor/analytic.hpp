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

// Closed-form averages, bounds and concentration constants for Haar-random
// process tensors.

#pragma once

#include <cstddef>
#include <cstdint>

#include "proctensor/contraction.hpp"
#include "proctensor/process.hpp"
#include "proctensor/symgroup.hpp"

namespace proctensor::analytic {

using process::ChoiState;
using process::Mode;

struct BoundInputs {
  std::uint64_t d_e = 1;
  std::uint64_t d_s = 2;
  std::uint64_t k = 0;
  double avg_purity = 1.0;
};

/// Upper bound B_k on the mean trace distance to the maximally mixed Choi
/// state. Throws InvalidArgument for a negative radicand.
double bk_bound(const BoundInputs& in);
/// The two branch formulas evaluated unconditionally.
double bk_small_branch(const BoundInputs& in);  // ½√(D p − 1), D = d_S^{2k+1}
double bk_large_branch(const BoundInputs& in);  // ½(√(d_E p − x) + y)

/// Exact ingredients of both branches for rational purity p:
/// small = ½√small_radicand, large = ½(√large_radicand + large_offset).
struct BkExact {
  BigRational small_radicand;
  BigRational large_radicand;
  BigRational large_offset;
};
BkExact bk_branches_exact(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k,
                          const BigRational& p);

/// Mean purity of the Choi state with k+1 independent Haar unitaries.
BigRational ergodic_avg_purity_exact(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k);
double ergodic_avg_purity(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k);

struct TiOptions {
  unsigned workers = 1;
  bool allow_k3 = false;  // also needs a PROCTENSOR_ENABLE_K3 build
};

/// Mean purity with one U in every slot and initial state |0⟩_E|0⟩_S, as an
/// exact Weingarten sum over S_{2k+2}². k ≤ 2 by default.
BigRational ti_avg_purity(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k,
                          const TiOptions& opt = {});

/// The constraint graph behind the purity average. Constant mode has one
/// group of size 2k+2; Random mode has k+1 groups of size 2.
DeltaContraction purity_contraction(std::uint64_t k, Mode mode);

/// Exact mean purity for either mode from the contraction engine.
BigRational avg_purity_exact(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k,
                             Mode mode, const TiOptions& opt = {});

/// Mean Choi state with k+1 independent unitaries: I/d_S^{2k+1}.
ChoiState avg_state_ergodic(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k);

/// Closed-form constant-interaction mean Choi state at k = 1 for a pure
/// global initial state whose system marginal is `rho_s`.
ChoiState avg_state_ti_k1(std::uint64_t d_e, std::uint64_t d_s,
                          const linalg::ComplexMatrix& rho_s);
double purity_of_avg_state_ti_k1(std::uint64_t d_e, std::uint64_t d_s, double purity_s);

/// Mean Choi state entry by entry from the contraction engine (k ≤ 2,
/// initial state |0⟩_E|0⟩_S).
ChoiState avg_state_exact(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k, Mode mode);

/// (d_S^{k+1} − 1)/(d_S − 1).
double lipschitz_eta(std::uint64_t d_s, std::uint64_t k);
/// c·d_E·d_S·((d_S−1)/(d_S^{k+1}−1))² with c = 1/4 (Constant) or (k+1)/4.
double concentration_C(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k, Mode mode);
/// exp(−Cε²); 1 for ε ≤ 0, where the statement is vacuous.
double tail_bound(double eps, double c);
/// d_E^{−1/3}.
double epsilon_scale(std::uint64_t d_e);

}  // namespace proctensor::analytic
