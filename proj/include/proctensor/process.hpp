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

// Process-tensor Choi states from closed system-environment dynamics.
//
// The circuit: the global pure state ρ ⊗ Ψ^{⊗k} on [E, S, A1, B1, ..., Ak, Bk]
// is evolved by U0 on (E,S), then for i = 1..k by a SWAP of S with Ai
// followed by Ui on (E,S). Tracing out E gives the Choi state on
// [S, A1, B1, ..., Ak, Bk].

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "proctensor/haar.hpp"
#include "proctensor/linalg.hpp"

namespace proctensor::process {

using linalg::ComplexMatrix;
using linalg::SubsystemLayout;

inline constexpr std::size_t kDefaultDimCap = std::size_t{1} << 20;

enum class Mode {
  kConstant,  // one U shared by every slot, U0 included
  kRandom,    // k+1 independent Haar unitaries
};

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct InitialState {
  enum class Kind { kBasisZero, kHaarPure };
  Kind kind = Kind::kBasisZero;
  haar::SeedSpec seed{};  // used by kHaarPure only

  static InitialState basis_zero() { return {}; }
  static InitialState haar_pure(haar::SeedSpec s) {
    return {Kind::kHaarPure, s};
  }
};

struct ProcessSpec {
  std::size_t k = 0;
  std::size_t d_s = 2;
  std::size_t d_e = 1;
  Mode mode = Mode::kRandom;
  InitialState initial_state{};
  haar::SeedSpec seed{};
  std::size_t dim_cap = kDefaultDimCap;

  /// d_E · d_S^{2k+1}, the length of the global state vector.
  std::size_t global_dim() const;
  /// d_S^{2k+1}, the Choi matrix dimension.
  std::size_t choi_dim() const;
  /// Throws InvalidArgument / CapExceeded when the spec is unusable.
  void validate() const;
};

/// Canonical Choi layout [S, A1, B1, ..., Ak, Bk].
SubsystemLayout choi_layout(std::size_t k, std::size_t d_s);
/// Global layout [E, S, A1, B1, ..., Ak, Bk].
SubsystemLayout global_layout(std::size_t k, std::size_t d_s, std::size_t d_e);

/// Normalised Choi matrix of a k-step process together with its dimensions.
struct ChoiState {
  ComplexMatrix matrix;
  SubsystemLayout layout;
  std::size_t k = 0;
  std::size_t d_s = 2;
  std::size_t d_e = 1;

  ChoiState() = default;
  /// Builds the canonical layout; throws when `m` has the wrong size.
  ChoiState(ComplexMatrix m, std::size_t k, std::size_t d_s, std::size_t d_e);

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// Numbers used to check the structural invariants of a Choi state.
struct ChoiDiagnostics {
  double trace_error = 0.0;        // |tr Υ − 1|
  double hermiticity_error = 0.0;  // max |Υ − Υ†|
  double min_eigenvalue = 0.0;
  std::size_t rank = 0;            // eigenvalues above kRankTol
  bool ok(std::size_t d_e, double tol = 1e-10) const;
};
inline constexpr double kRankTol = 1e-10;
ChoiDiagnostics diagnose(const ChoiState& c);

/// The random ingredients of one process instance.
struct ProcessDraw {
  std::vector<ComplexMatrix> unitaries;  // k+1 entries, U0 first
  linalg::ComplexVector initial;         // d_E·d_S amplitudes on (E,S)
};

/// Draws the unitaries (and initial state) that build_choi would use for
/// `spec` when no explicit list is given.
ProcessDraw draw(const ProcessSpec& spec);

/// Initial (E,S) vector implied by spec.initial_state.
linalg::ComplexVector initial_vector(const ProcessSpec& spec);

/// Final global pure state [E, S, A1, B1, ...] after the full circuit.
linalg::StateVector evolve(const ProcessSpec& spec,
                           const std::vector<ComplexMatrix>& unitaries);

/// Choi state of the process. With no explicit list the unitaries are drawn
/// from spec.seed according to spec.mode. The global density matrix is never
/// formed: the final vector is reshaped into G (d_E rows) and Υ = Gᵀ·conj(G).
ChoiState build_choi(const ProcessSpec& spec,
                     const std::optional<std::vector<ComplexMatrix>>& unitaries =
                         std::nullopt);

/// Product of the marginals on [A1], [B1,A2], ..., [Bk,S], returned in the
/// canonical layout. For k = 0 this is the input itself.
ChoiState markov_product(const ChoiState& c);

/// Unitary schedule of the process with only the swaps at `retain` (a
/// sorted subset of 1..k) kept; unitaries between kept swaps are multiplied.
std::vector<ComplexMatrix> coarse_unitaries(
    const std::vector<ComplexMatrix>& unitaries,
    const std::vector<std::size_t>& retain);

/// Coarse-grained |retain|-step Choi state built from the fine schedule.
ChoiState coarse_grain(const ProcessSpec& spec,
                       const std::vector<ComplexMatrix>& unitaries,
                       const std::vector<std::size_t>& retain);

/// Metadata stored in the serialized header.
struct ChoiHeader {
  std::size_t k = 0;
  std::size_t d_s = 2;
  std::size_t d_e = 1;
  std::vector<std::string> layout;
  std::optional<haar::SeedSpec> seed;
};

/// Writes a one-line JSON header terminated by '\n', followed by the matrix
/// as row-major little-endian (re, im) float64 pairs.
void write_choi(const std::filesystem::path& path, const ChoiState& c,
                const std::optional<haar::SeedSpec>& seed = std::nullopt);
ChoiState read_choi(const std::filesystem::path& path,
                    ChoiHeader* header = nullptr);

}  // namespace proctensor::process
