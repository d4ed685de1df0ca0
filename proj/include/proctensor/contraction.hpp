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

// Haar averages of polynomials in U ⊗ U* on a bipartite (E,S) space,
// reduced to union-find over Kronecker-delta constraint graphs.
//
// Each U entry carries a row index (e, s) and a column index (e', s'). For
// one Haar unitary with n U entries and n U* entries, the Weingarten sum runs
// over σ, τ ∈ S_n: row(U_l) = row(U*_σ(l)), col(U_l) = col(U*_τ(l)), weight
// Wg(τσ⁻¹, d_E d_S). After the deltas are imposed, each free connected
// component of index variables contributes its dimension; components holding
// a pinned basis value contribute 1, or 0 if two different values meet.

#pragma once

#include <cstdint>
#include <vector>

#include "proctensor/symgroup.hpp"

namespace proctensor::analytic {

using symgroup::BigRational;

enum class IndexClass { kE, kS };

class DeltaContraction {
 public:
  struct Entry {
    int row_e, row_s, col_e, col_s;
  };

  /// A fresh summed index variable.
  int add_variable(IndexClass c);
  /// A variable fixed to basis value `value`.
  int add_pinned(IndexClass c, int value);
  /// Imposes δ_{ab}; the variables must share a class.
  void equate(int a, int b);
  /// One independent Haar unitary appearing as `u` entries of U and
  /// `u_conj` entries of U* (equal counts, at most 8).
  void add_group(std::vector<Entry> u, std::vector<Entry> u_conj);

  std::size_t variable_count() const { return cls_.size(); }
  std::size_t group_count() const { return groups_.size(); }

  /// Dimension-independent summary: how many (σ, τ) assignments produce each
  /// combination of Weingarten classes and free-component counts.
  struct Tally {
    std::vector<int> group_sizes;
    std::size_t max_e = 0, max_s = 0;
    // Flat index: ((combo · (max_e+1)) + free_e) · (max_s+1) + free_s, where
    // combo is the mixed-radix index of the per-group class indices.
    std::vector<std::int64_t> counts;
    std::uint64_t assignments = 0;
  };

  /// Enumerates every (σ_g, τ_g) assignment. `workers` threads split the
  /// outermost σ.
  Tally tally(unsigned workers = 1) const;

  /// Σ count · ∏ Wg(class_g, d_E d_S) · d_E^free_e · d_S^free_s.
  static BigRational evaluate(const Tally& t, std::uint64_t d_e, std::uint64_t d_s);

 private:
  struct Group {
    std::vector<Entry> u, uc;
  };
  std::vector<IndexClass> cls_;
  std::vector<int> pin_;  // −1 when free
  std::vector<std::pair<int, int>> base_;
  std::vector<Group> groups_;
};

}  // namespace proctensor::analytic
