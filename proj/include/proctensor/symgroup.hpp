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

// Symmetric groups, characters and the unitary Weingarten function.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "proctensor/linalg.hpp"

namespace proctensor::symgroup {

/// Exact rational backed by GMP; always stored in lowest terms.
using BigRational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline constexpr int kMaxPartitionN = 12;
inline constexpr int kMaxWeingartenN = 8;

/// Element of S_n in one-line notation: i ↦ map[i].
class Permutation {
 public:
  Permutation() = default;
  /// Throws InvalidArgument unless `one_line` is a bijection of {0..n−1}.
  explicit Permutation(std::vector<int> one_line);

  static Permutation identity(int n);
  static Permutation transposition(int n, int a, int b);
  /// Builds from disjoint cycles, e.g. {{0,1,2}} in S_4.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(map_.size()); }
  int operator()(int i) const { return map_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& one_line() const { return map_; }

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> map_;
};

/// (a∘b)(i) = a(b(i)). Throws on size mismatch.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
/// Number of cycles, fixed points included.
int cycle_count(const Permutation& p);

/// All of S_n in lexicographic order of the one-line notation.
std::vector<Permutation> all_permutations(int n);

/// Integer partition with weakly decreasing positive parts.
class CycleType {
 public:
  CycleType() = default;
  /// Sorts the parts; throws on non-positive parts.
  explicit CycleType(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int n() const;
  int length() const { return static_cast<int>(parts_.size()); }
  std::string to_string() const;
  /// Parses "3,1,1", "(3,1,1)" or "3 1 1".
  static CycleType parse(const std::string& s);

  auto operator<=>(const CycleType&) const = default;

 private:
  std::vector<int> parts_;
};

CycleType cycle_type(const Permutation& p);

/// All partitions of n, descending-lexicographic: (n), (n−1,1), ..., (1ⁿ).
/// Throws for n > kMaxPartitionN.
std::vector<CycleType> partitions(int n);

/// Number of standard Young tableaux of shape λ (hook length formula).
std::uint64_t hook_dimension(const CycleType& lambda);

/// n!/z_μ, the size of the conjugacy class μ.
std::uint64_t class_size(const CycleType& mu);

/// χ^λ(μ) by the Murnaghan–Nakayama rule on beta-sets.
std::int64_t character(const CycleType& lambda, const CycleType& mu);

/// Full character table of S_n; rows and columns both follow partitions(n).
class CharacterTable {
 public:
  explicit CharacterTable(int n);

  int n() const { return n_; }
  const std::vector<CycleType>& classes() const { return parts_; }
  std::size_t index_of(const CycleType& c) const;
  std::int64_t value(std::size_t lambda, std::size_t mu) const {
    return values_[lambda * parts_.size() + mu];
  }

 private:
  int n_;
  std::vector<CycleType> parts_;
  std::vector<std::int64_t> values_;
};

/// s_λ(1^d) = ∏(d + j − i)/hook(i,j); zero when ℓ(λ) > d.
BigRational schur_at_ones(const CycleType& lambda, std::uint64_t d);

/// Wg(t, d) on S_n, exact. Partitions with more than d rows are dropped, so
/// d < n yields the pseudo-inverse of the Gram matrix.
BigRational weingarten(const CycleType& t, int n, std::uint64_t d);

/// Wg values for every class of S_n at fixed d, computed once.
class WeingartenTable {
 public:
  WeingartenTable(int n, std::uint64_t d);

  int n() const { return n_; }
  std::uint64_t d() const { return d_; }
  const std::vector<CycleType>& classes() const { return classes_; }
  std::size_t class_index(const CycleType& c) const;
  const BigRational& by_class(std::size_t idx) const { return exact_[idx]; }
  double by_class_double(std::size_t idx) const { return approx_[idx]; }
  const BigRational& operator()(const Permutation& p) const;

 private:
  int n_;
  std::uint64_t d_;
  std::vector<CycleType> classes_;
  std::vector<BigRational> exact_;
  std::vector<double> approx_;
};

/// Independent check: the row of G⁻¹ for the identity, G(σ,τ) = d^{#(στ⁻¹)},
/// by exact Gaussian elimination. Entries follow all_permutations(n). Needs
/// d ≥ n (G singular otherwise).
std::vector<BigRational> gram_inverse_identity_row(int n, std::uint64_t d);

/// ∫ U_{i1 j1}⋯U_{in jn} U*_{i'1 j'1}⋯U*_{i'n j'n} dU, summed exactly and
/// converted to double at the end.
BigRational moment_integral_exact(const std::vector<int>& i,
                                  const std::vector<int>& j,
                                  const std::vector<int>& ip,
                                  const std::vector<int>& jp, std::uint64_t d);
double moment_integral(const std::vector<int>& i, const std::vector<int>& j,
                       const std::vector<int>& ip, const std::vector<int>& jp,
                       std::uint64_t d);

/// ∫ U†AU X U†BU dU in closed form.
linalg::ComplexMatrix two_moment_twirl(const linalg::ComplexMatrix& a,
                                       const linalg::ComplexMatrix& b,
                                       const linalg::ComplexMatrix& x,
                                       std::size_t d);

struct AsymptoticReport {
  CycleType type;
  int n = 0;
  std::vector<std::uint64_t> d_values;
  std::vector<double> wg_values;
  double fitted_slope = 0.0;
  double expected_slope = 0.0;  // −(2n − #σ)
  bool pass = false;            // |fitted − expected| ≤ 0.1
};

/// Least-squares log-log slope of |Wg| over the top decade of `d_list`.
AsymptoticReport wg_asymptotic_check(const CycleType& t, int n,
                                     const std::vector<std::uint64_t>& d_list);

double to_double(const BigRational& q);
std::string to_string(const BigRational& q);

}  // namespace proctensor::symgroup
