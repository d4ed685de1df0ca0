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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "proctensor/error.hpp"
#include "proctensor/symgroup.hpp"

namespace proctensor::symgroup {

double to_double(const BigRational& q) { return q.convert_to<double>(); }

std::string to_string(const BigRational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

BigRational schur_at_ones(const CycleType& lambda, std::uint64_t d) {
  const auto& rows = lambda.parts();
  if (rows.size() > d) return BigRational(0);
  std::vector<int> cols(rows.empty() ? 0 : static_cast<std::size_t>(rows[0]), 0);
  for (int r : rows) {
    for (int j = 0; j < r; ++j) ++cols[j];
  }
  BigInt num = 1, den = 1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < rows[i]; ++j) {
      num *= BigInt(static_cast<long long>(d) + j - static_cast<long long>(i));
      den *= BigInt(rows[i] - j + cols[j] - static_cast<int>(i) - 1);
    }
  }
  return BigRational(num, den);
}

BigRational weingarten(const CycleType& t, int n, std::uint64_t d) {
  if (d == 0) throw InvalidArgument("weingarten: d must be positive");
  if (n < 1 || n > kMaxWeingartenN) {
    throw InvalidArgument("weingarten: n must be in 1.." + std::to_string(kMaxWeingartenN));
  }
  if (t.n() != n) throw InvalidArgument("weingarten: cycle type " + t.to_string() + " is not a partition of " + std::to_string(n));
  BigInt nfact = 1;
  for (int i = 2; i <= n; ++i) nfact *= i;
  BigRational sum = 0;
  for (const auto& lambda : partitions(n)) {
    if (static_cast<std::uint64_t>(lambda.length()) > d) continue;
    const BigInt f = hook_dimension(lambda);
    sum += BigRational(f * f * character(lambda, t)) / schur_at_ones(lambda, d);
  }
  return sum / BigRational(nfact * nfact);
}

WeingartenTable::WeingartenTable(int n, std::uint64_t d)
    : n_(n), d_(d), classes_(partitions(n)) {
  exact_.reserve(classes_.size());
  approx_.reserve(classes_.size());
  for (const auto& c : classes_) {
    exact_.push_back(weingarten(c, n, d));
    approx_.push_back(to_double(exact_.back()));
  }
}

std::size_t WeingartenTable::class_index(const CycleType& c) const {
  auto it = std::find(classes_.begin(), classes_.end(), c);
  if (it == classes_.end()) throw InvalidArgument("class " + c.to_string() + " not in S_" + std::to_string(n_));
  return static_cast<std::size_t>(it - classes_.begin());
}

const BigRational& WeingartenTable::operator()(const Permutation& p) const {
  if (p.size() != n_) throw InvalidArgument("WeingartenTable: permutation size mismatch");
  return exact_[class_index(cycle_type(p))];
}

std::vector<BigRational> gram_inverse_identity_row(int n, std::uint64_t d) {
  if (n < 1 || n > 6) throw InvalidArgument("gram_inverse_identity_row: n must be in 1..6");
  if (d < static_cast<std::uint64_t>(n)) throw InvalidArgument("gram_inverse_identity_row: Gram matrix singular for d < n");
  const auto perms = all_permutations(n);
  const std::size_t m = perms.size();
  std::vector<BigRational> dpow(static_cast<std::size_t>(n) + 1);
  dpow[0] = 1;
  for (int i = 1; i <= n; ++i) dpow[i] = dpow[i - 1] * BigRational(d);
  // Augmented system G x = e_id; G is symmetric so x is the identity row.
  std::vector<std::vector<BigRational>> a(m, std::vector<BigRational>(m + 1));
  for (std::size_t r = 0; r < m; ++r) {
    const auto r_inv = inverse(perms[r]);
    for (std::size_t c = 0; c < m; ++c) a[r][c] = dpow[cycle_count(compose(perms[c], r_inv))];
    a[r][m] = r == 0 ? 1 : 0;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) throw NumericalError("gram_inverse_identity_row: singular Gram matrix");
    std::swap(a[piv], a[col]);
    const BigRational inv = 1 / a[col][col];
    for (std::size_t c = col; c <= m; ++c) a[col][c] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const BigRational f = a[r][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<BigRational> x(m);
  for (std::size_t r = 0; r < m; ++r) x[r] = a[r][m];
  return x;
}

BigRational moment_integral_exact(const std::vector<int>& i, const std::vector<int>& j,
                                  const std::vector<int>& ip, const std::vector<int>& jp,
                                  std::uint64_t d) {
  const auto n = i.size();
  if (j.size() != n || ip.size() != n || jp.size() != n) {
    throw InvalidArgument("moment_integral: tuple length mismatch");
  }
  if (n == 0) return BigRational(1);
  for (const auto* v : {&i, &j, &ip, &jp}) {
    for (int x : *v) {
      if (x < 0 || static_cast<std::uint64_t>(x) >= d) throw InvalidArgument("moment_integral: index out of range");
    }
  }
  const WeingartenTable wg(static_cast<int>(n), d);
  const auto perms = all_permutations(static_cast<int>(n));
  auto matches = [&](const std::vector<int>& a, const std::vector<int>& b, const Permutation& p) {
    for (std::size_t l = 0; l < n; ++l) {
      if (a[l] != b[static_cast<std::size_t>(p(static_cast<int>(l)))]) return false;
    }
    return true;
  };
  BigRational total = 0;
  for (const auto& s : perms) {
    if (!matches(i, ip, s)) continue;
    const auto s_inv = inverse(s);
    for (const auto& t : perms) {
      if (!matches(j, jp, t)) continue;
      total += wg(compose(t, s_inv));
    }
  }
  return total;
}

double moment_integral(const std::vector<int>& i, const std::vector<int>& j,
                       const std::vector<int>& ip, const std::vector<int>& jp,
                       std::uint64_t d) {
  return to_double(moment_integral_exact(i, j, ip, jp, d));
}

linalg::ComplexMatrix two_moment_twirl(const linalg::ComplexMatrix& a,
                                       const linalg::ComplexMatrix& b,
                                       const linalg::ComplexMatrix& x,
                                       std::size_t d) {
  if (d < 2) throw InvalidArgument("two_moment_twirl: d must be >= 2");
  const auto dd = static_cast<Eigen::Index>(d);
  for (const auto* m : {&a, &b, &x}) {
    if (m->rows() != dd || m->cols() != dd) throw InvalidArgument("two_moment_twirl: operands must be d x d");
  }
  const double df = static_cast<double>(d);
  const linalg::Complex tr_ab = (a * b).trace();
  const linalg::Complex tr_a = a.trace(), tr_b = b.trace(), tr_x = x.trace();
  linalg::ComplexMatrix out = (df * tr_ab - tr_a * tr_b) * tr_x * linalg::identity(d) +
                              (df * tr_a * tr_b - tr_ab) * x;
  return out / (df * (df * df - 1.0));
}

AsymptoticReport wg_asymptotic_check(const CycleType& t, int n,
                                     const std::vector<std::uint64_t>& d_list) {
  if (d_list.size() < 2) throw InvalidArgument("wg_asymptotic_check: need at least two d values");
  for (std::size_t i = 1; i < d_list.size(); ++i) {
    if (d_list[i] <= d_list[i - 1]) throw InvalidArgument("wg_asymptotic_check: d_list must be increasing");
  }
  AsymptoticReport rep;
  rep.type = t;
  rep.n = n;
  rep.expected_slope = -(2.0 * n - static_cast<double>(t.length()));
  const double top = static_cast<double>(d_list.back());
  std::vector<double> xs, ys;
  for (auto d : d_list) {
    const double w = to_double(weingarten(t, n, d));
    rep.d_values.push_back(d);
    rep.wg_values.push_back(w);
    if (static_cast<double>(d) * 10.0 >= top && w != 0.0) {
      xs.push_back(std::log(static_cast<double>(d)));
      ys.push_back(std::log(std::abs(w)));
    }
  }
  if (xs.size() < 2) throw InvalidArgument("wg_asymptotic_check: fewer than two points in the top decade");
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  rep.fitted_slope = sxy / sxx;
  rep.pass = std::abs(rep.fitted_slope - rep.expected_slope) <= 0.1;
  return rep;
}

}  // namespace proctensor::symgroup
