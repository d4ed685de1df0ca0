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

#include "proctensor/analytic.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "proctensor/error.hpp"

namespace proctensor::analytic {

using linalg::Complex;
using linalg::ComplexMatrix;
using symgroup::to_double;

namespace {

constexpr double kRadicandTol = 1e-12;

std::uint64_t upow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= b;
  return r;
}

double checked_sqrt(double r, const char* what) {
  if (r < -kRadicandTol) {
    throw InvalidArgument(std::string("bk_bound: negative radicand in ") + what +
                          " (purity inconsistent with dimensions)");
  }
  return std::sqrt(std::max(r, 0.0));
}

void check_bound_inputs(const BoundInputs& in) {
  if (in.d_e < 1 || in.d_s < 1) throw InvalidArgument("bk_bound: dimensions must be positive");
  if (in.k >= 1 && in.d_s < 2) throw InvalidArgument("bk_bound: d_S must be >= 2 for k >= 1");
}

// Copy c of the final amplitude: variables f_0..f_k (E), t_0..t_k (S) and
// β_1..β_k (S), with U entry i mapping (f_{i−1}, β_i) → (f_i, t_i).
struct CopyVars {
  std::vector<int> f, t, b;  // b[0] unused
};

DeltaContraction::Entry entry_of(const CopyVars& c, std::uint64_t i, int pin_e, int pin_s) {
  if (i == 0) return {c.f[0], c.t[0], pin_e, pin_s};
  return {c.f[i], c.t[i], c.f[i - 1], c.b[i]};
}

CopyVars free_copy(DeltaContraction& dc, std::uint64_t k) {
  CopyVars c;
  for (std::uint64_t i = 0; i <= k; ++i) {
    c.f.push_back(dc.add_variable(IndexClass::kE));
    c.t.push_back(dc.add_variable(IndexClass::kS));
    c.b.push_back(i == 0 ? -1 : dc.add_variable(IndexClass::kS));
  }
  return c;
}

void add_groups(DeltaContraction& dc, std::uint64_t k, Mode mode,
                const std::vector<const CopyVars*>& u_copies,
                const std::vector<const CopyVars*>& uc_copies, int pin_e, int pin_s) {
  if (mode == Mode::kConstant) {
    std::vector<DeltaContraction::Entry> u, uc;
    for (const auto* c : u_copies) {
      for (std::uint64_t i = 0; i <= k; ++i) u.push_back(entry_of(*c, i, pin_e, pin_s));
    }
    for (const auto* c : uc_copies) {
      for (std::uint64_t i = 0; i <= k; ++i) uc.push_back(entry_of(*c, i, pin_e, pin_s));
    }
    dc.add_group(std::move(u), std::move(uc));
    return;
  }
  for (std::uint64_t i = 0; i <= k; ++i) {
    std::vector<DeltaContraction::Entry> u, uc;
    for (const auto* c : u_copies) u.push_back(entry_of(*c, i, pin_e, pin_s));
    for (const auto* c : uc_copies) uc.push_back(entry_of(*c, i, pin_e, pin_s));
    dc.add_group(std::move(u), std::move(uc));
  }
}

void check_k(std::uint64_t k, Mode mode, const TiOptions& opt) {
  if (mode == Mode::kRandom) {
    if (k > 7) throw InvalidArgument("random-mode contraction limited to k <= 7");
    return;
  }
  if (k > 3) throw InvalidArgument("constant-interaction purity is implemented for k <= 3");
  if (k == 3) {
#ifdef PROCTENSOR_ENABLE_K3
    if (!opt.allow_k3) {
      throw CapExceeded("k = 3 enumerates |S8|^2 = 1.6e9 permutation pairs; pass allow_k3 to run it");
    }
#else
    (void)opt;
    throw CapExceeded("k = 3 requires a build with -DPROCTENSOR_ENABLE_K3=ON");
#endif
  }
}

const DeltaContraction::Tally& cached_purity_tally(std::uint64_t k, Mode mode, unsigned workers) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, Mode>, DeltaContraction::Tally> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(k, mode);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, purity_contraction(k, mode).tally(workers)).first;
  }
  return it->second;
}

}  // namespace

double bk_small_branch(const BoundInputs& in) {
  check_bound_inputs(in);
  const double big_d = std::pow(static_cast<double>(in.d_s), 2.0 * static_cast<double>(in.k) + 1.0);
  return 0.5 * checked_sqrt(big_d * in.avg_purity - 1.0, "the small-system branch");
}

double bk_large_branch(const BoundInputs& in) {
  check_bound_inputs(in);
  const double big_d = std::pow(static_cast<double>(in.d_s), 2.0 * static_cast<double>(in.k) + 1.0);
  const double ratio = static_cast<double>(in.d_e) / big_d;
  const double y = 1.0 - ratio;
  const double x = ratio * (1.0 + y);
  return 0.5 * (checked_sqrt(static_cast<double>(in.d_e) * in.avg_purity - x, "the rank-limited branch") + y);
}

double bk_bound(const BoundInputs& in) {
  check_bound_inputs(in);
  const double big_d = std::pow(static_cast<double>(in.d_s), 2.0 * static_cast<double>(in.k) + 1.0);
  if (in.avg_purity < 1.0 / big_d - kRadicandTol || in.avg_purity > 1.0 + kRadicandTol) {
    throw InvalidArgument("bk_bound: average purity outside [1/d_S^(2k+1), 1]");
  }
  return static_cast<double>(in.d_e) < big_d ? bk_large_branch(in) : bk_small_branch(in);
}

BkExact bk_branches_exact(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k,
                          const BigRational& p) {
  const BigRational big_d = BigRational(symgroup::BigInt(upow(d_s, 2 * k + 1)));
  const BigRational ratio = BigRational(d_e) / big_d;
  const BigRational y = 1 - ratio;
  const BigRational x = ratio * (1 + y);
  return {big_d * p - 1, BigRational(d_e) * p - x, y};
}

BigRational ergodic_avg_purity_exact(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k) {
  if (d_e < 1 || d_s < 1) throw InvalidArgument("ergodic_avg_purity: dimensions must be positive");
  const BigRational de(d_e), ds(d_s);
  const BigRational first = (de * de - 1) / (de * (de * ds + 1));
  const BigRational ratio = (de * de - 1) / (de * de * ds * ds - 1);
  BigRational pw = 1;
  for (std::uint64_t i = 0; i < k; ++i) pw *= ratio;
  return first * pw + 1 / de;
}

double ergodic_avg_purity(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k) {
  if (k > 64) {
    // Closed form in doubles; the exact power would be needlessly large.
    const double de = static_cast<double>(d_e), ds = static_cast<double>(d_s);
    return (de * de - 1) / (de * (de * ds + 1)) *
               std::pow((de * de - 1) / (de * de * ds * ds - 1), static_cast<double>(k)) +
           1 / de;
  }
  return to_double(ergodic_avg_purity_exact(d_e, d_s, k));
}

DeltaContraction purity_contraction(std::uint64_t k, Mode mode) {
  DeltaContraction dc;
  const int pin_e = dc.add_pinned(IndexClass::kE, 0);
  const int pin_s = dc.add_pinned(IndexClass::kS, 0);
  // Copies 0 and 3 carry x, copies 1 and 2 carry y in Σ_xy Υ_xy Υ_yx;
  // 0 and 2 are U factors, 1 and 3 are U* factors.
  std::vector<CopyVars> c;
  for (int i = 0; i < 4; ++i) c.push_back(free_copy(dc, k));
  dc.equate(c[0].f[k], c[1].f[k]);
  dc.equate(c[2].f[k], c[3].f[k]);
  for (auto [a, b] : {std::pair{0, 3}, std::pair{1, 2}}) {
    for (std::uint64_t i = 0; i <= k; ++i) dc.equate(c[a].t[i], c[b].t[i]);
    for (std::uint64_t i = 1; i <= k; ++i) dc.equate(c[a].b[i], c[b].b[i]);
  }
  add_groups(dc, k, mode, {&c[0], &c[2]}, {&c[1], &c[3]}, pin_e, pin_s);
  return dc;
}

BigRational avg_purity_exact(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k,
                             Mode mode, const TiOptions& opt) {
  if (d_e < 1 || d_s < 2) throw InvalidArgument("avg_purity_exact: need d_E >= 1, d_S >= 2");
  check_k(k, mode, opt);
  const auto& tally = cached_purity_tally(k, mode, opt.workers);
  BigRational norm = 1;
  for (std::uint64_t i = 0; i < 2 * k; ++i) norm *= d_s;
  return DeltaContraction::evaluate(tally, d_e, d_s) / norm;
}

BigRational ti_avg_purity(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k,
                          const TiOptions& opt) {
  return avg_purity_exact(d_e, d_s, k, Mode::kConstant, opt);
}

ChoiState avg_state_ergodic(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k) {
  const auto dim = upow(d_s, 2 * k + 1);
  return ChoiState(linalg::identity(dim) / static_cast<double>(dim), k, d_s, d_e);
}

ChoiState avg_state_ti_k1(std::uint64_t d_e, std::uint64_t d_s, const ComplexMatrix& rho_s) {
  const auto ds = static_cast<Eigen::Index>(d_s);
  if (rho_s.rows() != ds || rho_s.cols() != ds) {
    throw InvalidArgument("avg_state_ti_k1: rho_S must be d_S x d_S");
  }
  ComplexMatrix swap = ComplexMatrix::Zero(ds * ds, ds * ds);
  for (Eigen::Index a = 0; a < ds; ++a) {
    for (Eigen::Index b = 0; b < ds; ++b) swap(a * ds + b, b * ds + a) = 1.0;
  }
  const ComplexMatrix rho_t = rho_s.transpose();
  const ComplexMatrix id_sa = linalg::identity(d_s * d_s);
  const ComplexMatrix id_b = linalg::identity(d_s);
  const double s = static_cast<double>(d_s), e = static_cast<double>(d_e);
  ComplexMatrix m = (e * e / s) * linalg::identity(d_s * d_s * d_s) +
                    linalg::kron(swap, rho_t) / s - linalg::kron(swap, id_b) / (s * s) -
                    linalg::kron(id_sa, rho_t) / (s * s);
  m /= (e * e * s * s - 1.0);
  return ChoiState(std::move(m), 1, d_s, d_e);
}

double purity_of_avg_state_ti_k1(std::uint64_t d_e, std::uint64_t d_s, double purity_s) {
  const double s = static_cast<double>(d_s), e = static_cast<double>(d_e);
  const double n = e * e * s * s - 1.0;
  return 2.0 / (n * n) *
         (1.0 / (s * s * s) + purity_s * (s * s - s - 1.0) / (2.0 * s * s) - e * e / s +
          e * e * e * e * s / 2.0);
}

ChoiState avg_state_exact(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k, Mode mode) {
  if (k > 2) throw InvalidArgument("avg_state_exact: implemented for k <= 2");
  if (d_e < 1 || d_s < 2) throw InvalidArgument("avg_state_exact: need d_E >= 1, d_S >= 2");
  const auto dim = upow(d_s, 2 * k + 1);
  const std::size_t legs = 2 * k + 1;
  auto digits = [&](std::uint64_t x) {
    std::vector<int> dgt(legs);
    for (std::size_t l = legs; l-- > 0;) {
      dgt[l] = static_cast<int>(x % d_s);
      x /= d_s;
    }
    return dgt;  // [S, A1, B1, ...]
  };
  // Copy with every S index pinned to the output digits: t_k = S,
  // t_{i−1} = A_i, β_i = B_i.
  auto pinned_copy = [&](DeltaContraction& dc, const std::vector<int>& dgt) {
    CopyVars c;
    c.f.resize(k + 1);
    c.t.resize(k + 1);
    c.b.assign(k + 1, -1);
    for (std::uint64_t i = 0; i <= k; ++i) c.f[i] = dc.add_variable(IndexClass::kE);
    c.t[k] = dc.add_pinned(IndexClass::kS, dgt[0]);
    for (std::uint64_t i = 1; i <= k; ++i) {
      c.t[i - 1] = dc.add_pinned(IndexClass::kS, dgt[2 * i - 1]);
      c.b[i] = dc.add_pinned(IndexClass::kS, dgt[2 * i]);
    }
    return c;
  };
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  BigRational norm = 1;
  for (std::uint64_t i = 0; i < k; ++i) norm *= d_s;
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t y = 0; y < dim; ++y) {
      DeltaContraction dc;
      const int pin_e = dc.add_pinned(IndexClass::kE, 0);
      const int pin_s = dc.add_pinned(IndexClass::kS, 0);
      const auto cx = pinned_copy(dc, digits(x));
      const auto cy = pinned_copy(dc, digits(y));
      dc.equate(cx.f[k], cy.f[k]);
      add_groups(dc, k, mode, {&cx}, {&cy}, pin_e, pin_s);
      const auto v = DeltaContraction::evaluate(dc.tally(), d_e, d_s) / norm;
      m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = to_double(v);
    }
  }
  return ChoiState(std::move(m), k, d_s, d_e);
}

double lipschitz_eta(std::uint64_t d_s, std::uint64_t k) {
  if (d_s < 2) throw InvalidArgument("lipschitz_eta: d_S must be >= 2");
  const double s = static_cast<double>(d_s);
  return (std::pow(s, static_cast<double>(k + 1)) - 1.0) / (s - 1.0);
}

double concentration_C(std::uint64_t d_e, std::uint64_t d_s, std::uint64_t k, Mode mode) {
  const double c = mode == Mode::kConstant ? 0.25 : static_cast<double>(k + 1) / 4.0;
  const double eta = lipschitz_eta(d_s, k);
  return c * static_cast<double>(d_e) * static_cast<double>(d_s) / (eta * eta);
}

double tail_bound(double eps, double c) {
  if (eps <= 0.0) return 1.0;
  return std::exp(-c * eps * eps);
}

double epsilon_scale(std::uint64_t d_e) {
  if (d_e < 1) throw InvalidArgument("epsilon_scale: d_E must be >= 1");
  return 1.0 / std::cbrt(static_cast<double>(d_e));
}

}  // namespace proctensor::analytic
