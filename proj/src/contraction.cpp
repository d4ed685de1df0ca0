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

#include "proctensor/contraction.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "proctensor/error.hpp"

namespace proctensor::analytic {

using symgroup::CycleType;
using symgroup::Permutation;

int DeltaContraction::add_variable(IndexClass c) {
  cls_.push_back(c);
  pin_.push_back(-1);
  return static_cast<int>(cls_.size()) - 1;
}

int DeltaContraction::add_pinned(IndexClass c, int value) {
  if (value < 0) throw InvalidArgument("add_pinned: basis value must be >= 0");
  cls_.push_back(c);
  pin_.push_back(value);
  return static_cast<int>(cls_.size()) - 1;
}

void DeltaContraction::equate(int a, int b) {
  const auto n = static_cast<int>(cls_.size());
  if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidArgument("equate: unknown variable");
  if (cls_[a] != cls_[b]) throw InvalidArgument("equate: variables of different class");
  base_.emplace_back(a, b);
}

void DeltaContraction::add_group(std::vector<Entry> u, std::vector<Entry> u_conj) {
  if (u.size() != u_conj.size()) {
    throw InvalidArgument("add_group: U and U* entry counts differ (integral vanishes)");
  }
  if (u.empty() || u.size() > static_cast<std::size_t>(symgroup::kMaxWeingartenN)) {
    throw InvalidArgument("add_group: group size must be in 1..8");
  }
  const auto n = static_cast<int>(cls_.size());
  for (const auto* list : {&u, &u_conj}) {
    for (const auto& e : *list) {
      for (int v : {e.row_e, e.row_s, e.col_e, e.col_s}) {
        if (v < 0 || v >= n) throw InvalidArgument("add_group: unknown variable");
      }
      if (cls_[e.row_e] != IndexClass::kE || cls_[e.col_e] != IndexClass::kE ||
          cls_[e.row_s] != IndexClass::kS || cls_[e.col_s] != IndexClass::kS) {
        throw InvalidArgument("add_group: entry index classes must be (E,S)");
      }
    }
  }
  groups_.push_back({std::move(u), std::move(u_conj)});
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[a] = b;
  }
};

// Key of a cycle type: multiplicity of length L in bits [4(L−1), 4L).
std::uint32_t encode_cycles(const int* p, int n, std::vector<char>& seen) {
  std::fill(seen.begin(), seen.begin() + n, 0);
  std::uint32_t key = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    key += 1u << (4 * (len - 1));
  }
  return key;
}

struct GroupData {
  int n = 0;
  std::vector<std::vector<int>> perms;
  std::vector<std::vector<int>> inverses;
  std::unordered_map<std::uint32_t, int> class_of_key;
  int class_count = 0;
};

}  // namespace

DeltaContraction::Tally DeltaContraction::tally(unsigned workers) const {
  if (groups_.empty()) throw InvalidArgument("tally: no Haar groups");
  Tally out;
  std::vector<GroupData> gd(groups_.size());
  std::size_t combos = 1;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    auto& d = gd[g];
    d.n = static_cast<int>(groups_[g].u.size());
    for (const auto& p : symgroup::all_permutations(d.n)) {
      d.perms.push_back(p.one_line());
      d.inverses.push_back(inverse(p).one_line());
    }
    const auto parts = symgroup::partitions(d.n);
    d.class_count = static_cast<int>(parts.size());
    for (std::size_t c = 0; c < parts.size(); ++c) {
      std::uint32_t key = 0;
      for (int len : parts[c].parts()) key += 1u << (4 * (len - 1));
      d.class_of_key[key] = static_cast<int>(c);
    }
    combos *= parts.size();
    out.group_sizes.push_back(d.n);
  }
  std::size_t n_e = 0, n_s = 0;
  for (std::size_t v = 0; v < cls_.size(); ++v) {
    if (pin_[v] >= 0) continue;
    (cls_[v] == IndexClass::kE ? n_e : n_s)++;
  }
  out.max_e = n_e;
  out.max_s = n_s;
  const std::size_t cells = combos * (n_e + 1) * (n_s + 1);

  const int nv = static_cast<int>(cls_.size());
  UnionFind base{std::vector<int>(static_cast<std::size_t>(nv))};
  for (int v = 0; v < nv; ++v) base.parent[v] = v;
  for (auto [a, b] : base_) base.unite(a, b);

  std::atomic<std::size_t> next{0};
  std::mutex merge_mu;
  out.counts.assign(cells, 0);
  const auto& g0 = gd[0];

  auto work = [&]() {
    std::vector<std::int64_t> local(cells, 0);
    std::uint64_t local_assign = 0;
    std::vector<int> stamp(static_cast<std::size_t>(nv), -1), pin_state(static_cast<std::size_t>(nv));
    int gen = 0;
    std::vector<char> seen(16);
    std::vector<int> rho(16);

    auto leaf = [&](UnionFind& uf, std::size_t combo) {
      ++local_assign;
      ++gen;
      bool conflict = false;
      for (int v = 0; v < nv && !conflict; ++v) {
        const int r = uf.find(v);
        if (stamp[r] != gen) {
          stamp[r] = gen;
          pin_state[r] = pin_[v];
        } else if (pin_[v] >= 0) {
          if (pin_state[r] < 0) {
            pin_state[r] = pin_[v];
          } else if (pin_state[r] != pin_[v]) {
            conflict = true;
          }
        }
      }
      if (conflict) return;
      std::size_t fe = 0, fs = 0;
      for (int v = 0; v < nv; ++v) {
        if (uf.parent[v] == v && pin_state[v] < 0) (cls_[v] == IndexClass::kE ? fe : fs)++;
      }
      ++local[(combo * (n_e + 1) + fe) * (n_s + 1) + fs];
    };

    // Depth-first over groups; σ fixes row deltas, τ column deltas.
    auto rec = [&](auto&& self, std::size_t g, const UnionFind& state, std::size_t combo,
                   std::size_t sigma_only) -> void {
      if (g == groups_.size()) {
        UnionFind uf = state;
        leaf(uf, combo);
        return;
      }
      const auto& grp = groups_[g];
      const auto& d = gd[g];
      const std::size_t s_begin = g == 0 ? sigma_only : 0;
      const std::size_t s_end = g == 0 ? sigma_only + 1 : d.perms.size();
      for (std::size_t si = s_begin; si < s_end; ++si) {
        const auto& s = d.perms[si];
        const auto& s_inv = d.inverses[si];
        UnionFind rows = state;
        for (int l = 0; l < d.n; ++l) {
          rows.unite(grp.u[l].row_e, grp.uc[s[l]].row_e);
          rows.unite(grp.u[l].row_s, grp.uc[s[l]].row_s);
        }
        for (const auto& t : d.perms) {
          UnionFind cols = rows;
          for (int l = 0; l < d.n; ++l) {
            cols.unite(grp.u[l].col_e, grp.uc[t[l]].col_e);
            cols.unite(grp.u[l].col_s, grp.uc[t[l]].col_s);
          }
          for (int i = 0; i < d.n; ++i) rho[i] = t[s_inv[i]];
          const int cls = d.class_of_key.at(encode_cycles(rho.data(), d.n, seen));
          self(self, g + 1, cols, combo * static_cast<std::size_t>(d.class_count) + static_cast<std::size_t>(cls), 0);
        }
      }
    };

    for (std::size_t si = next++; si < g0.perms.size(); si = next++) {
      rec(rec, 0, base, 0, si);
    }
    std::lock_guard<std::mutex> lock(merge_mu);
    for (std::size_t i = 0; i < cells; ++i) out.counts[i] += local[i];
    out.assignments += local_assign;
  };

  const unsigned nw = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(g0.perms.size())));
  if (nw == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nw; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

BigRational DeltaContraction::evaluate(const Tally& t, std::uint64_t d_e, std::uint64_t d_s) {
  if (d_e == 0 || d_s == 0) throw InvalidArgument("evaluate: dimensions must be positive");
  const std::uint64_t dim = d_e * d_s;
  std::map<int, symgroup::WeingartenTable> tables;
  std::vector<std::size_t> radix;
  for (int n : t.group_sizes) {
    tables.try_emplace(n, n, dim);
    radix.push_back(tables.at(n).classes().size());
  }
  std::vector<BigRational> pe(t.max_e + 1), ps(t.max_s + 1);
  pe[0] = ps[0] = 1;
  for (std::size_t i = 1; i < pe.size(); ++i) pe[i] = pe[i - 1] * d_e;
  for (std::size_t i = 1; i < ps.size(); ++i) ps[i] = ps[i - 1] * d_s;

  const std::size_t per_combo = (t.max_e + 1) * (t.max_s + 1);
  const std::size_t combos = t.counts.size() / per_combo;
  BigRational total = 0;
  for (std::size_t combo = 0; combo < combos; ++combo) {
    BigRational inner = 0;
    for (std::size_t fe = 0; fe <= t.max_e; ++fe) {
      for (std::size_t fs = 0; fs <= t.max_s; ++fs) {
        const auto c = t.counts[combo * per_combo + fe * (t.max_s + 1) + fs];
        if (c != 0) inner += BigRational(c) * pe[fe] * ps[fs];
      }
    }
    if (inner == 0) continue;
    // Decode the mixed-radix combo, last group least significant.
    std::size_t rem = combo;
    BigRational w = 1;
    for (std::size_t g = t.group_sizes.size(); g-- > 0;) {
      const auto idx = rem % radix[g];
      rem /= radix[g];
      w *= tables.at(t.group_sizes[g]).by_class(idx);
    }
    total += w * inner;
  }
  return total;
}

}  // namespace proctensor::analytic
