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

#include "proctensor/symgroup.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "proctensor/error.hpp"

namespace proctensor::symgroup {

Permutation::Permutation(std::vector<int> one_line) : map_(std::move(one_line)) {
  std::vector<char> seen(map_.size(), 0);
  for (int v : map_) {
    if (v < 0 || static_cast<std::size_t>(v) >= map_.size() || seen[v]) {
      throw InvalidArgument("permutation: one-line array is not a bijection");
    }
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 0);
  return Permutation(std::move(m));
}

Permutation Permutation::transposition(int n, int a, int b) {
  auto m = identity(n).one_line();
  if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
    throw InvalidArgument("transposition: bad points");
  }
  std::swap(m[a], m[b]);
  return Permutation(std::move(m));
}

Permutation Permutation::from_cycles(int n,
                                     const std::vector<std::vector<int>>& cycles) {
  auto m = identity(n).one_line();
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0 || c[i] >= n) throw InvalidArgument("from_cycles: point out of range");
      m[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(m));
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw InvalidArgument("compose: size mismatch");
  std::vector<int> m(static_cast<std::size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) m[i] = a(b(i));
  return Permutation(std::move(m));
}

Permutation inverse(const Permutation& p) {
  std::vector<int> m(static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) m[p(i)] = i;
  return Permutation(std::move(m));
}

int cycle_count(const Permutation& p) {
  return static_cast<int>(cycle_type(p).parts().size());
}

std::vector<Permutation> all_permutations(int n) {
  if (n < 0 || n > 10) throw InvalidArgument("all_permutations: n out of range");
  std::vector<Permutation> out;
  auto m = Permutation::identity(n).one_line();
  do {
    out.emplace_back(m);
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

CycleType::CycleType(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p <= 0) throw InvalidArgument("partition parts must be positive");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int CycleType::n() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::string CycleType::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

CycleType CycleType::parse(const std::string& s) {
  std::string t;
  for (char c : s) t += (c == ',' || c == '(' || c == ')' || c == '[' || c == ']') ? ' ' : c;
  std::istringstream in(t);
  std::vector<int> parts;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("cycle type: bad token '" + tok + "'");
    }
    if (used != tok.size()) throw InvalidArgument("cycle type: bad token '" + tok + "'");
    parts.push_back(v);
  }
  if (parts.empty()) throw InvalidArgument("cycle type: empty");
  return CycleType(std::move(parts));
}

CycleType cycle_type(const Permutation& p) {
  std::vector<char> seen(static_cast<std::size_t>(p.size()), 0);
  std::vector<int> parts;
  for (int i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = p(j)) {
      seen[j] = 1;
      ++len;
    }
    parts.push_back(len);
  }
  return CycleType(std::move(parts));
}

std::vector<CycleType> partitions(int n) {
  if (n < 0 || n > kMaxPartitionN) {
    throw InvalidArgument("partitions: n must be in 0.." + std::to_string(kMaxPartitionN));
  }
  std::vector<CycleType> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(left, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Column lengths of λ (the conjugate partition).
std::vector<int> conjugate(const std::vector<int>& lambda) {
  std::vector<int> c(lambda.empty() ? 0 : static_cast<std::size_t>(lambda[0]), 0);
  for (int row : lambda) {
    for (int j = 0; j < row; ++j) ++c[j];
  }
  return c;
}

// Beta-set recursion: strip a rim hook of length mu[pos] in every way.
std::int64_t mn_rec(std::vector<int> beta, const std::vector<int>& mu,
                    std::size_t pos,
                    std::map<std::pair<std::vector<int>, std::size_t>, std::int64_t>& memo) {
  if (pos == mu.size()) return 1;
  std::sort(beta.begin(), beta.end());
  auto key = std::make_pair(beta, pos);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int r = mu[pos];
  std::int64_t total = 0;
  for (std::size_t b = 0; b < beta.size(); ++b) {
    const int to = beta[b] - r;
    if (to < 0) continue;
    if (std::find(beta.begin(), beta.end(), to) != beta.end()) continue;
    int between = 0;
    for (int v : beta) between += (v > to && v < beta[b]) ? 1 : 0;
    auto next = beta;
    next[b] = to;
    const auto sub = mn_rec(next, mu, pos + 1, memo);
    total += (between % 2 ? -sub : sub);
  }
  memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

std::uint64_t hook_dimension(const CycleType& lambda) {
  const auto& rows = lambda.parts();
  const auto cols = conjugate(rows);
  std::uint64_t num = factorial(lambda.n());
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < rows[i]; ++j) {
      den *= static_cast<std::uint64_t>(rows[i] - j + cols[j] - static_cast<int>(i) - 1);
    }
  }
  return num / den;
}

std::uint64_t class_size(const CycleType& mu) {
  std::map<int, int> mult;
  std::uint64_t z = 1;
  for (int p : mu.parts()) {
    z *= static_cast<std::uint64_t>(p);
    z *= static_cast<std::uint64_t>(++mult[p]);
  }
  return factorial(mu.n()) / z;
}

std::int64_t character(const CycleType& lambda, const CycleType& mu) {
  if (lambda.n() != mu.n()) throw InvalidArgument("character: partitions of different n");
  const auto& rows = lambda.parts();
  const int len = lambda.length();
  std::vector<int> beta(rows.size());
  for (int i = 0; i < len; ++i) beta[i] = rows[i] + len - 1 - i;
  std::map<std::pair<std::vector<int>, std::size_t>, std::int64_t> memo;
  return mn_rec(beta, mu.parts(), 0, memo);
}

CharacterTable::CharacterTable(int n) : n_(n), parts_(partitions(n)) {
  const auto m = parts_.size();
  values_.resize(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) values_[a * m + b] = character(parts_[a], parts_[b]);
  }
}

std::size_t CharacterTable::index_of(const CycleType& c) const {
  auto it = std::find(parts_.begin(), parts_.end(), c);
  if (it == parts_.end()) throw InvalidArgument("class " + c.to_string() + " not in S_" + std::to_string(n_));
  return static_cast<std::size_t>(it - parts_.begin());
}

}  // namespace proctensor::symgroup
