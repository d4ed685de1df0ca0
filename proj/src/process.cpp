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

#include "proctensor/process.hpp"

#include <cmath>

#include "proctensor/error.hpp"

namespace proctensor::process {

using linalg::Complex;
using linalg::ComplexVector;
using linalg::StateVector;

namespace {

constexpr double kUnitaryTol = 1e-10;

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::string a_label(std::size_t i) { return "A" + std::to_string(i); }
std::string b_label(std::size_t i) { return "B" + std::to_string(i); }

const std::vector<std::string>& es_targets() {
  static const std::vector<std::string> t{"E", "S"};
  return t;
}

}  // namespace

std::string to_string(Mode m) {
  return m == Mode::kConstant ? "constant" : "random";
}

Mode mode_from_string(const std::string& s) {
  if (s == "constant" || s == "Constant") return Mode::kConstant;
  if (s == "random" || s == "Random") return Mode::kRandom;
  throw InvalidArgument("unknown mode '" + s + "' (expected constant|random)");
}

std::size_t ProcessSpec::global_dim() const { return d_e * choi_dim(); }

std::size_t ProcessSpec::choi_dim() const { return ipow(d_s, 2 * k + 1); }

void ProcessSpec::validate() const {
  if (d_s < 2) throw InvalidArgument("d_S must be >= 2");
  if (d_e < 1) throw InvalidArgument("d_E must be >= 1");
  // overflow-safe cap check
  double total = static_cast<double>(d_e) *
                 std::pow(static_cast<double>(d_s), 2.0 * k + 1.0);
  if (total > static_cast<double>(dim_cap)) {
    throw CapExceeded("global dimension d_E*d_S^(2k+1) = " +
                      std::to_string(static_cast<long double>(total)) +
                      " exceeds cap " + std::to_string(dim_cap));
  }
}

SubsystemLayout choi_layout(std::size_t k, std::size_t d_s) {
  std::vector<SubsystemLayout::Factor> f{{"S", d_s}};
  for (std::size_t i = 1; i <= k; ++i) {
    f.push_back({a_label(i), d_s});
    f.push_back({b_label(i), d_s});
  }
  return SubsystemLayout(std::move(f));
}

SubsystemLayout global_layout(std::size_t k, std::size_t d_s, std::size_t d_e) {
  std::vector<SubsystemLayout::Factor> f{{"E", d_e}};
  const auto choi = choi_layout(k, d_s);
  for (const auto& x : choi.factors()) f.push_back(x);
  return SubsystemLayout(std::move(f));
}

ChoiState::ChoiState(ComplexMatrix m, std::size_t k_, std::size_t d_s_,
                     std::size_t d_e_)
    : matrix(std::move(m)), layout(choi_layout(k_, d_s_)), k(k_), d_s(d_s_),
      d_e(d_e_) {
  const auto n = layout.total_dim();
  if (static_cast<std::size_t>(matrix.rows()) != n ||
      static_cast<std::size_t>(matrix.cols()) != n) {
    throw InvalidArgument("ChoiState: matrix is " +
                          std::to_string(matrix.rows()) + "x" +
                          std::to_string(matrix.cols()) + ", expected " +
                          std::to_string(n));
  }
}

bool ChoiDiagnostics::ok(std::size_t d_e, double tol) const {
  return trace_error <= tol && hermiticity_error <= tol &&
         min_eigenvalue >= -tol && rank <= d_e;
}

ChoiDiagnostics diagnose(const ChoiState& c) {
  ChoiDiagnostics d;
  d.trace_error = std::abs(c.matrix.trace() - Complex(1.0, 0.0));
  d.hermiticity_error = linalg::hermiticity_error(c.matrix);
  const auto vals = linalg::herm_eigvals(c.matrix);
  d.min_eigenvalue = vals.minCoeff();
  d.rank = static_cast<std::size_t>((vals.array() > kRankTol).count());
  return d;
}

ComplexVector initial_vector(const ProcessSpec& spec) {
  const auto d = spec.d_e * spec.d_s;
  if (spec.initial_state.kind == InitialState::Kind::kHaarPure) {
    return haar::HaarSampler(spec.initial_state.seed).state(d);
  }
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d));
  v[0] = 1.0;
  return v;
}

ProcessDraw draw(const ProcessSpec& spec) {
  spec.validate();
  const auto d = spec.d_e * spec.d_s;
  ProcessDraw out;
  out.initial = initial_vector(spec);
  haar::HaarSampler sampler(spec.seed);
  if (spec.mode == Mode::kConstant) {
    const auto u = sampler.unitary(d);
    out.unitaries.assign(spec.k + 1, u);
  } else {
    out.unitaries.reserve(spec.k + 1);
    for (std::size_t i = 0; i <= spec.k; ++i) {
      out.unitaries.push_back(sampler.unitary(d));
    }
  }
  return out;
}

StateVector evolve(const ProcessSpec& spec,
                   const std::vector<ComplexMatrix>& unitaries) {
  spec.validate();
  if (unitaries.size() != spec.k + 1) {
    throw InvalidArgument("expected " + std::to_string(spec.k + 1) +
                          " unitaries, got " + std::to_string(unitaries.size()));
  }
  const auto d = spec.d_e * spec.d_s;
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    const auto& u = unitaries[i];
    if (static_cast<std::size_t>(u.rows()) != d ||
        static_cast<std::size_t>(u.cols()) != d) {
      throw InvalidArgument("unitary " + std::to_string(i) + " is " +
                            std::to_string(u.rows()) + "x" +
                            std::to_string(u.cols()) + ", expected " +
                            std::to_string(d));
    }
    if (haar::unitarity_error(u) > kUnitaryTol) {
      throw InvalidArgument("unitary " + std::to_string(i) +
                            " is not unitary within 1e-10");
    }
  }

  // ρ ⊗ Ψ^{⊗k}: ancilla amplitude d_S^{-k/2} wherever a_i = b_i for all i.
  const auto init = initial_vector(spec);
  const auto anc_dim = ipow(spec.d_s, 2 * spec.k);
  const double amp = std::pow(static_cast<double>(spec.d_s),
                              -0.5 * static_cast<double>(spec.k));
  std::vector<std::size_t> diag_offsets{0};
  for (std::size_t i = 0; i < spec.k; ++i) {
    const auto stride = ipow(spec.d_s, 2 * (spec.k - 1 - i));
    std::vector<std::size_t> next;
    next.reserve(diag_offsets.size() * spec.d_s);
    for (auto off : diag_offsets) {
      for (std::size_t j = 0; j < spec.d_s; ++j) {
        next.push_back(off + (j * spec.d_s + j) * stride);
      }
    }
    diag_offsets = std::move(next);
  }
  ComplexVector amps =
      ComplexVector::Zero(static_cast<Eigen::Index>(spec.global_dim()));
  for (std::size_t es = 0; es < d; ++es) {
    if (init[es] == Complex(0.0, 0.0)) continue;
    for (auto off : diag_offsets) amps[es * anc_dim + off] = init[es] * amp;
  }

  StateVector v(std::move(amps), global_layout(spec.k, spec.d_s, spec.d_e));
  v = linalg::apply_factor_unitary(v, unitaries[0], es_targets());
  for (std::size_t i = 1; i <= spec.k; ++i) {
    v = linalg::swap_factors(v, "S", a_label(i));
    v = linalg::apply_factor_unitary(v, unitaries[i], es_targets());
  }
  return v;
}

ChoiState build_choi(const ProcessSpec& spec,
                     const std::optional<std::vector<ComplexMatrix>>& unitaries) {
  const auto final_state =
      unitaries ? evolve(spec, *unitaries) : evolve(spec, draw(spec).unitaries);
  const auto rest = static_cast<Eigen::Index>(spec.choi_dim());
  Eigen::Map<const ComplexMatrix> g(final_state.amplitudes.data(),
                                    static_cast<Eigen::Index>(spec.d_e), rest);
  ComplexMatrix choi = g.transpose() * g.conjugate();
  return ChoiState(std::move(choi), spec.k, spec.d_s, spec.d_e);
}

ChoiState markov_product(const ChoiState& c) {
  if (c.k == 0) return c;
  std::vector<std::vector<std::string>> groups;
  groups.push_back({a_label(1)});
  for (std::size_t i = 1; i < c.k; ++i) {
    groups.push_back({b_label(i), a_label(i + 1)});
  }
  groups.push_back({b_label(c.k), "S"});

  ComplexMatrix product = ComplexMatrix::Identity(1, 1);
  std::vector<std::string> product_order;
  std::vector<SubsystemLayout::Factor> product_factors;
  for (const auto& g : groups) {
    const auto marginal = linalg::partial_trace(c.matrix, c.layout, g);
    product = linalg::kron(product, marginal);
    for (const auto& label : g) {
      product_factors.push_back({label, c.d_s});
    }
  }
  const SubsystemLayout product_layout(std::move(product_factors));
  const auto canonical = c.layout.labels();
  return ChoiState(linalg::permute_factors(product, product_layout, canonical),
                   c.k, c.d_s, c.d_e);
}

std::vector<ComplexMatrix> coarse_unitaries(
    const std::vector<ComplexMatrix>& unitaries,
    const std::vector<std::size_t>& retain) {
  if (unitaries.empty()) {
    throw InvalidArgument("coarse_grain: empty unitary schedule");
  }
  const std::size_t k = unitaries.size() - 1;
  if (retain.empty()) throw InvalidArgument("coarse_grain: retain is empty");
  for (std::size_t i = 0; i < retain.size(); ++i) {
    if (retain[i] < 1 || retain[i] > k) {
      throw InvalidArgument("coarse_grain: slot " + std::to_string(retain[i]) +
                            " outside 1.." + std::to_string(k));
    }
    if (i > 0 && retain[i] <= retain[i - 1]) {
      throw InvalidArgument("coarse_grain: retain must be strictly increasing");
    }
  }
  std::vector<ComplexMatrix> out;
  out.reserve(retain.size() + 1);
  std::size_t begin = 0;
  auto compose = [&](std::size_t from, std::size_t to) {
    // U_{to-1} ··· U_{from}
    ComplexMatrix acc = unitaries[from];
    for (std::size_t j = from + 1; j < to; ++j) acc = unitaries[j] * acc;
    return acc;
  };
  for (auto slot : retain) {
    out.push_back(compose(begin, slot));
    begin = slot;
  }
  out.push_back(compose(begin, k + 1));
  return out;
}

ChoiState coarse_grain(const ProcessSpec& spec,
                       const std::vector<ComplexMatrix>& unitaries,
                       const std::vector<std::size_t>& retain) {
  if (unitaries.size() != spec.k + 1) {
    throw InvalidArgument("coarse_grain: expected " +
                          std::to_string(spec.k + 1) + " unitaries");
  }
  ProcessSpec coarse = spec;
  coarse.k = retain.size();
  return build_choi(coarse, coarse_unitaries(unitaries, retain));
}

}  // namespace proctensor::process
