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

#include "proctensor/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "proctensor/error.hpp"

namespace proctensor::measures {

namespace {
constexpr double kSpectrumTol = 1e-10;
}

std::string to_string(Estimator e) {
  switch (e) {
    case Estimator::kMaxMixed:
      return "maxmixed";
    case Estimator::kMarginalProduct:
      return "marginal";
    case Estimator::kMinOfBoth:
      return "min";
  }
  return "min";
}

Estimator estimator_from_string(const std::string& s) {
  if (s == "maxmixed" || s == "MaxMixed") return Estimator::kMaxMixed;
  if (s == "marginal" || s == "MarginalProduct") return Estimator::kMarginalProduct;
  if (s == "min" || s == "MinOfBoth") return Estimator::kMinOfBoth;
  throw InvalidArgument("unknown estimator '" + s + "' (expected maxmixed|marginal|min)");
}

double nm_upper_maxmixed(const ChoiState& c) {
  const auto d = c.dim();
  return linalg::trace_distance(c.matrix, linalg::identity(d) / static_cast<double>(d));
}

double nm_upper_marginal(const ChoiState& c) {
  if (c.k == 0) return 0.0;
  return linalg::trace_distance(c.matrix, process::markov_product(c).matrix);
}

NmEstimate nm_estimate(const ChoiState& c, bool keep_reference) {
  NmEstimate out;
  out.maxmixed = nm_upper_maxmixed(c);
  if (c.k == 0) {
    out.marginal = 0.0;
  } else {
    auto ref = process::markov_product(c);
    out.marginal = linalg::trace_distance(c.matrix, ref.matrix);
    if (keep_reference) out.reference_choi = std::move(ref);
  }
  out.value = std::min(out.maxmixed, out.marginal);
  out.estimator = Estimator::kMinOfBoth;
  return out;
}

double nm_value(const ChoiState& c, Estimator e) {
  switch (e) {
    case Estimator::kMaxMixed:
      return nm_upper_maxmixed(c);
    case Estimator::kMarginalProduct:
      return nm_upper_marginal(c);
    case Estimator::kMinOfBoth:
      return nm_estimate(c).value;
  }
  return nm_estimate(c).value;
}

double restricted_nm(const ChoiState& c, const ChoiState& ref,
                     const std::vector<ComplexMatrix>& observables) {
  if (observables.empty()) throw InvalidArgument("restricted_nm: empty observable set");
  if (c.dim() != ref.dim()) throw InvalidArgument("restricted_nm: state dimensions differ");
  const ComplexMatrix diff = c.matrix - ref.matrix;
  double best = 0.0;
  for (const auto& m : observables) {
    if (static_cast<std::size_t>(m.rows()) != c.dim() || m.rows() != m.cols()) {
      throw InvalidArgument("restricted_nm: observable dimension mismatch");
    }
    if (linalg::hermiticity_error(m) > kSpectrumTol) {
      throw InvalidArgument("restricted_nm: observable is not Hermitian");
    }
    const auto ev = linalg::herm_eigvals(m);
    if (ev[0] > 1.0 + kSpectrumTol || ev[ev.size() - 1] < -1.0 - kSpectrumTol) {
      throw InvalidArgument("restricted_nm: observable spectrum outside [-1, 1]");
    }
    // tr(m·diff) = Σ_ij m_ij diff_ji
    const linalg::Complex t = (m.array() * diff.transpose().array()).sum();
    best = std::max(best, 0.5 * std::abs(t.real()));
  }
  return best;
}

double pinsker_gap(const ChoiState& c, const ChoiState& ref) {
  const double r = linalg::relative_entropy(c.matrix, ref.matrix);
  if (std::isinf(r)) return std::numeric_limits<double>::infinity();
  const double d = linalg::trace_distance(c.matrix, ref.matrix);
  return r - 2.0 * d * d;
}

std::vector<ComplexMatrix> product_projector_set(const linalg::SubsystemLayout& layout,
                                                 std::size_t count,
                                                 const haar::SeedSpec& seed) {
  if (count < 1) throw InvalidArgument("product_projector_set: count must be >= 1");
  if (layout.size() == 0) throw InvalidArgument("product_projector_set: empty layout");
  haar::HaarSampler sampler(seed);
  std::vector<ComplexMatrix> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    ComplexMatrix acc = ComplexMatrix::Identity(1, 1);
    for (const auto& f : layout.factors()) {
      const auto v = sampler.state(f.dim);
      const ComplexMatrix p = v * v.adjoint();
      acc = linalg::kron(acc, p, std::numeric_limits<std::size_t>::max());
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace proctensor::measures
