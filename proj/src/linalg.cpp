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

#include "proctensor/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "proctensor/error.hpp"

namespace proctensor::linalg {

namespace {

using ColMajor = Eigen::MatrixXcd;

// For a reordering `perm` (new position p holds old factor perm[p]) returns,
// for every old flat index, the flat index it moves to.
std::vector<std::size_t> index_map(const std::vector<std::size_t>& old_dims,
                                   const std::vector<std::size_t>& perm) {
  const std::size_t f = old_dims.size();
  std::vector<std::size_t> new_dims(f);
  for (std::size_t p = 0; p < f; ++p) new_dims[p] = old_dims[perm[p]];
  const auto new_strides = strides_of(new_dims);
  std::vector<std::size_t> stride_for_old(f);
  for (std::size_t p = 0; p < f; ++p) stride_for_old[perm[p]] = new_strides[p];

  std::size_t total = 1;
  for (auto d : old_dims) total *= d;
  std::vector<std::size_t> out(total);
  std::vector<std::size_t> digit(f, 0);
  std::size_t target = 0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    out[idx] = target;
    // odometer increment, last factor fastest
    for (std::size_t i = f; i-- > 0;) {
      ++digit[i];
      target += stride_for_old[i];
      if (digit[i] < old_dims[i]) break;
      target -= stride_for_old[i] * digit[i];
      digit[i] = 0;
    }
  }
  return out;
}

std::vector<std::size_t> order_to_perm(const SubsystemLayout& layout,
                                       std::span<const std::string> order) {
  if (order.size() != layout.size()) {
    throw InvalidArgument("permute_factors: order has " +
                          std::to_string(order.size()) + " labels, layout has " +
                          std::to_string(layout.size()));
  }
  std::vector<std::size_t> perm;
  perm.reserve(order.size());
  std::set<std::string> seen;
  for (const auto& label : order) {
    if (!seen.insert(label).second) {
      throw InvalidArgument("permute_factors: duplicate label '" + label + "'");
    }
    perm.push_back(layout.index_of(label));
  }
  return perm;
}

bool is_identity(const std::vector<std::size_t>& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] != i) return false;
  }
  return true;
}

ColMajor hermitian_part(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("expected a square matrix, got " +
                          std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
  ColMajor h = m;
  return (h + h.adjoint()) * 0.5;
}

}  // namespace

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

SubsystemLayout::SubsystemLayout(std::vector<Factor> factors)
    : factors_(std::move(factors)) {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim < 1) {
      throw InvalidArgument("factor '" + f.label + "' has dimension 0");
    }
    if (!seen.insert(f.label).second) {
      throw InvalidArgument("duplicate factor label '" + f.label + "'");
    }
  }
}

std::size_t SubsystemLayout::total_dim() const {
  std::size_t d = 1;
  for (const auto& f : factors_) d *= f.dim;
  return d;
}

std::vector<std::string> SubsystemLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.label);
  return out;
}

std::vector<std::size_t> SubsystemLayout::dims() const {
  std::vector<std::size_t> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.dim);
  return out;
}

bool SubsystemLayout::contains(const std::string& label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.label == label; });
}

std::size_t SubsystemLayout::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].label == label) return i;
  }
  throw InvalidArgument("label '" + label + "' not in layout");
}

std::size_t SubsystemLayout::dim_of(const std::string& label) const {
  return factors_[index_of(label)].dim;
}

SubsystemLayout SubsystemLayout::reordered(
    std::span<const std::string> order) const {
  const auto perm = order_to_perm(*this, order);
  std::vector<Factor> out;
  out.reserve(perm.size());
  for (auto p : perm) out.push_back(factors_[p]);
  return SubsystemLayout(std::move(out));
}

SubsystemLayout SubsystemLayout::restricted(
    std::span<const std::string> labels) const {
  std::vector<Factor> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(factors_[index_of(l)]);
  return SubsystemLayout(std::move(out));
}

StateVector::StateVector(ComplexVector amps, SubsystemLayout lay)
    : amplitudes(std::move(amps)), layout(std::move(lay)) {
  if (static_cast<std::size_t>(amplitudes.size()) != layout.total_dim()) {
    throw InvalidArgument("state has " + std::to_string(amplitudes.size()) +
                          " amplitudes but layout dimension is " +
                          std::to_string(layout.total_dim()));
  }
}

ComplexMatrix identity(std::size_t d) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(d),
                                 static_cast<Eigen::Index>(d));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim) {
  const auto rows = static_cast<std::size_t>(a.rows()) * b.rows();
  const auto cols = static_cast<std::size_t>(a.cols()) * b.cols();
  if (rows > max_dim || cols > max_dim) {
    throw CapExceeded("kron: result " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " exceeds max dimension " +
                      std::to_string(max_dim));
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

StateVector permute_factors(const StateVector& v,
                            std::span<const std::string> order) {
  const auto perm = order_to_perm(v.layout, order);
  if (is_identity(perm)) return v;
  const auto map = index_map(v.layout.dims(), perm);
  ComplexVector out(v.amplitudes.size());
  for (std::size_t i = 0; i < map.size(); ++i) out[map[i]] = v.amplitudes[i];
  return StateVector(std::move(out), v.layout.reordered(order));
}

ComplexMatrix permute_factors(const ComplexMatrix& m,
                              const SubsystemLayout& layout,
                              std::span<const std::string> order) {
  const auto n = layout.total_dim();
  if (static_cast<std::size_t>(m.rows()) != n ||
      static_cast<std::size_t>(m.cols()) != n) {
    throw InvalidArgument("permute_factors: matrix does not match layout");
  }
  const auto perm = order_to_perm(layout, order);
  if (is_identity(perm)) return m;
  const auto map = index_map(layout.dims(), perm);
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out(map[r], map[c]) = m(r, c);
  }
  return out;
}

StateVector swap_factors(const StateVector& v, const std::string& a,
                         const std::string& b) {
  const auto ia = v.layout.index_of(a);
  const auto ib = v.layout.index_of(b);
  if (v.layout[ia].dim != v.layout[ib].dim) {
    throw InvalidArgument("swap_factors: '" + a + "' and '" + b +
                          "' have different dimensions");
  }
  if (ia == ib) return v;
  std::vector<std::size_t> perm(v.layout.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::swap(perm[ia], perm[ib]);
  const auto map = index_map(v.layout.dims(), perm);
  ComplexVector out(v.amplitudes.size());
  for (std::size_t i = 0; i < map.size(); ++i) out[map[i]] = v.amplitudes[i];
  return StateVector(std::move(out), v.layout);
}

StateVector apply_factor_unitary(const StateVector& v, const ComplexMatrix& u,
                                 std::span<const std::string> targets) {
  if (targets.empty()) {
    throw InvalidArgument("apply_factor_unitary: empty target list");
  }
  std::size_t dt = 1;
  std::set<std::string> tset;
  for (const auto& t : targets) {
    if (!tset.insert(t).second) {
      throw InvalidArgument("apply_factor_unitary: duplicate target '" + t + "'");
    }
    dt *= v.layout.dim_of(t);
  }
  if (static_cast<std::size_t>(u.rows()) != dt ||
      static_cast<std::size_t>(u.cols()) != dt) {
    throw InvalidArgument("apply_factor_unitary: operator is " +
                          std::to_string(u.rows()) + "x" +
                          std::to_string(u.cols()) + ", targets span " +
                          std::to_string(dt));
  }

  std::vector<std::string> order(targets.begin(), targets.end());
  for (const auto& f : v.layout.factors()) {
    if (!tset.count(f.label)) order.push_back(f.label);
  }
  const auto original = v.layout.labels();
  StateVector work = permute_factors(v, order);
  const auto rest = static_cast<Eigen::Index>(v.dim() / dt);
  Eigen::Map<ComplexMatrix> block(work.amplitudes.data(),
                                  static_cast<Eigen::Index>(dt), rest);
  ComplexMatrix applied = u * block;
  block = applied;
  return permute_factors(work, original);
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const SubsystemLayout& layout,
                            std::span<const std::string> keep) {
  if (keep.empty()) {
    throw InvalidArgument("partial_trace: keep list is empty");
  }
  if (m.rows() != m.cols()) {
    throw InvalidArgument("partial_trace: matrix is not square");
  }
  std::set<std::string> kset;
  for (const auto& k : keep) {
    if (!layout.contains(k)) {
      throw InvalidArgument("partial_trace: label '" + k + "' not in layout");
    }
    if (!kset.insert(k).second) {
      throw InvalidArgument("partial_trace: duplicate label '" + k + "'");
    }
  }
  std::vector<std::string> order(keep.begin(), keep.end());
  std::size_t dk = 1;
  for (const auto& k : keep) dk *= layout.dim_of(k);
  for (const auto& f : layout.factors()) {
    if (!kset.count(f.label)) order.push_back(f.label);
  }
  const ComplexMatrix p = permute_factors(m, layout, order);
  const auto dt = static_cast<Eigen::Index>(layout.total_dim() / dk);
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(dk); ++i) {
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(dk); ++j) {
      Complex acc = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t) acc += p(i * dt + t, j * dt + t);
      out(i, j) = acc;
    }
  }
  return out;
}

HermEigen herm_eig(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ColMajor> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("herm_eig: eigensolver did not converge");
  }
  const auto n = solver.eigenvalues().size();
  HermEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[i] = solver.eigenvalues()[n - 1 - i];
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

RealVector herm_eigvals(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ColMajor> solver(hermitian_part(m),
                                                 Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("herm_eigvals: eigensolver did not converge");
  }
  RealVector vals = solver.eigenvalues().reverse();
  return vals;
}

double trace_norm(const ComplexMatrix& m) {
  return herm_eigvals(m).cwiseAbs().sum();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("trace_distance: dimension mismatch " +
                          std::to_string(a.rows()) + " vs " +
                          std::to_string(b.rows()));
  }
  return 0.5 * trace_norm(a - b);
}

double purity(const ComplexMatrix& m) { return m.cwiseAbs2().sum(); }

double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const auto vals = herm_eigvals(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] > 1e-15) s -= vals[i] * std::log(vals[i]);
  }
  return s;
}

double relative_entropy(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("relative_entropy: dimension mismatch");
  }
  constexpr double kSupportTol = 1e-12;
  constexpr double kWeightTol = 1e-10;
  const auto ea = herm_eig(a);
  const auto eb = herm_eig(b);
  if (ea.values.minCoeff() < -kHermitianTol ||
      eb.values.minCoeff() < -kHermitianTol) {
    throw NumericalError("relative_entropy: input is not positive semidefinite");
  }
  double a_log_a = 0.0;
  for (Eigen::Index i = 0; i < ea.values.size(); ++i) {
    const double x = ea.values[i];
    if (x > kSupportTol) a_log_a += x * std::log(x);
  }
  // tr(A ln B) = Σ_j ln(b_j) <b_j|A|b_j>
  const ColMajor av = a;
  double a_log_b = 0.0;
  for (Eigen::Index j = 0; j < eb.values.size(); ++j) {
    const Eigen::VectorXcd vj = eb.vectors.col(j);
    const double weight = (vj.adjoint() * av * vj)(0, 0).real();
    if (eb.values[j] <= kSupportTol) {
      if (weight > kWeightTol) return std::numeric_limits<double>::infinity();
      continue;
    }
    a_log_b += weight * std::log(eb.values[j]);
  }
  return std::max(0.0, a_log_a - a_log_b);
}

}  // namespace proctensor::linalg
