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

// Dense complex linear algebra over labeled tensor-factor spaces.
//
// Every multi-index is row-major with the first factor of a layout the
// slowest-varying one, matching numpy's reshape convention.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace proctensor::linalg {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest row/column count any kron product may produce.
inline constexpr std::size_t kDefaultMaxMatrixDim = 8192;

/// Tolerance used for Hermiticity / PSD assertions.
inline constexpr double kHermitianTol = 1e-10;

/// Ordered list of named tensor factors.
class SubsystemLayout {
 public:
  struct Factor {
    std::string label;
    std::size_t dim = 1;
    bool operator==(const Factor&) const = default;
  };

  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<Factor> factors);

  std::size_t size() const { return factors_.size(); }
  const Factor& operator[](std::size_t i) const { return factors_[i]; }
  const std::vector<Factor>& factors() const { return factors_; }

  /// Product of all factor dimensions (1 for an empty layout).
  std::size_t total_dim() const;
  std::vector<std::string> labels() const;
  std::vector<std::size_t> dims() const;

  bool contains(const std::string& label) const;
  /// Position of `label`; throws InvalidArgument when absent.
  std::size_t index_of(const std::string& label) const;
  std::size_t dim_of(const std::string& label) const;

  /// Layout with factors reordered as `order`; `order` must be a permutation
  /// of the labels.
  SubsystemLayout reordered(std::span<const std::string> order) const;

  /// Layout containing only `labels`, in the given order.
  SubsystemLayout restricted(std::span<const std::string> labels) const;

  bool operator==(const SubsystemLayout&) const = default;

 private:
  std::vector<Factor> factors_;
};

/// Pure state on a labeled tensor product space.
struct StateVector {
  ComplexVector amplitudes;
  SubsystemLayout layout;

  StateVector() = default;
  /// Throws InvalidArgument when the amplitude count does not match the
  /// layout dimension.
  StateVector(ComplexVector amps, SubsystemLayout lay);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
};

ComplexMatrix identity(std::size_t d);

/// Kronecker product a ⊗ b. Throws CapExceeded when the result would exceed
/// `max_dim` rows or columns.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim = kDefaultMaxMatrixDim);

/// Applies `u ⊗ 1` to `v`, where `u` acts on the factors named by `targets`
/// (first target slowest). The full operator is never materialised.
StateVector apply_factor_unitary(const StateVector& v, const ComplexMatrix& u,
                                 std::span<const std::string> targets);

/// Reorders the tensor factors of `v` so that its layout lists the labels
/// in `order`. The represented state is unchanged, only the storage order.
StateVector permute_factors(const StateVector& v,
                            std::span<const std::string> order);

/// Same as above for an operator whose rows and columns both carry `layout`.
ComplexMatrix permute_factors(const ComplexMatrix& m,
                              const SubsystemLayout& layout,
                              std::span<const std::string> order);

/// Exchanges the contents of two equal-dimension factors in place of a SWAP
/// gate. The layout is unchanged.
StateVector swap_factors(const StateVector& v, const std::string& a,
                         const std::string& b);

/// Traces out every factor not listed in `keep`. The result is ordered as
/// `keep`, which may list labels in any order.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const SubsystemLayout& layout,
                            std::span<const std::string> keep);

/// Eigenvalues of (M + M†)/2, sorted descending.
RealVector herm_eigvals(const ComplexMatrix& m);

/// Eigen-decomposition of (M + M†)/2; eigenvalues descending with matching
/// eigenvector columns.
struct HermEigen {
  RealVector values;
  ComplexMatrix vectors;
};
HermEigen herm_eig(const ComplexMatrix& m);

double trace_norm(const ComplexMatrix& m);

/// ½‖A − B‖₁ for Hermitian A, B.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// tr(M²) for Hermitian M (computed as Σ|M_ij|²).
double purity(const ComplexMatrix& m);

/// Von Neumann entropy in nats.
double von_neumann_entropy(const ComplexMatrix& rho);

/// ℛ(A‖B) = tr[A(ln A − ln B)] in nats; +infinity when the support of A is
/// not contained in the support of B. Throws NumericalError for inputs that
/// are not PSD within kHermitianTol.
double relative_entropy(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |M − M†|.
double hermiticity_error(const ComplexMatrix& m);

/// Row-major multi-index helpers shared by the tensor routines.
std::vector<std::size_t> strides_of(std::span<const std::size_t> dims);

}  // namespace proctensor::linalg
