// Copyright 2026 The qteleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file tensor.hpp
/// Dense complex tensor algebra on small composite Hilbert spaces:
/// Kronecker products, projectors, partial traces, operator embedding,
/// unitary completion and seeded Haar sampling.
///
/// Conventions used throughout:
///   - composite indices are row-major, leftmost tensor factor most
///     significant;
///   - vectors are column vectors; a bra is the adjoint of a ket.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qteleport {

using Complex = std::complex<double>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrix = DenseMatrix<Complex>;
using ComplexVector = DenseVector<Complex>;

/// Tolerance for norms, traces and entrywise comparisons.
inline constexpr double kNormTol = 1e-12;
/// Tolerance for accumulated operator products (unitarity defects).
inline constexpr double kUnitaryTol = 1e-10;

struct NotNormalized : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotOrthonormalInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct CompletionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BadFactorIndex : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonFiniteParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Ordered factor dimensions of a composite space, e.g. {4, 2, 2, 2}.
class TensorShape {
 public:
  explicit TensorShape(std::vector<Eigen::Index> factor_dims)
      : dims_(std::move(factor_dims)) {
    if (dims_.empty()) throw DimensionMismatch("TensorShape: no factors");
    for (Eigen::Index d : dims_)
      if (d <= 0) throw DimensionMismatch("TensorShape: nonpositive factor");
  }

  std::size_t rank() const { return dims_.size(); }
  Eigen::Index factor(std::size_t i) const { return dims_.at(i); }
  const std::vector<Eigen::Index>& dims() const { return dims_; }

  /// Total dimension, the product of all factor dimensions.
  Eigen::Index dim() const {
    Eigen::Index n = 1;
    for (Eigen::Index d : dims_) n *= d;
    return n;
  }

  /// Stride of factor i under row-major flattening.
  Eigen::Index stride(std::size_t i) const {
    Eigen::Index s = 1;
    for (std::size_t j = i + 1; j < dims_.size(); ++j) s *= dims_[j];
    return s;
  }

  friend bool operator==(const TensorShape& a, const TensorShape& b) {
    return a.dims_ == b.dims_;
  }

 private:
  std::vector<Eigen::Index> dims_;
};

namespace detail {

/// Splits a flat row-major index into per-factor digits.
inline std::vector<Eigen::Index> unravel(Eigen::Index flat,
                                         const TensorShape& shape) {
  std::vector<Eigen::Index> digits(shape.rank());
  for (std::size_t i = shape.rank(); i-- > 0;) {
    digits[i] = flat % shape.factor(i);
    flat /= shape.factor(i);
  }
  return digits;
}

inline Eigen::Index ravel(const std::vector<Eigen::Index>& digits,
                          const TensorShape& shape) {
  Eigen::Index flat = 0;
  for (std::size_t i = 0; i < shape.rank(); ++i)
    flat = flat * shape.factor(i) + digits[i];
  return flat;
}

}  // namespace detail

/// Kronecker product; vectors participate as single-column matrices.
/// Entry ((i*b.rows()+k), (j*b.cols()+l)) equals a(i,j)*b(k,l).
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a,
          const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedB::Scalar>,
                "kron: mixed scalar types");
  constexpr int kCols = (DerivedA::ColsAtCompileTime == 1 &&
                         DerivedB::ColsAtCompileTime == 1)
                            ? 1
                            : Eigen::Dynamic;
  Eigen::Matrix<Scalar, Eigen::Dynamic, kCols> out(a.rows() * b.rows(),
                                                   a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b.derived();
  return out;
}

/// Conjugate transpose, materialized.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> dagger(
    const Eigen::MatrixBase<Derived>& a) {
  return a.adjoint();
}

/// Rank-one projector |v><v| of a unit vector.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> projector(
    const Eigen::MatrixBase<Derived>& v) {
  if (std::abs(v.norm() - 1.0) > kNormTol)
    throw NotNormalized("projector: input vector is not a unit vector");
  return v.derived() * v.derived().adjoint();
}

namespace detail {

inline std::vector<std::size_t> checked_factor_set(
    std::vector<std::size_t> indices, const TensorShape& shape,
    const char* what) {
  if (indices.empty())
    throw BadFactorIndex(std::string(what) + ": empty factor set");
  std::sort(indices.begin(), indices.end());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= shape.rank())
      throw BadFactorIndex(std::string(what) + ": factor index out of range");
    if (i > 0 && indices[i] == indices[i - 1])
      throw BadFactorIndex(std::string(what) + ": duplicate factor index");
  }
  return indices;
}

}  // namespace detail

/// Partial trace over the complement of `keep`; kept factors retain
/// their original order.
template <typename Scalar>
DenseMatrix<Scalar> partial_trace(const DenseMatrix<Scalar>& rho,
                                  const TensorShape& shape,
                                  std::vector<std::size_t> keep) {
  if (rho.rows() != rho.cols() || rho.rows() != shape.dim())
    throw DimensionMismatch("partial_trace: operator does not match shape");
  keep = detail::checked_factor_set(std::move(keep), shape, "partial_trace");

  std::vector<std::size_t> traced;
  for (std::size_t f = 0; f < shape.rank(); ++f)
    if (!std::binary_search(keep.begin(), keep.end(), f)) traced.push_back(f);

  std::vector<Eigen::Index> kept_dims, traced_dims;
  for (std::size_t f : keep) kept_dims.push_back(shape.factor(f));
  for (std::size_t f : traced) traced_dims.push_back(shape.factor(f));
  const TensorShape kept_shape(kept_dims);
  const TensorShape traced_shape(traced_dims.empty()
                                     ? std::vector<Eigen::Index>{1}
                                     : traced_dims);

  DenseMatrix<Scalar> out =
      DenseMatrix<Scalar>::Zero(kept_shape.dim(), kept_shape.dim());
  for (Eigen::Index r = 0; r < kept_shape.dim(); ++r) {
    const auto rdig = detail::unravel(r, kept_shape);
    for (Eigen::Index c = 0; c < kept_shape.dim(); ++c) {
      const auto cdig = detail::unravel(c, kept_shape);
      Scalar sum{};
      for (Eigen::Index t = 0; t < traced_shape.dim(); ++t) {
        const auto tdig = detail::unravel(t, traced_shape);
        Eigen::Index row = 0, col = 0;
        for (std::size_t k = 0; k < keep.size(); ++k) {
          row += rdig[k] * shape.stride(keep[k]);
          col += cdig[k] * shape.stride(keep[k]);
        }
        for (std::size_t k = 0; k < traced.size(); ++k) {
          row += tdig[k] * shape.stride(traced[k]);
          col += tdig[k] * shape.stride(traced[k]);
        }
        sum += rho(row, col);
      }
      out(r, c) = sum;
    }
  }
  return out;
}

/// Lifts `op`, acting on the factors listed in `positions` (in that
/// order), to the full space of `shape`, acting as the identity on all
/// other factors. Listing positions out of ascending order conjugates
/// by the corresponding factor permutation.
template <typename Scalar>
DenseMatrix<Scalar> embed(const DenseMatrix<Scalar>& op,
                          const std::vector<std::size_t>& positions,
                          const TensorShape& shape) {
  if (positions.empty()) throw BadFactorIndex("embed: empty position list");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] >= shape.rank())
      throw BadFactorIndex("embed: factor index out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (positions[i] == positions[j])
        throw BadFactorIndex("embed: duplicate factor index");
  }
  std::vector<Eigen::Index> op_dims;
  for (std::size_t p : positions) op_dims.push_back(shape.factor(p));
  const TensorShape op_shape(op_dims);
  if (op.rows() != op.cols() || op.rows() != op_shape.dim())
    throw DimensionMismatch("embed: operator does not match listed factors");

  const Eigen::Index n = shape.dim();
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto rdig = detail::unravel(r, shape);
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto cdig = detail::unravel(c, shape);
      bool identity_ok = true;
      for (std::size_t f = 0; f < shape.rank(); ++f) {
        if (std::find(positions.begin(), positions.end(), f) ==
                positions.end() &&
            rdig[f] != cdig[f]) {
          identity_ok = false;
          break;
        }
      }
      if (!identity_ok) continue;
      Eigen::Index op_r = 0, op_c = 0;
      for (std::size_t k = 0; k < positions.size(); ++k) {
        op_r = op_r * op_shape.factor(k) + rdig[positions[k]];
        op_c = op_c * op_shape.factor(k) + cdig[positions[k]];
      }
      out(r, c) = op(op_r, op_c);
    }
  }
  return out;
}

/// Positive unit-trace operator together with its factor structure.
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix matrix, TensorShape shape)
      : matrix_(std::move(matrix)), shape_(std::move(shape)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() != shape_.dim())
      throw DimensionMismatch("DensityOperator: matrix does not match shape");
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kNormTol)
      throw std::invalid_argument("DensityOperator: not Hermitian");
    if (std::abs(matrix_.trace() - Complex(1.0)) > kNormTol)
      throw std::invalid_argument("DensityOperator: trace is not 1");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        ComplexMatrix(0.5 * (matrix_ + matrix_.adjoint())),
        Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kNormTol)
      throw std::invalid_argument("DensityOperator: negative eigenvalue");
  }

  /// Projector of a unit state vector, tagged with `shape`.
  static DensityOperator pure(const ComplexVector& state, TensorShape shape) {
    if (state.size() != shape.dim())
      throw DimensionMismatch("DensityOperator::pure: state/shape mismatch");
    return DensityOperator(projector(state), std::move(shape));
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  const TensorShape& shape() const { return shape_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
  TensorShape shape_;
};

inline DensityOperator partial_trace(const DensityOperator& rho,
                                     std::vector<std::size_t> keep) {
  keep = detail::checked_factor_set(std::move(keep), rho.shape(),
                                    "partial_trace");
  std::vector<Eigen::Index> kept_dims;
  for (std::size_t f : keep) kept_dims.push_back(rho.shape().factor(f));
  return DensityOperator(partial_trace(rho.matrix(), rho.shape(), keep),
                         TensorShape(kept_dims));
}

/// Builds a unitary whose column `index` equals `vector` for every
/// supplied pair. The remaining columns come from Gram-Schmidt over the
/// canonical basis, processed in ascending index order; candidates whose
/// residual norm falls below 10*kNormTol are skipped as dependent.
inline ComplexMatrix complete_to_unitary(
    const std::vector<std::pair<Eigen::Index, ComplexVector>>& columns) {
  if (columns.empty())
    throw std::invalid_argument("complete_to_unitary: no columns given");
  const Eigen::Index n = columns.front().second.size();
  for (const auto& [idx, v] : columns) {
    if (v.size() != n)
      throw DimensionMismatch("complete_to_unitary: unequal column sizes");
    if (idx < 0 || idx >= n)
      throw std::invalid_argument("complete_to_unitary: column index range");
  }
  for (std::size_t i = 0; i < columns.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (columns[i].first == columns[j].first)
        throw std::invalid_argument("complete_to_unitary: duplicate index");
  for (std::size_t i = 0; i < columns.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex g = columns[j].second.dot(columns[i].second);
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - Complex(expect)) > kNormTol)
        throw NotOrthonormalInput(
            "complete_to_unitary: supplied columns are not orthonormal");
    }

  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  std::vector<ComplexVector> basis;
  basis.reserve(n);
  std::vector<bool> used(n, false);
  for (const auto& [idx, v] : columns) {
    u.col(idx) = v;
    used[idx] = true;
    basis.push_back(v);
  }

  std::vector<Eigen::Index> open;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!used[c]) open.push_back(c);

  std::size_t next = 0;
  for (Eigen::Index k = 0; k < n && next < open.size(); ++k) {
    ComplexVector v = ComplexVector::Zero(n);
    v(k) = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const ComplexVector& b : basis) v -= b.dot(v) * b;
    const double nrm = v.norm();
    if (nrm < 10.0 * kNormTol) continue;
    v /= nrm;
    u.col(open[next++]) = v;
    basis.push_back(std::move(v));
  }
  if (next < open.size())
    throw CompletionFailure("complete_to_unitary: basis sweep exhausted");
  return u;
}

/// Haar-distributed unit vector: i.i.d. standard complex Gaussian
/// amplitudes, normalized.
inline ComplexVector haar_random_state(Eigen::Index dim,
                                       std::mt19937_64& engine) {
  std::normal_distribution<double> gauss;
  ComplexVector v(dim);
  double nrm = 0.0;
  do {
    for (Eigen::Index i = 0; i < dim; ++i)
      v(i) = Complex(gauss(engine), gauss(engine));
    nrm = v.norm();
  } while (nrm < 1e-6);
  return v / nrm;
}

/// Deterministic single-qubit Haar sample for a fixed seed.
inline ComplexVector haar_random_qubit(std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  return haar_random_state(2, engine);
}

/// Fidelity tr(|phi><phi| rho) = <phi|rho|phi> of a pure target,
/// clamped to [0, 1].
inline double fidelity(const ComplexVector& phi, const DensityOperator& rho) {
  if (phi.size() != rho.dim())
    throw DimensionMismatch("fidelity: state/operator dimensions differ");
  const double f = phi.dot(rho.matrix() * phi).real();
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace qteleport
