#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "specpert/errors.hpp"
#include "specpert/spectral_set.hpp"
#include "specpert/tolerances.hpp"

namespace specpert {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

using Complex = std::complex<double>;
using ComplexMatrix = DenseMatrix<Complex>;
using ComplexVector = Eigen::VectorXcd;

/// Largest singular value. Works for any dense expression, Hermitian or not.
template <typename Derived>
RealOf<typename Derived::Scalar> spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  using Real = RealOf<typename Derived::Scalar>;
  if (m.size() == 0) return Real(0);
  if (!m.allFinite()) throw DomainError("spectral_norm: non-finite entry");
  using Plain = typename Derived::PlainObject;
  Eigen::JacobiSVD<Plain> svd(m.eval());
  return svd.singularValues()(0);
}

/// First (row, col) pair, 0-based, where m(i,j) and conj(m(j,i)) differ by
/// more than tol. Diagonal entries must be real within tol.
template <typename Derived>
std::optional<std::pair<Eigen::Index, Eigen::Index>> first_hermiticity_violation(
    const Eigen::MatrixBase<Derived>& m, double tol) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      using std::abs;
      using std::conj;
      if (!(abs(m(i, j) - conj(m(j, i))) <= tol)) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

/// Dense self-adjoint matrix. The stored entries are the exact average of the
/// input and its adjoint, so exactly Hermitian input is kept bit-for-bit.
template <typename Scalar>
class Hermitian {
 public:
  using MatrixType = DenseMatrix<Scalar>;
  using Real = RealOf<Scalar>;

  explicit Hermitian(const MatrixType& m, const Tolerances& tol = {}) {
    if (m.rows() != m.cols())
      throw ValidationError("matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected square");
    if (m.rows() < 1) throw ValidationError("matrix must have dimension >= 1");
    if (!m.allFinite()) throw ValidationError("matrix has non-finite entries");
    if (auto bad = first_hermiticity_violation(m, tol.herm(m.rows()))) {
      const auto [i, j] = *bad;
      throw ValidationError("matrix is not Hermitian: entry (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ") vs (" + std::to_string(j + 1) + "," +
                            std::to_string(i + 1) + ")");
    }
    m_ = (m + m.adjoint()) / Real(2);
  }

  static Hermitian zero(Eigen::Index dim) { return Hermitian(MatrixType::Zero(dim, dim)); }
  static Hermitian diagonal(const Eigen::Matrix<Real, Eigen::Dynamic, 1>& d) {
    return Hermitian(d.template cast<Scalar>().asDiagonal().toDenseMatrix());
  }

  const MatrixType& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  Real norm() const { return spectral_norm(m_); }

  Hermitian operator+(const Hermitian& other) const { return Hermitian(m_ + other.m_, Exact{}); }
  Hermitian operator-(const Hermitian& other) const { return Hermitian(m_ - other.m_, Exact{}); }
  Hermitian operator-() const { return Hermitian(-m_, Exact{}); }
  Hermitian scaled(Real factor) const { return Hermitian(m_ * factor, Exact{}); }

  bool operator==(const Hermitian& other) const { return m_ == other.m_; }

 private:
  struct Exact {};
  Hermitian(MatrixType m, Exact) : m_(std::move(m)) {}

  MatrixType m_;
};

using HermitianMatrix = Hermitian<Complex>;

template <typename Scalar>
struct EigenDecomposition {
  Eigen::Matrix<RealOf<Scalar>, Eigen::Dynamic, 1> eigenvalues;  // ascending
  DenseMatrix<Scalar> eigenvectors;                              // orthonormal columns

  RealOf<Scalar> min() const { return eigenvalues(0); }
  RealOf<Scalar> max() const { return eigenvalues(eigenvalues.size() - 1); }
  std::vector<double> values() const {
    return {eigenvalues.data(), eigenvalues.data() + eigenvalues.size()};
  }
};

/// Eigen's self-adjoint solver, checked against the reconstruction and
/// orthonormality contract before the result is handed out.
template <typename Scalar>
EigenDecomposition<Scalar> hermitian_eigendecompose(const Hermitian<Scalar>& m,
                                                    const Tolerances& tol = {}) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(m.matrix());
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("self-adjoint eigensolver did not converge");

  EigenDecomposition<Scalar> out{solver.eigenvalues(), solver.eigenvectors()};
  const auto n = m.dim();
  const double norm = std::max(std::abs(out.min()), std::abs(out.max()));
  const double tau = tol.eig(n, std::max(norm, 1.0));
  const double residual =
      spectral_norm(m.matrix() - out.eigenvectors * out.eigenvalues.template cast<Scalar>().asDiagonal() *
                                     out.eigenvectors.adjoint());
  const double orth =
      spectral_norm(out.eigenvectors.adjoint() * out.eigenvectors - DenseMatrix<Scalar>::Identity(n, n));
  if (residual > tau * (1.0 + norm) || orth > tau)
    throw ConvergenceError("eigendecomposition residual " + std::to_string(residual) +
                           " / orthogonality " + std::to_string(orth) + " above tolerance");
  return out;
}

/// Self-adjoint idempotent matrix together with its rank.
template <typename Scalar>
class OrthogonalProjection {
 public:
  using MatrixType = DenseMatrix<Scalar>;

  OrthogonalProjection(MatrixType m, Eigen::Index rank, const Tolerances& tol = {})
      : m_(std::move(m)), rank_(rank) {
    const auto n = m_.rows();
    if (m_.cols() != n) throw ValidationError("projection must be square");
    const double tau = tol.proj(n);
    if (spectral_norm(m_ * m_ - m_) > tau || spectral_norm(m_ - m_.adjoint()) > tau)
      throw ValidationError("matrix is not an orthogonal projection");
    if (std::abs(std::real(m_.trace()) - static_cast<double>(rank_)) > tau * static_cast<double>(n))
      throw ValidationError("projection trace does not match its rank");
  }

  /// Projection onto the span of orthonormal columns.
  static OrthogonalProjection onto(const MatrixType& basis, Eigen::Index dim) {
    if (basis.cols() == 0) return zero(dim);
    return OrthogonalProjection(basis * basis.adjoint(), basis.cols());
  }
  static OrthogonalProjection zero(Eigen::Index dim) {
    return OrthogonalProjection(MatrixType::Zero(dim, dim), 0);
  }
  static OrthogonalProjection identity(Eigen::Index dim) {
    return OrthogonalProjection(MatrixType::Identity(dim, dim), dim);
  }

  const MatrixType& matrix() const noexcept { return m_; }
  Eigen::Index rank() const noexcept { return rank_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  OrthogonalProjection complement() const {
    return OrthogonalProjection(MatrixType::Identity(dim(), dim()) - m_, dim() - rank_);
  }

  /// Orthonormal basis of the range (rank columns), or of the kernel.
  MatrixType range_basis() const { return split_basis(true); }
  MatrixType kernel_basis() const { return split_basis(false); }

 private:
  MatrixType split_basis(bool range) const {
    Eigen::SelfAdjointEigenSolver<MatrixType> es(m_);
    // Eigenvalues cluster at 0 (first dim-rank) and 1 (last rank).
    const auto k = dim() - rank_;
    return range ? MatrixType(es.eigenvectors().rightCols(rank_))
                 : MatrixType(es.eigenvectors().leftCols(k));
  }

  MatrixType m_;
  Eigen::Index rank_;
};

using Projection = OrthogonalProjection<Complex>;

enum class Membership { Inside, Outside, Ambiguous };

/// Decides whether x belongs to a set given a tolerance:
///  - closed sets take every x within tau of the set;
///  - open sets report Ambiguous for x within tau of an excluded endpoint.
inline Membership classify_membership(double x, const SpectralSet& set, double tau) {
  if (set.is_open()) {
    if (set.open_boundary_distance(x) <= tau) return Membership::Ambiguous;
    return set.contains(x) ? Membership::Inside : Membership::Outside;
  }
  return set.distance_to(x) <= tau ? Membership::Inside : Membership::Outside;
}

enum class BoundaryPolicy {
  Throw,    ///< ambiguous eigenvalue raises AmbiguityError
  Exclude,  ///< ambiguous eigenvalue is left out and recorded
};

template <typename Scalar>
struct SpectralSelection {
  OrthogonalProjection<Scalar> projection;
  std::vector<Eigen::Index> members;    ///< eigenvalue indices taken
  std::vector<Eigen::Index> ambiguous;  ///< indices left out at an open boundary
};

template <typename Scalar>
SpectralSelection<Scalar> select_spectrum(const EigenDecomposition<Scalar>& eig,
                                          const SpectralSet& delta, double tau,
                                          BoundaryPolicy policy = BoundaryPolicy::Throw) {
  const auto n = eig.eigenvalues.size();
  std::vector<Eigen::Index> members;
  std::vector<Eigen::Index> ambiguous;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = eig.eigenvalues(i);
    switch (classify_membership(x, delta, tau)) {
      case Membership::Inside: members.push_back(i); break;
      case Membership::Outside: break;
      case Membership::Ambiguous:
        if (policy == BoundaryPolicy::Throw)
          throw AmbiguityError(x, delta.open_boundary_distance(x));
        ambiguous.push_back(i);
        break;
    }
  }
  DenseMatrix<Scalar> basis(n, static_cast<Eigen::Index>(members.size()));
  for (std::size_t c = 0; c < members.size(); ++c)
    basis.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors.col(members[c]);
  return {OrthogonalProjection<Scalar>::onto(basis, n), std::move(members), std::move(ambiguous)};
}

/// E_M(delta): sum of eigenvector outer products for eigenvalues in delta.
template <typename Scalar>
OrthogonalProjection<Scalar> spectral_projection(const Hermitian<Scalar>& m, const SpectralSet& delta,
                                                 double tau, const Tolerances& tol = {}) {
  return select_spectrum(hermitian_eigendecompose(m, tol), delta, tau).projection;
}

}  // namespace specpert
