#include "specpert/analysis.hpp"

namespace specpert {

ProjectionDifference projection_difference_norm(const Projection& P, const Projection& Q) {
  if (P.dim() != Q.dim()) throw DomainError("projection_difference_norm: dimension mismatch");
  const auto n = P.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  return {spectral_norm(P.matrix() - Q.matrix()), spectral_norm(P.matrix() * (id - Q.matrix())),
          spectral_norm((id - P.matrix()) * Q.matrix())};
}

Projection GraphOperator::rebuild() const {
  const auto n = domain.rows();
  const auto k = domain.cols();
  if (k == 0) return Projection::zero(n);
  const ComplexMatrix graph = domain + codomain * X;
  Eigen::HouseholderQR<ComplexMatrix> qr(graph);
  const ComplexMatrix basis = qr.householderQ() * ComplexMatrix::Identity(n, k);
  return Projection::onto(basis, n);
}

GraphOperator graph_operator(const Projection& P, const Projection& Q, const Tolerances& tol) {
  if (P.dim() != Q.dim()) throw DomainError("graph_operator: dimension mismatch");
  if (P.rank() != Q.rank())
    throw RankError("graph_operator: rank(P) = " + std::to_string(P.rank()) +
                    " but rank(Q) = " + std::to_string(Q.rank()));
  const double gap = spectral_norm(P.matrix() - Q.matrix());
  if (gap >= 1.0 - tol.proj(P.dim()))
    throw RepresentabilityError("graph_operator: ||P - Q|| = " + std::to_string(gap) +
                                " is not below 1");

  GraphOperator out;
  out.domain = P.range_basis();
  out.codomain = P.kernel_basis();
  if (P.rank() == 0) {
    out.X = ComplexMatrix::Zero(P.dim(), 0);
    return out;
  }
  // Coordinates of an orthonormal basis of Ran Q in the P-split; the top
  // block is invertible because ||P - Q|| < 1.
  const ComplexMatrix range_q = Q.range_basis();
  const ComplexMatrix top = out.domain.adjoint() * range_q;
  const ComplexMatrix bottom = out.codomain.adjoint() * range_q;
  // X = bottom * top^{-1}, solved as top^* X^* = bottom^*.
  out.X = top.adjoint().partialPivLu().solve(bottom.adjoint()).adjoint();
  return out;
}

}  // namespace specpert
