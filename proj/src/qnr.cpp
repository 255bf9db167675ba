#include <random>

#include "specpert/analysis.hpp"

namespace specpert {

namespace {

/// Uniform point on the unit sphere of the span of `basis` (orthonormal columns).
ComplexVector sphere_point(const ComplexMatrix& basis, std::mt19937_64& rng,
                           std::normal_distribution<double>& normal) {
  ComplexVector c(basis.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    c(i) = Complex(re, im);
  }
  const double n = c.norm();
  if (n == 0.0) c(0) = 1.0;
  else c /= n;
  return basis * c;
}

}  // namespace

std::vector<QnrSample> qnr_sample(const HermitianMatrix& B, const Projection& P, std::size_t n,
                                  std::uint64_t seed) {
  if (P.dim() != B.dim()) throw DomainError("qnr_sample: dimension mismatch");
  if (P.rank() == 0 || P.rank() == P.dim())
    throw DomainError("qnr_sample: P must have 0 < rank < dim");
  if (n == 0) throw DomainError("qnr_sample: need at least one sample");

  const ComplexMatrix range = P.range_basis();
  const ComplexMatrix kernel = P.kernel_basis();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<QnrSample> out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    const ComplexVector f = sphere_point(range, rng, normal);
    const ComplexVector g = sphere_point(kernel, rng, normal);
    QnrSample q;
    q.a0 = f.dot(B.matrix() * f).real();
    q.a1 = g.dot(B.matrix() * g).real();
    q.v = f.dot(B.matrix() * g);  // Eigen's dot conjugates the left operand
    const auto ext = two_by_two_extremes(q.a0, q.a1, q.v);
    q.lambda = ext.lambda;
    q.mu = ext.mu;
    out.push_back(q);
  }
  return out;
}

}  // namespace specpert
