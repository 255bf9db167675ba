#include "specpert/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace specpert {

namespace {

double spectrum_tolerance(const EigenDecomposition<Complex>& eig, const Tolerances& tol) {
  const double norm = std::max(std::abs(eig.min()), std::abs(eig.max()));
  return tol.eig(eig.eigenvalues.size(), norm);
}

}  // namespace

SpectralSet negated(const SpectralSet& s) {
  std::vector<Interval> flipped;
  flipped.reserve(s.size());
  for (const auto& iv : s.intervals()) flipped.push_back({-iv.hi, -iv.lo});
  return s.is_open() ? SpectralSet::open(std::move(flipped)) : SpectralSet::closed(std::move(flipped));
}

PerturbationProblem::PerturbationProblem(HermitianMatrix A, HermitianMatrix V, SpectralSet sigma,
                                         SpectralSet Sigma, Tolerances tol)
    : a_(std::move(A)),
      v_(std::move(V)),
      b_(a_.dim() == v_.dim() ? a_ + v_ : throw ValidationError("A and V have different dimensions")),
      sigma_(sigma.closure()),
      Sigma_(Sigma.closure()),
      tol_(tol),
      eig_a_(hermitian_eigendecompose(a_, tol_)),
      eig_b_(hermitian_eigendecompose(b_, tol_)),
      p_(Projection::zero(a_.dim())) {
  if (sigma_.empty() || Sigma_.empty())
    throw ValidationError("sigma and Sigma must both be nonempty");
  d_ = distance(sigma_, Sigma_);
  if (!(d_ > 0.0)) throw ValidationError("sigma and Sigma are not separated (d = 0)");
  case_ = classify_case(sigma_, Sigma_);
  norm_v_ = v_.norm();

  const double tau = tau_A();
  const SpectralSet whole = set_union(sigma_, Sigma_);
  for (Eigen::Index i = 0; i < eig_a_.eigenvalues.size(); ++i) {
    const double x = eig_a_.eigenvalues(i);
    if (whole.distance_to(x) > tau)
      throw ValidationError("eigenvalue " + std::to_string(x) + " of A lies outside sigma U Sigma");
  }

  p_ = select_spectrum(eig_a_, sigma_, tau).projection;

  const ComplexMatrix& P = p_.matrix();
  const ComplexMatrix Pc = ComplexMatrix::Identity(dim(), dim()) - P;
  const double allowance = tol_.off_diagonal(dim()) * norm_v_;
  if (spectral_norm(P * v_.matrix() * P) > allowance)
    throw ValidationError("V is not off-diagonal: ||P V P|| exceeds tolerance");
  if (spectral_norm(Pc * v_.matrix() * Pc) > allowance)
    throw ValidationError("V is not off-diagonal: ||P' V P'|| exceeds tolerance");
  const ComplexMatrix& Am = a_.matrix();
  if (spectral_norm(Am * P - P * Am) > tol_.proj(dim()) * std::max(1.0, a_.norm()))
    throw ValidationError("E_A(sigma) does not commute with A");
}

double PerturbationProblem::tau_A() const { return spectrum_tolerance(eig_a_, tol_); }

double PerturbationProblem::tau_B() const { return spectrum_tolerance(eig_b_, tol_); }

PerturbationProblem PerturbationProblem::swapped() const {
  return PerturbationProblem(a_, v_, Sigma_, sigma_, tol_);
}

PerturbationProblem PerturbationProblem::reflected() const {
  return PerturbationProblem(-a_, -v_, negated(sigma_), negated(Sigma_), tol_);
}

PerturbationProblem PerturbationProblem::with_scaled_perturbation(double factor) const {
  return PerturbationProblem(a_, v_.scaled(factor), sigma_, Sigma_, tol_);
}

}  // namespace specpert
