#pragma once

#include "specpert/operator_core.hpp"
#include "specpert/spectral_set.hpp"
#include "specpert/tolerances.hpp"

namespace specpert {

/// A validated off-diagonal perturbation problem B = A + V.
///
/// Construction checks that spec(A) lies in sigma U Sigma, that the two
/// components are separated, and that V has vanishing diagonal blocks with
/// respect to P = E_A(sigma). Both spectra are computed once and kept.
class PerturbationProblem {
 public:
  PerturbationProblem(HermitianMatrix A, HermitianMatrix V, SpectralSet sigma, SpectralSet Sigma,
                      Tolerances tol = {});

  const HermitianMatrix& A() const noexcept { return a_; }
  const HermitianMatrix& V() const noexcept { return v_; }
  const HermitianMatrix& B() const noexcept { return b_; }
  const SpectralSet& sigma() const noexcept { return sigma_; }
  const SpectralSet& Sigma() const noexcept { return Sigma_; }
  const Tolerances& tolerances() const noexcept { return tol_; }

  Eigen::Index dim() const noexcept { return a_.dim(); }
  /// dist(sigma, Sigma), recomputed from the sets.
  double gap() const noexcept { return d_; }
  double norm_v() const noexcept { return norm_v_; }
  const CaseClassification& layout() const noexcept { return case_; }
  SpectralCase spectral_case() const noexcept { return case_.label; }

  const EigenDecomposition<Complex>& eig_A() const noexcept { return eig_a_; }
  const EigenDecomposition<Complex>& eig_B() const noexcept { return eig_b_; }
  /// E_A(sigma).
  const Projection& P() const noexcept { return p_; }

  /// Membership tolerances for eigenvalues of A and B.
  double tau_A() const;
  double tau_B() const;

  /// Same operators with sigma and Sigma exchanged.
  PerturbationProblem swapped() const;
  /// x -> -x applied to A, V and both sets.
  PerturbationProblem reflected() const;
  PerturbationProblem with_scaled_perturbation(double factor) const;

 private:
  HermitianMatrix a_;
  HermitianMatrix v_;
  HermitianMatrix b_;
  SpectralSet sigma_;
  SpectralSet Sigma_;
  Tolerances tol_;
  double d_ = 0.0;
  double norm_v_ = 0.0;
  CaseClassification case_;
  EigenDecomposition<Complex> eig_a_;
  EigenDecomposition<Complex> eig_b_;
  Projection p_;
};

SpectralSet negated(const SpectralSet& s);

}  // namespace specpert
