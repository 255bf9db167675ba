#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "specpert/operator_core.hpp"
#include "specpert/problem.hpp"
#include "specpert/report.hpp"

namespace specpert {

// ---------------------------------------------------------------------------
// Spectral shift function and its constants.

/// Critical ||V||/d for gap persistence in O_{d/2}(sigma).
inline constexpr double kCaseOneCritical = 0.86602540378443864676;  // sqrt(3)/2
/// Critical ||V||/d for gap persistence in O_d(sigma) when K(sigma) misses Sigma.
inline constexpr double kCaseTwoCritical = std::numbers::sqrt2;

/// (3 pi - sqrt(pi^2 + 32)) / (pi^2 - 4), the positive root of
/// (pi/2) x + x tan(arctan(2x)/2) - 1.
double c_pi();

/// ||V|| tan(arctan(2||V||/gap)/2), evaluated as 2||V||^2 / (gap + sqrt(gap^2 + 4||V||^2)).
/// gap = 0 gives ||V|| (the arctan(+inf) = pi/2 convention). Both arguments >= 0.
double half_angle_shift(double norm, double gap);

/// delta_V for a gap d > 0.
double delta_v(double norm_v, double d);

struct DirectionalShift {
  double left = 0.0;   ///< uses |inf A1 - inf A0|
  double right = 0.0;  ///< uses |sup A1 - sup A0|
};

DirectionalShift delta_v_directional(double a0_inf, double a0_sup, double a1_inf, double a1_sup,
                                     double norm_v, const Tolerances& tol = {});

struct TwoByTwoExtremes {
  double lambda = 0.0;
  double mu = 0.0;
};

/// Closed-form eigenvalues of [[a0, v], [conj(v), a1]], lambda <= mu.
TwoByTwoExtremes two_by_two_extremes(double a0, double a1, Complex v);

// ---------------------------------------------------------------------------
// Quadratic numerical range.

struct QnrSample {
  double a0 = 0.0;  ///< (f, B f)
  double a1 = 0.0;  ///< (g, B g)
  Complex v;        ///< (f, B g)
  double lambda = 0.0;
  double mu = 0.0;
};

/// n compressions of B to span{f, g} with f, g uniform on the unit spheres of
/// Ran P and Ran P'. Deterministic in seed; a longer run extends a shorter one.
std::vector<QnrSample> qnr_sample(const HermitianMatrix& B, const Projection& P, std::size_t n,
                                  std::uint64_t seed);

// ---------------------------------------------------------------------------
// Spectrum location.

AnalysisReport shift_bounds(const PerturbationProblem& problem);
AnalysisReport spectrum_enclosure(const PerturbationProblem& problem);

enum class GapVariant {
  Auto,     ///< HalfGap for Case I, FullGap otherwise
  HalfGap,  ///< O_{d/2}(sigma), ||V|| < sqrt(3)/2 d
  FullGap,  ///< O_d(sigma), hull-separated, ||V|| < sqrt(2) d
};

AnalysisReport gap_persistence(const PerturbationProblem& problem, GapVariant variant = GapVariant::Auto);

// ---------------------------------------------------------------------------
// Subspace geometry.

struct ProjectionDifference {
  double norm = 0.0;     ///< ||P - Q||
  double p_qperp = 0.0;  ///< ||P Q'||
  double pperp_q = 0.0;  ///< ||P' Q||
};

ProjectionDifference projection_difference_norm(const Projection& P, const Projection& Q);

/// Ran Q = { u + X u : u in Ran P }, with X written in orthonormal bases of
/// Ran P (columns of `domain`) and Ran P' (columns of `codomain`).
struct GraphOperator {
  ComplexMatrix X;         ///< (dim - rank) x rank
  ComplexMatrix domain;    ///< dim x rank
  ComplexMatrix codomain;  ///< dim x (dim - rank)

  double norm() const { return spectral_norm(X); }
  /// The operator on the full space, P' X P.
  ComplexMatrix embedded() const { return codomain * X * domain.adjoint(); }
  /// Orthogonal projection onto the graph of X.
  Projection rebuild() const;
};

GraphOperator graph_operator(const Projection& P, const Projection& Q, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Projection bounds.

AnalysisReport bound_case1(const PerturbationProblem& problem);
AnalysisReport bound_case2(const PerturbationProblem& problem);
AnalysisReport bound_subordinated(const PerturbationProblem& problem);

/// Largest open interval containing K(sigma) that avoids Sigma. Requires
/// K(sigma) and Sigma disjoint.
SpectralSet maximal_open_interval(const SpectralSet& sigma, const SpectralSet& Sigma);

AnalysisReport tan_theta_bound(const PerturbationProblem& problem, const SpectralSet& window);
/// Uses maximal_open_interval of the (hull-separated) orientation.
AnalysisReport tan_theta_bound(const PerturbationProblem& problem);

/// dist(sigma, delta) ||E_A(sigma) E_B(delta)|| against (pi/2)||A - B||, and
/// against ||A - B|| when one hull misses the other set.
AnalysisReport verify_pair_inequality(const HermitianMatrix& A, const HermitianMatrix& B,
                                      const SpectralSet& sigma, const SpectralSet& delta,
                                      const Tolerances& tol = {});

/// Returns the problem itself when K(sigma) misses Sigma, the swapped problem
/// when only K(Sigma) misses sigma, and throws CaseError otherwise.
PerturbationProblem hull_separated_orientation(const PerturbationProblem& problem, bool* swapped = nullptr);

/// Dispatches to the check named by `id`. Mce uses B = A + V and delta = Sigma.
AnalysisReport run_theorem(const PerturbationProblem& problem, TheoremId id);

/// Like run_theorem, but a layout the check does not cover yields a report
/// with premise_satisfied = false and the flag "not_applicable".
AnalysisReport run_theorem_or_skip(const PerturbationProblem& problem, TheoremId id);

}  // namespace specpert
