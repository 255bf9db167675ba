#include <algorithm>
#include <cmath>
#include <numbers>

#include "specpert/analysis.hpp"

namespace specpert {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

/// sin(arctan(x)) for x = num / den, den > 0.
double sin_arctan(double num, double den) {
  if (num == 0.0) return 0.0;
  return num / std::hypot(num, den);
}

void record_difference(AnalysisReport& r, const ProjectionDifference& pd, int rank_p, int rank_q) {
  r.add("norm_PQperp", pd.p_qperp);
  r.add("norm_PperpQ", pd.pperp_q);
  r.add("max_identity_residual", std::abs(pd.norm - std::max(pd.p_qperp, pd.pperp_q)));
  r.add("rank_P", rank_p);
  r.add("rank_Q", rank_q);
}

Projection select_excluding(const EigenDecomposition<Complex>& eig, const SpectralSet& set, double tau,
                            AnalysisReport& r) {
  auto sel = select_spectrum(eig, set, tau, BoundaryPolicy::Exclude);
  if (!sel.ambiguous.empty() && !r.has_flag("ambiguous_boundary")) r.flag("ambiguous_boundary");
  return sel.projection;
}

}  // namespace

AnalysisReport bound_case1(const PerturbationProblem& problem) {
  AnalysisReport r;
  r.theorem = TheoremId::Main;
  const double d = problem.gap();
  const double nv = problem.norm_v();
  const double delta = delta_v(nv, d);

  r.premise_margin = c_pi() * d - nv;
  r.premise_satisfied = nv < c_pi() * d;
  r.claimed_bound = d > delta ? kHalfPi * nv / (d - delta) : kInfinity;

  const Projection Q = select_excluding(problem.eig_B(), open_neighborhood(problem.sigma(), d / 2.0),
                                        problem.tau_B(), r);
  const auto pd = projection_difference_norm(problem.P(), Q);
  r.measured_value = pd.norm;

  const double slack = problem.tolerances().reporting();
  r.holds = pd.norm <= r.claimed_bound + slack && (!r.premise_satisfied || r.claimed_bound < 1.0);
  r.add("d", d);
  r.add("norm_v", nv);
  r.add("delta_v", delta);
  record_difference(r, pd, static_cast<int>(problem.P().rank()), static_cast<int>(Q.rank()));
  return r;
}

AnalysisReport bound_case2(const PerturbationProblem& problem) {
  bool swapped = false;
  const PerturbationProblem p = hull_separated_orientation(problem, &swapped);

  AnalysisReport r;
  r.theorem = TheoremId::Case2;
  if (swapped) r.flag("roles_swapped");
  const double d = p.gap();
  const double nv = p.norm_v();
  const double delta = delta_v(nv, d);

  r.premise_margin = kCaseTwoCritical * d - nv;
  r.premise_satisfied = nv < kCaseTwoCritical * d;
  r.claimed_bound = d > delta ? sin_arctan(nv, d - delta) : 1.0;

  const double tau_a = p.tau_A();
  const double tau_b = p.tau_B();
  const Projection Q = select_excluding(p.eig_B(), open_neighborhood(p.sigma(), d), tau_b, r);
  const auto pd = projection_difference_norm(p.P(), Q);
  r.measured_value = pd.norm;

  // Corner projections on (-inf, inf sigma - d] and [sup sigma + d, inf).
  // An empty side yields zero projections.
  const SpectralSet left = SpectralSet::closed({{-kInfinity, p.sigma().inf() - d}});
  const SpectralSet right = SpectralSet::closed({{p.sigma().sup() + d, kInfinity}});
  const auto pl = select_spectrum(p.eig_A(), left, tau_a).projection;
  const auto ql = select_spectrum(p.eig_B(), left, tau_b).projection;
  const auto pr = select_spectrum(p.eig_A(), right, tau_a).projection;
  const auto qr = select_spectrum(p.eig_B(), right, tau_b).projection;
  const double corner_left = spectral_norm(pl.matrix() - ql.matrix());
  const double corner_right = spectral_norm(pr.matrix() - qr.matrix());
  const double aggregate = std::hypot(corner_left, corner_right);

  const double slack = p.tolerances().reporting();
  const bool corners_ok = corner_left < kInvSqrt2 && corner_right < kInvSqrt2;
  const bool aggregate_ok = pd.pperp_q <= aggregate + slack;
  r.holds = pd.norm <= r.claimed_bound + slack && (!r.premise_satisfied || r.claimed_bound < 1.0) &&
            corners_ok && aggregate_ok;

  r.add("d", d);
  r.add("norm_v", nv);
  r.add("delta_v", delta);
  record_difference(r, pd, static_cast<int>(p.P().rank()), static_cast<int>(Q.rank()));
  r.add("corner_left", corner_left);
  r.add("corner_right", corner_right);
  r.add("corner_aggregate", aggregate);
  if (!corners_ok) r.flag("corner_bound_failed");
  if (!aggregate_ok) r.flag("aggregation_failed");
  return r;
}

AnalysisReport bound_subordinated(const PerturbationProblem& problem) {
  if (problem.spectral_case() != SpectralCase::Subordinated)
    throw CaseError("bound_subordinated: layout is " + to_string(problem.spectral_case()));
  const bool reflect = !problem.layout().first_below;
  const PerturbationProblem p = reflect ? problem.reflected() : problem;

  AnalysisReport r;
  r.theorem = TheoremId::Subordinated;
  if (reflect) r.flag("reflected");
  const double d = p.gap();
  const double nv = p.norm_v();
  const double top = p.sigma().sup();
  const double bottom = p.Sigma().inf();

  const SpectralSet gap = SpectralSet::open({{top, bottom}});
  const double tau_b = p.tau_B();
  int in_gap = 0;
  for (Eigen::Index i = 0; i < p.eig_B().eigenvalues.size(); ++i)
    if (classify_membership(p.eig_B().eigenvalues(i), gap, tau_b) == Membership::Inside) ++in_gap;

  const Projection Q = select_spectrum(p.eig_B(), SpectralSet::closed({{-kInfinity, top}}), tau_b).projection;
  const auto pd = projection_difference_norm(p.P(), Q);

  r.premise_satisfied = true;
  r.premise_margin = kInfinity;
  r.claimed_bound = std::sin(0.5 * std::atan(2.0 * nv / d));
  r.measured_value = pd.norm;
  r.holds = in_gap == 0 && pd.norm <= r.claimed_bound + p.tolerances().reporting() &&
            r.claimed_bound < kInvSqrt2;
  r.add("d", d);
  r.add("norm_v", nv);
  r.add("gap_eigenvalue_count", in_gap);
  record_difference(r, pd, static_cast<int>(p.P().rank()), static_cast<int>(Q.rank()));
  return r;
}

SpectralSet maximal_open_interval(const SpectralSet& sigma, const SpectralSet& Sigma) {
  const SpectralSet hull = convex_hull(sigma);
  if (intersects(hull, Sigma)) throw CaseError("maximal_open_interval: K(sigma) meets Sigma");
  double lo = -kInfinity, hi = kInfinity;
  for (const auto& iv : Sigma.intervals()) {
    if (iv.hi < hull.inf()) lo = std::max(lo, iv.hi);
    if (iv.lo > hull.sup()) hi = std::min(hi, iv.lo);
  }
  return SpectralSet::open({{lo, hi}});
}

AnalysisReport tan_theta_bound(const PerturbationProblem& problem, const SpectralSet& window) {
  if (!problem.layout().hull_of_first_separated)
    throw CaseError("tan_theta_bound: K(sigma) meets Sigma");
  if (overlaps(window, problem.Sigma())) throw DomainError("tan_theta_bound: window meets Sigma");

  AnalysisReport r;
  r.theorem = TheoremId::TanTheta;
  const double nv = problem.norm_v();
  auto sel = select_spectrum(problem.eig_B(), window, problem.tau_B(), BoundaryPolicy::Exclude);
  if (!sel.ambiguous.empty()) r.flag("ambiguous_boundary");
  const auto pd = projection_difference_norm(problem.P(), sel.projection);
  r.measured_value = pd.norm;

  double separation = kInfinity;  // dist(sigma~, Sigma)
  for (auto i : sel.members)
    separation = std::min(separation, problem.Sigma().distance_to(problem.eig_B().eigenvalues(i)));

  const double a_priori_limit = 1.0 - problem.tolerances().proj(problem.dim());
  r.premise_satisfied = !sel.members.empty() && pd.norm < a_priori_limit && separation > 0.0;
  r.premise_margin = a_priori_limit - pd.norm;
  r.add("norm_v", nv);
  r.add("sigma_tilde_count", static_cast<double>(sel.members.size()));
  r.add("dist_sigma_tilde_Sigma", separation);
  record_difference(r, pd, static_cast<int>(problem.P().rank()), static_cast<int>(sel.projection.rank()));

  if (!r.premise_satisfied) {
    r.claimed_bound = sel.members.empty() ? 0.0 : sin_arctan(nv, separation);
    r.holds = pd.norm <= r.claimed_bound + problem.tolerances().reporting();
    return r;
  }

  r.claimed_bound = sin_arctan(nv, separation);
  const GraphOperator graph = graph_operator(problem.P(), sel.projection, problem.tolerances());
  const double tan_norm = graph.norm();
  const double tan_bound = nv / separation;
  const double slack = problem.tolerances().reporting();
  const bool tan_ok = tan_norm <= tan_bound * (1.0 + slack) + slack;
  r.holds = pd.norm <= r.claimed_bound + slack && tan_ok;
  r.add("norm_X", tan_norm);
  r.add("tan_bound", tan_bound);
  r.add("sin_identity_residual", std::abs(pd.norm * std::sqrt(1.0 + tan_norm * tan_norm) - tan_norm));
  if (!tan_ok) r.flag("tan_bound_failed");
  return r;
}

AnalysisReport tan_theta_bound(const PerturbationProblem& problem) {
  bool swapped = false;
  const PerturbationProblem p = hull_separated_orientation(problem, &swapped);
  AnalysisReport r = tan_theta_bound(p, maximal_open_interval(p.sigma(), p.Sigma()));
  if (swapped) r.flag("roles_swapped");
  return r;
}

AnalysisReport verify_pair_inequality(const HermitianMatrix& A, const HermitianMatrix& B,
                                      const SpectralSet& sigma, const SpectralSet& delta,
                                      const Tolerances& tol) {
  if (A.dim() != B.dim()) throw DomainError("verify_pair_inequality: dimension mismatch");
  const double dist = distance(sigma, delta);
  if (!(dist > 0.0)) throw DomainError("verify_pair_inequality: dist(sigma, delta) = 0");

  AnalysisReport r;
  r.theorem = TheoremId::Mce;
  const auto eig_a = hermitian_eigendecompose(A, tol);
  const auto eig_b = hermitian_eigendecompose(B, tol);
  auto tau_of = [&](const EigenDecomposition<Complex>& e) {
    return tol.eig(e.eigenvalues.size(), std::max(std::abs(e.min()), std::abs(e.max())));
  };
  const Projection ea = select_excluding(eig_a, sigma, tau_of(eig_a), r);
  const Projection eb = select_excluding(eig_b, delta, tau_of(eig_b), r);

  const double lhs = dist * spectral_norm(ea.matrix() * eb.matrix());
  const double diff = spectral_norm(A.matrix() - B.matrix());
  const bool hull_separated = !intersects(convex_hull(sigma), delta) || !intersects(convex_hull(delta), sigma);
  const double slack = tol.reporting();

  r.premise_satisfied = true;
  r.premise_margin = kInfinity;
  r.measured_value = lhs;
  r.claimed_bound = hull_separated ? diff : kHalfPi * diff;
  r.holds = lhs <= kHalfPi * diff + slack && (!hull_separated || lhs <= diff + slack);
  r.add("dist", dist);
  r.add("norm_A_minus_B", diff);
  r.add("bound_pi_half", kHalfPi * diff);
  r.add("bound_unit", diff);
  r.add("hull_separated", hull_separated ? 1.0 : 0.0);
  return r;
}

AnalysisReport run_theorem(const PerturbationProblem& problem, TheoremId id) {
  switch (id) {
    case TheoremId::ShiftI: return spectrum_enclosure(problem);
    case TheoremId::ShiftII: return gap_persistence(problem, GapVariant::HalfGap);
    case TheoremId::ShiftIII: return gap_persistence(problem, GapVariant::FullGap);
    case TheoremId::Main: return bound_case1(problem);
    case TheoremId::Case2: return bound_case2(problem);
    case TheoremId::Subordinated: return bound_subordinated(problem);
    case TheoremId::TanTheta: return tan_theta_bound(problem);
    case TheoremId::Mce:
      return verify_pair_inequality(problem.A(), problem.B(), problem.sigma(), problem.Sigma(),
                                    problem.tolerances());
    case TheoremId::ShiftBounds: return shift_bounds(problem);
  }
  throw DomainError("unknown theorem id");
}

AnalysisReport run_theorem_or_skip(const PerturbationProblem& problem, TheoremId id) {
  try {
    return run_theorem(problem, id);
  } catch (const CaseError&) {
    AnalysisReport r;
    r.theorem = id;
    r.premise_satisfied = false;
    r.flag("not_applicable");
    return r;
  }
}

}  // namespace specpert
