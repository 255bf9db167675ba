#include <algorithm>
#include <cmath>
#include <numbers>

#include "specpert/analysis.hpp"

namespace specpert {

double c_pi() {
  constexpr double pi = std::numbers::pi;
  return (3.0 * pi - std::sqrt(pi * pi + 32.0)) / (pi * pi - 4.0);
}

double half_angle_shift(double norm, double gap) {
  if (!(norm >= 0.0) || !(gap >= 0.0)) throw DomainError("half_angle_shift: negative argument");
  if (norm == 0.0) return 0.0;
  if (std::isinf(gap)) return 0.0;
  // tan(arctan(t)/2) = t / (1 + sqrt(1 + t^2)) with t = 2 norm / gap.
  return 2.0 * norm * norm / (gap + std::hypot(gap, 2.0 * norm));
}

double delta_v(double norm_v, double d) {
  if (!(d > 0.0)) throw DomainError("delta_v: gap d must be positive");
  if (!(norm_v >= 0.0)) throw DomainError("delta_v: ||V|| must be nonnegative");
  return half_angle_shift(norm_v, d);
}

DirectionalShift delta_v_directional(double a0_inf, double a0_sup, double a1_inf, double a1_sup,
                                     double norm_v, const Tolerances& tol) {
  auto one_side = [&](double x, double y) {
    const double gap = std::abs(y - x);
    if (gap <= tol.convention(std::max({std::abs(x), std::abs(y), norm_v}))) return norm_v;
    return half_angle_shift(norm_v, gap);
  };
  return {one_side(a0_inf, a1_inf), one_side(a0_sup, a1_sup)};
}

TwoByTwoExtremes two_by_two_extremes(double a0, double a1, Complex v) {
  const double shift = half_angle_shift(std::abs(v), std::abs(a1 - a0));
  return {std::min(a0, a1) - shift, std::max(a0, a1) + shift};
}

PerturbationProblem hull_separated_orientation(const PerturbationProblem& problem, bool* swapped) {
  const auto& layout = problem.layout();
  if (swapped) *swapped = false;
  if (layout.hull_of_first_separated) return problem;
  if (layout.hull_of_second_separated) {
    if (swapped) *swapped = true;
    return problem.swapped();
  }
  throw CaseError("neither convex hull is separated from the other component (" +
                  to_string(problem.spectral_case()) + ")");
}

namespace {

void add_common(AnalysisReport& r, const PerturbationProblem& p, double delta) {
  r.add("d", p.gap());
  r.add("norm_v", p.norm_v());
  r.add("delta_v", delta);
}

}  // namespace

AnalysisReport shift_bounds(const PerturbationProblem& problem) {
  AnalysisReport r;
  r.theorem = TheoremId::ShiftBounds;

  const auto& eig_a = problem.eig_A();
  const auto& eig_b = problem.eig_B();
  const auto sel = select_spectrum(eig_a, problem.sigma(), problem.tau_A());

  // Parts of A on Ran P and Ran P'.
  double a0_inf = kInfinity, a0_sup = -kInfinity, a1_inf = kInfinity, a1_sup = -kInfinity;
  std::vector<bool> in_p(static_cast<std::size_t>(eig_a.eigenvalues.size()), false);
  for (auto i : sel.members) in_p[static_cast<std::size_t>(i)] = true;
  for (Eigen::Index i = 0; i < eig_a.eigenvalues.size(); ++i) {
    const double x = eig_a.eigenvalues(i);
    if (in_p[static_cast<std::size_t>(i)]) {
      a0_inf = std::min(a0_inf, x);
      a0_sup = std::max(a0_sup, x);
    } else {
      a1_inf = std::min(a1_inf, x);
      a1_sup = std::max(a1_sup, x);
    }
  }
  DirectionalShift shift{problem.norm_v(), problem.norm_v()};
  if (std::isfinite(a0_inf) && std::isfinite(a1_inf)) {
    shift = delta_v_directional(a0_inf, a0_sup, a1_inf, a1_sup, problem.norm_v(), problem.tolerances());
  } else {
    r.flag("one_sided_split");
  }

  const double inf_a = eig_a.min(), sup_a = eig_a.max();
  const double inf_b = eig_b.min(), sup_b = eig_b.max();
  // Each deficit is <= 0 when the corresponding inequality holds.
  const double deficit = std::max({(inf_a - shift.left) - inf_b, inf_b - inf_a, sup_a - sup_b,
                                   sup_b - (sup_a + shift.right)});

  r.claimed_bound = 0.0;
  r.measured_value = deficit;
  r.holds = deficit <= problem.tolerances().reporting();
  r.add("inf_A", inf_a);
  r.add("sup_A", sup_a);
  r.add("inf_B", inf_b);
  r.add("sup_B", sup_b);
  r.add("inf_A0", a0_inf);
  r.add("sup_A0", a0_sup);
  r.add("inf_A1", a1_inf);
  r.add("sup_A1", a1_sup);
  r.add("delta_left", shift.left);
  r.add("delta_right", shift.right);
  r.add("norm_v", problem.norm_v());

  const double tau = problem.tau_B();
  if (std::abs(inf_b - (inf_a - shift.left)) <= tau && shift.left > 0.0) r.flag("lower_bound_attained");
  if (std::abs(sup_b - (sup_a + shift.right)) <= tau && shift.right > 0.0) r.flag("upper_bound_attained");
  return r;
}

AnalysisReport spectrum_enclosure(const PerturbationProblem& problem) {
  AnalysisReport r;
  r.theorem = TheoremId::ShiftI;
  const double delta = delta_v(problem.norm_v(), problem.gap());
  const SpectralSet spec_a = set_union(problem.sigma(), problem.Sigma());
  const SpectralSet nbhd = closed_neighborhood(spec_a, delta);
  const double tau = problem.tau_B();

  double excursion = 0.0;
  int outside = 0;
  bool on_boundary = false;
  for (Eigen::Index i = 0; i < problem.eig_B().eigenvalues.size(); ++i) {
    const double x = problem.eig_B().eigenvalues(i);
    const double dist = spec_a.distance_to(x);
    excursion = std::max(excursion, dist);
    if (classify_membership(x, nbhd, tau) == Membership::Outside) ++outside;
    if (delta > 0.0 && std::abs(dist - delta) <= tau) on_boundary = true;
  }

  r.claimed_bound = delta;
  r.measured_value = excursion;
  r.holds = excursion <= delta + problem.tolerances().reporting();
  add_common(r, problem, delta);
  r.add("outside_count", outside);
  if (on_boundary) r.flag("ambiguous_boundary");
  return r;
}

AnalysisReport gap_persistence(const PerturbationProblem& problem, GapVariant variant) {
  if (variant == GapVariant::Auto)
    variant = problem.spectral_case() == SpectralCase::CaseI ? GapVariant::HalfGap : GapVariant::FullGap;

  bool swapped = false;
  const PerturbationProblem oriented =
      variant == GapVariant::FullGap ? hull_separated_orientation(problem, &swapped) : problem;

  AnalysisReport r;
  const double d = oriented.gap();
  const double nv = oriented.norm_v();
  const double critical = variant == GapVariant::HalfGap ? kCaseOneCritical : kCaseTwoCritical;
  const double radius = variant == GapVariant::HalfGap ? d / 2.0 : d;
  r.theorem = variant == GapVariant::HalfGap ? TheoremId::ShiftII : TheoremId::ShiftIII;
  r.premise_margin = critical * d - nv;
  r.premise_satisfied = nv < critical * d;
  if (swapped) r.flag("roles_swapped");

  const double delta = delta_v(nv, d);
  const SpectralSet window = open_neighborhood(oriented.sigma(), radius);
  const SpectralSet nbhd = closed_neighborhood(oriented.sigma(), delta);
  const double tau = oriented.tau_B();

  int inside = 0, mismatched = 0, ambiguous = 0;
  double farthest = 0.0;
  for (Eigen::Index i = 0; i < oriented.eig_B().eigenvalues.size(); ++i) {
    const double x = oriented.eig_B().eigenvalues(i);
    const Membership in_window = classify_membership(x, window, tau);
    const bool in_nbhd = classify_membership(x, nbhd, tau) == Membership::Inside;
    if (in_window == Membership::Ambiguous) ++ambiguous;
    const bool taken = in_window == Membership::Inside;
    if (taken) {
      ++inside;
      farthest = std::max(farthest, oriented.sigma().distance_to(x));
    }
    if (taken != in_nbhd) ++mismatched;
  }

  // The two intersections agree exactly when nothing in the window lies
  // beyond delta_V from sigma; an empty intersection scores +inf.
  r.claimed_bound = delta;
  r.measured_value = inside > 0 ? farthest : kInfinity;
  r.holds = r.measured_value <= delta + oriented.tolerances().reporting();
  add_common(r, oriented, delta);
  r.add("radius", radius);
  r.add("inside_count", inside);
  r.add("rank_P", static_cast<double>(oriented.P().rank()));
  r.add("mismatch_count", mismatched);
  if (ambiguous > 0) r.flag("ambiguous_boundary");
  if (inside != oriented.P().rank()) r.flag("count_mismatch");
  return r;
}

}  // namespace specpert
