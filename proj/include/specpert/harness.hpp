#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specpert/analysis.hpp"
#include "specpert/problem.hpp"
#include "specpert/report.hpp"

namespace specpert {

enum class BuiltinExample {
  Case1,  ///< 4x4 Jacobi matrix, sigma = {-3/2, 1/2}, ||V|| = sqrt(3)/2
  Case2,  ///< 3x3, sigma = {0}, Sigma = {-1, 1}, ||V|| = sqrt(2)
};

std::string to_string(BuiltinExample which);
BuiltinExample builtin_from_string(const std::string& name);

/// The two sharpness examples, with V multiplied by `scale`.
PerturbationProblem builtin_example(BuiltinExample which, double scale = 1.0);

/// Diagonal A with an off-diagonal random V.
struct ProblemSpec {
  int dim_sigma = 1;
  int dim_Sigma = 1;
  std::vector<double> sigma_values;
  std::vector<double> Sigma_values;
  double target_norm_ratio = 0.0;  ///< ||V|| / d
  std::uint64_t seed = 0;
};

/// A = diag(sigma_values ++ Sigma_values); V has standard complex Gaussian
/// entries in the off-diagonal blocks only, rescaled to ||V|| = ratio * d.
PerturbationProblem random_problem(const ProblemSpec& spec, const Tolerances& tol = {});

enum class Family { CaseI, CaseII, Subordinated, Mixed };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

/// Draws a diagonal layout of the requested family with dim eigenvalues.
/// Separations between sigma and Sigma values are at least 1/2; equal values
/// inside a component occur with small probability. CaseI and CaseII need
/// dim >= 3 (CaseI: dim >= 4).
ProblemSpec sample_problem_spec(Family family, int dim, double ratio, std::uint64_t seed);

/// Same with fixed component sizes. CaseI needs both sizes >= 2, CaseII needs
/// dim_Sigma >= 2 (Sigma is placed on both sides of sigma).
ProblemSpec sample_problem_spec(Family family, int dim_sigma, int dim_Sigma, double ratio, std::uint64_t seed);

/// `count` specs with dims uniform in [dim_lo, dim_hi] and ratios uniform in
/// [ratio_lo, ratio_hi]. Spec i only depends on (seed, i).
std::vector<ProblemSpec> random_specs(Family family, int count, int dim_lo, int dim_hi, double ratio_lo,
                                      double ratio_hi, std::uint64_t seed);

/// Mixes a master seed with an index (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// ---------------------------------------------------------------------------
// Batch verification.

/// Runs every theorem on every generated problem, spec-major. A theorem that
/// does not apply to a layout yields a report with premise_satisfied = false
/// and the flag "not_applicable".
std::vector<AnalysisReport> batch_verify(const std::vector<ProblemSpec>& specs,
                                         const std::vector<TheoremId>& theorems, unsigned threads = 1);

struct BatchRow {
  TheoremId theorem = TheoremId::ShiftI;
  int runs = 0;
  int premise_met = 0;
  int passed = 0;
  int violated = 0;
  double worst_margin = kInfinity;  ///< min(claimed - measured) over premise-met runs
};

struct BatchSummary {
  std::vector<BatchRow> rows;
  bool any_violation() const;
};

BatchSummary summarize(const std::vector<AnalysisReport>& reports);

// ---------------------------------------------------------------------------
// Worst-case search.

enum class Neighborhood {
  HalfGap,  ///< O_{d/2}(sigma)
  FullGap,  ///< O_d(sigma)
};

struct SearchConfig {
  int dim_sigma = 2;
  int dim_Sigma = 2;
  double c = 0.5;  ///< cap on ||V|| / d
  int trials = 100;
  std::uint64_t seed = 0;
  Neighborhood neighborhood = Neighborhood::HalfGap;
  /// Trial 0 starts from the matching built-in example scaled to ||V|| = c d.
  bool seed_builtin = false;
  int refine_starts = 4;
  int refine_sweeps = 12;
  unsigned threads = 1;
};

struct SearchResult {
  double best_value = 0.0;
  std::optional<PerturbationProblem> best_problem;
  int trials = 0;
  double c = 0.0;
  int best_trial = -1;
};

/// ||E_A(sigma) - E_B(O)|| for O = O_{d/2}(sigma) or O_d(sigma); eigenvalues
/// on an open endpoint are left out.
double search_objective(const PerturbationProblem& problem, Neighborhood neighborhood);

/// Multi-start random sampling followed by greedy coordinate refinement with
/// shrinking steps, subject to ||V|| <= c d. Deterministic in the seed and
/// independent of the thread count.
SearchResult search_worst_case(const SearchConfig& config);

}  // namespace specpert
