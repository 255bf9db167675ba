#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "specpert/harness.hpp"

namespace specpert {

std::string to_string(BuiltinExample which) {
  return which == BuiltinExample::Case1 ? "case1" : "case2";
}

BuiltinExample builtin_from_string(const std::string& name) {
  if (name == "case1" || name == "CASE1") return BuiltinExample::Case1;
  if (name == "case2" || name == "CASE2") return BuiltinExample::Case2;
  throw DomainError("unknown built-in example '" + name + "' (expected case1 or case2)");
}

PerturbationProblem builtin_example(BuiltinExample which, double scale) {
  if (which == BuiltinExample::Case1) {
    const double h = std::sqrt(3.0) / 2.0;
    Eigen::VectorXd diag(4);
    diag << -1.5, -0.5, 0.5, 1.5;
    // B is the tridiagonal matrix with two decoupled 2x2 blocks; V = B - A.
    ComplexMatrix v = ComplexMatrix::Zero(4, 4);
    v(0, 1) = v(1, 0) = h;
    v(2, 3) = v(3, 2) = h;
    const double sigma[] = {-1.5, 0.5};
    const double Sigma[] = {-0.5, 1.5};
    return PerturbationProblem(HermitianMatrix::diagonal(diag), HermitianMatrix(v * scale),
                               SpectralSet::points(sigma), SpectralSet::points(Sigma));
  }
  Eigen::VectorXd diag(3);
  diag << -1.0, 0.0, 1.0;
  ComplexMatrix v = ComplexMatrix::Zero(3, 3);
  v(0, 1) = v(1, 0) = std::sqrt(2.0);
  const double Sigma[] = {-1.0, 1.0};
  return PerturbationProblem(HermitianMatrix::diagonal(diag), HermitianMatrix(v * scale), SpectralSet::point(0.0),
                             SpectralSet::points(Sigma));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PerturbationProblem random_problem(const ProblemSpec& spec, const Tolerances& tol) {
  if (spec.dim_sigma < 1 || spec.dim_Sigma < 1)
    throw DomainError("random_problem: both components need at least one eigenvalue");
  if (static_cast<int>(spec.sigma_values.size()) != spec.dim_sigma ||
      static_cast<int>(spec.Sigma_values.size()) != spec.dim_Sigma)
    throw DomainError("random_problem: value lists do not match the dimensions");
  if (!(spec.target_norm_ratio >= 0.0)) throw DomainError("random_problem: negative norm ratio");

  const SpectralSet sigma = SpectralSet::points(spec.sigma_values);
  const SpectralSet Sigma = SpectralSet::points(spec.Sigma_values);
  const double d = distance(sigma, Sigma);
  if (!(d > 0.0)) throw DomainError("random_problem: sigma and Sigma values coincide");

  const int k = spec.dim_sigma;
  const int m = spec.dim_Sigma;
  const int n = k + m;
  Eigen::VectorXd diag(n);
  for (int i = 0; i < k; ++i) diag(i) = spec.sigma_values[static_cast<std::size_t>(i)];
  for (int j = 0; j < m; ++j) diag(k + j) = spec.Sigma_values[static_cast<std::size_t>(j)];

  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  if (spec.target_norm_ratio > 0.0) {
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix block(k, m);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < m; ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        block(i, j) = Complex(re, im);
      }
    block *= spec.target_norm_ratio * d / spectral_norm(block);
    v.topRightCorner(k, m) = block;
    v.bottomLeftCorner(m, k) = block.adjoint();
  }
  return PerturbationProblem(HermitianMatrix::diagonal(diag), HermitianMatrix(v, tol), sigma, Sigma, tol);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::CaseI: return "case1";
    case Family::CaseII: return "case2";
    case Family::Subordinated: return "subordinated";
    case Family::Mixed: return "mixed";
  }
  return "?";
}

Family family_from_string(const std::string& name) {
  if (name == "case1" || name == "CASE_I") return Family::CaseI;
  if (name == "case2" || name == "CASE_II") return Family::CaseII;
  if (name == "subordinated" || name == "SUBORDINATED") return Family::Subordinated;
  if (name == "mixed") return Family::Mixed;
  throw DomainError("unknown family '" + name + "' (case1, case2, subordinated, mixed)");
}

namespace {

// Labels in ascending value order: true = sigma.
bool interleaved(const std::vector<bool>& labels) {
  auto first = [&](bool which) {
    return static_cast<int>(std::find(labels.begin(), labels.end(), which) - labels.begin());
  };
  auto last = [&](bool which) {
    return static_cast<int>(labels.rend() - std::find(labels.rbegin(), labels.rend(), which)) - 1;
  };
  auto any_between = [&](bool which, int lo, int hi) {
    for (int i = lo + 1; i < hi; ++i)
      if (labels[static_cast<std::size_t>(i)] == which) return true;
    return false;
  };
  return any_between(false, first(true), last(true)) && any_between(true, first(false), last(false));
}

int min_dim(Family f) {
  switch (f) {
    case Family::CaseI: return 4;
    case Family::CaseII: return 3;
    default: return 2;
  }
}

}  // namespace

ProblemSpec sample_problem_spec(Family family, int dim, double ratio, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform_int = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  if (family == Family::Mixed) {
    std::vector<Family> feasible;
    for (Family f : {Family::CaseI, Family::CaseII, Family::Subordinated})
      if (dim >= min_dim(f)) feasible.push_back(f);
    if (feasible.empty()) throw DomainError("sample_problem_spec: dimension too small");
    family = feasible[static_cast<std::size_t>(uniform_int(0, static_cast<int>(feasible.size()) - 1))];
  }
  if (dim < min_dim(family))
    throw DomainError("sample_problem_spec: " + to_string(family) + " needs dim >= " +
                      std::to_string(min_dim(family)));

  int k = 1;
  switch (family) {
    case Family::CaseI: k = uniform_int(2, dim - 2); break;
    case Family::CaseII: k = uniform_int(1, dim - 2); break;
    default: k = uniform_int(1, dim - 1); break;
  }
  return sample_problem_spec(family, k, dim - k, ratio, derive_seed(seed, 7));
}

ProblemSpec sample_problem_spec(Family family, int dim_sigma, int dim_Sigma, double ratio, std::uint64_t seed) {
  const int k = dim_sigma;
  const int m = dim_Sigma;
  const bool feasible = family == Family::CaseI    ? (k >= 2 && m >= 2)
                        : family == Family::CaseII ? (k >= 1 && m >= 2)
                        : family == Family::Mixed  ? false
                                                   : (k >= 1 && m >= 1);
  if (!feasible)
    throw DomainError("sample_problem_spec: sizes (" + std::to_string(k) + ", " + std::to_string(m) +
                      ") do not fit family " + to_string(family));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform_int = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  std::vector<bool> labels;
  switch (family) {
    case Family::CaseI:
      labels.assign(static_cast<std::size_t>(k + m), false);
      std::fill_n(labels.begin(), k, true);
      do {
        std::shuffle(labels.begin(), labels.end(), rng);
      } while (!interleaved(labels));
      break;
    case Family::CaseII: {
      const int left = uniform_int(1, m - 1);
      labels.assign(static_cast<std::size_t>(left), false);
      labels.insert(labels.end(), static_cast<std::size_t>(k), true);
      labels.insert(labels.end(), static_cast<std::size_t>(m - left), false);
      break;
    }
    default:
      labels.assign(static_cast<std::size_t>(k), true);
      labels.insert(labels.end(), static_cast<std::size_t>(m), false);
      if (unit(rng) < 0.5) std::reverse(labels.begin(), labels.end());
      break;
  }

  ProblemSpec spec;
  spec.target_norm_ratio = ratio;
  spec.seed = derive_seed(seed, 0xC0FFEE);
  double x = 6.0 * unit(rng) - 3.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) {
      if (labels[i] != labels[i - 1]) x += 0.5 + 1.5 * unit(rng);
      else if (unit(rng) >= 0.15) x += 0.05 + 1.95 * unit(rng);
    }
    (labels[i] ? spec.sigma_values : spec.Sigma_values).push_back(x);
  }
  spec.dim_sigma = k;
  spec.dim_Sigma = m;
  return spec;
}

std::vector<ProblemSpec> random_specs(Family family, int count, int dim_lo, int dim_hi, double ratio_lo,
                                      double ratio_hi, std::uint64_t seed) {
  std::vector<ProblemSpec> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  const int floor_dim = family == Family::Mixed ? 2 : min_dim(family);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
    std::mt19937_64 rng(s);
    const int dim = std::max(floor_dim, std::uniform_int_distribution<int>(dim_lo, dim_hi)(rng));
    const double ratio = std::uniform_real_distribution<double>(ratio_lo, ratio_hi)(rng);
    out.push_back(sample_problem_spec(family, dim, ratio, derive_seed(s, 1)));
  }
  return out;
}

std::vector<AnalysisReport> batch_verify(const std::vector<ProblemSpec>& specs,
                                         const std::vector<TheoremId>& theorems, unsigned threads) {
  std::vector<std::vector<AnalysisReport>> per_spec(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  auto verify_one = [&](std::size_t i) {
    const PerturbationProblem problem = random_problem(specs[i]);
    auto& out = per_spec[i];
    for (TheoremId id : theorems) out.push_back(run_theorem_or_skip(problem, id));
  };

  auto work = [&](std::size_t i) {
    try {
      verify_one(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  threads = std::max(1u, threads);
  if (threads == 1 || specs.size() < 2) {
    for (std::size_t i = 0; i < specs.size(); ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < specs.size(); i += threads) work(i);
      });
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<AnalysisReport> reports;
  for (auto& chunk : per_spec)
    for (auto& r : chunk) reports.push_back(std::move(r));
  return reports;
}

bool BatchSummary::any_violation() const {
  return std::any_of(rows.begin(), rows.end(), [](const BatchRow& r) { return r.violated > 0; });
}

BatchSummary summarize(const std::vector<AnalysisReport>& reports) {
  BatchSummary summary;
  for (const auto& r : reports) {
    auto it = std::find_if(summary.rows.begin(), summary.rows.end(),
                           [&](const BatchRow& row) { return row.theorem == r.theorem; });
    if (it == summary.rows.end()) {
      summary.rows.push_back(BatchRow{r.theorem});
      it = summary.rows.end() - 1;
    }
    ++it->runs;
    if (!r.premise_satisfied) continue;
    ++it->premise_met;
    if (r.holds) ++it->passed;
    else ++it->violated;
    it->worst_margin = std::min(it->worst_margin, r.margin());
  }
  return summary;
}

}  // namespace specpert
