#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "specpert/harness.hpp"

namespace specpert {

namespace {

/// Search state: diagonal A with labelled entries and an off-diagonal V.
struct Candidate {
  Eigen::VectorXd diag;
  std::vector<bool> in_sigma;
  ComplexMatrix v;
};

Candidate from_problem(const PerturbationProblem& p) {
  Candidate c;
  c.diag = p.A().matrix().diagonal().real();
  c.in_sigma.resize(static_cast<std::size_t>(p.dim()));
  for (Eigen::Index i = 0; i < p.dim(); ++i)
    c.in_sigma[static_cast<std::size_t>(i)] = p.P().matrix()(i, i).real() > 0.5;
  c.v = p.V().matrix();
  return c;
}

std::optional<PerturbationProblem> to_problem(const Candidate& c) {
  std::vector<double> lo, hi;
  for (Eigen::Index i = 0; i < c.diag.size(); ++i)
    (c.in_sigma[static_cast<std::size_t>(i)] ? lo : hi).push_back(c.diag(i));
  try {
    return PerturbationProblem(HermitianMatrix::diagonal(c.diag), HermitianMatrix(c.v), SpectralSet::points(lo),
                               SpectralSet::points(hi));
  } catch (const Error&) {
    return std::nullopt;
  }
}

double gap_of(const Candidate& c) {
  std::vector<double> lo, hi;
  for (Eigen::Index i = 0; i < c.diag.size(); ++i)
    (c.in_sigma[static_cast<std::size_t>(i)] ? lo : hi).push_back(c.diag(i));
  return distance(SpectralSet::points(lo), SpectralSet::points(hi));
}

/// Pads a built-in example with uncoupled copies of its outermost eigenvalues
/// and rescales V to ||V|| = c d.
std::optional<Candidate> builtin_start(const SearchConfig& cfg) {
  const bool half = cfg.neighborhood == Neighborhood::HalfGap;
  const PerturbationProblem base = builtin_example(half ? BuiltinExample::Case1 : BuiltinExample::Case2);
  Candidate c = from_problem(base);
  const int k0 = static_cast<int>(std::count(c.in_sigma.begin(), c.in_sigma.end(), true));
  const int m0 = static_cast<int>(c.in_sigma.size()) - k0;
  if (cfg.dim_sigma < k0 || cfg.dim_Sigma < m0) return std::nullopt;

  const double sigma_pad = half ? -1.5 : 0.0;
  const double Sigma_pad = half ? 1.5 : 1.0;
  const int n = cfg.dim_sigma + cfg.dim_Sigma;
  const auto n0 = static_cast<int>(c.diag.size());
  Candidate out;
  out.diag.resize(n);
  out.diag.head(n0) = c.diag;
  out.in_sigma = c.in_sigma;
  for (int i = n0; i < n; ++i) {
    const bool sig = i - n0 < cfg.dim_sigma - k0;
    out.diag(i) = sig ? sigma_pad : Sigma_pad;
    out.in_sigma.push_back(sig);
  }
  out.v = ComplexMatrix::Zero(n, n);
  out.v.topLeftCorner(n0, n0) = c.v * (cfg.c * base.gap() / base.norm_v());
  return out;
}

Family start_family(const SearchConfig& cfg) {
  if (cfg.neighborhood == Neighborhood::HalfGap)
    return cfg.dim_sigma >= 2 && cfg.dim_Sigma >= 2 ? Family::CaseI : Family::Subordinated;
  return cfg.dim_Sigma >= 2 ? Family::CaseII : Family::Subordinated;
}

struct Scored {
  std::optional<Candidate> candidate;
  double value = -1.0;
};

double score(const Candidate& c, const SearchConfig& cfg) {
  const auto p = to_problem(c);
  if (!p) return -1.0;
  if (cfg.neighborhood == Neighborhood::FullGap && !p->layout().hull_of_first_separated) return -1.0;
  return search_objective(*p, cfg.neighborhood);
}

/// Shrinks V back into the ball ||V|| <= c d.
void clamp_norm(Candidate& c, double cap) {
  const double norm = spectral_norm(c.v);
  if (norm > cap && norm > 0.0) c.v *= cap / norm;
}

Scored refine(Candidate start, double value, const SearchConfig& cfg, std::uint64_t seed) {
  const auto n = start.diag.size();
  // Coordinates: diagonal entries, then (re, im) of each coupling entry.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> couplings;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (start.in_sigma[static_cast<std::size_t>(i)] != start.in_sigma[static_cast<std::size_t>(j)])
        couplings.emplace_back(i, j);
  const auto coords = static_cast<int>(n + 2 * static_cast<Eigen::Index>(couplings.size()));
  const int moves_per_sweep = std::min(2 * coords, 64);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, coords - 1);
  std::uniform_int_distribution<int> sign(0, 1);

  Candidate best = std::move(start);
  double step = 0.25;
  for (int sweep = 0; sweep < cfg.refine_sweeps && value < 1.0 - 1e-14; ++sweep) {
    bool improved = false;
    for (int move = 0; move < moves_per_sweep; ++move) {
      const int coord = pick(rng);
      const double delta = (sign(rng) ? step : -step) * gap_of(best);
      Candidate trial = best;
      if (coord < n) {
        trial.diag(coord) += delta;
      } else {
        const auto [i, j] = couplings[static_cast<std::size_t>((coord - n) / 2)];
        const Complex bump = (coord - n) % 2 == 0 ? Complex(delta, 0.0) : Complex(0.0, delta);
        trial.v(i, j) += bump;
        trial.v(j, i) = std::conj(trial.v(i, j));
      }
      const double d = gap_of(trial);
      if (!(d > 0.0)) continue;
      clamp_norm(trial, cfg.c * d);
      const double s = score(trial, cfg);
      if (s > value + 1e-15) {
        value = s;
        best = std::move(trial);
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return {std::move(best), value};
}

}  // namespace

double search_objective(const PerturbationProblem& problem, Neighborhood neighborhood) {
  const double radius = neighborhood == Neighborhood::HalfGap ? problem.gap() / 2.0 : problem.gap();
  const auto sel = select_spectrum(problem.eig_B(), open_neighborhood(problem.sigma(), radius), problem.tau_B(),
                                   BoundaryPolicy::Exclude);
  return projection_difference_norm(problem.P(), sel.projection).norm;
}

SearchResult search_worst_case(const SearchConfig& cfg) {
  if (!(cfg.c > 0.0)) throw DomainError("search_worst_case: c must be positive");
  if (cfg.trials < 1) throw DomainError("search_worst_case: need at least one trial");
  if (cfg.dim_sigma < 1 || cfg.dim_Sigma < 1) throw DomainError("search_worst_case: empty component");

  const Family family = start_family(cfg);
  std::vector<Scored> starts(static_cast<std::size_t>(cfg.trials));
  auto run_trial = [&](int t) {
    std::optional<Candidate> c;
    if (t == 0 && cfg.seed_builtin) c = builtin_start(cfg);
    if (!c) {
      const ProblemSpec spec = sample_problem_spec(family, cfg.dim_sigma, cfg.dim_Sigma, cfg.c,
                                                   derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
      c = from_problem(random_problem(spec));
    }
    const double s = score(*c, cfg);
    starts[static_cast<std::size_t>(t)] = {std::move(c), s};
  };

  const unsigned threads = std::max(1u, cfg.threads);
  if (threads == 1) {
    for (int t = 0; t < cfg.trials; ++t) run_trial(t);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (int t = static_cast<int>(w); t < cfg.trials; t += static_cast<int>(threads)) run_trial(t);
      });
  }

  // Best starts by value, ties to the lower trial index.
  std::vector<int> order(static_cast<std::size_t>(cfg.trials));
  for (int t = 0; t < cfg.trials; ++t) order[static_cast<std::size_t>(t)] = t;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return starts[static_cast<std::size_t>(a)].value > starts[static_cast<std::size_t>(b)].value;
  });

  SearchResult result;
  result.trials = cfg.trials;
  result.c = cfg.c;
  const int best_start = order.front();
  result.best_value = starts[static_cast<std::size_t>(best_start)].value;
  result.best_trial = best_start;
  Candidate best = *starts[static_cast<std::size_t>(best_start)].candidate;

  const int refine_count = std::min(cfg.refine_starts, cfg.trials);
  for (int r = 0; r < refine_count; ++r) {
    const int t = order[static_cast<std::size_t>(r)];
    const auto& s = starts[static_cast<std::size_t>(t)];
    if (s.value < 0.0) continue;
    Scored refined = refine(*s.candidate, s.value, cfg, derive_seed(cfg.seed, 1'000'000u + static_cast<unsigned>(t)));
    if (refined.value > result.best_value) {
      result.best_value = refined.value;
      result.best_trial = t;
      best = std::move(*refined.candidate);
    }
  }
  result.best_problem = to_problem(best);
  return result;
}

}  // namespace specpert
