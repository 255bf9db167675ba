// Command-line front end: analyze problem files, emit the built-in examples,
// sample the quadratic numerical range, run worst-case searches and batch
// verification.
//
// Exit codes: 0 ran (premises may be unmet), 1 a bound was violated,
// 2 input or usage error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specpert/analysis.hpp"
#include "specpert/errors.hpp"
#include "specpert/harness.hpp"
#include "specpert/problem_io.hpp"

namespace fs = std::filesystem;
using namespace specpert;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

std::string fmt(double x, int digits = 6) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(digits) << (x == 0.0 ? 0.0 : x);
  return os.str();
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::vector<TheoremId> default_theorems(SpectralCase c) {
  switch (c) {
    case SpectralCase::CaseI:
      return {TheoremId::ShiftI, TheoremId::ShiftBounds, TheoremId::ShiftII, TheoremId::Main};
    case SpectralCase::CaseII:
      return {TheoremId::ShiftI,   TheoremId::ShiftBounds, TheoremId::ShiftIII,
              TheoremId::Main,     TheoremId::Case2,       TheoremId::TanTheta};
    case SpectralCase::Subordinated:
      return {TheoremId::ShiftI, TheoremId::ShiftBounds, TheoremId::ShiftIII,     TheoremId::Main,
              TheoremId::Case2,  TheoremId::Subordinated, TheoremId::TanTheta};
  }
  return {};
}

std::vector<TheoremId> parse_theorems(const std::vector<std::string>& names) {
  std::vector<TheoremId> ids;
  for (const auto& n : names) {
    if (n == "all" || n == "ALL") return {std::begin(kAllTheorems), std::end(kAllTheorems)};
    ids.push_back(theorem_from_string(n));
  }
  return ids;
}

std::vector<AnalysisReport> run_all(const PerturbationProblem& p, const std::vector<TheoremId>& ids) {
  std::vector<AnalysisReport> out;
  for (TheoremId id : ids) out.push_back(run_theorem_or_skip(p, id));
  return out;
}

void print_problem(const PerturbationProblem& p) {
  std::cout << "dim      " << p.dim() << "\n"
            << "case     " << to_string(p.spectral_case()) << "\n"
            << "d        " << fmt(p.gap()) << "\n"
            << "||V||    " << fmt(p.norm_v()) << "\n"
            << "delta_V  " << fmt(delta_v(p.norm_v(), p.gap())) << "\n"
            << "spec(B)  ";
  for (double x : p.eig_B().values()) std::cout << fmt(x) << ' ';
  std::cout << "\n\n";
}

void print_reports(const std::vector<AnalysisReport>& reports) {
  std::cout << std::left << std::setw(14) << "theorem" << std::setw(9) << "premise" << std::setw(14)
            << "margin" << std::setw(14) << "claimed" << std::setw(14) << "measured" << std::setw(8) << "holds"
            << "flags\n";
  for (const auto& r : reports)
    std::cout << std::setw(14) << to_string(r.theorem) << std::setw(9) << (r.premise_satisfied ? "yes" : "no")
              << std::setw(14) << fmt(r.premise_margin) << std::setw(14) << fmt(r.claimed_bound) << std::setw(14)
              << fmt(r.measured_value) << std::setw(8) << (r.holds ? "yes" : "NO") << join(r.flags, ",") << "\n";
  std::cout << std::right;
}

bool any_violation(const std::vector<AnalysisReport>& reports) {
  for (const auto& r : reports)
    if (r.violated()) return true;
  return false;
}

void write_reports_csv(const std::vector<AnalysisReport>& reports, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << "index,theorem,premise_satisfied,premise_margin,claimed_bound,measured_value,holds,flags\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << i << ',' << to_string(r.theorem) << ',' << r.premise_satisfied << ',' << fmt(r.premise_margin, 17)
        << ',' << fmt(r.claimed_bound, 17) << ',' << fmt(r.measured_value, 17) << ',' << r.holds << ','
        << join(r.flags, ";") << '\n';
  }
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string path;
  std::string out;
  std::vector<std::string> theorems;
  double tol_scale = 1.0;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const PerturbationProblem p = load_problem(a.path, a.tol_scale);
  const auto ids = a.theorems.empty() ? default_theorems(p.spectral_case()) : parse_theorems(a.theorems);
  const auto reports = run_all(p, ids);
  print_problem(p);
  print_reports(reports);
  if (!a.out.empty()) save_json(analysis_to_json(p, reports), a.out);
  return any_violation(reports) ? kExitViolation : 0;
}

struct ExamplesArgs {
  std::string which;
  double scale = 1.0;
  std::string out_dir = ".";
};

int cmd_examples(const ExamplesArgs& a) {
  const BuiltinExample which = builtin_from_string(a.which);
  const PerturbationProblem p = builtin_example(which, a.scale);
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  const fs::path problem_path = dir / (to_string(which) + ".json");
  const fs::path report_path = dir / (to_string(which) + "_report.json");
  save_json(problem_to_json(p), problem_path);
  const auto reports = run_all(p, default_theorems(p.spectral_case()));
  save_json(analysis_to_json(p, reports), report_path);
  std::cout << "wrote " << problem_path.string() << " and " << report_path.string() << "\n";
  return 0;
}

struct QnrArgs {
  std::string path;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::string out;
  std::string svg;
  double tol_scale = 1.0;
};

void write_qnr_svg(const std::vector<QnrSample>& samples, const std::vector<double>& spec, const fs::path& path) {
  double lo = spec.front(), hi = spec.back();
  for (const auto& s : samples) {
    lo = std::min(lo, s.lambda);
    hi = std::max(hi, s.mu);
  }
  const double pad = 0.05 * std::max(hi - lo, 1e-12);
  lo -= pad;
  hi += pad;
  constexpr double size = 480.0, margin = 40.0;
  auto px = [&](double x) { return margin + (x - lo) / (hi - lo) * size; };
  auto py = [&](double y) { return margin + size - (y - lo) / (hi - lo) * size; };

  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin << "\" height=\""
      << size + 2 * margin << "\">\n"
      << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size << "\" height=\"" << size
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double x : spec) {
    out << "<line x1=\"" << px(x) << "\" y1=\"" << margin + size << "\" x2=\"" << px(x) << "\" y2=\""
        << margin + size + 8 << "\" stroke=\"red\"/>\n";
    out << "<line x1=\"" << margin - 8 << "\" y1=\"" << py(x) << "\" x2=\"" << margin << "\" y2=\"" << py(x)
        << "\" stroke=\"red\"/>\n";
  }
  for (const auto& s : samples)
    out << "<circle cx=\"" << px(s.lambda) << "\" cy=\"" << py(s.mu) << "\" r=\"1.5\" fill=\"steelblue\"/>\n";
  out << "<text x=\"" << margin + size / 2 << "\" y=\"" << size + 2 * margin - 6
      << "\" text-anchor=\"middle\">lambda</text>\n"
      << "<text x=\"12\" y=\"" << margin + size / 2 << "\">mu</text>\n</svg>\n";
}

int cmd_qnr(const QnrArgs& a) {
  if (a.samples < 1) throw ValidationError("--samples must be at least 1");
  const PerturbationProblem p = load_problem(a.path, a.tol_scale);
  const auto samples = qnr_sample(p.B(), p.P(), a.samples, a.seed);
  std::ofstream out(a.out);
  if (!out) throw ValidationError("cannot write " + a.out);
  out << "a0,a1,abs_v,lambda,mu\n";
  for (const auto& s : samples)
    out << fmt(s.a0, 17) << ',' << fmt(s.a1, 17) << ',' << fmt(std::abs(s.v), 17) << ',' << fmt(s.lambda, 17)
        << ',' << fmt(s.mu, 17) << '\n';
  if (!a.svg.empty()) write_qnr_svg(samples, p.eig_B().values(), a.svg);

  double min_lambda = kInfinity, max_mu = -kInfinity;
  for (const auto& s : samples) {
    min_lambda = std::min(min_lambda, s.lambda);
    max_mu = std::max(max_mu, s.mu);
  }
  std::cout << a.samples << " samples; min lambda " << fmt(min_lambda) << " (inf B " << fmt(p.eig_B().min())
            << "), max mu " << fmt(max_mu) << " (sup B " << fmt(p.eig_B().max()) << ")\n";
  return 0;
}

struct SearchArgs {
  double c = 0.5;
  std::vector<int> dims{2, 2};
  int trials = 100;
  std::uint64_t seed = 0;
  std::string neighborhood = "half";
  bool seed_example = false;
  unsigned threads = 1;
  std::string out;
};

int cmd_search(const SearchArgs& a) {
  if (a.dims.size() != 2) throw ValidationError("--dims expects two sizes a,b");
  SearchConfig cfg;
  cfg.dim_sigma = a.dims[0];
  cfg.dim_Sigma = a.dims[1];
  cfg.c = a.c;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.neighborhood = a.neighborhood == "full" ? Neighborhood::FullGap : Neighborhood::HalfGap;
  cfg.seed_builtin = a.seed_example;
  cfg.threads = a.threads;
  const SearchResult r = search_worst_case(cfg);

  std::cout << "best_value " << fmt(r.best_value) << " over " << r.trials << " trials (c = " << fmt(r.c)
            << ", best trial " << r.best_trial << ")\n";
  if (!a.out.empty()) {
    Json j;
    j["best_value"] = number_to_json(r.best_value);
    j["c"] = r.c;
    j["trials"] = r.trials;
    j["best_trial"] = r.best_trial;
    j["neighborhood"] = a.neighborhood;
    j["best_problem"] = r.best_problem ? problem_to_json(*r.best_problem) : Json();
    save_json(j, a.out);
  }
  return 0;
}

struct VerifyArgs {
  std::string path;
  std::string random;
  std::vector<std::string> theorems;
  int trials = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string csv;
  double tol_scale = 1.0;
};

/// family:dlo-dhi:ratio or family:dlo-dhi:rlo-rhi
struct RandomSpec {
  Family family = Family::Mixed;
  int dim_lo = 4, dim_hi = 4;
  double ratio_lo = 0.5, ratio_hi = 0.5;
};

RandomSpec parse_random_spec(const std::string& text) {
  const std::string usage = "--random expects family:dlo-dhi:ratio or family:dlo-dhi:rlo-rhi";
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw ValidationError(usage);
  RandomSpec spec;
  try {
    spec.family = family_from_string(parts[0]);
    auto range = [&](const std::string& s, auto parse, auto& lo, auto& hi) {
      const auto dash = s.find('-');
      lo = parse(s.substr(0, dash));
      hi = dash == std::string::npos ? lo : parse(s.substr(dash + 1));
    };
    range(parts[1], [](const std::string& s) { return std::stoi(s); }, spec.dim_lo, spec.dim_hi);
    range(parts[2], [](const std::string& s) { return std::stod(s); }, spec.ratio_lo, spec.ratio_hi);
  } catch (const std::logic_error&) {
    throw ValidationError(usage);
  }
  return spec;
}

int cmd_verify(const VerifyArgs& a) {
  if (a.path.empty() == a.random.empty()) throw ValidationError("verify needs either a problem file or --random");
  std::vector<AnalysisReport> reports;
  if (!a.path.empty()) {
    const PerturbationProblem p = load_problem(a.path, a.tol_scale);
    const auto ids = a.theorems.empty() ? default_theorems(p.spectral_case()) : parse_theorems(a.theorems);
    reports = run_all(p, ids);
  } else {
    const RandomSpec rs = parse_random_spec(a.random);
    const auto ids = a.theorems.empty() ? std::vector<TheoremId>(std::begin(kAllTheorems), std::end(kAllTheorems))
                                        : parse_theorems(a.theorems);
    const auto specs = random_specs(rs.family, a.trials, rs.dim_lo, rs.dim_hi, rs.ratio_lo, rs.ratio_hi, a.seed);
    reports = batch_verify(specs, ids, a.threads);
  }

  const BatchSummary summary = summarize(reports);
  std::cout << std::left << std::setw(14) << "theorem" << std::setw(8) << "runs" << std::setw(9) << "premise"
            << std::setw(8) << "passed" << std::setw(10) << "violated"
            << "worst margin\n";
  for (const auto& row : summary.rows)
    std::cout << std::setw(14) << to_string(row.theorem) << std::setw(8) << row.runs << std::setw(9)
              << row.premise_met << std::setw(8) << row.passed << std::setw(10) << row.violated
              << fmt(row.worst_margin) << "\n";
  if (!a.csv.empty()) write_reports_csv(reports, a.csv);
  return summary.any_violation() ? kExitViolation : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral subspace perturbation bounds for off-diagonal perturbations"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Run the bounds on a problem file");
  an->add_option("path", analyze.path, "Problem file")->required();
  an->add_option("--out", analyze.out, "Write the JSON report here");
  an->add_option("--theorem", analyze.theorems, "Theorem id (repeatable, or 'all')");
  an->add_option("--tol-scale", analyze.tol_scale, "Multiply all tolerances");

  ExamplesArgs examples;
  auto* ex = app.add_subcommand("examples", "Write a built-in example and its expected report");
  ex->add_option("which", examples.which, "case1 or case2")->required();
  ex->add_option("--scale", examples.scale, "Multiply V by this factor");
  ex->add_option("--out-dir", examples.out_dir, "Output directory");

  QnrArgs qnr;
  auto* qn = app.add_subcommand("qnr", "Sample the quadratic numerical range");
  qn->add_option("path", qnr.path, "Problem file")->required();
  qn->add_option("--samples", qnr.samples, "Number of samples");
  qn->add_option("--seed", qnr.seed, "Random seed");
  qn->add_option("--out", qnr.out, "CSV output")->required();
  qn->add_option("--svg", qnr.svg, "Optional SVG scatter");
  qn->add_option("--tol-scale", qnr.tol_scale, "Multiply all tolerances");

  SearchArgs search;
  auto* se = app.add_subcommand("search", "Worst-case search for ||P - Q||");
  se->add_option("--c", search.c, "Cap on ||V||/d")->required();
  se->add_option("--dims", search.dims, "Sizes of sigma and Sigma, e.g. 2,2")->delimiter(',')->expected(2);
  se->add_option("--trials", search.trials, "Random starts");
  se->add_option("--seed", search.seed, "Random seed");
  se->add_option("--neighborhood", search.neighborhood, "half or full")
      ->check(CLI::IsMember({"half", "full"}));
  se->add_flag("--seed-example", search.seed_example, "Start trial 0 from the matching built-in example");
  se->add_option("--threads", search.threads, "Worker threads");
  se->add_option("--out", search.out, "Write the result as JSON");

  VerifyArgs verify;
  auto* ve = app.add_subcommand("verify", "Check theorems on a file or on random problems");
  ve->add_option("path", verify.path, "Problem file");
  ve->add_option("--random", verify.random, "family:dlo-dhi:ratio[-ratio_hi]");
  ve->add_option("--theorem", verify.theorems, "Theorem id (repeatable, or 'all')");
  ve->add_option("--trials", verify.trials, "Number of random problems");
  ve->add_option("--seed", verify.seed, "Random seed");
  ve->add_option("--threads", verify.threads, "Worker threads");
  ve->add_option("--csv", verify.csv, "Write one row per report");
  ve->add_option("--tol-scale", verify.tol_scale, "Multiply all tolerances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*an) return cmd_analyze(analyze);
    if (*ex) return cmd_examples(examples);
    if (*qn) return cmd_qnr(qnr);
    if (*se) return cmd_search(search);
    if (*ve) return cmd_verify(verify);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
