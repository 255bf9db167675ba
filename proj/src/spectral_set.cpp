#include "specpert/spectral_set.hpp"

#include <algorithm>
#include <cmath>

#include "specpert/errors.hpp"

namespace specpert {

namespace {

std::vector<Interval> normalize(std::vector<Interval> in, bool open) {
  for (const auto& iv : in) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi))
      throw DomainError("interval endpoint is NaN");
    if (iv.lo > iv.hi)
      throw DomainError("interval with lo > hi");
    if (iv.lo == kInfinity || iv.hi == -kInfinity)
      throw DomainError("interval lies entirely at infinity");
  }
  if (open) {
    // (a, a) is empty.
    std::erase_if(in, [](const Interval& iv) { return iv.lo == iv.hi; });
  }
  std::sort(in.begin(), in.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  std::vector<Interval> out;
  for (const auto& iv : in) {
    if (!out.empty()) {
      auto& last = out.back();
      // Touching open intervals keep their shared endpoint excluded.
      const bool merge = open ? iv.lo < last.hi : iv.lo <= last.hi;
      if (merge) {
        last.hi = std::max(last.hi, iv.hi);
        continue;
      }
    }
    out.push_back(iv);
  }
  return out;
}

double interval_distance(const Interval& a, const Interval& b) {
  return std::max({0.0, a.lo - b.hi, b.lo - a.hi});
}

bool in_interval(double x, const Interval& iv, bool open) {
  return open ? (iv.lo < x && x < iv.hi) : (iv.lo <= x && x <= iv.hi);
}

void require_nonempty(const SpectralSet& s, const char* what) {
  if (s.empty()) throw DomainError(std::string(what) + ": empty set");
}

}  // namespace

SpectralSet::SpectralSet(std::vector<Interval> intervals, bool open)
    : intervals_(normalize(std::move(intervals), open)), open_(open) {}

SpectralSet SpectralSet::closed(std::vector<Interval> intervals) {
  return SpectralSet(std::move(intervals), false);
}

SpectralSet SpectralSet::open(std::vector<Interval> intervals) {
  return SpectralSet(std::move(intervals), true);
}

SpectralSet SpectralSet::points(std::span<const double> values) {
  std::vector<Interval> ivs;
  ivs.reserve(values.size());
  for (double v : values) ivs.push_back({v, v});
  return closed(std::move(ivs));
}

SpectralSet SpectralSet::point(double value) { return closed({{value, value}}); }

SpectralSet SpectralSet::interval(double lo, double hi) { return closed({{lo, hi}}); }

double SpectralSet::inf() const {
  require_nonempty(*this, "inf");
  return intervals_.front().lo;
}

double SpectralSet::sup() const {
  require_nonempty(*this, "sup");
  return intervals_.back().hi;
}

bool SpectralSet::contains(double x) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const Interval& iv) { return in_interval(x, iv, open_); });
}

double SpectralSet::distance_to(double x) const {
  double best = kInfinity;
  for (const auto& iv : intervals_) best = std::min(best, interval_distance(iv, {x, x}));
  return best;
}

double SpectralSet::boundary_distance(double x) const {
  double best = kInfinity;
  for (const auto& iv : intervals_) {
    if (std::isfinite(iv.lo)) best = std::min(best, std::abs(x - iv.lo));
    if (std::isfinite(iv.hi)) best = std::min(best, std::abs(x - iv.hi));
  }
  return best;
}

double SpectralSet::open_boundary_distance(double x) const {
  return open_ ? boundary_distance(x) : kInfinity;
}

SpectralSet SpectralSet::closure() const { return closed(intervals_); }

double distance(const SpectralSet& s, const SpectralSet& t) {
  require_nonempty(s, "distance");
  require_nonempty(t, "distance");
  double best = kInfinity;
  for (const auto& a : s.intervals())
    for (const auto& b : t.intervals()) best = std::min(best, interval_distance(a, b));
  return best;
}

bool intersects(const SpectralSet& s, const SpectralSet& t) {
  if (s.empty() || t.empty()) return false;
  return distance(s, t) == 0.0;
}

bool overlaps(const SpectralSet& s, const SpectralSet& t) {
  for (const auto& a : s.intervals()) {
    for (const auto& b : t.intervals()) {
      const double lo = std::max(a.lo, b.lo);
      const double hi = std::min(a.hi, b.hi);
      if (lo < hi) return true;
      if (lo == hi && in_interval(lo, a, s.is_open()) && in_interval(lo, b, t.is_open())) return true;
    }
  }
  return false;
}

SpectralSet set_union(const SpectralSet& s, const SpectralSet& t) {
  std::vector<Interval> all = s.intervals();
  all.insert(all.end(), t.intervals().begin(), t.intervals().end());
  return SpectralSet::closed(std::move(all));
}

SpectralSet closed_neighborhood(const SpectralSet& s, double delta) {
  if (!(delta >= 0.0)) throw DomainError("closed_neighborhood: negative radius");
  std::vector<Interval> grown;
  grown.reserve(s.size());
  for (const auto& iv : s.intervals()) grown.push_back({iv.lo - delta, iv.hi + delta});
  return SpectralSet::closed(std::move(grown));
}

SpectralSet open_neighborhood(const SpectralSet& s, double delta) {
  if (!(delta > 0.0)) throw DomainError("open_neighborhood: radius must be positive");
  std::vector<Interval> grown;
  grown.reserve(s.size());
  for (const auto& iv : s.intervals()) grown.push_back({iv.lo - delta, iv.hi + delta});
  return SpectralSet::open(std::move(grown));
}

SpectralSet convex_hull(const SpectralSet& s) {
  require_nonempty(s, "convex_hull");
  return SpectralSet::interval(s.inf(), s.sup());
}

CaseClassification classify_case(const SpectralSet& sigma, const SpectralSet& Sigma) {
  if (distance(sigma, Sigma) <= 0.0)
    throw DomainError("classify_case: sets are not separated");

  CaseClassification out;
  out.hull_of_first_separated = !intersects(convex_hull(sigma), Sigma);
  out.hull_of_second_separated = !intersects(convex_hull(Sigma), sigma);

  if (sigma.sup() < Sigma.inf()) {
    out.label = SpectralCase::Subordinated;
    out.first_below = true;
  } else if (Sigma.sup() < sigma.inf()) {
    out.label = SpectralCase::Subordinated;
    out.first_below = false;
  } else if (out.hull_of_first_separated || out.hull_of_second_separated) {
    out.label = SpectralCase::CaseII;
  } else {
    out.label = SpectralCase::CaseI;
  }
  return out;
}

std::string to_string(SpectralCase c) {
  switch (c) {
    case SpectralCase::CaseI: return "CASE_I";
    case SpectralCase::CaseII: return "CASE_II";
    case SpectralCase::Subordinated: return "SUBORDINATED";
  }
  return "?";
}

SpectralCase spectral_case_from_string(const std::string& name) {
  if (name == "CASE_I") return SpectralCase::CaseI;
  if (name == "CASE_II") return SpectralCase::CaseII;
  if (name == "SUBORDINATED") return SpectralCase::Subordinated;
  throw DomainError("unknown case label '" + name + "'");
}

SpectralSet from_eigenvalues(std::span<const double> sorted_values, double gap_threshold) {
  std::vector<Interval> ivs;
  for (double v : sorted_values) {
    if (!ivs.empty() && v - ivs.back().hi < gap_threshold) {
      ivs.back().hi = std::max(ivs.back().hi, v);
    } else {
      ivs.push_back({v, v});
    }
  }
  return SpectralSet::closed(std::move(ivs));
}

double default_gap_threshold(std::span<const double> sorted_values) {
  if (sorted_values.empty()) return 1e-6;
  const double spread = sorted_values.back() - sorted_values.front();
  return spread > 0.0 ? 1e-6 * spread : 1e-6;
}

}  // namespace specpert
