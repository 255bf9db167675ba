#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace specpert {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Interval&) const = default;
};

/// Finite union of disjoint real intervals, kept sorted and merged.
///
/// A set is either closed (every interval is [lo, hi]) or open (every
/// interval is (lo, hi)). Set algebra works on closures; the flag only
/// decides whether endpoints are members. Semi-infinite intervals use
/// +/- infinity as endpoints.
class SpectralSet {
 public:
  /// The empty (closed) set.
  SpectralSet() = default;

  static SpectralSet closed(std::vector<Interval> intervals);
  static SpectralSet open(std::vector<Interval> intervals);
  static SpectralSet points(std::span<const double> values);
  static SpectralSet point(double value);
  static SpectralSet interval(double lo, double hi);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  bool is_open() const noexcept { return open_; }
  bool empty() const noexcept { return intervals_.empty(); }
  std::size_t size() const noexcept { return intervals_.size(); }

  /// Lower/upper end of the closure. Throws DomainError when empty.
  double inf() const;
  double sup() const;

  bool contains(double x) const;
  /// Distance from x to the closure of the set.
  double distance_to(double x) const;
  /// Distance from x to the nearest finite endpoint that is *excluded* from
  /// the set. Infinite for closed sets.
  double open_boundary_distance(double x) const;
  /// Distance from x to the nearest finite endpoint of any interval.
  double boundary_distance(double x) const;

  SpectralSet closure() const;

  bool operator==(const SpectralSet&) const = default;

 private:
  SpectralSet(std::vector<Interval> intervals, bool open);

  std::vector<Interval> intervals_;
  bool open_ = false;
};

/// inf over pairs of points of the two closures.
double distance(const SpectralSet& s, const SpectralSet& t);

/// True when the closures share a point.
bool intersects(const SpectralSet& s, const SpectralSet& t);

/// True when the sets themselves share a point (endpoints honour open flags).
bool overlaps(const SpectralSet& s, const SpectralSet& t);

SpectralSet set_union(const SpectralSet& s, const SpectralSet& t);

/// Closed delta-neighborhood U_delta(S).
SpectralSet closed_neighborhood(const SpectralSet& s, double delta);

/// Open delta-neighborhood O_delta(S).
SpectralSet open_neighborhood(const SpectralSet& s, double delta);

SpectralSet convex_hull(const SpectralSet& s);

enum class SpectralCase { CaseI, CaseII, Subordinated };

struct CaseClassification {
  SpectralCase label = SpectralCase::CaseI;
  /// K(sigma) does not meet Sigma.
  bool hull_of_first_separated = false;
  /// K(Sigma) does not meet sigma.
  bool hull_of_second_separated = false;
  /// Meaningful for Subordinated only: sup sigma < inf Sigma.
  bool first_below = false;
};

/// Priority: Subordinated, then CaseII, then CaseI. Throws DomainError when
/// the two sets are at distance zero.
CaseClassification classify_case(const SpectralSet& sigma, const SpectralSet& Sigma);

std::string to_string(SpectralCase c);
SpectralCase spectral_case_from_string(const std::string& name);

/// Clusters sorted values: neighbours closer than `gap_threshold` share an
/// interval.
SpectralSet from_eigenvalues(std::span<const double> sorted_values, double gap_threshold);

/// 1e-6 times the spread of the values (or 1e-6 when they coincide).
double default_gap_threshold(std::span<const double> sorted_values);

}  // namespace specpert
