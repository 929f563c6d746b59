#pragma once

#include <string>
#include <vector>

namespace offwhite::invariant {

/// Open interval (lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Finite union of disjoint open subintervals of [0, 1], kept canonical:
/// sorted, nonempty, and with touching intervals merged (tolerance 1e-12).
class ElementarySet {
 public:
  static constexpr double kTolerance = 1e-12;

  ElementarySet() = default;
  explicit ElementarySet(std::vector<Interval> intervals);

  static ElementarySet full() { return ElementarySet({{0.0, 1.0}}); }

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  double measure() const;
  bool contains(double t) const;
  /// True when the closed segment [lo, hi] lies in the closure of the set.
  bool covers(double lo, double hi) const;
  bool intersects(double lo, double hi) const;

  /// Same canonical intervals up to the merge tolerance.
  bool approx_equal(const ElementarySet& other, double tol = kTolerance) const;
  std::string to_string() const;

 private:
  std::vector<Interval> intervals_;
};

ElementarySet unite(const ElementarySet& a, const ElementarySet& b);
ElementarySet intersect(const ElementarySet& a, const ElementarySet& b);
/// Complement within [0, 1], modulo finite sets.
ElementarySet complement(const ElementarySet& a);
/// δ-neighbourhood clipped to [0, 1].
ElementarySet neighborhood(const ElementarySet& a, double delta);
inline double measure(const ElementarySet& a) { return a.measure(); }

/// n intervals of length eps/n centred at (k + 1/2)/n.
struct EquidistantFamily {
  long long n = 1;
  double eps = 1.0;
};

/// Largest n that make_equidistant will materialize.
inline constexpr long long kMaxMaterialized = 1LL << 22;

ElementarySet make_equidistant(const EquidistantFamily& fam);

/// Exact measure of the δ-neighbourhood of the family, min(1, eps + 2nδ).
/// Valid for any n, including ones too large to materialize.
double equidistant_neighborhood_measure(const EquidistantFamily& fam, double delta);

}  // namespace offwhite::invariant
