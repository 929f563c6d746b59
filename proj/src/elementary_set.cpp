#include "offwhite/elementary_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "offwhite/error.hpp"

namespace offwhite::invariant {

namespace {

constexpr double kTol = ElementarySet::kTolerance;

std::vector<Interval> canonical(std::vector<Interval> v) {
  std::erase_if(v, [](const Interval& iv) { return iv.hi - iv.lo <= kTol; });
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  out.reserve(v.size());
  for (const auto& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi + kTol) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

}  // namespace

ElementarySet::ElementarySet(std::vector<Interval> intervals) {
  for (auto& iv : intervals) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo < -kTol || iv.hi > 1.0 + kTol) {
      throw ParameterError("ElementarySet: interval outside [0, 1]");
    }
    if (iv.lo > iv.hi) throw ParameterError("ElementarySet: interval with lo > hi");
    iv.lo = std::max(iv.lo, 0.0);
    iv.hi = std::min(iv.hi, 1.0);
  }
  intervals_ = canonical(std::move(intervals));
}

double ElementarySet::measure() const {
  double s = 0.0;
  for (const auto& iv : intervals_) s += iv.length();
  return std::min(s, 1.0);
}

bool ElementarySet::contains(double t) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                             [](double x, const Interval& iv) { return x < iv.hi; });
  return it != intervals_.end() && it->lo < t;
}

bool ElementarySet::covers(double lo, double hi) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), lo,
                             [](double x, const Interval& iv) { return x < iv.hi; });
  if (it == intervals_.end()) {
    // lo may sit on the last right endpoint
    if (intervals_.empty()) return false;
    it = std::prev(intervals_.end());
  }
  return it->lo <= lo + kTol && hi <= it->hi + kTol;
}

bool ElementarySet::intersects(double lo, double hi) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), lo + kTol,
                             [](double x, const Interval& iv) { return x < iv.hi; });
  return it != intervals_.end() && it->lo < hi - kTol;
}

bool ElementarySet::approx_equal(const ElementarySet& other, double tol) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (std::abs(intervals_[i].lo - other.intervals_[i].lo) > tol ||
        std::abs(intervals_[i].hi - other.intervals_[i].hi) > tol) {
      return false;
    }
  }
  return true;
}

std::string ElementarySet::to_string() const {
  if (intervals_.empty()) return "{}";
  std::string s;
  char buf[64];
  for (const auto& iv : intervals_) {
    if (!s.empty()) s += " u ";
    std::snprintf(buf, sizeof buf, "(%.12g,%.12g)", iv.lo, iv.hi);
    s += buf;
  }
  return s;
}

ElementarySet unite(const ElementarySet& a, const ElementarySet& b) {
  std::vector<Interval> v = a.intervals();
  v.insert(v.end(), b.intervals().begin(), b.intervals().end());
  return ElementarySet(std::move(v));
}

ElementarySet intersect(const ElementarySet& a, const ElementarySet& b) {
  std::vector<Interval> out;
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    const double lo = std::max(x[i].lo, y[j].lo);
    const double hi = std::min(x[i].hi, y[j].hi);
    if (hi > lo) out.push_back({lo, hi});
    if (x[i].hi < y[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return ElementarySet(std::move(out));
}

ElementarySet complement(const ElementarySet& a) {
  std::vector<Interval> out;
  double cursor = 0.0;
  for (const auto& iv : a.intervals()) {
    if (iv.lo > cursor) out.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < 1.0) out.push_back({cursor, 1.0});
  return ElementarySet(std::move(out));
}

ElementarySet neighborhood(const ElementarySet& a, double delta) {
  require(delta >= 0.0 && std::isfinite(delta), "neighborhood: delta must be >= 0");
  std::vector<Interval> out;
  out.reserve(a.size());
  for (const auto& iv : a.intervals()) {
    out.push_back({std::max(0.0, iv.lo - delta), std::min(1.0, iv.hi + delta)});
  }
  return ElementarySet(std::move(out));
}

ElementarySet make_equidistant(const EquidistantFamily& fam) {
  require(fam.n >= 1, "make_equidistant: n must be >= 1");
  require(fam.eps > 0.0 && fam.eps <= 1.0, "make_equidistant: eps must lie in (0, 1]");
  require(fam.n <= kMaxMaterialized, "make_equidistant: n too large to materialize");
  const double nd = static_cast<double>(fam.n);
  const double half = 0.5 * fam.eps / nd;
  if (2.0 * half <= 4.0 * kTol) {
    throw ParameterError("make_equidistant: interval width eps/n below representable width");
  }
  std::vector<Interval> v(static_cast<std::size_t>(fam.n));
  for (long long k = 0; k < fam.n; ++k) {
    const double c = (static_cast<double>(k) + 0.5) / nd;
    v[static_cast<std::size_t>(k)] = {c - half, c + half};
  }
  return ElementarySet(std::move(v));
}

double equidistant_neighborhood_measure(const EquidistantFamily& fam, double delta) {
  require(fam.n >= 1, "equidistant_neighborhood_measure: n must be >= 1");
  require(fam.eps > 0.0 && fam.eps <= 1.0, "equidistant_neighborhood_measure: eps must lie in (0, 1]");
  require(delta >= 0.0, "equidistant_neighborhood_measure: delta must be >= 0");
  return std::min(1.0, fam.eps + 2.0 * static_cast<double>(fam.n) * delta);
}

}  // namespace offwhite::invariant
