#include "offwhite/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "offwhite/error.hpp"

namespace offwhite::randomset {

void ClosedSetSample::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open " + path.string());
  out << "lo,hi\n";
  char buf[80];
  for (const auto& iv : intervals) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", iv.lo, iv.hi);
    out << buf;
  }
}

double CantorSpec::dimension() const { return std::log(2.0) / std::log(1.0 / ratio); }

double CantorSpec::cover_sum() const { return std::pow(2.0 * std::sqrt(ratio), depth); }

double CantorSpec::finest_length() const { return std::pow(ratio, depth); }

nlohmann::json CantorSpec::to_json() const {
  return {{"ratio", ratio}, {"depth", depth}, {"symmetric", symmetric}};
}

CantorSpec CantorSpec::from_json(const nlohmann::json& j) {
  CantorSpec s;
  for (const auto& [key, value] : j.items()) {
    if (key == "ratio") {
      s.ratio = value.get<double>();
    } else if (key == "depth") {
      s.depth = value.get<int>();
    } else if (key == "symmetric") {
      s.symmetric = value.get<bool>();
    } else {
      throw ParameterError("cantor spec: unknown key '" + key + "'");
    }
  }
  validate(s);
  return s;
}

void validate(const CantorSpec& spec) {
  require(spec.ratio > 0.0 && spec.ratio < 0.5, "cantor: ratio must lie in (0, 1/2)");
  require(spec.depth >= 0 && spec.depth <= 40, "cantor: depth must lie in [0, 40]");
}

CantorSet::CantorSet(const CantorSpec& spec) : spec_(spec) { validate(spec_); }

CantorSet CantorSet::none() {
  CantorSet s;
  s.empty_ = true;
  return s;
}

CantorSet CantorSet::full() {
  CantorSet s;
  s.full_ = true;
  s.spec_.depth = 0;
  return s;
}

void CantorSet::descend(double a, double len, int level, double lo, double hi, double pad,
                        std::vector<ClosedInterval>& out) const {
  if (a + len < lo - pad || a > hi + pad) return;
  if (level == spec_.depth) {
    out.push_back({a - pad, a + len + pad});
    return;
  }
  const double child = len * spec_.ratio;
  descend(a, child, level + 1, lo, hi, pad, out);
  const double right = spec_.symmetric ? a + len - child : a + 0.5 * len;
  descend(right, child, level + 1, lo, hi, pad, out);
}

void CantorSet::dilated_overlaps(double lo, double hi, double pad, std::vector<ClosedInterval>& out) const {
  if (empty_) return;
  descend(0.0, 1.0, 0, lo, hi, pad, out);
}

double CantorSet::distance(double x) const {
  if (empty_) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  nearest(0.0, 1.0, 0, x, best);
  return best;
}

void CantorSet::nearest(double a, double len, int level, double x, double& best) const {
  const double bound = x < a ? a - x : (x > a + len ? x - a - len : 0.0);
  if (bound >= best) return;
  if (level == spec_.depth) {
    best = bound;
    return;
  }
  const double child = len * spec_.ratio;
  const double right = spec_.symmetric ? a + len - child : a + 0.5 * len;
  if (x < 0.5 * (a + child + right)) {
    nearest(a, child, level + 1, x, best);
    nearest(right, child, level + 1, x, best);
  } else {
    nearest(right, child, level + 1, x, best);
    nearest(a, child, level + 1, x, best);
  }
}

ClosedSetSample build_cantor(const CantorSpec& spec) {
  validate(spec);
  require(spec.depth <= 24, "build_cantor: depth above 24 cannot be materialized");
  ClosedSetSample s;
  s.resolution = spec.finest_length();
  s.total_time = 1.0;
  CantorSet(spec).dilated_overlaps(0.0, 1.0, 0.0, s.intervals);
  return s;
}

}  // namespace offwhite::randomset
