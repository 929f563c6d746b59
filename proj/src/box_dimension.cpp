#include "offwhite/box_dimension.hpp"

#include <cmath>

#include "offwhite/error.hpp"

namespace offwhite::randomset {

std::int64_t box_count(const ClosedSetSample& s, double scale) {
  require(scale > 0.0, "box_count: scale must be positive");
  std::int64_t count = 0;
  std::int64_t last = INT64_MIN;
  for (const auto& iv : s.intervals) {
    auto a = static_cast<std::int64_t>(std::floor(iv.lo / scale));
    const auto b = static_cast<std::int64_t>(std::floor(iv.hi / scale));
    if (a <= last) a = last + 1;
    if (b >= a) {
      count += b - a + 1;
      last = b;
    }
  }
  return count;
}

BoxDimension box_dimension(const ClosedSetSample& s, double scale_lo, double scale_hi) {
  require(scale_lo > 0.0 && scale_lo < scale_hi, "box_dimension: need 0 < scale_lo < scale_hi");
  require(!s.intervals.empty(), "box_dimension: empty sample");
  BoxDimension out;
  for (double e = scale_hi; e >= scale_lo * (1.0 - 1e-12); e *= 0.5) {
    out.scales.push_back(e);
    out.counts.push_back(box_count(s, e));
  }
  if (out.scales.size() < 4) throw ParameterError("box_dimension: fewer than 4 usable scales");
  const auto n = static_cast<double>(out.scales.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < out.scales.size(); ++i) {
    const double x = -std::log(out.scales[i]);
    const double y = std::log(static_cast<double>(out.counts[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.estimate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.intercept = (sy - out.estimate * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < out.scales.size(); ++i) {
    const double r = std::log(static_cast<double>(out.counts[i])) -
                     (out.intercept - out.estimate * std::log(out.scales[i]));
    ss += r * r;
  }
  out.residual_rms = std::sqrt(ss / n);
  return out;
}

}  // namespace offwhite::randomset
