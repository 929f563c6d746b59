#pragma once

#include <cstdint>
#include <vector>

#include "offwhite/cantor.hpp"

namespace offwhite::randomset {

struct BoxDimension {
  double estimate = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::vector<double> scales;
  std::vector<std::int64_t> counts;
};

/// Number of grid boxes [mε, (m+1)ε) meeting the sample.
std::int64_t box_count(const ClosedSetSample& s, double scale);

/// Least-squares slope of log N(ε) against log(1/ε) over ε = scale_hi·2^{-j} >= scale_lo.
BoxDimension box_dimension(const ClosedSetSample& s, double scale_lo, double scale_hi);

}  // namespace offwhite::randomset
