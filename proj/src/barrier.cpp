#include "offwhite/barrier.hpp"

#include <cmath>

#include "offwhite/error.hpp"

namespace offwhite::randomset {

double barrier_h(const BarrierPoint& p) {
  if (p.t <= 0.0) return 0.0;
  const double z = p.z;
  return std::exp(-z * z / (2.0 * p.t) + p.a * z * z * z / p.t + p.a * z) / std::sqrt(p.t);
}

BarrierResidual barrier_residual(double alpha, const std::vector<double>& zs, const std::vector<double>& ts,
                                 double c) {
  require(alpha != 0.0, "barrier_residual: alpha must be nonzero");
  require(c > 0.0 && c < 0.1, "barrier_residual: step factor must lie in (0, 0.1)");
  const double a = -alpha / 4.0;
  BarrierResidual out;
  for (double t : ts) {
    if (!(t > 0.0)) throw ParameterError("barrier_residual: grid contains t <= 0");
    const double hz = c * std::sqrt(t);
    const double ht = c * t;
    for (double z : zs) {
      const double h0 = barrier_h({z, t, a});
      const double hzz = (barrier_h({z + hz, t, a}) - 2.0 * h0 + barrier_h({z - hz, t, a})) / (hz * hz);
      const double htt = (barrier_h({z, t + ht, a}) - barrier_h({z, t - ht, a})) / (2.0 * ht);
      const double lh = 0.5 * hzz - (1.0 + alpha * z) * htt;
      const double v = std::sqrt(t) * std::abs(lh);
      ++out.points;
      if (v > out.sup) {
        out.sup = v;
        out.z_at = z;
        out.t_at = t;
      }
    }
  }
  return out;
}

BarrierResidual barrier_residual(double alpha, int nz, int nt, double c) {
  require(alpha != 0.0, "barrier_residual: alpha must be nonzero");
  require(nz >= 3 && nt >= 2, "barrier_residual: grid too small");
  const double zmax = 1.0 / std::abs(alpha);  // 1/(4|a|)
  std::vector<double> zs(static_cast<std::size_t>(nz));
  for (int i = 0; i < nz; ++i) zs[static_cast<std::size_t>(i)] = -zmax + 2.0 * zmax * i / (nz - 1);
  std::vector<double> ts(static_cast<std::size_t>(nt));
  for (int j = 0; j < nt; ++j) ts[static_cast<std::size_t>(j)] = 1e-4 * std::pow(1e4, static_cast<double>(j) / (nt - 1));
  return barrier_residual(alpha, zs, ts, c);
}

}  // namespace offwhite::randomset
