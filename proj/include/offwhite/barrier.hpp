#pragma once

#include <vector>

namespace offwhite::randomset {

/// Local coordinates z = y - 1/2, t = 1/2 - x, with a = -α/4.
struct BarrierPoint {
  double z = 0.0;
  double t = 0.0;
  double a = 0.0;
};

/// t^{-1/2} exp(-z²/2t + a z³/t + a z), and 0 for t <= 0.
double barrier_h(const BarrierPoint& p);

struct BarrierResidual {
  double sup = 0.0;  // sup √t |Lh|
  double z_at = 0.0;
  double t_at = 0.0;
  std::size_t points = 0;
};

/// Applies L = ½∂²/∂z² - (1 + αz)∂/∂t by central differences with steps
/// dz = c√t and dt = c·t at each grid point.
BarrierResidual barrier_residual(double alpha, const std::vector<double>& zs, const std::vector<double>& ts,
                                 double c);

/// Uniform z grid on |z| <= 1/(4|a|) with nz points and a logarithmic t grid on
/// [1e-4, 1] with nt points.
BarrierResidual barrier_residual(double alpha, int nz, int nt, double c);

}  // namespace offwhite::randomset
