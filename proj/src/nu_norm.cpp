#include "offwhite/nu_norm.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "offwhite/error.hpp"

namespace offwhite::fourier {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInvSqrtTwoPi = 1.0 / std::sqrt(kTwoPi);

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

}  // namespace

std::vector<std::complex<double>> real_dft(std::span<const double> x, std::size_t length) {
  require(length >= x.size() && length >= 2, "real_dft: length shorter than input");
  double* in = fftw_alloc_real(length);
  fftw_complex* out = fftw_alloc_complex(length / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(length), in, out, FFTW_ESTIMATE);
  }
  std::copy(x.begin(), x.end(), in);
  std::fill(in + x.size(), in + length, 0.0);
  fftw_execute(plan);
  std::vector<std::complex<double>> result(length / 2 + 1);
  for (std::size_t k = 0; k < result.size(); ++k) result[k] = {out[k][0], out[k][1]};
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return result;
}

double FrequencySpectrum::two_sided_energy() const {
  double s = 0.0;
  for (std::size_t k = 0; k < lambdas.size(); ++k) s += multiplicity[k] * magnitudes_sq[k];
  return s * dlambda;
}

FrequencySpectrum fourier(const GridFunction& f, Interpolation interp, int pad) {
  require(pad >= 1, "fourier: pad must be >= 1");
  const std::size_t length = f.size() * static_cast<std::size_t>(pad);
  const auto dft = real_dft(f.values(), length);
  const double dt = f.dt();
  FrequencySpectrum s;
  s.convention = interp;
  s.dlambda = kTwoPi / (static_cast<double>(length) * dt);
  s.lambdas.resize(dft.size());
  s.magnitudes_sq.resize(dft.size());
  s.multiplicity.resize(dft.size());
  const double scale = dt * dt / kTwoPi;
  for (std::size_t k = 0; k < dft.size(); ++k) {
    const double lambda = static_cast<double>(k) * s.dlambda;
    double m = scale * std::norm(dft[k]);
    if (interp == Interpolation::piecewise_constant) {
      const double c = sinc(0.5 * lambda * dt);
      m *= c * c;
    }
    s.lambdas[k] = lambda;
    s.magnitudes_sq[k] = m;
    s.multiplicity[k] = (k == 0 || k == length / 2) ? 1.0 : 2.0;
  }
  return s;
}

double fhat_comb_closed_form(long long n, double eps, double lambda) {
  require(n >= 1, "fhat_comb_closed_form: n must be >= 1");
  require(eps > 0.0 && eps <= 1.0, "fhat_comb_closed_form: eps must lie in (0, 1]");
  lambda = std::abs(lambda);
  const double nd = static_cast<double>(n);
  // single interval of width ε/n, normalised by 1/ε: (2/(ελ)) |sin(λε/2n)|
  const double single = (1.0 / nd) * std::abs(sinc(0.5 * lambda * eps / nd));
  const double denom = std::sin(0.5 * lambda / nd);
  double comb;
  if (std::abs(denom) < 1e-12) {
    comb = nd;
  } else {
    comb = std::abs(std::sin(0.5 * lambda) / denom);
  }
  return kInvSqrtTwoPi * single * comb;
}

NuNormPlan::NuNormPlan(std::size_t n_samples, double dt, const spectral::SpectralDensity& d,
                       NormMode mode, int pad, int aliases)
    : n_(n_samples), dt_(dt), mode_(mode) {
  require(is_power_of_two(n_samples) && n_samples >= 2, "NuNormPlan: sample count must be a power of two");
  require(dt > 0.0, "NuNormPlan: dt must be positive");
  require(pad >= 2 && aliases >= 1, "NuNormPlan: pad >= 2 and aliases >= 1 required");
  length_ = n_ * static_cast<std::size_t>(pad);
  const double omega = kTwoPi / dt_;
  const double w0 = d.w(0.0);
  if (!std::isfinite(w0) || w0 <= 0.0) throw EvaluationError("NuNormPlan: density not positive at 0");
  weight_.resize(length_ / 2 + 1);
  const double amp = 4.0 / kTwoPi;
  for (std::size_t k = 0; k < weight_.size(); ++k) {
    const double lambda = static_cast<double>(k) * omega / static_cast<double>(length_);
    const double s = std::sin(0.5 * lambda * dt_);
    const double s2 = s * s;
    double g = 0.0;
    for (int a = -aliases; a <= aliases; ++a) {
      const double mu = lambda + a * omega;
      if (std::abs(mu) * dt_ < 1e-8) {
        g += w0 * dt_ * dt_ / kTwoPi;
      } else {
        g += d.w(mu) * amp * s2 / (mu * mu);
      }
    }
    const double up = lambda + (aliases + 1) * omega;
    const double down = (aliases + 1) * omega - lambda;
    const double tail = amp * s2 *
                        (d.w(up) / (omega * (lambda + (aliases + 0.5) * omega)) +
                         d.w(down) / (omega * ((aliases + 0.5) * omega - lambda)));
    if (!std::isfinite(g) || !std::isfinite(tail)) {
      throw EvaluationError("NuNormPlan: density evaluation failed");
    }
    weight_[k] = g + tail;
    if (weight_[k] > 0.0) tail_fraction_ = std::max(tail_fraction_, tail / weight_[k]);
  }
}

NuNormPlan NuNormPlan::for_grid(const GridFunction& f, const spectral::SpectralDensity& d,
                                NormMode mode) {
  return NuNormPlan(f.size(), f.dt(), d, mode);
}

double NuNormPlan::norm_sq(const GridFunction& f) const {
  require(f.size() == n_ && std::abs(f.dt() - dt_) <= 1e-12 * dt_, "NuNormPlan: grid mismatch");
  const auto dft = real_dft(f.values(), length_);
  double sum = 0.0;
  for (std::size_t k = 0; k < dft.size(); ++k) {
    const double mult = (k == 0 || k == length_ / 2) ? 1.0 : 2.0;
    sum += mult * weight_[k] * std::norm(dft[k]);
  }
  const double omega = kTwoPi / dt_;
  double out = 0.5 * omega / static_cast<double>(length_) * sum;
  if (mode_ == NormMode::symmetric_energy) out *= 2.0;
  return out;
}

double NuNormPlan::norm(const GridFunction& f) const { return std::sqrt(std::max(0.0, norm_sq(f))); }

std::vector<double> NuNormPlan::gram_row() const {
  std::vector<double> full(length_);
  for (std::size_t k = 0; k < weight_.size(); ++k) {
    full[k] = weight_[k];
    if (k > 0 && k < length_ - k) full[length_ - k] = weight_[k];
  }
  const auto dft = real_dft(full, length_);
  const double omega = kTwoPi / dt_;
  double scale = 0.5 * omega / static_cast<double>(length_);
  if (mode_ == NormMode::symmetric_energy) scale *= 2.0;
  std::vector<double> row(n_);
  for (std::size_t m = 0; m < n_; ++m) row[m] = scale * dft[m].real();
  return row;
}

double nu_norm_sq(const GridFunction& f, const spectral::SpectralDensity& d, NormMode mode) {
  return NuNormPlan::for_grid(f, d, mode).norm_sq(f);
}

double nu_norm(const GridFunction& f, const spectral::SpectralDensity& d, NormMode mode) {
  return std::sqrt(std::max(0.0, nu_norm_sq(f, d, mode)));
}

GridFunction sign_flip(const GridFunction& f, int n) {
  require(n >= 1, "sign_flip: n must be >= 1");
  // period 2/n must span at least 16 cells
  if (f.dt() * 8.0 * n > 1.0 + 1e-12) {
    throw ParameterError("sign_flip: grid does not resolve n=" + std::to_string(n));
  }
  GridFunction out = f;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double s = std::sin(std::numbers::pi * n * f.midpoint(i));
    if (s < 0.0) out[i] = -f[i];
  }
  return out;
}

std::vector<FlipDecayRow> flip_decay_experiment(const GridFunction& f,
                                                const spectral::SpectralDensity& d,
                                                const std::vector<int>& ns, NormMode mode) {
  for (std::size_t i = 1; i < ns.size(); ++i) {
    require(ns[i] > ns[i - 1], "flip_decay_experiment: ns must be increasing");
  }
  const auto plan = NuNormPlan::for_grid(f, d, mode);
  std::vector<FlipDecayRow> rows;
  rows.reserve(ns.size());
  for (int n : ns) {
    const double sq = plan.norm_sq(sign_flip(f, n));
    rows.push_back({n, std::sqrt(std::max(0.0, sq)), sq});
  }
  return rows;
}

std::string to_string(NormMode mode) {
  return mode == NormMode::one_sided ? "one_sided" : "symmetric_energy";
}

}  // namespace offwhite::fourier
