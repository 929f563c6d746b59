#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "offwhite/grid_function.hpp"
#include "offwhite/spectral_density.hpp"

namespace offwhite::fourier {

/// Forward real-to-complex DFT, D_k = Σ_j x_j e^{-2πi jk/K}, k = 0..K/2.
/// Input is zero-padded to `length`.
std::vector<std::complex<double>> real_dft(std::span<const double> x, std::size_t length);

enum class Interpolation {
  sampled,            // discrete unitary transform of the samples
  piecewise_constant  // exact transform of the step function the samples define
};

/// One-sided spectrum of the unitary transform f̂(λ) = (2π)^{-1/2} ∫ f(t) e^{-iλt} dt.
struct FrequencySpectrum {
  std::vector<double> lambdas;
  std::vector<double> magnitudes_sq;
  /// Multiplicity of each bin in the two-sided grid (1 at DC and Nyquist, 2 otherwise).
  std::vector<double> multiplicity;
  double dlambda = 0.0;
  Interpolation convention = Interpolation::sampled;

  /// Σ multiplicity·|f̂|²·Δλ, the two-sided energy.
  double two_sided_energy() const;
};

/// Spectrum on λ_k = 2πk / (pad·(t1 - t0)), k = 0..pad·N/2.
FrequencySpectrum fourier(const GridFunction& f, Interpolation interp = Interpolation::sampled,
                          int pad = 1);

/// Closed-form |f̂| of (1/ε)·1_E for the equidistant comb of n intervals with
/// total length ε, centred at (k + 1/2)/n.
double fhat_comb_closed_form(long long n, double eps, double lambda);

enum class NormMode {
  one_sided,       // ∫₀^∞ |f̂|² w dλ
  symmetric_energy // 2 ∫₀^∞ |f̂|² w dλ, which is ‖f‖²_{L2} for the white density
};

/// Precomputed spectral weight for one grid geometry and one density.
///
/// Grid functions are read as step functions. Their transform is S(λ)·D(λ)
/// with D periodic of period Ω = 2π/Δt, so the ν-weighted energy folds to one
/// period against G(λ) = Σ_a w(|λ + aΩ|)·|S(λ + aΩ)|². The plan holds G on
/// pad·N points, summing 2·aliases+1 bands exactly and the remainder by an
/// integral estimate. Immutable after construction.
class NuNormPlan {
 public:
  NuNormPlan(std::size_t n_samples, double dt, const spectral::SpectralDensity& d,
             NormMode mode = NormMode::symmetric_energy, int pad = 4, int aliases = 32);

  /// Plan matching the grid of `f`.
  static NuNormPlan for_grid(const GridFunction& f, const spectral::SpectralDensity& d,
                             NormMode mode = NormMode::symmetric_energy);

  double norm_sq(const GridFunction& f) const;
  double norm(const GridFunction& f) const;

  /// Toeplitz row r(m) = ⟨1_cell0, 1_cellm⟩_ν for m = 0..n_samples-1, so that
  /// ‖Σ c_i 1_cell_i‖²_ν = Σ c_i c_j r(|i-j|).
  std::vector<double> gram_row() const;

  /// Share of G carried by the analytic alias tail, max over the frequency grid.
  double tail_fraction() const { return tail_fraction_; }
  std::size_t n_samples() const { return n_; }
  double dt() const { return dt_; }
  NormMode mode() const { return mode_; }

 private:
  std::size_t n_;
  double dt_;
  NormMode mode_;
  std::size_t length_;  // pad·n
  std::vector<double> weight_;  // G_k for k = 0..length/2
  double tail_fraction_ = 0.0;
};

double nu_norm_sq(const GridFunction& f, const spectral::SpectralDensity& d,
                  NormMode mode = NormMode::symmetric_energy);
double nu_norm(const GridFunction& f, const spectral::SpectralDensity& d,
               NormMode mode = NormMode::symmetric_energy);

/// f(t)·sgn sin(πnt) with sgn(0) = +1, evaluated at cell midpoints.
/// Requires at least 16 cells per period 2/n.
GridFunction sign_flip(const GridFunction& f, int n);

struct FlipDecayRow {
  int n = 0;
  double norm = 0.0;
  double norm_sq = 0.0;
};

std::vector<FlipDecayRow> flip_decay_experiment(const GridFunction& f,
                                                const spectral::SpectralDensity& d,
                                                const std::vector<int>& ns,
                                                NormMode mode = NormMode::symmetric_energy);

std::string to_string(NormMode mode);

}  // namespace offwhite::fourier
