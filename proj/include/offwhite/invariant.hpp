#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "offwhite/elementary_set.hpp"
#include "offwhite/grid_function.hpp"
#include "offwhite/nu_norm.hpp"
#include "offwhite/spectral_density.hpp"

namespace offwhite::invariant {

/// Weak monotonicity: a constant is both.
enum class Monotone { decreasing, increasing, none };

/// Positive rate function with declared shape. Declarations are checked by
/// verify_rate, never assumed.
struct RateFunction {
  std::function<double(double)> f;
  Monotone monotone = Monotone::none;
  bool lambda2_increasing = false;  // λ²f(λ) nondecreasing
  bool lambda_increasing = false;   // λ f(λ) nondecreasing
  std::string label;

  double operator()(double lambda) const { return f(lambda); }

  /// The density of the regularized log_power(-a) family, a >= 0.
  static RateFunction inverse_log_power(double a);
  static RateFunction constant(double c);
};

/// Checks every declared tag on a logarithmic grid over [lo, hi];
/// throws ContractError on the first violation.
void verify_rate(const RateFunction& r, double lo = 1.0, double hi = 1e16, int points = 400);

/// Spot check of f(2λ)/f(λ) → 1 at λ = 10^8, 10^12, 10^16.
void verify_slowly_varying(const RateFunction& r);

enum class Trend { to_zero, to_infinity, bounded_away, inconclusive };
std::string to_string(Trend t);

/// "→0": last value below 0.25 × max and the last five strictly decreasing.
/// "→∞": last value above 4 × min and the last five strictly increasing.
/// "bounded away": neither, with the last five all at least 0.25 × max and
/// not strictly decreasing.
Trend classify_trend(const std::vector<double>& values);

enum class Condition35 { satisfied, fails, inconclusive };
std::string to_string(Condition35 c);

struct SufficientRow {
  long long n = 0;
  double eps = 0.0;
  double delta = 0.0;
  double neighborhood_measure = 0.0;
  double ratio = 0.0;        // mes((E)_{+δ}) / β(1/δ)
  double scaled_rate = 0.0;  // (1/ε) β(n/ε)
};

struct SufficientReport {
  std::vector<SufficientRow> rows;
  Trend ratio_trend = Trend::inconclusive;
  Trend scaled_rate_trend = Trend::inconclusive;
  Condition35 verdict = Condition35::inconclusive;
};

/// `deltas` empty selects δ = ε/n for every index.
SufficientReport sufficient_check(const std::vector<EquidistantFamily>& fams,
                                  const RateFunction& beta, std::vector<double> deltas = {});

struct NecessaryRow {
  long long n = 0;
  double eps = 0.0;
  double value = 0.0;  // (1/ε) α(n/ε)
};

struct NecessaryReport {
  std::vector<NecessaryRow> rows;
  Trend trend = Trend::inconclusive;
  /// fails when the values tend to 0, inconclusive otherwise.
  Condition35 verdict = Condition35::inconclusive;
};

NecessaryReport necessary_check(const std::vector<EquidistantFamily>& fams, const RateFunction& alpha);

struct SeparationWitness {
  std::vector<int> ks;
  std::vector<double> lambda_k;
  std::vector<long long> n_k;
  std::vector<double> eps_k;
  std::vector<double> delta_k;
  std::vector<double> diag_alpha;
  std::vector<double> diag_beta;

  std::vector<EquidistantFamily> families() const;
  /// Columns k,lambda_k,n_k,eps_k,diag_alpha,diag_beta.
  void write_csv(const std::filesystem::path& path) const;
  nlohmann::json to_json() const;
};

/// λ_k = e^k for k = 1..count, n_k = ⌈λ_k·√(α(λ_k)β(λ_k))⌉, ε_k = n_k/λ_k.
/// Indices with ε_k > 1 are skipped.
/// Throws ContractError unless the last five diagonal values move strictly
/// toward 0 (alpha) and upward (beta).
SeparationWitness separation_witness(const RateFunction& alpha, const RateFunction& beta, int count);

/// Step function on [t0, t1] whose cell values are the covered fraction of
/// each cell, exact for sets whose endpoints fall on cell edges.
GridFunction indicator(const ElementarySet& e, double t0, double t1, std::size_t n, double scale = 1.0);

struct RestrictedSolve {
  double value = 0.0;
  std::size_t cells = 0;  // grid cells used
  double ridge = 0.0;     // added to the diagonal
};

/// sup |⟨f̂, ĝ⟩| over grid step functions f supported in e with ‖f‖_ν <= 1.
RestrictedSolve weak_sup_pairing(const ElementarySet& e, const GridFunction& g,
                                 const spectral::SpectralDensity& d,
                                 fourier::NormMode mode = fourier::NormMode::symmetric_energy);

/// ν-distance from f to grid step functions supported in [0, 1] \ e.
RestrictedSolve projection_defect(const ElementarySet& e, const GridFunction& f,
                                  const spectral::SpectralDensity& d,
                                  fourier::NormMode mode = fourier::NormMode::symmetric_energy);

}  // namespace offwhite::invariant
