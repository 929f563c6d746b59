#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace offwhite::spectral {

enum class Kind { white, log_power, stretched_exp, custom };

std::string to_string(Kind kind);
Kind kind_from_string(const std::string& name);

/// Positive density w(λ) = exp(φ(λ)) on [0, ∞).
///
/// The built-in families follow their asymptotic formula for
/// λ >= join_point() = max(domain_floor, e²). Below the join point the density
/// is a C¹ quadratic blend (in w) over [join - h, join] that flattens into a
/// constant, so w stays strictly positive and continuously differentiable.
class SpectralDensity {
 public:
  using Fn = std::function<double(double)>;

  static SpectralDensity white();
  static SpectralDensity log_power(double alpha, double domain_floor = 1.0);
  static SpectralDensity stretched_exp(double alpha, double domain_floor = 1.0);
  /// `dphi` may be empty, in which case φ' is taken by central differences.
  static SpectralDensity custom(Fn phi, Fn dphi = {}, std::string label = "custom");

  double phi(double lambda) const;
  double dphi(double lambda) const;
  double w(double lambda) const;

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double domain_floor() const { return floor_; }
  double join_point() const { return join_; }
  /// Lower end of the blend; the density is constant on [0, blend_start()].
  double blend_start() const { return join_ - blend_width_; }
  const std::string& label() const { return label_; }

  /// {kind, alpha, domain_floor}. Custom densities cannot be serialized.
  nlohmann::json to_json() const;
  static SpectralDensity from_json(const nlohmann::json& j);

 private:
  SpectralDensity() = default;
  void init_blend();
  double tail_phi(double lambda) const;
  double tail_dphi(double lambda) const;

  Kind kind_ = Kind::white;
  double alpha_ = 0.0;
  double floor_ = 1.0;
  double join_ = 0.0;
  double blend_width_ = 0.0;
  double blend_base_ = 1.0;   // constant value below the blend
  double blend_slope_ = 0.0;  // w'(join)
  Fn custom_phi_;
  Fn custom_dphi_;
  std::string label_;
};

/// Family constructor with range checks; `alpha` is ignored for white.
SpectralDensity make_family(Kind kind, double alpha);

enum class Verdict { certified_offwhite, certified_not, inconclusive };
std::string to_string(Verdict v);

/// A truncated integral evaluated along a cutoff ladder
/// Λ₀ < Λ₁ < Λ₂ < Λ₃ with Λ_{k+1} = max(Λ_k², 2Λ_k).
struct LadderIntegral {
  double value = 0.0;       // at the requested cutoff
  double band = 0.0;        // near-diagonal part (zero for single integrals)
  std::vector<double> cutoffs;
  std::vector<double> values;
  bool divergent = false;
};

struct OffWhiteCertificate {
  LadderIntegral difference_integral;  // double integral of |φ(a)-φ(b)|²/|a-b|²
  LadderIntegral derivative_integral;   // ∫ |φ'(λ)|² λ dλ
  bool derivative_sufficient = false;
  bool weight_bounded = false;
  double sup_phi = 0.0;  // sup of φ over the sampled grid
  bool decays = false;
  bool demand_bounded = true;
  double truncation = 0.0;
  int grid = 0;
  Verdict verdict = Verdict::inconclusive;

  nlohmann::json to_json() const;
};

struct BoundedDecay {
  bool bounded = false;
  bool decays = false;
  double sup = 0.0;
  double tail = 0.0;
};

/// Off-white certificate over [0, cutoff] with `grid` quadrature cells.
OffWhiteCertificate check_offwhite(const SpectralDensity& d, double cutoff, int grid,
                                   bool demand_bounded = true);

/// Samples w on λ = 2^j·e² (j = 0, 1, ... while <= cutoff) plus the low band.
BoundedDecay check_bounded_decay(const SpectralDensity& d, double cutoff);

/// Divergence rule shared by the ladder integrals: increments along the ladder
/// must shrink by at least `factor` at every step.
bool ladder_diverges(const std::vector<double>& values, double factor = 1.2);

}  // namespace offwhite::spectral
