#include "offwhite/spectral_density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "offwhite/error.hpp"

namespace offwhite::spectral {

namespace {

constexpr double kE2 = 7.38905609893065;  // e²

struct Cell {
  double mid;
  double width;
};

// Uniform cells on [0, min(1, cutoff)] followed by geometric cells up to the
// cutoff. The geometric part resolves the slowly varying families over many
// decades with a modest cell count.
std::vector<Cell> make_cells(double cutoff, int n) {
  std::vector<Cell> cells;
  cells.reserve(static_cast<size_t>(n));
  const double knee = std::min(1.0, cutoff);
  const int n_lin = (cutoff <= 1.0) ? n : std::max(1, n / 8);
  const double h = knee / n_lin;
  for (int i = 0; i < n_lin; ++i) cells.push_back({(i + 0.5) * h, h});
  if (cutoff > 1.0) {
    const int n_geo = n - n_lin;
    const double ratio = std::pow(cutoff / knee, 1.0 / n_geo);
    double lo = knee;
    for (int i = 0; i < n_geo; ++i) {
      const double hi = (i + 1 == n_geo) ? cutoff : lo * ratio;
      cells.push_back({std::sqrt(lo * hi), hi - lo});
      lo = hi;
    }
  }
  return cells;
}

std::vector<double> ladder_cutoffs(double cutoff) {
  std::vector<double> out{cutoff};
  for (int k = 0; k < 3; ++k) {
    const double c = out.back();
    out.push_back(std::max(c * c, 2.0 * c));
  }
  return out;
}

void check_finite(double v, double lambda) {
  if (!std::isfinite(v)) {
    throw EvaluationError("non-finite log-density at lambda=" + std::to_string(lambda));
  }
}

double difference_integral_at(const SpectralDensity& d, double cutoff, int n, double* band_out) {
  const auto cells = make_cells(cutoff, n);
  std::vector<double> phi(cells.size());
  double band = 0.0;
  for (size_t i = 0; i < cells.size(); ++i) {
    phi[i] = d.phi(cells[i].mid);
    check_finite(phi[i], cells[i].mid);
    const double slope = d.dphi(cells[i].mid);
    check_finite(slope, cells[i].mid);
    band += slope * slope * cells[i].width * cells[i].width;
  }
  double off = 0.0;
  for (size_t i = 0; i < cells.size(); ++i) {
    double row = 0.0;
    for (size_t j = i + 1; j < cells.size(); ++j) {
      const double num = phi[i] - phi[j];
      const double den = cells[i].mid - cells[j].mid;
      row += (num * num) / (den * den) * cells[j].width;
    }
    off += row * cells[i].width;
  }
  if (band_out != nullptr) *band_out = band;
  return 2.0 * off + band;
}

double derivative_integral_at(const SpectralDensity& d, double cutoff, int n) {
  double sum = 0.0;
  for (const auto& c : make_cells(cutoff, 16 * n)) {
    const double s = d.dphi(c.mid);
    check_finite(s, c.mid);
    sum += s * s * c.mid * c.width;
  }
  return sum;
}

}  // namespace

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::white: return "white";
    case Kind::log_power: return "log_power";
    case Kind::stretched_exp: return "stretched_exp";
    case Kind::custom: return "custom";
  }
  return "custom";
}

Kind kind_from_string(const std::string& name) {
  if (name == "white") return Kind::white;
  if (name == "log_power") return Kind::log_power;
  if (name == "stretched_exp") return Kind::stretched_exp;
  if (name == "custom") return Kind::custom;
  throw ParameterError("unknown density kind '" + name + "'");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified_offwhite: return "certified_offwhite";
    case Verdict::certified_not: return "certified_not";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

SpectralDensity SpectralDensity::white() {
  SpectralDensity d;
  d.kind_ = Kind::white;
  d.label_ = "white";
  d.init_blend();
  return d;
}

SpectralDensity SpectralDensity::log_power(double alpha, double domain_floor) {
  require(std::isfinite(alpha), "log_power: alpha must be finite");
  require(domain_floor > 0.0 && std::isfinite(domain_floor), "log_power: domain_floor must be positive");
  SpectralDensity d;
  d.kind_ = Kind::log_power;
  d.alpha_ = alpha;
  d.floor_ = domain_floor;
  d.label_ = "log_power(" + std::to_string(alpha) + ")";
  d.init_blend();
  return d;
}

SpectralDensity SpectralDensity::stretched_exp(double alpha, double domain_floor) {
  require(alpha > 0.0 && alpha < 0.5, "stretched_exp: alpha must lie in (0, 1/2)");
  require(domain_floor > 0.0 && std::isfinite(domain_floor), "stretched_exp: domain_floor must be positive");
  SpectralDensity d;
  d.kind_ = Kind::stretched_exp;
  d.alpha_ = alpha;
  d.floor_ = domain_floor;
  d.label_ = "stretched_exp(" + std::to_string(alpha) + ")";
  d.init_blend();
  return d;
}

SpectralDensity SpectralDensity::custom(Fn phi, Fn dphi, std::string label) {
  require(static_cast<bool>(phi), "custom density needs a log-density function");
  SpectralDensity d;
  d.kind_ = Kind::custom;
  d.custom_phi_ = std::move(phi);
  d.custom_dphi_ = std::move(dphi);
  d.label_ = std::move(label);
  return d;
}

void SpectralDensity::init_blend() {
  join_ = std::max(floor_, kE2);
  const double w_join = std::exp(tail_phi(join_));
  blend_slope_ = w_join * tail_dphi(join_);
  blend_width_ = 0.5 * join_;
  if (blend_slope_ > 0.0) blend_width_ = std::min(blend_width_, w_join / blend_slope_);
  blend_base_ = w_join - 0.5 * blend_slope_ * blend_width_;
}

double SpectralDensity::tail_phi(double lambda) const {
  switch (kind_) {
    case Kind::white: return 0.0;
    case Kind::log_power: return alpha_ == 0.0 ? 0.0 : alpha_ * std::log(std::log(lambda));
    case Kind::stretched_exp: return -std::pow(std::log(lambda), alpha_);
    case Kind::custom: return custom_phi_(lambda);
  }
  return 0.0;
}

double SpectralDensity::tail_dphi(double lambda) const {
  switch (kind_) {
    case Kind::white: return 0.0;
    case Kind::log_power: return alpha_ / (lambda * std::log(lambda));
    case Kind::stretched_exp: return -alpha_ * std::pow(std::log(lambda), alpha_ - 1.0) / lambda;
    case Kind::custom: break;
  }
  return 0.0;
}

double SpectralDensity::phi(double lambda) const {
  lambda = std::abs(lambda);
  if (kind_ == Kind::custom) return custom_phi_(lambda);
  if (kind_ == Kind::white) return 0.0;
  if (lambda >= join_) return tail_phi(lambda);
  return std::log(w(lambda));
}

double SpectralDensity::dphi(double lambda) const {
  const double sign = lambda < 0.0 ? -1.0 : 1.0;
  lambda = std::abs(lambda);
  if (kind_ == Kind::custom) {
    if (custom_dphi_) return sign * custom_dphi_(lambda);
    const double h = 1e-6 * std::max(1.0, lambda);
    const double lo = std::max(0.0, lambda - h);
    return sign * (custom_phi_(lambda + h) - custom_phi_(lo)) / (lambda + h - lo);
  }
  if (kind_ == Kind::white) return 0.0;
  if (lambda >= join_) return sign * tail_dphi(lambda);
  const double start = blend_start();
  if (lambda <= start) return 0.0;
  const double wb = w(lambda);
  return sign * blend_slope_ * (lambda - start) / blend_width_ / wb;
}

double SpectralDensity::w(double lambda) const {
  lambda = std::abs(lambda);
  if (kind_ == Kind::custom) return std::exp(custom_phi_(lambda));
  if (kind_ == Kind::white) return 1.0;
  if (lambda >= join_) return std::exp(tail_phi(lambda));
  const double start = blend_start();
  if (lambda <= start) return blend_base_;
  const double u = lambda - start;
  return blend_base_ + 0.5 * blend_slope_ * u * u / blend_width_;
}

nlohmann::json SpectralDensity::to_json() const {
  if (kind_ == Kind::custom) throw ParameterError("custom densities are not serializable");
  return {{"kind", to_string(kind_)}, {"alpha", alpha_}, {"domain_floor", floor_}};
}

SpectralDensity SpectralDensity::from_json(const nlohmann::json& j) {
  for (const auto& [key, _] : j.items()) {
    if (key != "kind" && key != "alpha" && key != "domain_floor") {
      throw ParameterError("unknown density key '" + key + "'");
    }
  }
  const Kind kind = kind_from_string(j.at("kind").get<std::string>());
  const double alpha = j.value("alpha", 0.0);
  const double floor = j.value("domain_floor", 1.0);
  switch (kind) {
    case Kind::white: return white();
    case Kind::log_power: return log_power(alpha, floor);
    case Kind::stretched_exp: return stretched_exp(alpha, floor);
    case Kind::custom: break;
  }
  throw ParameterError("custom densities cannot be read from JSON");
}

SpectralDensity make_family(Kind kind, double alpha) {
  switch (kind) {
    case Kind::white: return SpectralDensity::white();
    case Kind::log_power: return SpectralDensity::log_power(alpha);
    case Kind::stretched_exp: return SpectralDensity::stretched_exp(alpha);
    case Kind::custom: break;
  }
  throw ParameterError("make_family: custom densities need SpectralDensity::custom");
}

bool ladder_diverges(const std::vector<double>& values, double factor) {
  if (values.size() < 3) return false;
  for (double v : values) {
    if (!std::isfinite(v)) return true;
  }
  const double scale = 1.0 + std::abs(values.back());
  for (size_t k = 2; k < values.size(); ++k) {
    const double prev = values[k - 1] - values[k - 2];
    const double next = values[k] - values[k - 1];
    if (std::abs(prev) <= 1e-12 * scale && std::abs(next) <= 1e-12 * scale) continue;
    if (next * factor > prev) return true;
  }
  return false;
}

BoundedDecay check_bounded_decay(const SpectralDensity& d, double cutoff) {
  require(cutoff > 0.0, "check_bounded_decay: cutoff must be positive");
  std::vector<double> low;
  const double knee = std::min(cutoff, kE2);
  for (int i = 0; i <= 64; ++i) low.push_back(d.phi(knee * i / 64.0));
  std::vector<double> tail;
  for (int j = 0; kE2 * std::ldexp(1.0, j) <= cutoff * (1.0 + 1e-12); ++j) {
    tail.push_back(d.phi(kE2 * std::ldexp(1.0, j)));
  }
  if (tail.empty()) tail.push_back(d.phi(cutoff));

  double sup = -INFINITY;
  for (double v : low) sup = std::max(sup, v);
  for (double v : tail) sup = std::max(sup, v);
  for (double v : low) check_finite(v, 0.0);

  const double reference = d.phi(kE2);
  const size_t m = std::min<size_t>(4, tail.size());
  bool rising = m >= 2;
  bool falling = m >= 2;
  for (size_t k = tail.size() - m + 1; k < tail.size(); ++k) {
    rising = rising && tail[k] > tail[k - 1];
    falling = falling && tail[k] < tail[k - 1];
  }

  BoundedDecay out;
  out.sup = std::exp(sup);
  out.tail = std::exp(tail.back());
  out.bounded = std::isfinite(sup) && sup <= reference + std::log(1e6) && !rising;
  out.decays = falling && tail.back() < sup + std::log(0.05);
  return out;
}

OffWhiteCertificate check_offwhite(const SpectralDensity& d, double cutoff, int grid,
                                   bool demand_bounded) {
  require(grid >= 64, "check_offwhite: grid must have at least 64 cells");
  require(cutoff > d.domain_floor(), "check_offwhite: cutoff must exceed the domain floor");

  OffWhiteCertificate cert;
  cert.truncation = cutoff;
  cert.grid = grid;
  cert.demand_bounded = demand_bounded;

  const auto cutoffs = ladder_cutoffs(cutoff);
  cert.difference_integral.cutoffs = cutoffs;
  cert.derivative_integral.cutoffs = cutoffs;
  for (size_t k = 0; k < cutoffs.size(); ++k) {
    double band = 0.0;
    cert.difference_integral.values.push_back(difference_integral_at(d, cutoffs[k], grid, &band));
    if (k == 0) cert.difference_integral.band = band;
    cert.derivative_integral.values.push_back(derivative_integral_at(d, cutoffs[k], grid));
  }
  cert.difference_integral.value = cert.difference_integral.values.front();
  cert.derivative_integral.value = cert.derivative_integral.values.front();
  cert.difference_integral.divergent = ladder_diverges(cert.difference_integral.values);
  cert.derivative_integral.divergent = ladder_diverges(cert.derivative_integral.values);
  cert.derivative_sufficient = !cert.derivative_integral.divergent;

  // Boundedness is judged in log space so that exp overflow reads as +inf.
  const BoundedDecay bd = check_bounded_decay(d, cutoff);
  cert.weight_bounded = bd.bounded;
  cert.decays = bd.decays;
  cert.sup_phi = std::log(bd.sup);

  if (demand_bounded && !cert.weight_bounded) {
    cert.verdict = cert.derivative_sufficient ? Verdict::inconclusive : Verdict::certified_not;
  } else if (cert.derivative_sufficient || !cert.difference_integral.divergent) {
    cert.verdict = Verdict::certified_offwhite;
  } else {
    cert.verdict = Verdict::certified_not;
  }
  return cert;
}

nlohmann::json OffWhiteCertificate::to_json() const {
  auto ladder = [](const LadderIntegral& li) {
    return nlohmann::json{{"value", li.value},     {"band", li.band},
                          {"cutoffs", li.cutoffs}, {"values", li.values},
                          {"divergent", li.divergent}};
  };
  return {{"difference_integral", ladder(difference_integral)},
          {"derivative_integral", ladder(derivative_integral)},
          {"derivative_sufficient", derivative_sufficient},
          {"weight_bounded", weight_bounded},
          {"sup_log_density", sup_phi},
          {"decays", decays},
          {"demand_bounded", demand_bounded},
          {"truncation", truncation},
          {"grid", grid},
          {"verdict", to_string(verdict)}};
}

}  // namespace offwhite::spectral
