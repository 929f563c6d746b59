#include "offwhite/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <Eigen/Dense>

#include "offwhite/error.hpp"

namespace offwhite::invariant {

namespace {

bool rising(double a, double b) { return b >= a - 1e-12 * std::max(std::abs(a), std::abs(b)); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Eigen::MatrixXd restricted_gram(const std::vector<double>& row, const std::vector<std::size_t>& idx) {
  const auto m = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto a = idx[static_cast<std::size_t>(i)];
      const auto b = idx[static_cast<std::size_t>(j)];
      g(i, j) = g(j, i) = row[a > b ? a - b : b - a];
    }
  }
  return g;
}

// y^T (G + ridge I)^{-1} y
double solve_quadratic(Eigen::MatrixXd g, const Eigen::VectorXd& y, double* ridge_out) {
  const double ridge = 1e-12 * g.trace();
  g.diagonal().array() += ridge;
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw EvaluationError("restricted Gram form is not positive definite");
  *ridge_out = ridge;
  return y.dot(llt.solve(y));
}

}  // namespace

RateFunction RateFunction::inverse_log_power(double a) {
  require(a >= 0.0, "inverse_log_power: exponent must be >= 0");
  const auto d = spectral::SpectralDensity::log_power(-a);
  RateFunction r;
  r.f = [d](double lambda) { return d.w(lambda); };
  r.monotone = a > 0.0 ? Monotone::decreasing : Monotone::none;
  r.lambda2_increasing = true;
  r.lambda_increasing = a <= 2.0;
  r.label = "ln^-" + fmt(a);
  return r;
}

RateFunction RateFunction::constant(double c) {
  require(c > 0.0, "RateFunction::constant: value must be positive");
  RateFunction r;
  r.f = [c](double) { return c; };
  r.monotone = Monotone::decreasing;
  r.lambda2_increasing = true;
  r.lambda_increasing = true;
  r.label = "const " + fmt(c);
  return r;
}

void verify_rate(const RateFunction& r, double lo, double hi, int points) {
  require(r.f != nullptr, "verify_rate: empty function");
  require(lo > 0.0 && hi > lo && points >= 2, "verify_rate: bad grid");
  const double step = std::log(hi / lo) / (points - 1);
  double prev_l = 0.0;
  double prev_v = 0.0;
  for (int i = 0; i < points; ++i) {
    const double l = lo * std::exp(step * i);
    const double v = r(l);
    if (!std::isfinite(v) || v <= 0.0) {
      throw ContractError(r.label + ": not positive at lambda=" + fmt(l));
    }
    if (i > 0) {
      const std::string where = " between " + fmt(prev_l) + " and " + fmt(l);
      if (r.monotone == Monotone::decreasing && !rising(v, prev_v)) {
        throw ContractError(r.label + ": not decreasing" + where);
      }
      if (r.monotone == Monotone::increasing && !rising(prev_v, v)) {
        throw ContractError(r.label + ": not increasing" + where);
      }
      if (r.lambda2_increasing && !rising(prev_l * prev_l * prev_v, l * l * v)) {
        throw ContractError(r.label + ": lambda^2 f not increasing" + where);
      }
      if (r.lambda_increasing && !rising(prev_l * prev_v, l * v)) {
        throw ContractError(r.label + ": lambda f not increasing" + where);
      }
    }
    prev_l = l;
    prev_v = v;
  }
}

void verify_slowly_varying(const RateFunction& r) {
  double prev = INFINITY;
  for (double l : {1e8, 1e12, 1e16}) {
    const double dev = std::abs(r(2.0 * l) / r(l) - 1.0);
    if (!(dev <= prev + 1e-15)) throw ContractError(r.label + ": f(2x)/f(x) not approaching 1");
    prev = dev;
  }
  if (prev > 0.1) throw ContractError(r.label + ": f(2x)/f(x) deviates from 1 by " + fmt(prev));
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::to_zero: return "to_zero";
    case Trend::to_infinity: return "to_infinity";
    case Trend::bounded_away: return "bounded_away";
    case Trend::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Trend classify_trend(const std::vector<double>& values) {
  if (values.size() < 5) return Trend::inconclusive;
  const double mx = *std::max_element(values.begin(), values.end());
  const double mn = *std::min_element(values.begin(), values.end());
  const auto tail = values.end() - 5;
  bool dec = true;
  bool inc = true;
  for (auto it = tail + 1; it != values.end(); ++it) {
    dec = dec && *it < *(it - 1);
    inc = inc && *it > *(it - 1);
  }
  if (dec && values.back() < 0.25 * mx) return Trend::to_zero;
  if (inc && values.back() > 4.0 * mn) return Trend::to_infinity;
  if (!dec && std::all_of(tail, values.end(), [&](double v) { return v >= 0.25 * mx; })) return Trend::bounded_away;
  return Trend::inconclusive;
}

std::string to_string(Condition35 c) {
  switch (c) {
    case Condition35::satisfied: return "satisfied";
    case Condition35::fails: return "fails";
    case Condition35::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

SufficientReport sufficient_check(const std::vector<EquidistantFamily>& fams, const RateFunction& beta,
                                  std::vector<double> deltas) {
  require(beta.monotone == Monotone::decreasing && beta.lambda2_increasing,
          "sufficient_check: beta must be declared decreasing with lambda^2 beta increasing");
  verify_rate(beta);
  if (deltas.empty()) {
    for (const auto& f : fams) deltas.push_back(f.eps / static_cast<double>(f.n));
  }
  require(deltas.size() == fams.size(), "sufficient_check: one delta per family required");
  SufficientReport rep;
  std::vector<double> ratios;
  std::vector<double> scaled;
  for (std::size_t i = 0; i < fams.size(); ++i) {
    const auto& fam = fams[i];
    require(deltas[i] > 0.0, "sufficient_check: deltas must be positive");
    SufficientRow row;
    row.n = fam.n;
    row.eps = fam.eps;
    row.delta = deltas[i];
    row.neighborhood_measure = equidistant_neighborhood_measure(fam, deltas[i]);
    row.ratio = row.neighborhood_measure / beta(1.0 / deltas[i]);
    row.scaled_rate = beta(static_cast<double>(fam.n) / fam.eps) / fam.eps;
    ratios.push_back(row.ratio);
    scaled.push_back(row.scaled_rate);
    rep.rows.push_back(row);
  }
  rep.ratio_trend = classify_trend(ratios);
  rep.scaled_rate_trend = beta.lambda_increasing ? classify_trend(scaled) : Trend::inconclusive;
  switch (rep.ratio_trend) {
    case Trend::to_zero: rep.verdict = Condition35::satisfied; break;
    case Trend::bounded_away:
    case Trend::to_infinity: rep.verdict = Condition35::fails; break;
    case Trend::inconclusive: rep.verdict = Condition35::inconclusive; break;
  }
  return rep;
}

NecessaryReport necessary_check(const std::vector<EquidistantFamily>& fams, const RateFunction& alpha) {
  verify_slowly_varying(alpha);
  NecessaryReport rep;
  std::vector<double> values;
  for (const auto& fam : fams) {
    require(fam.n >= 1 && fam.eps > 0.0 && fam.eps <= 1.0, "necessary_check: invalid family");
    const double v = alpha(static_cast<double>(fam.n) / fam.eps) / fam.eps;
    rep.rows.push_back({fam.n, fam.eps, v});
    values.push_back(v);
  }
  rep.trend = classify_trend(values);
  rep.verdict = rep.trend == Trend::to_zero ? Condition35::fails : Condition35::inconclusive;
  return rep;
}

std::vector<EquidistantFamily> SeparationWitness::families() const {
  std::vector<EquidistantFamily> out;
  for (std::size_t i = 0; i < ks.size(); ++i) out.push_back({n_k[i], eps_k[i]});
  return out;
}

void SeparationWitness::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open " + path.string());
  out << "k,lambda_k,n_k,eps_k,diag_alpha,diag_beta\n";
  char buf[256];
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%lld,%.17g,%.17g,%.17g\n", ks[i], lambda_k[i], n_k[i],
                  eps_k[i], diag_alpha[i], diag_beta[i]);
    out << buf;
  }
}

nlohmann::json SeparationWitness::to_json() const {
  return {{"k", ks},         {"lambda_k", lambda_k},     {"n_k", n_k},
          {"eps_k", eps_k},  {"delta_k", delta_k},       {"diag_alpha", diag_alpha},
          {"diag_beta", diag_beta}};
}

SeparationWitness separation_witness(const RateFunction& alpha, const RateFunction& beta, int count) {
  require(count >= 5, "separation_witness: count must be >= 5");
  std::vector<double> ratio;
  for (int j = 1; j <= 8; ++j) {
    const double l = std::exp(4.0 * j);
    ratio.push_back(beta(l) / alpha(l));
  }
  for (std::size_t i = 1; i < ratio.size(); ++i) {
    if (!(ratio[i] > ratio[i - 1])) throw ContractError("separation_witness: beta/alpha is not increasing");
  }
  if (!(ratio.back() > 2.0 * ratio.front())) throw ContractError("separation_witness: beta/alpha does not grow");

  SeparationWitness w;
  for (int k = 1; k <= count; ++k) {
    const double l = std::exp(static_cast<double>(k));
    const double a = alpha(l);
    const double b = beta(l);
    const double n = std::ceil(l * std::sqrt(a * b));
    if (!(n >= 1.0) || n > 9.0e18) throw ContractError("separation_witness: n_k out of range");
    const double eps = n / l;
    if (eps > 1.0) continue;
    w.ks.push_back(k);
    w.lambda_k.push_back(l);
    w.n_k.push_back(static_cast<long long>(n));
    w.eps_k.push_back(eps);
    w.delta_k.push_back(eps / n);
    w.diag_alpha.push_back(a / eps);
    w.diag_beta.push_back(b / eps);
  }
  if (w.ks.size() < 5) throw ContractError("separation_witness: fewer than five admissible indices");
  for (std::size_t i = w.ks.size() - 4; i < w.ks.size(); ++i) {
    if (!(w.diag_alpha[i] < w.diag_alpha[i - 1])) {
      throw ContractError("separation_witness: diag_alpha is not decreasing on the tail");
    }
    if (!(w.diag_beta[i] > w.diag_beta[i - 1])) {
      throw ContractError("separation_witness: diag_beta is not increasing on the tail");
    }
  }
  return w;
}

GridFunction indicator(const ElementarySet& e, double t0, double t1, std::size_t n, double scale) {
  auto g = GridFunction::zeros(t0, t1, n);
  const double h = g.dt();
  for (const auto& iv : e.intervals()) {
    const double lo = std::max(iv.lo, t0);
    const double hi = std::min(iv.hi, t1);
    if (hi <= lo) continue;
    auto i0 = static_cast<std::size_t>(std::max(0.0, std::floor((lo - t0) / h)));
    for (std::size_t i = i0; i < n && g.edge(i) < hi; ++i) {
      const double a = std::max(lo, g.edge(i));
      const double b = std::min(hi, g.edge(i) + h);
      if (b > a) g[i] += scale * (b - a) / h;
    }
  }
  return g;
}

RestrictedSolve weak_sup_pairing(const ElementarySet& e, const GridFunction& g,
                                 const spectral::SpectralDensity& d, fourier::NormMode mode) {
  RestrictedSolve out;
  if (e.empty()) return out;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (e.covers(g.edge(i), g.edge(i) + g.dt())) idx.push_back(i);
  }
  out.cells = idx.size();
  if (idx.empty()) return out;
  const auto plan = fourier::NuNormPlan::for_grid(g, d, mode);
  const auto gram = restricted_gram(plan.gram_row(), idx);
  Eigen::VectorXd h(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) h(static_cast<Eigen::Index>(j)) = g[idx[j]] * g.dt();
  out.value = std::sqrt(std::max(0.0, solve_quadratic(gram, h, &out.ridge)));
  return out;
}

RestrictedSolve projection_defect(const ElementarySet& e, const GridFunction& f,
                                  const spectral::SpectralDensity& d, fourier::NormMode mode) {
  const auto plan = fourier::NuNormPlan::for_grid(f, d, mode);
  const auto row = plan.gram_row();
  const std::size_t n = f.size();
  Eigen::VectorXd mf = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += row[i > j ? i - j : j - i] * f[j];
    mf(static_cast<Eigen::Index>(i)) = s;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += f[i] * mf(static_cast<Eigen::Index>(i));

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = f.edge(i);
    const double hi = lo + f.dt();
    if (lo >= -1e-12 && hi <= 1.0 + 1e-12 && !e.intersects(lo, hi)) idx.push_back(i);
  }
  RestrictedSolve out;
  out.cells = idx.size();
  double captured = 0.0;
  if (!idx.empty()) {
    Eigen::VectorXd b(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) {
      b(static_cast<Eigen::Index>(j)) = mf(static_cast<Eigen::Index>(idx[j]));
    }
    captured = solve_quadratic(restricted_gram(row, idx), b, &out.ridge);
  }
  out.value = std::sqrt(std::max(0.0, total - captured));
  return out;
}

}  // namespace offwhite::invariant
