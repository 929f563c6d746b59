// One pass/fail line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "offwhite/barrier.hpp"
#include "offwhite/box_dimension.hpp"
#include "offwhite/cantor.hpp"
#include "offwhite/diffusion.hpp"
#include "offwhite/gauss_geometry.hpp"
#include "offwhite/invariant.hpp"
#include "offwhite/kab.hpp"
#include "offwhite/nu_norm.hpp"
#include "offwhite/rng.hpp"

using namespace offwhite;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double hellinger_quadrature(double v) {
  auto integrand = [v](double x) {
    const double p = std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
    const double q = std::exp(-0.5 * x * x / v) / std::sqrt(2.0 * kPi * v);
    return std::sqrt(p * q);
  };
  const double inf = std::numeric_limits<double>::infinity();
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -inf, inf, 15, 1e-14);
}

Outcome criterion1() {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.25, 4.0);
  std::uniform_int_distribution<int> dims(1, 10);
  double worst_factor = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double l = u(gen);
    worst_factor = std::max(worst_factor, std::abs(gauss::affinity_factor(l) - hellinger_quadrature(l)));
  }
  double worst_product = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    gauss::EigenRatioSeq r;
    double oracle = 1.0;
    for (int k = dims(gen); k > 0; --k) {
      r.ratios.push_back(u(gen));
      oracle *= hellinger_quadrature(r.ratios.back());
    }
    worst_product = std::max(worst_product, std::abs(gauss::affinity(r) - oracle));
  }
  return {worst_factor <= 1e-8 && worst_product <= 1e-6,
          "max factor error " + fmt("%.2e", worst_factor) + ", max product error " + fmt("%.2e", worst_product)};
}

// Bhattacharyya coefficient of N(0, s1) and N(0, s2)
double bhattacharyya(const Eigen::MatrixXd& s1, const Eigen::MatrixXd& s2) {
  const double l1 = std::log(s1.determinant());
  const double l2 = std::log(s2.determinant());
  const double lm = std::log((0.5 * (s1 + s2)).determinant());
  return std::exp(0.25 * (l1 + l2) - 0.5 * lm);
}

Outcome criterion2() {
  double worst_gap = 0.0;
  double worst_oracle = 0.0;
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> rot(0.0, 2.0 * kPi);
  for (int i = 1; i <= 100; ++i) {
    const double a = 0.05 + (0.5 * kPi - 0.05) * i / 100.0;
    const auto on = gauss::orthogonalizing_norm(a);
    const double bound = gauss::delta_bound(a, 1);
    worst_gap = std::max(worst_gap, std::abs(on.distance - bound));
    // covariance with variance ratios equal to the norm ratios, in a rotated basis
    const double th = rot(gen);
    Eigen::Matrix2d r;
    r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    const Eigen::Matrix2d half = on.gram.diagonal().cwiseSqrt().asDiagonal();
    const Eigen::Matrix2d s2 = r * half * r.transpose();
    const double coeff = bhattacharyya(Eigen::Matrix2d::Identity(), s2);
    const double dist = 2.0 * std::asin(std::sqrt(std::max(0.0, 0.5 * (1.0 - coeff))));
    worst_oracle = std::max(worst_oracle, std::abs(dist - bound));
  }
  bool monotone = true;
  double last_max = 0.0;
  for (int n : {1, 2, 5}) {
    double prev = INFINITY;
    for (int i = 0; i <= 200; ++i) {
      const double a = 0.05 + (0.5 * kPi - 0.05) * i / 200.0;
      const double d = gauss::delta_bound(a, n);
      monotone = monotone && d < prev + 1e-15 && (i == 0 || d < prev);
      prev = d;
    }
    last_max = std::max(last_max, prev);
  }
  const bool pass = worst_gap <= 1e-9 && worst_oracle <= 1e-9 && monotone && last_max <= 1e-7;
  return {pass, "max |achieved - delta| " + fmt("%.2e", worst_gap) + ", det oracle " + fmt("%.2e", worst_oracle) +
                    ", monotone " + (monotone ? "yes" : "no") + ", delta(pi/2) " + fmt("%.1e", last_max)};
}

Outcome criterion3() {
  struct Case {
    long long n;
    double eps;
    double t1;
    std::size_t grid;
  };
  // grids put every interval endpoint on a cell edge
  const Case cases[] = {{4, 0.5, 1.0, 1024}, {8, 0.25, 1.0, 1024}, {64, 0.1, 1.6, 2048}};
  double worst = 0.0;
  std::string where;
  for (const auto& c : cases) {
    const auto e = invariant::make_equidistant({c.n, c.eps});
    const auto f = invariant::indicator(e, 0.0, c.t1, c.grid, 1.0 / c.eps);
    const auto s = fourier::fourier(f, fourier::Interpolation::piecewise_constant, 4);
    const std::size_t limit = (s.lambdas.size() - 1) / 4;
    double peak = 0.0;
    for (std::size_t k = 0; k < limit; ++k) peak = std::max(peak, fourier::fhat_comb_closed_form(c.n, c.eps, s.lambdas[k]));
    for (std::size_t k = 0; k < limit; ++k) {
      const double exact = fourier::fhat_comb_closed_form(c.n, c.eps, s.lambdas[k]);
      const double got = std::sqrt(s.magnitudes_sq[k]);
      // exact zeros of the closed form are compared on the scale of the peak
      const double rel = std::abs(got - exact) / std::max(exact, 1e-6 * peak);
      if (rel > worst) {
        worst = rel;
        where = "n=" + std::to_string(c.n) + " lambda=" + fmt("%.4g", s.lambdas[k]);
      }
    }
  }
  return {worst <= 1e-6, "max relative error " + fmt("%.2e", worst) + " at " + where};
}

Outcome criterion4() {
  const auto alpha = invariant::RateFunction::inverse_log_power(2.0);
  const auto beta = invariant::RateFunction::inverse_log_power(1.0);
  const auto w = invariant::separation_witness(alpha, beta, 30);
  const bool diag = w.ks.back() == 30 && w.diag_alpha.back() < 0.2 && w.diag_beta.back() > 5.0;
  const auto nec = invariant::necessary_check(w.families(), alpha);
  const auto suf = invariant::sufficient_check(w.families(), beta);
  double nmax = 0.0;
  for (const auto& r : nec.rows) nmax = std::max(nmax, r.value);
  double smax = 0.0;
  for (const auto& r : suf.rows) smax = std::max(smax, r.ratio);
  const bool pass = diag && nec.verdict == invariant::Condition35::fails &&
                    suf.verdict == invariant::Condition35::satisfied;
  return {pass, "diag_alpha(30) " + fmt("%.4f", w.diag_alpha.back()) + ", diag_beta(30) " +
                    fmt("%.4f", w.diag_beta.back()) + "; necessary " + invariant::to_string(nec.trend) +
                    " (last/max " + fmt("%.3f", nec.rows.back().value / nmax) + "), sufficient " +
                    invariant::to_string(suf.ratio_trend) + " (last/max " + fmt("%.3f", suf.rows.back().ratio / smax) +
                    "); trend rule needs last/max < 0.25"};
}

Outcome criterion5() {
  const auto f = GridFunction::sample(0.0, 1.0, 8192, [](double) { return 1.0; });
  std::vector<int> ns;
  for (int n = 2; n <= 256; n *= 2) ns.push_back(n);
  const auto rows = fourier::flip_decay_experiment(f, spectral::SpectralDensity::log_power(-1.0), ns);
  bool monotone = true;
  for (std::size_t i = 2; i < rows.size(); ++i) monotone = monotone && rows[i].norm <= rows[i - 1].norm;
  const double ratio = rows.back().norm / rows.front().norm;
  const auto white = fourier::flip_decay_experiment(f, spectral::SpectralDensity::white(), ns);
  double lo = INFINITY;
  double hi = 0.0;
  for (const auto& r : white) {
    lo = std::min(lo, r.norm);
    hi = std::max(hi, r.norm);
  }
  const double spread = (hi - lo) / hi;
  const bool pass = monotone && ratio < 0.5 && spread < 0.02;
  return {pass, "ln^-1 norm ratio " + fmt("%.4f", ratio) + " (energy ratio " + fmt("%.4f", ratio * ratio) +
                    "), monotone " + (monotone ? "yes" : "no") + ", white spread " + fmt("%.2e", spread)};
}

Outcome criterion6() {
  const double target = std::log(2.0) / std::log(9.0);
  const randomset::CantorSpec k1{1.0 / 9.0, 12, true};
  const auto cantor = randomset::box_dimension(randomset::build_cantor(k1), 10.0 * k1.finest_length(), 0.1);
  randomset::ClosedSetSample full;
  full.intervals.push_back({0.0, 1.0});
  const auto whole = randomset::box_dimension(full, 1e-7, 0.1);

  randomset::DiffusionParams p;
  p.horizon = 200.0;
  std::uint64_t steps = 0;
  randomset::HitExtractor ex(p);
  randomset::simulate_steps(p, 0, [&](const randomset::Step& s) {
    ++steps;
    ex.on_step(s);
  });
  const auto hits = ex.finish();
  const auto sim = randomset::box_dimension(hits.sample, 10.0 * p.effective_hit_tolerance(), 1e-3);
  const bool pass = std::abs(cantor.estimate - target) <= 0.03 && std::abs(whole.estimate - 1.0) <= 0.05 &&
                    std::abs(sim.estimate - target) <= 0.10 && steps >= 1000000;
  return {pass, "cantor " + fmt("%.4f", cantor.estimate) + ", interval " + fmt("%.4f", whole.estimate) +
                    ", hit set " + fmt("%.4f", sim.estimate) + " over " + std::to_string(steps) + " steps (target " +
                    fmt("%.4f", target) + ")"};
}

Outcome criterion7() {
  randomset::DiffusionParams p;
  p.horizon = 1.0;
  const double var = randomset::lifted_y_variance(p, 10000, 1);

  randomset::DiffusionParams q;
  q.dt = 0.01;
  q.refine_factor = 1;
  q.horizon = 1e4;
  const auto occ = randomset::occupation(q, 1, 4, 1);
  const auto fine = randomset::occupation(q, 1, 10, 1);

  randomset::DiffusionParams r;
  r.horizon = 200.0;
  const auto hits = randomset::simulate_hits(r, 1);
  const double fl = randomset::drift_f(0.25, r.eps_drift);
  const double fh = randomset::drift_f(0.5, r.eps_drift);
  const bool slopes = hits.hit_steps > 0 && hits.slope_min >= fl - 1e-6 && hits.slope_max <= fh + 1e-6;

  const bool pass = std::abs(var - 1.0) < 0.05 && occ.max_deviation < 0.03 && occ.steps >= 1000000 && slopes;
  return {pass, "variance " + fmt("%.4f", var) + ", occupation 4x4 max deviation " + fmt("%.4f", occ.max_deviation) +
                    " over " + std::to_string(occ.steps) + " steps (10x10: " + fmt("%.4f", fine.max_deviation) +
                    "), slopes [" + fmt("%.6f", hits.slope_min) + ", " + fmt("%.6f", hits.slope_max) + "]"};
}

Outcome criterion8() {
  int ok = 0;
  int total = 0;
  for (int run = 0; run < 20; ++run) {
    const randomset::CounterRng rng(2024, static_cast<std::uint64_t>(run));
    randomset::KabSpec spec;
    spec.depth = 12;
    for (int k = 0; k < 12; ++k) {
      const auto b = rng.block(static_cast<std::uint64_t>(k));
      spec.a.push_back(static_cast<int>(b[0] & 1u));
      spec.b.push_back(static_cast<int>(b[1] & 1u));
    }
    const auto ledger = randomset::build_kab(spec).ledger;
    for (const auto& map : {randomset::Distortion::identity(), randomset::Distortion::reflection(),
                            randomset::Distortion::random_c1(static_cast<std::uint64_t>(run))}) {
      ++total;
      const bool swapped = map.kind == randomset::Distortion::Kind::reflection;
      try {
        const auto d = randomset::decode_kab(randomset::apply_distortion(ledger, map), 3.0);
        bool good = d.orientation == (swapped ? randomset::Orientation::decreasing : randomset::Orientation::increasing);
        good = good && d.ks.size() == 5 && d.k0 == 1;
        for (std::size_t i = 0; good && i < d.ks.size(); ++i) {
          const auto k = static_cast<std::size_t>(d.ks[i] - 1);
          good = d.a[i] == (swapped ? spec.b[k] : spec.a[k]) && d.b[i] == (swapped ? spec.a[k] : spec.b[k]);
        }
        ok += good ? 1 : 0;
      } catch (const std::exception&) {
      }
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " runs recovered k=1..5 with orientation"};
}

Outcome criterion9() {
  double worst = 0.0;
  for (double alpha : {1.0, -1.0, 2.0}) {
    const auto coarse = randomset::barrier_residual(alpha, 41, 41, 0.02);
    const auto fine = randomset::barrier_residual(alpha, 81, 81, 0.01);
    worst = std::max(worst, fine.sup / coarse.sup);
  }
  bool exact = true;
  for (int j = 0; j <= 8; ++j) {
    const double t = std::ldexp(1.0, -2 * j);
    exact = exact && std::sqrt(t) * randomset::barrier_h({0.0, t, -0.25}) == 1.0;
  }
  return {worst <= 1.1 && exact, "max refinement ratio " + fmt("%.4f", worst) + ", sqrt(t) h(0,t) exact " +
                                     (exact ? "yes" : "no")};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion10(const std::string& cli) {
  const auto root = fs::temp_directory_path() / "offwhite_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::vector<std::pair<std::string, std::string>> runs{
      {"separate", R"({"params": {"grid": 4096, "ns": [2, 4, 8, 16]}})"},
      {"flipdecay", R"({"params": {"grid": 4096}})"},
      {"randomset", R"({"params": {"diffusion": {"horizon": 20}}})"},
      {"kab", "{}"},
      {"gauss", "{}"},
      {"spectral-check", "{}"}};
  int identical = 0;
  int files = 0;
  std::string failed;
  for (const auto& [name, body] : runs) {
    const auto cfg = root / (name + ".json");
    std::ofstream(cfg) << body << "\n";
    for (const char* tag : {"a", "b"}) {
      const auto out = root / (name + "_" + tag);
      const std::string cmd = cli + " " + name + " --config " + cfg.string() + " --seed 11 --out " + out.string() +
                              " >/dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) failed += " " + name + "(exit)";
    }
    for (const auto& entry : fs::directory_iterator(root / (name + "_a"))) {
      if (entry.path().extension() != ".csv") continue;
      ++files;
      const auto other = root / (name + "_b") / entry.path().filename();
      if (slurp(entry.path()) == slurp(other)) {
        ++identical;
      } else {
        failed += " " + name + "/" + entry.path().filename().string();
      }
    }
  }
  return {failed.empty() && files > 0,
          std::to_string(identical) + "/" + std::to_string(files) + " csv files identical" +
              (failed.empty() ? "" : ", mismatched:" + failed)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path to offwhite cli>\n", argv[0]);
    return 64;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"affinity factors vs Hellinger quadrature", criterion1},
      {"orthogonalizing norm achieves delta", criterion2},
      {"comb closed form vs FFT", criterion3},
      {"separation witness verdicts", criterion4},
      {"sign-flip norm decay", criterion5},
      {"box-dimension recovery", criterion6},
      {"diffusion sanity", criterion7},
      {"K_ab round trips", criterion8},
      {"barrier diagnostic", criterion9},
      {"CLI determinism", [&] { return criterion10(cli); }}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2zu %s: %s; %s (%.1f s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures;
}
