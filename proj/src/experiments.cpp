#include "offwhite/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "offwhite/barrier.hpp"
#include "offwhite/box_dimension.hpp"
#include "offwhite/cantor.hpp"
#include "offwhite/diffusion.hpp"
#include "offwhite/gauss_geometry.hpp"
#include "offwhite/invariant.hpp"
#include "offwhite/kab.hpp"
#include "offwhite/nu_norm.hpp"
#include "offwhite/rng.hpp"
#include "offwhite/spectral_density.hpp"

namespace offwhite::cli {

namespace {

using nlohmann::json;

int line_of(const std::string& source, const std::string& key) {
  if (source.empty()) return 0;
  const auto pos = source.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(source.begin(), source.begin() + static_cast<long>(pos), '\n'));
}

std::string where(const std::string& source, const std::string& key) {
  const int line = line_of(source, key);
  return line > 0 ? "config line " + std::to_string(line) + ": " : "config: ";
}

// Typed access to one parameter block; every key must be consumed.
class Params {
 public:
  Params(const json& j, const std::string& source) : j_(j), source_(source) {
    if (!j_.is_object()) throw ConfigError("config: 'params' must be an object");
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    used_.insert(key);
    if (!j_.contains(key)) {
      resolved_[key] = fallback;
      return fallback;
    }
    try {
      T v = j_.at(key).get<T>();
      resolved_[key] = j_.at(key);
      return v;
    } catch (const json::exception&) {
      throw ConfigError(where(source_, key) + "key '" + key + "' has the wrong type");
    }
  }

  json object(const std::string& key, const json& fallback) {
    used_.insert(key);
    const json v = j_.contains(key) ? j_.at(key) : fallback;
    if (!v.is_object()) throw ConfigError(where(source_, key) + "key '" + key + "' must be an object");
    resolved_[key] = v;
    return v;
  }

  void fail(const std::string& key, const std::string& msg) const { throw ConfigError(where(source_, key) + msg); }

  void finish() const {
    for (const auto& [key, v] : j_.items()) {
      if (!used_.contains(key)) throw ConfigError(where(source_, key) + "unknown key '" + key + "' in params");
    }
  }

  json& resolved() { return resolved_; }

 private:
  const json& j_;
  const std::string& source_;
  std::set<std::string> used_;
  json resolved_ = json::object();
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Csv {
 public:
  Csv(const std::filesystem::path& path, const std::string& header) : out_(path) {
    if (!out_) throw ParameterError("cannot open " + path.string());
    out_ << header << "\n";
  }
  template <class... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << "\n";
  }

 private:
  static std::string cell(double v) { return num(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(long long v) { return std::to_string(v); }
  static std::string cell(unsigned long v) { return std::to_string(v); }
  static std::string cell(unsigned long long v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }
  std::ofstream out_;
};

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json finish_summary(const ExperimentConfig& config, Params& params, json results,
                    const std::vector<std::string>& files) {
  params.finish();
  ExperimentConfig resolved = config;
  resolved.params = params.resolved();
  json summary = {{"schema_version", kSchemaVersion},
                  {"library_version", OFFWHITE_VERSION},
                  {"command", config.name},
                  {"config", resolved.to_json()},
                  {"timestamp", utc_now()},
                  {"results", std::move(results)},
                  {"files", files}};
  std::ofstream out(config.output_dir / "summary.json");
  out << summary.dump(2) << "\n";
  return summary;
}

spectral::SpectralDensity density_param(Params& p, const std::string& key, const json& fallback,
                                        const std::string& source) {
  const json j = p.object(key, fallback);
  try {
    return spectral::SpectralDensity::from_json(j);
  } catch (const ParameterError& e) {
    throw ConfigError(where(source, key) + e.what());
  }
}

fourier::NormMode mode_from(const std::string& s, Params& p) {
  if (s == "one_sided") return fourier::NormMode::one_sided;
  if (s == "symmetric_energy") return fourier::NormMode::symmetric_energy;
  p.fail("mode", "mode must be 'one_sided' or 'symmetric_energy'");
  return fourier::NormMode::symmetric_energy;
}

std::vector<int> powers_of_two(int lo, int hi) {
  std::vector<int> out;
  for (int n = lo; n <= hi; n *= 2) out.push_back(n);
  return out;
}

// A failed sufficient criterion says nothing about (35) itself.
std::string sufficient_label(invariant::Condition35 c) {
  return c == invariant::Condition35::fails ? "not_satisfied" : invariant::to_string(c);
}

bool is_pow2(long long n) { return n > 0 && (n & (n - 1)) == 0; }

void prepare_dir(const ExperimentConfig& c) {
  std::error_code ec;
  std::filesystem::create_directories(c.output_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + c.output_dir.string());
}

}  // namespace

json ExperimentConfig::to_json() const {
  return {{"name", name}, {"seed", seed}, {"output_dir", output_dir.string()}, {"threads", threads}, {"params", params}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j, const std::string& source) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  ExperimentConfig c;
  c.source = source;
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "name") c.name = v.get<std::string>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "output_dir") c.output_dir = v.get<std::string>();
      else if (key == "threads") c.threads = v.get<int>();
      else if (key == "params") c.params = v;
      else throw ConfigError(where(source, key) + "unknown key '" + key + "'");
    } catch (const json::exception&) {
      throw ConfigError(where(source, key) + "key '" + key + "' has the wrong type");
    }
  }
  if (!c.params.is_object()) throw ConfigError(where(source, "params") + "'params' must be an object");
  if (c.threads < 1) throw ConfigError(where(source, "threads") + "threads must be >= 1");
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n'));
    throw ConfigError(path.string() + ":" + std::to_string(line) + ": JSON parse error");
  }
  return from_json(j, text);
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"separate", "flipdecay", "randomset", "kab", "gauss", "spectral-check"};
  return names;
}

json run_separation(const ExperimentConfig& config) {
  Params p(config.params, config.source);
  const double a1 = p.get("a1", 2.0);
  const double a2 = p.get("a2", 1.0);
  const int count = p.get("count", 30);
  const int grid = p.get("grid", 16384);
  const auto ns = p.get("ns", powers_of_two(2, 256));
  if (!(a2 > 0.0)) p.fail("a2", "a2 must be positive");
  if (!(a1 > a2)) p.fail("a1", "a1 must exceed a2");
  if (!is_pow2(grid)) p.fail("grid", "grid must be a power of two");
  for (int n : ns) {
    if (!is_pow2(n)) p.fail("ns", "ns must be powers of two");
  }
  prepare_dir(config);

  const auto alpha = invariant::RateFunction::inverse_log_power(a1);
  const auto beta = invariant::RateFunction::inverse_log_power(a2);
  const auto w = invariant::separation_witness(alpha, beta, count);
  w.write_csv(config.output_dir / "witness.csv");

  const auto fams = w.families();
  Csv verdicts(config.output_dir / "verdicts.csv",
               "density,necessary_trend,necessary_verdict,sufficient_trend,sufficient_verdict");
  json vj = json::array();
  for (const auto* r : {&alpha, &beta}) {
    const auto nec = invariant::necessary_check(fams, *r);
    const auto suf = invariant::sufficient_check(fams, *r);
    verdicts.row(r->label, invariant::to_string(nec.trend), invariant::to_string(nec.verdict),
                 invariant::to_string(suf.ratio_trend), sufficient_label(suf.verdict));
    vj.push_back({{"density", r->label},
                  {"necessary", invariant::to_string(nec.verdict)},
                  {"sufficient", sufficient_label(suf.verdict)}});
  }

  const auto da = spectral::SpectralDensity::log_power(-a1);
  const auto db = spectral::SpectralDensity::log_power(-a2);
  const auto n_grid = static_cast<std::size_t>(grid);
  const fourier::NuNormPlan plan_a(n_grid, 1.0 / grid, da);
  const fourier::NuNormPlan plan_b(n_grid, 1.0 / grid, db);
  Csv decay(config.output_dir / "decay.csv", "n,eps,criterion_alpha,criterion_beta,norm_alpha,norm_beta");
  const auto one = GridFunction::sample(0.0, 1.0, n_grid, [](double) { return 1.0; });
  for (int n : ns) {
    const int j = static_cast<int>(std::lround(std::log2(n)));
    const double eps = std::ldexp(1.0, -(j + 1) / 2);
    if (static_cast<long long>(grid) < (2LL << (j + (j + 1) / 2))) p.fail("grid", "grid too coarse for the decay table");
    const auto e = invariant::make_equidistant({n, eps});
    const auto f = invariant::indicator(e, 0.0, 1.0, n_grid, 1.0 / eps) - one;
    const double lam = n / eps;
    decay.row(n, eps, alpha(lam) / eps, beta(lam) / eps, plan_a.norm(f), plan_b.norm(f));
  }

  const json results = {{"witness_rows", w.ks.size()},
                        {"diag_alpha_last", w.diag_alpha.back()},
                        {"diag_beta_last", w.diag_beta.back()},
                        {"verdicts", vj}};
  return finish_summary(config, p, results, {"witness.csv", "verdicts.csv", "decay.csv"});
}

json run_flipdecay(const ExperimentConfig& config) {
  Params p(config.params, config.source);
  const auto d = density_param(p, "density", {{"kind", "log_power"}, {"alpha", -1.0}, {"domain_floor", 1.0}},
                               config.source);
  const int grid = p.get("grid", 8192);
  const auto ns = p.get("ns", powers_of_two(2, 256));
  const auto mode = mode_from(p.get<std::string>("mode", "symmetric_energy"), p);
  if (!is_pow2(grid)) p.fail("grid", "grid must be a power of two");
  if (ns.empty()) p.fail("ns", "ns must be nonempty");
  prepare_dir(config);

  const auto f = GridFunction::sample(0.0, 1.0, static_cast<std::size_t>(grid), [](double) { return 1.0; });
  const auto rows = fourier::flip_decay_experiment(f, d, ns, mode);
  Csv csv(config.output_dir / "flipdecay.csv", "n,norm,norm_sq,ratio");
  Csv plot(config.output_dir / "flipdecay_plot.csv", "x,y");
  double mx = 0.0;
  double mn = INFINITY;
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv.row(rows[i].n, rows[i].norm, rows[i].norm_sq, rows[i].norm / rows.front().norm);
    plot.row(static_cast<double>(rows[i].n), rows[i].norm);
    mx = std::max(mx, rows[i].norm);
    mn = std::min(mn, rows[i].norm);
    if (i >= 2 && rows[i].norm > rows[i - 1].norm) monotone = false;
  }
  const double variation = mx > 0.0 ? (mx - mn) / mx : 0.0;
  const double ratio = rows.back().norm / rows.front().norm;
  std::string flag = "partial_decay";
  if (variation < 0.02) {
    flag = "no decay";
  } else if (monotone && ratio < 0.5) {
    flag = "decays";
  }
  const json results = {{"flag", flag},
                        {"variation", variation},
                        {"final_over_initial", ratio},
                        {"final_over_initial_sq", ratio * ratio},
                        {"mode", fourier::to_string(mode)}};
  return finish_summary(config, p, results, {"flipdecay.csv", "flipdecay_plot.csv"});
}

json run_randomset(const ExperimentConfig& config) {
  Params p(config.params, config.source);
  randomset::DiffusionParams defaults;
  defaults.horizon = 200.0;
  json dj = p.object("diffusion", defaults.to_json());
  randomset::DiffusionParams dp;
  try {
    dp = randomset::DiffusionParams::from_json(dj);
  } catch (const ParameterError& e) {
    throw ConfigError(where(config.source, "diffusion") + e.what());
  }
  dp.seed = config.seed;
  const int paths = p.get("paths", 1);
  const double scale_hi = p.get("scale_hi", 1e-3);
  const double scale_lo = p.get("scale_lo", std::max(10.0 * dp.effective_hit_tolerance(), 1e-9));
  const bool write_hits = p.get("write_hits", true);
  if (paths < 1) p.fail("paths", "paths must be >= 1");
  if (!(scale_lo > 0.0 && scale_lo < scale_hi)) p.fail("scale_lo", "need 0 < scale_lo < scale_hi");
  prepare_dir(config);

  std::vector<randomset::HitSet> hits(static_cast<std::size_t>(paths));
  randomset::parallel_for(hits.size(), config.threads,
                          [&](std::size_t i) { hits[i] = randomset::simulate_hits(dp, i); });
  Csv dim(config.output_dir / "dimension.csv",
          "path,estimate,residual_rms,intervals,clusters,hit_steps,boundary_fraction,slope_min,slope_max");
  Csv boxes(config.output_dir / "boxcounts.csv", "path,scale,count");
  json estimates = json::array();
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const auto& h = hits[i];
    double est = NAN;
    double rms = NAN;
    if (!h.sample.intervals.empty()) {
      const auto bd = randomset::box_dimension(h.sample, scale_lo, scale_hi);
      est = bd.estimate;
      rms = bd.residual_rms;
      for (std::size_t j = 0; j < bd.scales.size(); ++j) boxes.row(i, bd.scales[j], static_cast<long long>(bd.counts[j]));
    }
    dim.row(i, est, rms, h.sample.intervals.size(), h.clusters.size(), h.hit_steps, h.boundary_fraction(),
            h.slope_min, h.slope_max);
    estimates.push_back(std::isnan(est) ? json(nullptr) : json(est));
  }
  std::vector<std::string> files{"dimension.csv", "boxcounts.csv"};
  if (write_hits) {
    hits.front().write_csv(config.output_dir / "hits.csv");
    files.push_back("hits.csv");
  }
  json results = {{"target_dimension", dp.target == randomset::TargetKind::cantor ? dp.k1.dimension() : 0.0},
                  {"estimates", estimates},
                  {"hit_tolerance", dp.effective_hit_tolerance()}};
  if (dp.target == randomset::TargetKind::cantor && dp.k1.depth <= 24) {
    const auto k1 = randomset::build_cantor(dp.k1);
    results["k1_box_dimension"] =
        randomset::box_dimension(k1, 10.0 * dp.k1.finest_length(), 0.1).estimate;
  }
  return finish_summary(config, p, results, files);
}

json run_kab(const ExperimentConfig& config) {
  Params p(config.params, config.source);
  const int depth = p.get("depth", 12);
  const int runs = p.get("runs", 20);
  const double bound = p.get("distortion_bound", 3.0);
  const auto names = p.get("distortions", std::vector<std::string>{"identity", "reflection", "random_c1"});
  if (depth < 3 || depth > 14) p.fail("depth", "depth must lie in [3, 14]");
  if (runs < 1) p.fail("runs", "runs must be >= 1");
  std::vector<randomset::Distortion::Kind> kinds;
  for (const auto& n : names) {
    if (n == "identity") kinds.push_back(randomset::Distortion::Kind::identity);
    else if (n == "reflection") kinds.push_back(randomset::Distortion::Kind::reflection);
    else if (n == "random_c1") kinds.push_back(randomset::Distortion::Kind::random_c1);
    else p.fail("distortions", "unknown distortion '" + n + "'");
  }
  prepare_dir(config);

  const int kmax = (depth - 1) / 2;
  Csv csv(config.output_dir / "kab.csv", "run,distortion,orientation,expected_orientation,k0,kmax,recovered");
  int ok = 0;
  int total = 0;
  for (int r = 0; r < runs; ++r) {
    const randomset::CounterRng rng(config.seed, static_cast<std::uint64_t>(r));
    randomset::KabSpec spec;
    spec.depth = depth;
    for (int k = 0; k < depth; ++k) {
      const auto blk = rng.block(static_cast<std::uint64_t>(k));
      spec.a.push_back(static_cast<int>(blk[0] & 1u));
      spec.b.push_back(static_cast<int>(blk[1] & 1u));
    }
    const auto sample = randomset::build_kab(spec);
    for (auto kind : kinds) {
      randomset::Distortion map{kind, config.seed * 1000003ULL + static_cast<std::uint64_t>(r)};
      const auto observed = randomset::apply_distortion(sample.ledger, map);
      const auto dec = randomset::decode_kab(observed, bound);
      const bool reflected = kind == randomset::Distortion::Kind::reflection;
      const auto expected = reflected ? randomset::Orientation::decreasing : randomset::Orientation::increasing;
      bool good = dec.orientation == expected && dec.k0 == 1 && dec.ks.back() == kmax &&
                  static_cast<int>(dec.ks.size()) == kmax;
      for (std::size_t i = 0; good && i < dec.ks.size(); ++i) {
        const auto k = static_cast<std::size_t>(dec.ks[i] - 1);
        const int ea = reflected ? spec.b[k] : spec.a[k];
        const int eb = reflected ? spec.a[k] : spec.b[k];
        good = dec.a[i] == ea && dec.b[i] == eb;
      }
      ok += good ? 1 : 0;
      ++total;
      csv.row(r, map.name(), randomset::to_string(dec.orientation), randomset::to_string(expected), dec.k0,
              dec.ks.back(), good ? 1 : 0);
    }
  }
  const json results = {{"runs", total}, {"recovered", ok}, {"all_recovered", ok == total}};
  return finish_summary(config, p, results, {"kab.csv"});
}

json run_gauss(const ExperimentConfig& config) {
  Params p(config.params, config.source);
  const int angles = p.get("angles", 100);
  const auto ns = p.get("ns", std::vector<int>{1, 2, 5});
  const int lambdas = p.get("lambdas", 50);
  if (angles < 2) p.fail("angles", "angles must be >= 2");
  if (lambdas < 2) p.fail("lambdas", "lambdas must be >= 2");
  prepare_dir(config);

  std::string header = "alpha";
  for (int n : ns) header += ",delta_n" + std::to_string(n);
  header += ",achieved,gap";
  std::ofstream dcsv(config.output_dir / "delta.csv");
  dcsv << header << "\n";
  double worst = 0.0;
  const double lo = 0.05;
  const double hi = 0.5 * M_PI;
  for (int i = 0; i < angles; ++i) {
    const double a = lo + (hi - lo) * (i + 1) / angles;
    dcsv << num(a);
    for (int n : ns) dcsv << "," << num(gauss::delta_bound(a, n));
    const auto on = gauss::orthogonalizing_norm(a);
    const double gap = std::abs(on.distance - gauss::delta_bound(a, 1));
    worst = std::max(worst, gap);
    dcsv << "," << num(on.distance) << "," << num(gap) << "\n";
  }
  Csv acsv(config.output_dir / "affinity.csv", "lambda,factor,distance");
  for (int i = 0; i < lambdas; ++i) {
    const double l = 0.25 * std::pow(16.0, static_cast<double>(i) / (lambdas - 1));
    acsv.row(l, gauss::affinity_factor(l), gauss::affinity_distance({{l}}));
  }
  const json results = {{"max_achievability_gap", worst}};
  return finish_summary(config, p, results, {"delta.csv", "affinity.csv"});
}

json run_spectral_check(const ExperimentConfig& config) {
  Params p(config.params, config.source);
  const auto d = density_param(p, "density", {{"kind", "log_power"}, {"alpha", -1.0}, {"domain_floor", 1.0}},
                               config.source);
  const double cutoff = p.get("cutoff", 1e4);
  const int grid = p.get("grid", 256);
  const bool demand = p.get("demand_bounded", true);
  if (!(cutoff > d.domain_floor())) p.fail("cutoff", "cutoff must exceed the domain floor");
  if (grid < 64) p.fail("grid", "grid must be >= 64");
  prepare_dir(config);

  const auto cert = spectral::check_offwhite(d, cutoff, grid, demand);
  const auto bd = spectral::check_bounded_decay(d, cutoff);
  Csv csv(config.output_dir / "ladder.csv", "cutoff,difference_integral,derivative_integral");
  for (std::size_t i = 0; i < cert.difference_integral.cutoffs.size(); ++i) {
    csv.row(cert.difference_integral.cutoffs[i], cert.difference_integral.values[i], cert.derivative_integral.values[i]);
  }
  const json results = {{"certificate", cert.to_json()},
                        {"bounded", bd.bounded},
                        {"decays", bd.decays},
                        {"verdict", spectral::to_string(cert.verdict)}};
  return finish_summary(config, p, results, {"ladder.csv"});
}

json run_experiment(const ExperimentConfig& config) {
  if (config.name == "separate") return run_separation(config);
  if (config.name == "flipdecay") return run_flipdecay(config);
  if (config.name == "randomset") return run_randomset(config);
  if (config.name == "kab") return run_kab(config);
  if (config.name == "gauss") return run_gauss(config);
  if (config.name == "spectral-check") return run_spectral_check(config);
  throw ConfigError("unknown experiment '" + config.name + "'");
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on off-white noise and random sets"};
  app.require_subcommand(1);
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  int threads = 0;
  app.add_option("--config", config_path, "JSON experiment config");
  auto* seed_opt = app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  const std::map<std::string, std::string> blurbs{
      {"separate", "Separation witness and verdict tables for two log-decay densities"},
      {"flipdecay", "Norm of the sign-flip comb versus its step count"},
      {"randomset", "Euler paths, hit sets and box dimensions"},
      {"kab", "Build, distort and decode K_{a,b} gap ledgers"},
      {"gauss", "Gaussian affinity and the orthogonalizing norm over angles"},
      {"spectral-check", "Closed-form comb transforms against the FFT"}};
  for (const auto& name : command_names()) {
    const auto it = blurbs.find(name);
    app.add_subcommand(name, it == blurbs.end() ? "" : it->second)->fallthrough();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    ExperimentConfig config;
    if (!config_path.empty()) config = ExperimentConfig::load(config_path);
    if (!config.name.empty() && config.name != command) {
      throw ConfigError("config names experiment '" + config.name + "' but command is '" + command + "'");
    }
    config.name = command;
    if (seed_opt->count() > 0) config.seed = seed;
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (threads > 0) config.threads = threads;
    const auto summary = run_experiment(config);
    std::cout << summary["results"].dump(2) << "\n";
    return 0;
  } catch (const ContractError& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 3;
  } catch (const EvaluationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const DecodeError& e) {
    std::cerr << "decode failure: " << e.what() << "\n";
    return 3;
  } catch (const ParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace offwhite::cli
