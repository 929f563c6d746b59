#include "offwhite/diffusion.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <mutex>
#include <thread>

#include "offwhite/error.hpp"
#include "offwhite/rng.hpp"

namespace offwhite::randomset {

namespace {

constexpr double kPi = std::numbers::pi;

double frac(double v) { return v - std::floor(v); }

std::string target_name(TargetKind k) {
  switch (k) {
    case TargetKind::cantor: return "cantor";
    case TargetKind::full: return "full";
    case TargetKind::empty: return "empty";
  }
  return "cantor";
}

TargetKind target_from(const std::string& s) {
  if (s == "cantor") return TargetKind::cantor;
  if (s == "full") return TargetKind::full;
  if (s == "empty") return TargetKind::empty;
  throw ParameterError("diffusion: unknown target '" + s + "'");
}

}  // namespace

double drift_f(double y, double eps) {
  y = frac(y);
  if (y <= 0.75) return 1.0 + eps * (0.5 - std::cos(4.0 * kPi * y / 3.0));
  return 1.0 + eps * (0.5 + std::cos(4.0 * kPi * (y - 0.75)));
}

double noise_g(double y, double eta) {
  y = frac(y);
  if (y <= 0.75) return 0.0;
  const double s = std::sin(4.0 * kPi * (y - 0.75));
  return eta * s * s;
}

double DiffusionParams::effective_hit_tolerance() const {
  if (hit_tolerance >= 0.0) return hit_tolerance;
  return target == TargetKind::cantor ? k1.finest_length() : 0.0;
}

CantorSet DiffusionParams::target_set() const {
  switch (target) {
    case TargetKind::cantor: return CantorSet(k1);
    case TargetKind::full: return CantorSet::full();
    case TargetKind::empty: return CantorSet::none();
  }
  return CantorSet::none();
}

nlohmann::json DiffusionParams::to_json() const {
  return {{"eps_drift", eps_drift},   {"noise_amp", noise_amp},
          {"dt", dt},                 {"horizon", horizon},
          {"seed", seed},             {"hit_tolerance", hit_tolerance},
          {"k1", k1.to_json()},       {"target", target_name(target)},
          {"x0", x0},                 {"y0", y0},
          {"refine_factor", refine_factor}, {"reverse_x", reverse_x},
          {"unit_drift", unit_drift}};
}

DiffusionParams DiffusionParams::from_json(const nlohmann::json& j) {
  require(j.is_object(), "diffusion params must be a JSON object");
  DiffusionParams p;
  for (const auto& [key, v] : j.items()) {
    if (key == "eps_drift") p.eps_drift = v.get<double>();
    else if (key == "noise_amp") p.noise_amp = v.get<double>();
    else if (key == "dt") p.dt = v.get<double>();
    else if (key == "horizon") p.horizon = v.get<double>();
    else if (key == "seed") p.seed = v.get<std::uint64_t>();
    else if (key == "hit_tolerance") p.hit_tolerance = v.get<double>();
    else if (key == "k1") p.k1 = CantorSpec::from_json(v);
    else if (key == "target") p.target = target_from(v.get<std::string>());
    else if (key == "x0") p.x0 = v.get<double>();
    else if (key == "y0") p.y0 = v.get<double>();
    else if (key == "refine_factor") p.refine_factor = v.get<int>();
    else if (key == "reverse_x") p.reverse_x = v.get<bool>();
    else if (key == "unit_drift") p.unit_drift = v.get<bool>();
    else throw ParameterError("diffusion params: unknown key '" + key + "'");
  }
  validate(p);
  return p;
}

void validate(const DiffusionParams& p) {
  require(p.eps_drift > 0.0 && p.eps_drift <= 1.0, "diffusion: eps_drift must lie in (0, 1]");
  require(p.noise_amp > 0.0, "diffusion: noise_amp must be positive");
  require(p.dt > 0.0 && p.horizon > 0.0 && p.dt <= p.horizon, "diffusion: need 0 < dt <= horizon");
  require(p.refine_factor >= 1, "diffusion: refine_factor must be >= 1");
  require(std::isfinite(p.x0) && std::isfinite(p.y0), "diffusion: initial point must be finite");
  if (p.target == TargetKind::cantor) validate(p.k1);
}

double step_size(const DiffusionParams& p, double fy) {
  if (p.refine_factor <= 1) return p.dt;
  // A jump in the step size biases the time-weighted occupation near the
  // jump, so the step shrinks geometrically across a ramp of width 0.1.
  constexpr double lo = 0.2;
  constexpr double hi = 0.55;
  constexpr double ramp = 0.1;
  const double d = fy < lo ? lo - fy : (fy > hi ? fy - hi : 0.0);
  const double depth = std::max(0.0, 1.0 - d / ramp);
  return p.dt * std::pow(static_cast<double>(p.refine_factor), -depth);
}

void simulate_steps(const DiffusionParams& p, std::uint64_t path, const std::function<void(const Step&)>& visit) {
  validate(p);
  const CounterRng rng(p.seed, path);
  Step s;
  s.x = p.x0;
  s.y = p.y0;
  double t = 0.0;
  std::uint64_t index = 0;
  while (t < p.horizon) {
    const double fy = frac(s.y);
    double h = step_size(p, fy);
    if (t + h >= p.horizon * (1.0 - 1e-15)) h = p.horizon - t;
    const auto z = rng.normals(index);
    const double sq = std::sqrt(h);
    const double f = p.unit_drift ? 1.0 : drift_f(fy, p.eps_drift);
    const double g = p.unit_drift ? 0.0 : noise_g(fy, p.noise_amp);
    s.index = index;
    s.t = t;
    s.dt = h;
    s.x_next = s.x + (p.reverse_x ? -f : f) * h + (g > 0.0 ? g * sq * z[1] : 0.0);
    s.y_next = s.y + sq * z[0];
    visit(s);
    t = (h == p.horizon - t) ? p.horizon : t + h;
    s.x = s.x_next;
    s.y = s.y_next;
    ++index;
  }
}

void Trajectory::write_binary(const std::filesystem::path& path, const DiffusionParams& p) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open " + path.string());
  for (std::size_t i = 0; i < size(); ++i) {
    const double row[3] = {t[i], x[i], y[i]};
    out.write(reinterpret_cast<const char*>(row), sizeof row);
  }
  std::ofstream side(path.string() + ".json");
  side << nlohmann::json{{"layout", "float64 little-endian (t,x,y) triples"},
                         {"count", size()},
                         {"params", p.to_json()}}
              .dump(2)
       << "\n";
}

Trajectory simulate_diffusion(const DiffusionParams& p, std::uint64_t path) {
  Trajectory tr;
  tr.t.push_back(0.0);
  tr.x.push_back(p.x0);
  tr.y.push_back(p.y0);
  simulate_steps(p, path, [&](const Step& s) {
    tr.t.push_back(s.t + s.dt);
    tr.x.push_back(s.x_next);
    tr.y.push_back(s.y_next);
    tr.dt.push_back(s.dt);
  });
  return tr;
}

double HitSet::boundary_fraction() const {
  return hit_steps == 0 ? 0.0 : static_cast<double>(boundary_steps) / static_cast<double>(hit_steps);
}

void HitSet::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open " + path.string());
  out << "lo,hi,cluster\n";
  char buf[96];
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (std::size_t i = clusters[c].first; i < clusters[c].first + clusters[c].count; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu\n", sample.intervals[i].lo, sample.intervals[i].hi, c);
      out << buf;
    }
  }
}

HitExtractor::HitExtractor(const DiffusionParams& p)
    : params_(p), target_(p.target_set()), pad_(p.effective_hit_tolerance()) {
  validate(p);
  out_.sample.resolution = p.dt / p.refine_factor;
  out_.sample.total_time = p.horizon;
  out_.slope_min = INFINITY;
  out_.slope_max = -INFINITY;
}

void HitExtractor::close_cluster() {
  if (in_band_) in_band_ = false;
}

void HitExtractor::add_interval(double lo, double hi) {
  auto& cl = out_.clusters.back();
  auto& iv = out_.sample.intervals;
  if (cl.count > 0 && lo <= iv.back().hi) {
    iv.back().hi = std::max(iv.back().hi, hi);
    return;
  }
  iv.push_back({lo, hi});
  ++cl.count;
}

void HitExtractor::on_step(const Step& s) {
  const double fy = frac(s.y);
  if (fy < 0.25 || fy > 0.5) {
    if (in_band_) {
      out_.clusters.back().t_end = s.t;
      in_band_ = false;
    }
    return;
  }
  if (!in_band_) {
    out_.clusters.push_back({s.t, s.t + s.dt, out_.sample.intervals.size(), 0});
    in_band_ = true;
  }
  out_.clusters.back().t_end = s.t + s.dt;
  out_.band_time += s.dt;
  if (target_.empty()) return;

  const double v = (s.x_next - s.x) / s.dt;
  const double lo = std::min(s.x, s.x_next);
  const double hi = std::max(s.x, s.x_next);
  step_hits_.clear();
  const auto m0 = static_cast<long long>(std::ceil(lo - 1.0 - pad_));
  const auto m1 = static_cast<long long>(std::floor(hi + pad_));
  for (long long m = m0; m <= m1; ++m) {
    const double shift = static_cast<double>(m);
    scratch_.clear();
    target_.dilated_overlaps(lo - shift, hi - shift, pad_, scratch_);
    for (const auto& iv : scratch_) {
      const double a = std::max(lo, iv.lo + shift);
      const double b = std::min(hi, iv.hi + shift);
      if (a > b) continue;
      double ta = s.t + (a - s.x) / v;
      double tb = s.t + (b - s.x) / v;
      if (ta > tb) std::swap(ta, tb);
      step_hits_.push_back({std::clamp(ta, s.t, s.t + s.dt), std::clamp(tb, s.t, s.t + s.dt)});
    }
  }
  if (step_hits_.empty()) return;
  std::sort(step_hits_.begin(), step_hits_.end(),
            [](const ClosedInterval& p, const ClosedInterval& q) { return p.lo < q.lo; });
  for (const auto& iv : step_hits_) add_interval(iv.lo, iv.hi);

  ++out_.hit_steps;
  const double margin = std::min(std::abs(fy - 0.25), std::abs(fy - 0.5));
  if (margin <= std::sqrt(s.dt)) ++out_.boundary_steps;
  out_.slope_min = std::min(out_.slope_min, v);
  out_.slope_max = std::max(out_.slope_max, v);
}

HitSet HitExtractor::finish() {
  close_cluster();
  if (out_.hit_steps == 0) {
    out_.slope_min = 0.0;
    out_.slope_max = 0.0;
  }
  return std::move(out_);
}

HitSet extract_hit_set(const Trajectory& traj, const DiffusionParams& p) {
  if (p.target == TargetKind::cantor) {
    require(p.k1.depth >= 0, "extract_hit_set: empty K1");
  }
  HitExtractor ex(p);
  Step s;
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    s.index = i;
    s.t = traj.t[i];
    s.dt = i < traj.dt.size() ? traj.dt[i] : traj.t[i + 1] - traj.t[i];
    s.x = traj.x[i];
    s.y = traj.y[i];
    s.x_next = traj.x[i + 1];
    s.y_next = traj.y[i + 1];
    ex.on_step(s);
  }
  return ex.finish();
}

HitSet simulate_hits(const DiffusionParams& p, std::uint64_t path) {
  HitExtractor ex(p);
  simulate_steps(p, path, [&](const Step& s) { ex.on_step(s); });
  return ex.finish();
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

Occupation occupation(const DiffusionParams& p, int paths, int bins, int threads) {
  validate(p);
  require(bins >= 1, "occupation: bins must be >= 1");
  const auto side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(paths))));
  require(paths >= 1 && side * side == paths, "occupation: paths must be a perfect square");
  const auto nb = static_cast<std::size_t>(bins) * static_cast<std::size_t>(bins);
  std::vector<std::vector<double>> per_path(static_cast<std::size_t>(paths));
  std::vector<std::uint64_t> steps(static_cast<std::size_t>(paths), 0);
  parallel_for(static_cast<std::size_t>(paths), threads, [&](std::size_t i) {
    DiffusionParams q = p;
    q.x0 = (static_cast<double>(i % static_cast<std::size_t>(side)) + 0.5) / side;
    q.y0 = (static_cast<double>(i / static_cast<std::size_t>(side)) + 0.5) / side;
    auto& hist = per_path[i];
    hist.assign(nb, 0.0);
    simulate_steps(q, i, [&](const Step& s) {
      const auto bx = std::min(bins - 1, static_cast<int>(frac(s.x) * bins));
      const auto by = std::min(bins - 1, static_cast<int>(frac(s.y) * bins));
      hist[static_cast<std::size_t>(bx) * static_cast<std::size_t>(bins) + static_cast<std::size_t>(by)] += s.dt;
      ++steps[i];
    });
  });
  Occupation occ;
  occ.bins = bins;
  occ.mass.assign(nb, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < per_path.size(); ++i) {
    for (std::size_t b = 0; b < nb; ++b) occ.mass[b] += per_path[i][b];
    occ.steps += steps[i];
  }
  for (double m : occ.mass) total += m;
  for (double& m : occ.mass) {
    m /= total;
    occ.max_deviation = std::max(occ.max_deviation, std::abs(m * static_cast<double>(nb) - 1.0));
  }
  return occ;
}

double lifted_y_variance(const DiffusionParams& p, int paths, int threads) {
  require(paths >= 2, "lifted_y_variance: need at least two paths");
  std::vector<double> disp(static_cast<std::size_t>(paths));
  parallel_for(disp.size(), threads, [&](std::size_t i) {
    double last = p.y0;
    simulate_steps(p, i, [&](const Step& s) { last = s.y_next; });
    disp[i] = last - p.y0;
  });
  double mean = 0.0;
  for (double d : disp) mean += d;
  mean /= static_cast<double>(paths);
  double ss = 0.0;
  for (double d : disp) ss += (d - mean) * (d - mean);
  return ss / static_cast<double>(paths - 1);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), "ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

std::vector<double> first_gap_lengths(const HitSet& h) {
  std::vector<double> out;
  for (const auto& c : h.clusters) {
    if (c.count < 2) continue;
    out.push_back(h.sample.intervals[c.first + 1].lo - h.sample.intervals[c.first].hi);
  }
  return out;
}

}  // namespace offwhite::randomset
