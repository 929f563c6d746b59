#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "offwhite/cantor.hpp"

namespace offwhite::randomset {

enum class TargetKind { cantor, full, empty };

struct DiffusionParams {
  double eps_drift = 0.5;   // f(1/2) = 1 + eps
  double noise_amp = 1.0;   // η in g
  double dt = 2e-4;
  double horizon = 1.0;
  std::uint64_t seed = 1;
  double hit_tolerance = -1.0;  // negative selects the finest K₁ length
  CantorSpec k1{1.0 / 9.0, 12, true};
  TargetKind target = TargetKind::cantor;
  double x0 = 0.0;
  double y0 = 0.0;
  int refine_factor = 16;   // dt divisor while y mod 1 ∈ [0.2, 0.55], ramped over 0.1 outside
  bool reverse_x = false;   // drift -f(y)
  bool unit_drift = false;  // f ≡ 1, g ≡ 0

  double effective_hit_tolerance() const;
  CantorSet target_set() const;
  nlohmann::json to_json() const;
  /// Rejects unknown keys.
  static DiffusionParams from_json(const nlohmann::json& j);
};

void validate(const DiffusionParams& p);

/// f(y) = 1 + ε(1/2 - cos(4πy/3)) on [0, 3/4], 1 + ε(1/2 + cos(4π(y - 3/4))) on [3/4, 1].
double drift_f(double y, double eps);
/// g(y) = η sin²(4π(y - 3/4)) on (3/4, 1), zero elsewhere.
double noise_g(double y, double eta);

/// Step length at y mod 1 = fy.
double step_size(const DiffusionParams& p, double fy);

/// One Euler–Maruyama step of the lifted path.
struct Step {
  std::uint64_t index = 0;
  double t = 0.0;
  double dt = 0.0;
  double x = 0.0;
  double y = 0.0;
  double x_next = 0.0;
  double y_next = 0.0;
};

/// Runs one path, calling `visit` for every step in order. Path `path`
/// draws from the stream (seed, path).
void simulate_steps(const DiffusionParams& p, std::uint64_t path, const std::function<void(const Step&)>& visit);

/// Lifted (t, x, y) samples, including the initial point.
struct Trajectory {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> dt;  // step sizes as integrated; dt[i] spans t[i]..t[i+1]

  std::size_t size() const { return t.size(); }
  /// Raw float64 (t, x, y) triples plus `<path>.json` holding the count and the params.
  void write_binary(const std::filesystem::path& path, const DiffusionParams& p) const;
};

Trajectory simulate_diffusion(const DiffusionParams& p, std::uint64_t path = 0);

/// One visit of y to the band [1/4, 1/2] with the hit intervals it produced.
struct HitCluster {
  double t_begin = 0.0;
  double t_end = 0.0;
  std::size_t first = 0;  // index into HitSet::sample.intervals
  std::size_t count = 0;
};

struct HitSet {
  ClosedSetSample sample;
  std::vector<HitCluster> clusters;
  std::size_t hit_steps = 0;
  std::size_t boundary_steps = 0;  // hit steps with y within √dt of 1/4 or 1/2
  double slope_min = 0.0;          // x increment / dt over hit steps
  double slope_max = 0.0;
  double band_time = 0.0;          // time with y mod 1 in [1/4, 1/2]

  double boundary_fraction() const;
  /// Column lo,hi,cluster.
  void write_csv(const std::filesystem::path& path) const;
};

/// Streaming hit extraction: feed steps in order, then call finish().
class HitExtractor {
 public:
  explicit HitExtractor(const DiffusionParams& p);
  void on_step(const Step& s);
  HitSet finish();

 private:
  void close_cluster();
  void add_interval(double lo, double hi);

  DiffusionParams params_;
  CantorSet target_;
  double pad_;
  HitSet out_;
  bool in_band_ = false;
  std::vector<ClosedInterval> scratch_;
  std::vector<ClosedInterval> step_hits_;
};

HitSet extract_hit_set(const Trajectory& traj, const DiffusionParams& p);
/// Simulates and extracts without storing the trajectory.
HitSet simulate_hits(const DiffusionParams& p, std::uint64_t path = 0);

/// Runs fn(i) for i in [0, n) on `threads` workers; fn must write only to its own slot.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

struct Occupation {
  int bins = 0;
  std::vector<double> mass;  // bins × bins, row-major in (x, y), sums to 1
  double max_deviation = 0.0;  // max |mass·bins² - 1|
  std::uint64_t steps = 0;
};

/// Time-weighted occupation of the torus over `paths` paths started on a
/// stratified lattice of the unit square.
Occupation occupation(const DiffusionParams& p, int paths, int bins, int threads);

/// Sample variance of the lifted y displacement at the horizon.
double lifted_y_variance(const DiffusionParams& p, int paths, int threads);

/// Two-sample Kolmogorov–Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Length of the first internal gap of each cluster holding at least two intervals.
std::vector<double> first_gap_lengths(const HitSet& h);

}  // namespace offwhite::randomset
