#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <json.hpp>

namespace offwhite::randomset {

struct ClosedInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Sorted, pairwise disjoint closed intervals at a stated resolution.
struct ClosedSetSample {
  double resolution = 0.0;
  double total_time = 0.0;
  std::vector<ClosedInterval> intervals;

  /// Columns lo,hi.
  void write_csv(const std::filesystem::path& path) const;
};

/// Two children of relative length `ratio` per level. Symmetric sets keep
/// the children flush with both ends of the parent; asymmetric ones put the
/// right child at the parent's midpoint instead.
struct CantorSpec {
  double ratio = 1.0 / 3.0;
  int depth = 8;
  bool symmetric = true;

  double dimension() const;
  /// (2√r)^depth, the 1/2-dimensional cover sum at this depth.
  double cover_sum() const;
  bool half_null() const { return ratio < 0.25; }
  double finest_length() const;

  nlohmann::json to_json() const;
  static CantorSpec from_json(const nlohmann::json& j);
};

void validate(const CantorSpec& spec);

/// Depth-level approximant of K₁ as a recursive structure; queries cost
/// O(depth + output) and never materialize the 2^depth intervals.
class CantorSet {
 public:
  explicit CantorSet(const CantorSpec& spec);

  const CantorSpec& spec() const { return spec_; }
  bool empty() const { return empty_; }

  /// Depth-level intervals meeting [lo - pad, hi + pad], each dilated by
  /// `pad` (not clipped), in increasing order.
  void dilated_overlaps(double lo, double hi, double pad, std::vector<ClosedInterval>& out) const;

  /// Distance from x ∈ [0, 1] to the depth-level set.
  double distance(double x) const;

  static CantorSet none();
  /// The whole of [0, 1].
  static CantorSet full();
  bool is_full() const { return full_; }

 private:
  CantorSet() = default;
  void descend(double a, double len, int level, double lo, double hi, double pad,
               std::vector<ClosedInterval>& out) const;
  void nearest(double a, double len, int level, double x, double& best) const;

  CantorSpec spec_;
  bool empty_ = false;
  bool full_ = false;
};

/// All 2^depth intervals; depth must be at most 24.
ClosedSetSample build_cantor(const CantorSpec& spec);

}  // namespace offwhite::randomset
