#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace offwhite {

/// Real samples at the midpoints of a uniform partition of [t0, t1].
///
/// The sample count is a power of two. Operations that need a continuous
/// function read the samples as a step function, constant on each cell.
class GridFunction {
 public:
  GridFunction(double t0, double t1, std::vector<double> values);

  static GridFunction zeros(double t0, double t1, std::size_t n);
  static GridFunction sample(double t0, double t1, std::size_t n,
                             const std::function<double(double)>& f);

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  double dt() const { return (t1_ - t0_) / static_cast<double>(values_.size()); }
  std::size_t size() const { return values_.size(); }
  double midpoint(std::size_t i) const { return t0_ + (static_cast<double>(i) + 0.5) * dt(); }
  /// Start of cell i.
  double edge(std::size_t i) const { return t0_ + static_cast<double>(i) * dt(); }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  double l2_norm_sq() const;
  double l2_norm() const;

  bool same_grid(const GridFunction& other) const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double s);

  void write_csv(const std::filesystem::path& path) const;
  static GridFunction read_csv(const std::filesystem::path& path);

  /// Raw little-endian float64 samples plus `<path>.json` with {t0, t1, n_samples}.
  void write_raw(const std::filesystem::path& path) const;
  static GridFunction read_raw(const std::filesystem::path& path);

 private:
  double t0_;
  double t1_;
  std::vector<double> values_;
};

GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator*(double s, GridFunction a);

bool is_power_of_two(std::size_t n);

}  // namespace offwhite
