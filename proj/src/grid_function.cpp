#include "offwhite/grid_function.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "offwhite/error.hpp"

namespace offwhite {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

GridFunction::GridFunction(double t0, double t1, std::vector<double> values)
    : t0_(t0), t1_(t1), values_(std::move(values)) {
  require(t0_ < t1_, "GridFunction: t0 must be below t1");
  require(values_.size() >= 2 && is_power_of_two(values_.size()),
          "GridFunction: sample count must be a power of two >= 2");
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParameterError("GridFunction: non-finite sample");
  }
}

GridFunction GridFunction::zeros(double t0, double t1, std::size_t n) {
  return GridFunction(t0, t1, std::vector<double>(n, 0.0));
}

GridFunction GridFunction::sample(double t0, double t1, std::size_t n,
                                  const std::function<double(double)>& f) {
  std::vector<double> v(n);
  const double h = (t1 - t0) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(t0 + (static_cast<double>(i) + 0.5) * h);
  return GridFunction(t0, t1, std::move(v));
}

double GridFunction::l2_norm_sq() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return s * dt();
}

double GridFunction::l2_norm() const { return std::sqrt(l2_norm_sq()); }

bool GridFunction::same_grid(const GridFunction& other) const {
  return size() == other.size() && t0_ == other.t0_ && t1_ == other.t1_;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require(same_grid(other), "GridFunction: grids differ");
  for (std::size_t i = 0; i < size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require(same_grid(other), "GridFunction: grids differ");
  for (std::size_t i = 0; i < size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator*(double s, GridFunction a) { return a *= s; }

void GridFunction::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open " + path.string());
  out << "t,value\n";
  char buf[64];
  for (std::size_t i = 0; i < size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", midpoint(i), values_[i]);
    out << buf;
  }
}

GridFunction GridFunction::read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "t,value") throw ParameterError(path.string() + ":1: expected header 't,value'");
  std::vector<double> ts;
  std::vector<double> vs;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParameterError(path.string() + ":" + std::to_string(lineno) + ": expected 't,value'");
    }
    try {
      ts.push_back(std::stod(line.substr(0, comma)));
      vs.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ParameterError(path.string() + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  if (ts.size() < 2) throw ParameterError(path.string() + ": need at least two samples");
  const double h = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
  return GridFunction(ts.front() - 0.5 * h, ts.back() + 0.5 * h, std::move(vs));
}

void GridFunction::write_raw(const std::filesystem::path& path) const {
  static_assert(std::endian::native == std::endian::little, "raw export assumes a little-endian host");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(values_.data()),
            static_cast<std::streamsize>(values_.size() * sizeof(double)));
  std::ofstream side(path.string() + ".json");
  side << nlohmann::json{{"t0", t0_}, {"t1", t1_}, {"n_samples", size()}}.dump(2) << "\n";
}

GridFunction GridFunction::read_raw(const std::filesystem::path& path) {
  std::ifstream side(path.string() + ".json");
  if (!side) throw ParameterError("missing sidecar " + path.string() + ".json");
  const auto meta = nlohmann::json::parse(side);
  const auto n = meta.at("n_samples").get<std::size_t>();
  std::vector<double> v(n);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open " + path.string());
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(n * sizeof(double))) {
    throw ParameterError(path.string() + ": truncated sample file");
  }
  return GridFunction(meta.at("t0").get<double>(), meta.at("t1").get<double>(), std::move(v));
}

}  // namespace offwhite
