#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "offwhite/cantor.hpp"

namespace offwhite::randomset {

/// Bits a_k, b_k for k = 1..depth (index k-1). Only k with 2k+1 <= depth
/// influence the set.
struct KabSpec {
  std::vector<int> a;
  std::vector<int> b;
  int depth = 12;

  nlohmann::json to_json() const;
  static KabSpec from_json(const nlohmann::json& j);
};

void validate(const KabSpec& spec);

/// Admissible sign vector c_1..c_n packed as bits (bit k-1 set ⇔ c_k = +1).
struct KabPoint {
  int level = 0;
  std::uint32_t signs = 0;
  /// x·3^level, exact.
  std::int64_t numerator = 0;
};

/// Admissible points in increasing order of x.
std::vector<KabPoint> kab_points(const KabSpec& spec);

struct GapEntry {
  double position = 0.0;  // left end
  double length = 0.0;
  int level = 0;
  std::int64_t units = 0;  // left end in units of 10^{-depth}
};

struct KabSample {
  ClosedSetSample set;  // gap endpoints, as degenerate intervals
  std::vector<GapEntry> ledger;
  int depth = 0;

  /// Columns index,position,length,level.
  void write_ledger_csv(const std::filesystem::path& path) const;
};

KabSample build_kab(const KabSpec& spec);

/// Monotone C¹ map applied to a ledger: either a reflection t ↦ c - t or
/// t ↦ ∫₀ᵗ exp(L(s)) ds with |L| <= 0.95·ln 3, so the derivative stays in
/// (1/3, 3).
struct Distortion {
  enum class Kind { identity, reflection, random_c1 };
  Kind kind = Kind::identity;
  std::uint64_t seed = 0;

  static Distortion identity() { return {}; }
  static Distortion reflection() { return {Kind::reflection, 0}; }
  static Distortion random_c1(std::uint64_t seed) { return {Kind::random_c1, seed}; }
  /// Derivative on the ledger's span [0, total].
  double derivative(double t, double total) const;
  std::string name() const;
};

/// Ledger entries keep their original order; positions and lengths are mapped.
std::vector<GapEntry> apply_distortion(const std::vector<GapEntry>& ledger, const Distortion& map);

enum class Orientation { increasing, decreasing };
std::string to_string(Orientation o);

struct KabDecode {
  std::vector<int> ks;  // decoded indices, ascending from k0
  std::vector<int> a;
  std::vector<int> b;
  Orientation orientation = Orientation::increasing;
  int k0 = 0;
  int ambiguous = 0;  // gaps classified by nearest level because bands overlapped
};

/// Reads (a_k, b_k) from gap lengths in position order. The gaps must come
/// from a monotone map with derivative in [1/bound, bound].
KabDecode decode_kab(const std::vector<GapEntry>& observed, double distortion_bound = 5.0);

}  // namespace offwhite::randomset
