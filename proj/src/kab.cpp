#include "offwhite/kab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "offwhite/error.hpp"
#include "offwhite/rng.hpp"

namespace offwhite::randomset {

namespace {

std::int64_t pow10(int n) {
  std::int64_t v = 1;
  for (int i = 0; i < n; ++i) v *= 10;
  return v;
}

struct Builder {
  const KabSpec& spec;
  std::vector<KabPoint> out;

  bool allowed(int level, std::uint32_t signs) const {
    // level = 2k+1 with k >= 1 is constrained by the pair (c_{2k}, c_{2k+1})
    if (level < 3 || level % 2 == 0) return true;
    const int k = (level - 1) / 2;
    const bool prev_plus = (signs >> (level - 2)) & 1u;
    const bool cur_plus = (signs >> (level - 1)) & 1u;
    if (!prev_plus && !cur_plus && spec.a[static_cast<std::size_t>(k - 1)] == 0) return false;
    if (prev_plus && cur_plus && spec.b[static_cast<std::size_t>(k - 1)] == 0) return false;
    return true;
  }

  void visit(int level, std::uint32_t signs, std::int64_t numerator) {
    if (!allowed(level, signs)) return;
    if (level < spec.depth) visit(level + 1, signs, 3 * numerator - 1);
    out.push_back({level, signs, numerator});
    if (level < spec.depth) visit(level + 1, signs | (1u << level), 3 * numerator + 1);
  }
};

}  // namespace

nlohmann::json KabSpec::to_json() const { return {{"a", a}, {"b", b}, {"depth", depth}}; }

KabSpec KabSpec::from_json(const nlohmann::json& j) {
  require(j.is_object(), "kab spec must be a JSON object");
  KabSpec s;
  for (const auto& [key, v] : j.items()) {
    if (key == "a") s.a = v.get<std::vector<int>>();
    else if (key == "b") s.b = v.get<std::vector<int>>();
    else if (key == "depth") s.depth = v.get<int>();
    else throw ParameterError("kab spec: unknown key '" + key + "'");
  }
  validate(s);
  return s;
}

void validate(const KabSpec& spec) {
  require(spec.depth >= 1 && spec.depth <= 14, "kab: depth must lie in [1, 14]");
  require(spec.a.size() == static_cast<std::size_t>(spec.depth) &&
              spec.b.size() == static_cast<std::size_t>(spec.depth),
          "kab: a and b must have one bit per level");
  for (std::size_t i = 0; i < spec.a.size(); ++i) {
    require((spec.a[i] == 0 || spec.a[i] == 1) && (spec.b[i] == 0 || spec.b[i] == 1), "kab: bits must be 0 or 1");
  }
}

std::vector<KabPoint> kab_points(const KabSpec& spec) {
  validate(spec);
  Builder b{spec, {}};
  b.visit(1, 0u, -1);
  b.visit(1, 1u, 1);
  return std::move(b.out);
}

void KabSample::write_ledger_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open " + path.string());
  out << "index,position,length,level\n";
  char buf[128];
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%d\n", i, ledger[i].position, ledger[i].length, ledger[i].level);
    out << buf;
  }
}

KabSample build_kab(const KabSpec& spec) {
  const auto points = kab_points(spec);
  KabSample s;
  s.depth = spec.depth;
  const double unit = std::pow(10.0, -spec.depth);
  std::int64_t cursor = 0;
  for (const auto& p : points) {
    const std::int64_t len = pow10(spec.depth - p.level);
    s.ledger.push_back({static_cast<double>(cursor) * unit, std::pow(10.0, -p.level), p.level, cursor});
    cursor += len;
  }
  s.set.resolution = unit;
  for (const auto& g : s.ledger) s.set.intervals.push_back({g.position, g.position});
  const double end = static_cast<double>(cursor) * unit;
  s.set.intervals.push_back({end, end});
  s.set.total_time = end;
  return s;
}

double Distortion::derivative(double t, double total) const {
  switch (kind) {
    case Kind::identity: return 1.0;
    case Kind::reflection: return -1.0;
    case Kind::random_c1: break;
  }
  const CounterRng rng(seed, 0x6b6162);
  double l = 0.0;
  double norm = 0.0;
  for (int j = 1; j <= 6; ++j) {
    const auto u = rng.uniforms(static_cast<std::uint64_t>(j));
    const double w = (2.0 * u[0] - 1.0) / j;
    l += w * std::sin(2.0 * std::numbers::pi * (j * t / total + u[1]));
    norm += std::abs(w);
  }
  return std::exp(0.95 * std::log(3.0) * l / norm);
}

std::string Distortion::name() const {
  switch (kind) {
    case Kind::identity: return "identity";
    case Kind::reflection: return "reflection";
    case Kind::random_c1: return "random_c1";
  }
  return "identity";
}

std::vector<GapEntry> apply_distortion(const std::vector<GapEntry>& ledger, const Distortion& map) {
  require(!ledger.empty(), "apply_distortion: empty ledger");
  const double total = ledger.back().position + ledger.back().length;
  std::vector<GapEntry> out = ledger;
  if (map.kind == Distortion::Kind::identity) return out;
  if (map.kind == Distortion::Kind::reflection) {
    for (auto& g : out) g.position = total - (g.position + g.length);
    return out;
  }
  double cursor = 0.0;
  for (auto& g : out) {
    const double lo = g.position;
    const double len = boost::math::quadrature::gauss<double, 10>::integrate(
        [&](double t) { return map.derivative(t, total); }, lo, lo + g.length);
    g.position = cursor;
    g.length = len;
    cursor += len;
  }
  return out;
}

std::string to_string(Orientation o) { return o == Orientation::increasing ? "increasing" : "decreasing"; }

namespace {

// Reads the bits from an in-order level sequence, with a virtual level-0 node
// inserted before index `cut` (cut == size means none). A closed sequence is a
// whole forest, so nothing lies beyond its ends.
KabDecode read_bits(const std::vector<int>& raw, std::size_t cut, int max_level, bool closed) {
  std::vector<int> level;
  std::vector<bool> real;
  for (std::size_t i = 0; i <= raw.size(); ++i) {
    if (i == cut && cut < raw.size()) {
      level.push_back(0);
      real.push_back(false);
    }
    if (i < raw.size()) {
      level.push_back(raw[i]);
      real.push_back(true);
    }
  }

  // next strictly shallower entry to the right
  std::vector<long> next_shallower(level.size(), -1);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < level.size(); ++i) {
    while (!stack.empty() && level[stack.back()] > level[i]) {
      next_shallower[stack.back()] = static_cast<long>(i);
      stack.pop_back();
    }
    stack.push_back(i);
  }

  std::map<int, int> a_read;
  std::map<int, int> b_read;
  auto record = [](std::map<int, int>& m, int k, int bit, const char* name) {
    auto [it, fresh] = m.emplace(k, bit);
    if (!fresh && it->second != bit) {
      throw DecodeError(std::string("decode_kab: conflicting readings of ") + name + "_" + std::to_string(k));
    }
  };
  for (std::size_t i = 0; i < level.size(); ++i) {
    const int l = level[i];
    if (!real[i] || l % 2 != 0 || l + 1 > max_level) continue;
    const int k = l / 2;
    if (next_shallower[i] < 0 && !closed) continue;
    const bool left_child =
        next_shallower[i] >= 0 && level[static_cast<std::size_t>(next_shallower[i])] == l - 1;
    if (left_child) {
      if (i == 0 && !closed) continue;
      record(a_read, k, i > 0 && level[i - 1] > l ? 1 : 0, "a");
    } else {
      if (i + 1 == level.size() && !closed) continue;
      record(b_read, k, i + 1 < level.size() && level[i + 1] > l ? 1 : 0, "b");
    }
  }
  KabDecode out;
  for (const auto& [k, bit] : a_read) {
    auto it = b_read.find(k);
    if (it == b_read.end()) continue;
    out.ks.push_back(k);
    out.a.push_back(bit);
    out.b.push_back(it->second);
  }
  return out;
}

}  // namespace

KabDecode decode_kab(const std::vector<GapEntry>& observed, double distortion_bound) {
  require(distortion_bound >= 1.0, "decode_kab: distortion bound must be >= 1");
  require(observed.size() >= 3, "decode_kab: need at least three gaps");
  KabDecode out;
  bool inc = true;
  bool dec = true;
  for (std::size_t i = 1; i < observed.size(); ++i) {
    inc = inc && observed[i].position > observed[i - 1].position;
    dec = dec && observed[i].position < observed[i - 1].position;
  }
  if (!inc && !dec) throw DecodeError("decode_kab: ledger positions are not monotone");
  out.orientation = inc ? Orientation::increasing : Orientation::decreasing;

  std::vector<GapEntry> gaps = observed;
  std::sort(gaps.begin(), gaps.end(), [](const GapEntry& p, const GapEntry& q) { return p.position < q.position; });
  const double log_d = std::log10(distortion_bound);
  std::vector<int> level(gaps.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (!(gaps[i].length > 0.0)) throw DecodeError("decode_kab: non-positive gap length");
    const double lg = -std::log10(gaps[i].length);
    const auto n = static_cast<int>(std::lround(lg));
    if (n < 1 || std::abs(lg - n) > log_d) {
      throw DecodeError("decode_kab: gap of length " + std::to_string(gaps[i].length) + " fits no level");
    }
    if (std::abs(lg - (n - 1)) <= log_d || std::abs(lg - (n + 1)) <= log_d) ++out.ambiguous;
    level[i] = n;
  }
  const int max_level = *std::max_element(level.begin(), level.end());

  // Two trees meet where equal-level nodes have no shallower node between
  // them; the seam is located down to a choice of at most two cut points.
  std::vector<std::size_t> cuts;
  const int top = *std::min_element(level.begin(), level.end());
  std::vector<std::size_t> tops;
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (level[i] == top) tops.push_back(i);
  }
  const bool closed = top == 1 && tops.size() == 2;
  if (tops.size() == 2) {
    std::size_t lo = tops[0];
    std::size_t hi = tops[1];
    for (int l = top + 1;; ++l) {
      std::vector<std::size_t> inner;
      for (std::size_t i = lo + 1; i < hi; ++i) {
        if (level[i] == l) inner.push_back(i);
      }
      if (inner.size() == 2) {
        lo = inner[0];
        hi = inner[1];
        continue;
      }
      cuts.push_back(lo + 1);
      if (inner.size() == 1) cuts.push_back(hi);
      break;
    }
  } else {
    cuts.push_back(level.size());  // no seam inside the window
  }

  std::vector<KabDecode> found;
  std::string first_error;
  for (std::size_t cut : cuts) {
    try {
      found.push_back(read_bits(level, cut, max_level, closed));
    } catch (const DecodeError& e) {
      if (first_error.empty()) first_error = e.what();
    }
  }
  if (found.empty()) throw DecodeError(first_error);
  if (found.size() == 2 && (found[0].ks != found[1].ks || found[0].a != found[1].a || found[0].b != found[1].b)) {
    throw DecodeError("decode_kab: the seam between the root trees is ambiguous");
  }
  out.ks = std::move(found[0].ks);
  out.a = std::move(found[0].a);
  out.b = std::move(found[0].b);
  if (out.ks.empty()) throw DecodeError("decode_kab: window holds no decodable level");
  out.k0 = out.ks.front();
  return out;
}

}  // namespace offwhite::randomset
