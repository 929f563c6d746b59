#pragma once

#include <array>
#include <cstdint>

namespace offwhite::randomset {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                         std::array<std::uint32_t, 2> key);

/// Stateless stream keyed by (seed, stream); draw i depends only on i, so
/// parallel paths reproduce independently of scheduling.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::array<std::uint32_t, 4> block(std::uint64_t index) const;
  /// Two uniforms in (0, 1) with 53-bit resolution.
  std::array<double, 2> uniforms(std::uint64_t index) const;
  /// Two independent standard normals (Box–Muller).
  std::array<double, 2> normals(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace offwhite::randomset
