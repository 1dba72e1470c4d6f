#pragma once

#include <cstdint>
#include <random>

namespace oddhg::detail {

/// Uniform draw in [0, k) by rejection. mt19937_64 output is fully specified
/// by the standard, so sequences are reproducible across toolchains (the
/// distribution classes are not).
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t k) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % k;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % k;
}

}  // namespace oddhg::detail
