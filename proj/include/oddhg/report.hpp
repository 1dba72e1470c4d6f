#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace oddhg {

inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a 64-bit content hash, reported as "fnv1a64:<16 hex digits>".
std::string content_digest(std::string_view bytes);

/// Rounds to 12 significant digits so reports are byte-stable.
double sig12(double v);

}  // namespace oddhg
