#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <system_error>

namespace psplit {

// Shortest decimal string that round-trips the exact double. Keeping every
// serialized number in this one format is what makes byte-identical outputs
// a meaningful contract.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_int(std::int64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_uint(std::uint64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace psplit
