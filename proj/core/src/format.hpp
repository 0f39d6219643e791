// Internal: shortest round-trip decimal formatting for file emission.
#pragma once

#include <charconv>
#include <string>

namespace cfs::detail {

inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace cfs::detail
