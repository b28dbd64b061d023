#include "tokforge/common/clock.hpp"

#include <chrono>

#include <fmt/chrono.h>

namespace tokforge {

TimestampFn system_clock_timestamps() {
  return [] {
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", now);
  };
}

TimestampFn fixed_timestamps() {
  return [] { return std::string("1970-01-01T00:00:00Z"); };
}

}  // namespace tokforge
