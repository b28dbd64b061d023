#pragma once

#include <functional>
#include <string>

namespace tokforge {

/// Produces ISO-8601 UTC timestamps. Injected wherever records carry a time so
/// that runs can be made fully reproducible.
using TimestampFn = std::function<std::string()>;

[[nodiscard]] TimestampFn system_clock_timestamps();
/// Always "1970-01-01T00:00:00Z".
[[nodiscard]] TimestampFn fixed_timestamps();

}  // namespace tokforge
