#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace theft_trace {

// Epoch seconds, UTC, second resolution.
using Timestamp = std::int64_t;

// Days since 1970-01-01 UTC. One calendar day per index.
using DayIndex = std::int64_t;

// Parses "YYYY-MM-DDTHH:MM:SSZ". Returns nullopt on any syntactic or
// range violation (month 13, Feb 30, hour 24, ...).
std::optional<Timestamp> parse_timestamp(const std::string& text);

// Inverse of parse_timestamp, always "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(Timestamp ts);

// "YYYY-MM-DD" for the UTC day containing ts.
std::string format_date(Timestamp ts);

std::optional<Timestamp> parse_date(const std::string& text);  // midnight UTC

inline DayIndex day_of(Timestamp ts) {
  // floor division: pre-1970 timestamps still bucket correctly
  return ts >= 0 ? ts / 86400 : (ts - 86399) / 86400;
}

inline Timestamp day_start(DayIndex day) { return day * 86400; }

}  // namespace theft_trace
