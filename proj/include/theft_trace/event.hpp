#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "theft_trace/taxonomy.hpp"
#include "theft_trace/time_utils.hpp"

namespace theft_trace {

using Money = std::int64_t;

// Type-dependent attributes. Only the fields required by the event's
// category are populated; the canonical serializer emits them in a
// fixed order so parse/serialize round-trips byte-identically.
struct EventAttrs {
  std::optional<Money> money_delta;       // money events (sign per category)
  std::optional<std::string> counterparty;  // TRADE_GIVE
  std::optional<std::string> item_id;     // item / trade events
  std::optional<std::int64_t> quantity;   // item / trade events
  std::optional<Money> paid_amount;       // trade events, >= 0
  std::optional<std::int64_t> level;      // user information
  std::optional<std::int64_t> exp_point;  // user information
  std::optional<Money> balance;           // user information, opening balance

  bool operator==(const EventAttrs&) const = default;
};

struct GameEvent {
  Timestamp ts = 0;
  std::string account;
  std::string character;
  std::string ip;
  EventCode type = EventCode::LOGIN;
  int zone = 0;
  EventAttrs attrs;

  std::optional<ActionCategory> category() const { return code_category(type); }
  bool operator==(const GameEvent&) const = default;
};

enum class ParseReason { MalformedRecord, UnknownEventType, AttributeMismatch };

std::string_view parse_reason_name(ParseReason r);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseReason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}
  ParseReason reason() const { return reason_; }

 private:
  ParseReason reason_;
};

// One JSON-lines record -> validated event. Throws ParseError.
GameEvent parse_log_line(const std::string& line);

// Canonical JSON-lines form: fixed field order, integer attrs only.
std::string serialize_event(const GameEvent& ev);

// Keeps analysis-code events only, order preserved.
std::vector<GameEvent> filter_events(const std::vector<GameEvent>& events);

}  // namespace theft_trace
