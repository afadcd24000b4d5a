#pragma once

#include <string>
#include <vector>

#include "theft_trace/event.hpp"

namespace theft_trace {

struct Session {
  std::string account;
  std::string ip;
  Timestamp login_ts = 0;
  Timestamp logout_ts = 0;
  bool truncated = false;  // no matching logout observed
  std::vector<GameEvent> events;  // includes the login/logout events

  Timestamp duration_s() const { return logout_ts - login_ts; }
};

struct OrphanRecord {
  GameEvent event;
  std::string reason;  // "OrphanLogout" or "OutsideSession"
};

struct SessionizeResult {
  std::vector<Session> sessions;
  std::vector<OrphanRecord> orphans;
};

// Pairs each LOGIN with the account's next LOGOUT; a LOGIN without one
// yields a truncated session closed at the account's last event.
// Input must be globally sorted by ts (ties keep input order).
SessionizeResult sessionize(const std::vector<GameEvent>& events);

}  // namespace theft_trace
