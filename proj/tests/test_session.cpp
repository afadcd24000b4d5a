#include <doctest.h>

#include "theft_trace/session.hpp"

using namespace theft_trace;

namespace {

GameEvent ev(Timestamp ts, const std::string& account, EventCode code,
             const std::string& ip = "10.0.0.1") {
  GameEvent e;
  e.ts = ts;
  e.account = account;
  e.character = account + "_c";
  e.ip = ip;
  e.type = code;
  return e;
}

}  // namespace

TEST_CASE("basic login/logout pairing with interleaved accounts") {
  // hand-checked fixture: two accounts interleaved in time
  std::vector<GameEvent> events = {
      ev(100, "a", EventCode::LOGIN),
      ev(110, "b", EventCode::LOGIN),
      ev(120, "a", EventCode::MOVE_WALK),
      ev(130, "b", EventCode::ETC_BATTLE_ATTACK),
      ev(140, "a", EventCode::LOGOUT),
      ev(150, "b", EventCode::LOGOUT),
  };
  const auto r = sessionize(events);
  REQUIRE(r.sessions.size() == 2);
  CHECK(r.orphans.empty());
  CHECK(r.sessions[0].account == "a");
  CHECK(r.sessions[0].login_ts == 100);
  CHECK(r.sessions[0].logout_ts == 140);
  CHECK(r.sessions[0].duration_s() == 40);
  CHECK_FALSE(r.sessions[0].truncated);
  CHECK(r.sessions[0].events.size() == 3);  // login, move, logout
  CHECK(r.sessions[1].account == "b");
  CHECK(r.sessions[1].duration_s() == 40);
}

TEST_CASE("nested login truncates the open session") {
  std::vector<GameEvent> events = {
      ev(100, "a", EventCode::LOGIN),
      ev(120, "a", EventCode::MOVE_WALK),
      ev(200, "a", EventCode::LOGIN),  // crash + relog: no logout seen
      ev(220, "a", EventCode::LOGOUT),
  };
  const auto r = sessionize(events);
  REQUIRE(r.sessions.size() == 2);
  CHECK(r.sessions[0].truncated);
  CHECK(r.sessions[0].logout_ts == 120);  // closed at last observed event
  CHECK_FALSE(r.sessions[1].truncated);
  CHECK(r.sessions[1].login_ts == 200);
  CHECK(r.sessions[1].logout_ts == 220);
}

TEST_CASE("trailing login without logout is truncated at last event") {
  std::vector<GameEvent> events = {
      ev(100, "a", EventCode::LOGIN),
      ev(150, "a", EventCode::ETC_CHAT_SAY),
      ev(180, "a", EventCode::MOVE_WALK),
  };
  const auto r = sessionize(events);
  REQUIRE(r.sessions.size() == 1);
  CHECK(r.sessions[0].truncated);
  CHECK(r.sessions[0].logout_ts == 180);
  CHECK(r.sessions[0].events.size() == 3);
}

TEST_CASE("orphan logout and out-of-session events are reported") {
  std::vector<GameEvent> events = {
      ev(50, "a", EventCode::LOGOUT),          // logout with no login
      ev(60, "a", EventCode::MOVE_WALK),       // activity outside any session
      ev(100, "a", EventCode::LOGIN),
      ev(140, "a", EventCode::LOGOUT),
      ev(150, "a", EventCode::ETC_CHAT_SAY),   // after the session closed
  };
  const auto r = sessionize(events);
  REQUIRE(r.sessions.size() == 1);
  REQUIRE(r.orphans.size() == 3);
  CHECK(r.orphans[0].reason == "OrphanLogout");
  CHECK(r.orphans[1].reason == "OutsideSession");
  CHECK(r.orphans[2].reason == "OutsideSession");
}

TEST_CASE("session ip comes from the login event") {
  std::vector<GameEvent> events = {
      ev(100, "a", EventCode::LOGIN, "203.0.113.9"),
      ev(140, "a", EventCode::LOGOUT, "203.0.113.9"),
  };
  const auto r = sessionize(events);
  REQUIRE(r.sessions.size() == 1);
  CHECK(r.sessions[0].ip == "203.0.113.9");
}

TEST_CASE("result ordered by (login_ts, account)") {
  std::vector<GameEvent> events = {
      ev(100, "b", EventCode::LOGIN), ev(100, "a", EventCode::LOGIN),
      ev(140, "b", EventCode::LOGOUT), ev(150, "a", EventCode::LOGOUT),
  };
  const auto r = sessionize(events);
  REQUIRE(r.sessions.size() == 2);
  CHECK(r.sessions[0].account == "a");
  CHECK(r.sessions[1].account == "b");
}

TEST_CASE("unsorted input is rejected") {
  std::vector<GameEvent> events = {
      ev(200, "a", EventCode::LOGIN),
      ev(100, "a", EventCode::LOGOUT),
  };
  CHECK_THROWS_AS(sessionize(events), std::invalid_argument);
}
