#include <doctest.h>

#include "theft_trace/blacklist.hpp"

using namespace theft_trace;

namespace {

Session sess(const std::string& account, const std::string& ip, DayIndex day,
             Timestamp offset = 36000) {
  Session s;
  s.account = account;
  s.ip = ip;
  s.login_ts = day_start(day) + offset;
  s.logout_ts = s.login_ts + 600;
  return s;
}

}  // namespace

TEST_CASE("theft-date IPs minus habitual owner IPs") {
  const DayIndex theft_day = 14791;  // arbitrary
  std::vector<Session> sessions = {
      sess("victim", "10.1.0.1", theft_day - 5),   // owner habit
      sess("victim", "10.1.0.2", theft_day - 2),   // owner habit
      sess("victim", "10.1.0.1", theft_day, 100),  // owner also on theft day
      sess("victim", "203.0.113.7", theft_day, 200),  // the thief
      sess("other", "203.0.113.9", theft_day),     // unrelated account
  };
  const auto r = build_ip_blacklist(sessions, {{"victim", theft_day}});
  CHECK(r.no_session_cases.empty());
  CHECK(r.blacklist.ip_set() == std::set<std::string>{"203.0.113.7"});
  const auto& prov = r.blacklist.ips.at("203.0.113.7");
  REQUIRE(prov.size() == 1);
  CHECK(prov[0].victim_account == "victim");
  CHECK(prov[0].theft_day == theft_day);
}

TEST_CASE("owner window bounds which prior IPs count") {
  const DayIndex theft_day = 1000;
  std::vector<Session> sessions = {
      sess("v", "10.1.0.1", theft_day - 40),  // outside the 30-day window
      sess("v", "10.1.0.1", theft_day, 100),
      sess("v", "203.0.113.7", theft_day, 200),
  };
  const auto r30 = build_ip_blacklist(sessions, {{"v", theft_day}}, 30);
  // the stale IP falls outside the window, so it is blacklisted too
  CHECK(r30.blacklist.ip_set() ==
        std::set<std::string>{"10.1.0.1", "203.0.113.7"});
  const auto r60 = build_ip_blacklist(sessions, {{"v", theft_day}}, 60);
  CHECK(r60.blacklist.ip_set() == std::set<std::string>{"203.0.113.7"});
}

TEST_CASE("victims with no theft-date session are skipped and reported") {
  std::vector<Session> sessions = {sess("v", "10.1.0.1", 99)};
  const auto r = build_ip_blacklist(sessions, {{"v", 100}, {"w", 100}});
  CHECK(r.blacklist.ips.empty());
  REQUIRE(r.no_session_cases.size() == 2);
  CHECK(r.no_session_cases[0].victim_account == "v");
  CHECK(r.no_session_cases[1].victim_account == "w");
}

TEST_CASE("one IP can be implicated by several cases") {
  std::vector<Session> sessions = {
      sess("v1", "203.0.113.7", 100, 100),
      sess("v2", "203.0.113.7", 100, 200),
  };
  const auto r = build_ip_blacklist(sessions, {{"v1", 100}, {"v2", 100}});
  REQUIRE(r.blacklist.ips.count("203.0.113.7") == 1);
  CHECK(r.blacklist.ips.at("203.0.113.7").size() == 2);
}

TEST_CASE("no confirmed cases is an error") {
  CHECK_THROWS_AS(build_ip_blacklist({}, {}), std::invalid_argument);
}
