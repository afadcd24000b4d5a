#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "theft_trace/session.hpp"

namespace theft_trace {

struct TheftCase {
  std::string victim_account;
  DayIndex theft_day = 0;
};

struct BlacklistEntry {
  std::string victim_account;
  DayIndex theft_day = 0;
};

struct Blacklist {
  // IP -> provenance (which theft cases implicated it)
  std::map<std::string, std::vector<BlacklistEntry>> ips;

  bool contains(const std::string& ip) const { return ips.count(ip) > 0; }
  std::set<std::string> ip_set() const;
};

struct BlacklistResult {
  Blacklist blacklist;
  // victim accounts with no session on their theft date (skipped)
  std::vector<TheftCase> no_session_cases;
};

// IPs that logged into a victim account on its theft date, minus IPs that
// account used in the owner_window_days before the theft date.
BlacklistResult build_ip_blacklist(const std::vector<Session>& sessions,
                                   const std::vector<TheftCase>& confirmed,
                                   int owner_window_days = 30);

}  // namespace theft_trace
