#include "theft_trace/blacklist.hpp"

#include <stdexcept>

namespace theft_trace {

std::set<std::string> Blacklist::ip_set() const {
  std::set<std::string> out;
  for (const auto& [ip, prov] : ips) out.insert(ip);
  return out;
}

BlacklistResult build_ip_blacklist(const std::vector<Session>& sessions,
                                   const std::vector<TheftCase>& confirmed,
                                   int owner_window_days) {
  if (confirmed.empty())
    throw std::invalid_argument("build_ip_blacklist: no confirmed cases");
  if (owner_window_days < 0)
    throw std::invalid_argument("build_ip_blacklist: negative owner window");

  // account -> login day -> IPs used
  std::map<std::string, std::map<DayIndex, std::set<std::string>>> logins;
  for (const auto& s : sessions)
    logins[s.account][day_of(s.login_ts)].insert(s.ip);

  BlacklistResult result;
  for (const auto& c : confirmed) {
    auto acct = logins.find(c.victim_account);
    if (acct == logins.end() || acct->second.count(c.theft_day) == 0) {
      result.no_session_cases.push_back(c);
      continue;
    }
    std::set<std::string> owner_ips;
    for (DayIndex d = c.theft_day - owner_window_days; d < c.theft_day; ++d) {
      auto it = acct->second.find(d);
      if (it != acct->second.end())
        owner_ips.insert(it->second.begin(), it->second.end());
    }
    for (const auto& ip : acct->second.at(c.theft_day)) {
      if (owner_ips.count(ip)) continue;
      result.blacklist.ips[ip].push_back({c.victim_account, c.theft_day});
    }
  }
  return result;
}

}  // namespace theft_trace
