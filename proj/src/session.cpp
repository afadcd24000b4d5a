#include "theft_trace/session.hpp"

#include <map>
#include <stdexcept>

namespace theft_trace {

SessionizeResult sessionize(const std::vector<GameEvent>& events) {
  SessionizeResult result;
  // per-account open session, keyed by account id
  std::map<std::string, Session> open;

  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& ev = events[i];
    if (i > 0 && ev.ts < events[i - 1].ts)
      throw std::invalid_argument("sessionize: events not sorted by ts");
    if (!is_analysis_code(ev.type)) continue;

    auto it = open.find(ev.account);
    if (ev.type == EventCode::LOGIN) {
      if (it != open.end()) {
        // login while a session is open: close the previous one as
        // truncated at its last event, then start fresh
        Session s = std::move(it->second);
        s.truncated = true;
        s.logout_ts = s.events.back().ts;
        open.erase(it);
        result.sessions.push_back(std::move(s));
      }
      Session s;
      s.account = ev.account;
      s.ip = ev.ip;
      s.login_ts = ev.ts;
      s.events.push_back(ev);
      open.emplace(ev.account, std::move(s));
    } else if (ev.type == EventCode::LOGOUT) {
      if (it == open.end()) {
        result.orphans.push_back({ev, "OrphanLogout"});
        continue;
      }
      Session s = std::move(it->second);
      open.erase(it);
      s.logout_ts = ev.ts;
      s.events.push_back(ev);
      result.sessions.push_back(std::move(s));
    } else {
      if (it == open.end()) {
        result.orphans.push_back({ev, "OutsideSession"});
        continue;
      }
      it->second.events.push_back(ev);
    }
  }

  for (auto& [account, s] : open) {
    s.truncated = true;
    s.logout_ts = s.events.back().ts;
    result.sessions.push_back(std::move(s));
  }

  // deterministic order: by login time, then account
  std::stable_sort(result.sessions.begin(), result.sessions.end(),
                   [](const Session& a, const Session& b) {
                     if (a.login_ts != b.login_ts) return a.login_ts < b.login_ts;
                     return a.account < b.account;
                   });
  return result;
}

}  // namespace theft_trace
