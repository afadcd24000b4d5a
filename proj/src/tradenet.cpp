#include <algorithm>
#include <functional>
#include <json.hpp>
#include <stdexcept>

#include "theft_trace/tradenet.hpp"

namespace theft_trace {
namespace {

using EdgeKey = std::tuple<std::string, std::string, DayIndex, int>;

}  // namespace

std::vector<const TradeEdge*> TradeGraph::out_edges(
    const std::string& account) const {
  std::vector<const TradeEdge*> out;
  for (const auto& e : edges)
    if (e.giver == account) out.push_back(&e);
  return out;
}

TradeGraphResult build_trade_graph(
    const std::vector<GameEvent>& events,
    const std::set<std::string>& blacklisted_accounts,
    const std::set<std::string>& victims) {
  TradeGraphResult result;
  std::map<EdgeKey, TradeEdge> agg;

  for (const auto& ev : events) {
    if (ev.type != EventCode::TRADE_GIVE) continue;
    if (!ev.attrs.counterparty || *ev.attrs.counterparty == ev.account) {
      result.self_trades.push_back(ev);
      continue;
    }
    EdgeKey key{ev.account, *ev.attrs.counterparty, day_of(ev.ts), ev.zone};
    auto it = agg.find(key);
    if (it == agg.end()) {
      TradeEdge e;
      e.giver = ev.account;
      e.receiver = *ev.attrs.counterparty;
      e.date = day_of(ev.ts);
      e.zone = ev.zone;
      e.count = 1;
      e.paid_amount = ev.attrs.paid_amount.value_or(0);
      agg.emplace(key, std::move(e));
    } else {
      it->second.count += 1;
      it->second.paid_amount += ev.attrs.paid_amount.value_or(0);
    }
  }

  for (auto& [key, e] : agg) {
    auto touch = [&](const std::string& acct) {
      auto& attrs = result.graph.nodes[acct];
      attrs.blacklisted_ip_used |= blacklisted_accounts.count(acct) > 0;
      attrs.is_victim |= victims.count(acct) > 0;
    };
    touch(e.giver);
    touch(e.receiver);
    result.graph.edges.push_back(std::move(e));
  }
  return result;
}

double unpaid_trade_ratio(const TradeGraph& g,
                          const std::set<std::string>& accounts) {
  std::int64_t total = 0, unpaid = 0;
  for (const auto& e : g.edges) {
    if (!accounts.count(e.giver)) continue;
    total += e.count;
    if (e.unpaid()) unpaid += e.count;
  }
  if (total == 0)
    throw std::invalid_argument("unpaid_trade_ratio: accounts have no trades");
  return static_cast<double>(unpaid) / static_cast<double>(total);
}

std::string_view group_name(Group g) {
  switch (g) {
    case Group::TheftGroup: return "TheftGroup";
    case Group::SuspiciousA: return "SuspiciousA";
    case Group::SuspiciousB: return "SuspiciousB";
    case Group::SuspiciousB_LikelyTheft: return "SuspiciousB_LikelyTheft";
    case Group::Unrelated: return "Unrelated";
  }
  return "?";
}

std::map<std::string, Group> label_groups(const TradeGraph& g,
                                          const Blacklist& blacklist,
                                          const std::vector<Session>& sessions,
                                          int window_days) {
  // account -> day -> IPs used
  std::map<std::string, std::map<DayIndex, std::set<std::string>>> ip_history;
  std::set<std::string> theft_accounts;
  for (const auto& s : sessions) {
    ip_history[s.account][day_of(s.login_ts)].insert(s.ip);
    if (blacklist.contains(s.ip)) theft_accounts.insert(s.account);
  }

  std::set<int> theft_zones;
  for (const auto& e : g.edges)
    if (theft_accounts.count(e.giver) && theft_accounts.count(e.receiver))
      theft_zones.insert(e.zone);

  auto fresh_ip_on = [&](const std::string& acct, DayIndex day) {
    auto hist = ip_history.find(acct);
    if (hist == ip_history.end()) return false;
    auto today = hist->second.find(day);
    if (today == hist->second.end()) return false;
    std::set<std::string> prior;
    for (DayIndex d = day - window_days; d < day; ++d) {
      auto it = hist->second.find(d);
      if (it != hist->second.end()) prior.insert(it->second.begin(), it->second.end());
    }
    for (const auto& ip : today->second)
      if (!prior.count(ip)) return true;
    return false;
  };

  std::map<std::string, Group> labels;
  for (const auto& [acct, attrs] : g.nodes) {
    if (theft_accounts.count(acct)) {
      labels[acct] = Group::TheftGroup;
      continue;
    }
    bool traded_with_victim = false;
    bool traded_in_theft_zone = false;
    bool fresh_ip_theft_zone_trade = false;
    for (const auto& e : g.edges) {
      const bool involves = e.giver == acct || e.receiver == acct;
      if (!involves) continue;
      const std::string& other = e.giver == acct ? e.receiver : e.giver;
      if (g.nodes.at(other).is_victim) traded_with_victim = true;
      if (theft_zones.count(e.zone)) {
        traded_in_theft_zone = true;
        if (fresh_ip_on(acct, e.date)) fresh_ip_theft_zone_trade = true;
      }
    }
    if (!traded_with_victim) {
      labels[acct] = Group::Unrelated;
    } else if (!traded_in_theft_zone) {
      labels[acct] = Group::SuspiciousA;
    } else if (fresh_ip_theft_zone_trade) {
      labels[acct] = Group::SuspiciousB_LikelyTheft;
    } else {
      labels[acct] = Group::SuspiciousB;
    }
  }
  return labels;
}

std::string_view role_name(Role r) {
  switch (r) {
    case Role::GoldFarmer: return "GoldFarmer";
    case Role::Merchant: return "Merchant";
    case Role::Banker: return "Banker";
    case Role::None: return "None";
  }
  return "?";
}

namespace {

// Unpaid-edge adjacency restricted to nodes reachable from the victims.
struct UnpaidSubgraph {
  std::set<std::string> nodes;
  std::map<std::string, std::vector<const TradeEdge*>> out;
};

UnpaidSubgraph reachable_unpaid(const TradeGraph& g,
                                const std::set<std::string>& victims) {
  std::map<std::string, std::vector<const TradeEdge*>> adj;
  for (const auto& e : g.edges)
    if (e.unpaid()) adj[e.giver].push_back(&e);

  UnpaidSubgraph sub;
  std::vector<std::string> stack(victims.begin(), victims.end());
  while (!stack.empty()) {
    std::string acct = stack.back();
    stack.pop_back();
    if (!g.nodes.count(acct) || !sub.nodes.insert(acct).second) continue;
    for (const auto* e : adj[acct]) {
      sub.out[acct].push_back(e);
      stack.push_back(e->receiver);
    }
  }
  return sub;
}

// Nodes on any directed cycle: members of non-trivial strongly connected
// components (Tarjan), plus self-loop nodes.
std::set<std::string> cycle_nodes(const UnpaidSubgraph& sub) {
  std::map<std::string, int> index, lowlink;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::set<std::string> result;
  int next_index = 0;

  std::function<void(const std::string&)> strongconnect =
      [&](const std::string& u) {
        index[u] = lowlink[u] = next_index++;
        stack.push_back(u);
        on_stack.insert(u);
        auto it = sub.out.find(u);
        if (it != sub.out.end()) {
          for (const auto* e : it->second) {
            const auto& v = e->receiver;
            if (!sub.nodes.count(v)) continue;
            if (v == u) result.insert(u);  // self loop
            if (!index.count(v)) {
              strongconnect(v);
              lowlink[u] = std::min(lowlink[u], lowlink[v]);
            } else if (on_stack.count(v)) {
              lowlink[u] = std::min(lowlink[u], index[v]);
            }
          }
        }
        if (lowlink[u] == index[u]) {
          std::vector<std::string> component;
          while (true) {
            std::string w = stack.back();
            stack.pop_back();
            on_stack.erase(w);
            component.push_back(w);
            if (w == u) break;
          }
          if (component.size() > 1)
            result.insert(component.begin(), component.end());
        }
      };

  for (const auto& n : sub.nodes)
    if (!index.count(n)) strongconnect(n);
  return result;
}

}  // namespace

RoleResult infer_gfg_roles(const TradeGraph& g,
                           const std::set<std::string>& victims) {
  RoleResult result;
  const UnpaidSubgraph sub = reachable_unpaid(g, victims);
  result.temporal_cycle_accounts = cycle_nodes(sub);

  std::map<std::string, std::int64_t> in_flow, out_flow;
  for (const auto& [acct, edges] : sub.out)
    for (const auto* e : edges) {
      if (!sub.nodes.count(e->receiver)) continue;
      out_flow[acct] += e->count;
      in_flow[e->receiver] += e->count;
    }

  for (const auto& acct : sub.nodes) {
    if (result.temporal_cycle_accounts.count(acct)) continue;
    const std::int64_t in = in_flow[acct];
    const std::int64_t out = out_flow[acct];
    Role role = Role::None;
    if (out > 0 && (in == 0 || (victims.count(acct) && out > in)))
      role = Role::GoldFarmer;
    else if (in > 0 && out > 0)
      role = Role::Merchant;
    else if (in > 0)
      role = Role::Banker;
    result.roles[acct] = role;
  }
  return result;
}

std::vector<FlowPath> trace_money_flow(const TradeGraph& g,
                                       const std::set<std::string>& victims) {
  std::map<std::string, std::vector<const TradeEdge*>> adj;
  for (const auto& e : g.edges)
    if (e.unpaid()) adj[e.giver].push_back(&e);
  for (auto& [acct, edges] : adj)
    std::sort(edges.begin(), edges.end(),
              [](const TradeEdge* a, const TradeEdge* b) {
                return std::tie(a->receiver, a->date, a->zone) <
                       std::tie(b->receiver, b->date, b->zone);
              });

  std::vector<FlowPath> paths;
  std::vector<const TradeEdge*> current;
  std::set<std::string> on_path;

  std::function<void(const std::string&, const std::string&)> dfs =
      [&](const std::string& victim, const std::string& node) {
        auto it = adj.find(node);
        const bool is_sink = it == adj.end() || it->second.empty();
        if (is_sink) {
          if (!current.empty()) {
            FlowPath p;
            p.victim = victim;
            p.path.push_back(victim);
            for (const auto* e : current) {
              p.path.push_back(e->receiver);
              p.dates.push_back(e->date);
              p.zones.push_back(e->zone);
              p.total_count += e->count;
            }
            paths.push_back(std::move(p));
          }
          return;
        }
        for (const auto* e : it->second) {
          if (!current.empty() && e->date < current.back()->date)
            continue;  // time-respecting only
          if (on_path.count(e->receiver))
            throw std::runtime_error(
                "trace_money_flow: temporal cycle through '" + e->receiver + "'");
          on_path.insert(e->receiver);
          current.push_back(e);
          dfs(victim, e->receiver);
          current.pop_back();
          on_path.erase(e->receiver);
        }
      };

  for (const auto& v : victims) {
    if (!g.nodes.count(v)) continue;
    on_path.insert(v);
    dfs(v, v);
    on_path.erase(v);
  }
  return paths;
}

std::string flow_paths_to_json(const std::vector<FlowPath>& paths) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& p : paths) {
    nlohmann::ordered_json j;
    j["victim"] = p.victim;
    j["path"] = p.path;
    nlohmann::ordered_json dates = nlohmann::ordered_json::array();
    for (DayIndex d : p.dates) dates.push_back(format_date(day_start(d)));
    j["dates"] = dates;
    j["zones"] = p.zones;
    j["total_count"] = p.total_count;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string export_dot(const TradeGraph& g,
                       const std::map<std::string, Group>& labels,
                       const std::map<std::string, Role>& roles) {
  std::string out = "digraph trades {\n";
  out += "  rankdir=LR;\n  node [shape=ellipse, style=filled, fillcolor=white];\n";

  auto fill_for = [](Group grp) -> const char* {
    switch (grp) {
      case Group::TheftGroup: return "salmon";
      case Group::SuspiciousA: return "lightyellow";
      case Group::SuspiciousB: return "khaki";
      case Group::SuspiciousB_LikelyTheft: return "orange";
      case Group::Unrelated: return "white";
    }
    return "white";
  };
  auto shape_for = [](Role role) -> const char* {
    switch (role) {
      case Role::GoldFarmer: return "ellipse";
      case Role::Merchant: return "diamond";
      case Role::Banker: return "box";
      case Role::None: return "ellipse";
    }
    return "ellipse";
  };

  for (const auto& [acct, attrs] : g.nodes) {  // std::map: lexicographic
    Group grp = Group::Unrelated;
    if (auto it = labels.find(acct); it != labels.end()) grp = it->second;
    Role role = Role::None;
    if (auto it = roles.find(acct); it != roles.end()) role = it->second;
    out += "  \"" + acct + "\" [fillcolor=" + fill_for(grp) +
           ", shape=" + shape_for(role);
    if (role != Role::None)
      out += ", xlabel=\"" + std::string(role_name(role)) + "\"";
    out += "];\n";
  }

  std::vector<const TradeEdge*> sorted;
  for (const auto& e : g.edges) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](const TradeEdge* a, const TradeEdge* b) {
              return std::tie(a->giver, a->receiver, a->date, a->zone) <
                     std::tie(b->giver, b->receiver, b->date, b->zone);
            });
  for (const auto* e : sorted) {
    out += "  \"" + e->giver + "\" -> \"" + e->receiver + "\" [label=\"" +
           format_date(day_start(e->date)) + " / " + std::to_string(e->zone) +
           " / " + std::to_string(e->count) + "\"";
    if (e->unpaid()) out += ", color=red";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace theft_trace
