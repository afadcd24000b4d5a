#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "theft_trace/blacklist.hpp"
#include "theft_trace/event.hpp"
#include "theft_trace/session.hpp"

namespace theft_trace {

struct TradeEdge {
  std::string giver;
  std::string receiver;
  DayIndex date = 0;
  int zone = 0;
  int count = 1;           // trades aggregated into this edge
  Money paid_amount = 0;   // 0 = unpaid

  bool unpaid() const { return paid_amount == 0; }
};

struct TradeNodeAttrs {
  bool blacklisted_ip_used = false;
  bool is_victim = false;
};

struct TradeGraph {
  std::map<std::string, TradeNodeAttrs> nodes;
  std::vector<TradeEdge> edges;  // multigraph keyed by (giver, receiver, date, zone)

  std::vector<const TradeEdge*> out_edges(const std::string& account) const;
};

struct TradeGraphResult {
  TradeGraph graph;
  std::vector<GameEvent> self_trades;  // reported, dropped
};

// One edge per (giver, receiver, date, zone); counts and paid amounts
// aggregate. Node attributes come from the blacklist / victim sets.
TradeGraphResult build_trade_graph(const std::vector<GameEvent>& events,
                                   const std::set<std::string>& blacklisted_accounts = {},
                                   const std::set<std::string>& victims = {});

// Fraction of the accounts' outgoing trade count with paid_amount = 0.
double unpaid_trade_ratio(const TradeGraph& g, const std::set<std::string>& accounts);

enum class Group { TheftGroup, SuspiciousA, SuspiciousB, SuspiciousB_LikelyTheft, Unrelated };
std::string_view group_name(Group g);

// Account classification per the blacklist / zone / fresh-IP rules.
std::map<std::string, Group> label_groups(const TradeGraph& g,
                                          const Blacklist& blacklist,
                                          const std::vector<Session>& sessions,
                                          int window_days = 7);

enum class Role { GoldFarmer, Merchant, Banker, None };
std::string_view role_name(Role r);

struct RoleResult {
  std::map<std::string, Role> roles;
  // accounts in components where edge dates cycle; excluded from roles
  std::set<std::string> temporal_cycle_accounts;
};

// Flow-balance roles on the unpaid subgraph reachable from victims:
// sources with net unpaid out-flow are farmers, pass-through nodes are
// merchants, sinks are bankers.
RoleResult infer_gfg_roles(const TradeGraph& g, const std::set<std::string>& victims);

struct FlowPath {
  std::string victim;
  std::vector<std::string> path;   // victim .. sink
  std::vector<DayIndex> dates;     // one per hop
  std::vector<int> zones;          // one per hop
  std::int64_t total_count = 0;    // sum of hop counts
};

// All time-respecting unpaid paths (edge dates non-decreasing) from each
// victim to sink accounts.
std::vector<FlowPath> trace_money_flow(const TradeGraph& g,
                                       const std::set<std::string>& victims);

std::string flow_paths_to_json(const std::vector<FlowPath>& paths);

// Graphviz digraph; stable lexicographic node order, role/group styling.
std::string export_dot(const TradeGraph& g,
                       const std::map<std::string, Group>& labels,
                       const std::map<std::string, Role>& roles);

}  // namespace theft_trace
