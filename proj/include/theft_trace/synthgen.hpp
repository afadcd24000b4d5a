#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "theft_trace/event.hpp"
#include "theft_trace/time_utils.hpp"

namespace theft_trace {

// Knobs for the seeded scenario generator. Defaults mirror the shipped
// default scenario: 1000 normal sessions, 82 theft sessions split
// 32/33/7/10 across the four duration types.
struct ScenarioConfig {
  int n_normal_accounts = 200;
  int sessions_per_normal_account = 5;
  int n_victims = 23;
  std::array<int, 4> theft_sessions_per_type{32, 33, 7, 10};
  int type4_more_than_hour = 2;  // of the type-4 sessions

  double normal_ratio_min = 0.20;  // daily expenditure ratio band, normals
  double normal_ratio_max = 0.25;
  double theft_day_ratio = 0.70;   // target spend ratio on the theft day

  int gfg_depth = 3;  // 3 = farmer -> merchant -> banker; 2 drops the merchant
  int n_farmers = 4;
  int n_bankers = 2;

  double normal_paid_fraction = 0.19;
  int n_normal_trades = 600;

  // normal accounts whose one look-alike session duplicates a theft
  // session's feature vector (hard negatives)
  int n_crafter_accounts = 12;

  int n_normal_zones = 8;
  int normal_zone_base = 100;
  int theft_zone_collect = 210;   // where victims hand off ("C")
  int theft_zone_deliver = 211;   // where the merchant delivers ("D")

  std::string start_date = "2010-06-23";
  int n_days = 10;
  int theft_day_offset = 6;  // day 7 of the victims' week

  int n_blacklist_ips = 9;
  int n_suspicious_a = 2;
  int n_suspicious_b = 2;
  int n_suspicious_fresh = 1;

  int n_excluded_noise_events = 200;

  std::uint64_t seed = 7;
};

struct SessionLabel {
  std::string account;
  Timestamp login_ts = 0;
  std::string label;  // "normal" | "theft" | "infra"
  int theft_type = 0;  // 1..4 for theft sessions, else 0
  bool more_than_hour = false;
};

struct GroundTruth {
  std::vector<std::string> victims;
  std::vector<std::string> farmer_accounts;
  std::vector<std::string> banker_accounts;
  std::string merchant_account;  // empty when gfg_depth == 2
  std::vector<std::string> blacklist_ips;
  std::map<std::string, DayIndex> theft_dates;  // victim -> day
  std::map<std::string, std::string> expected_groups;  // suspicious accounts
  std::set<int> theft_zones;
  std::vector<SessionLabel> sessions;

  std::string to_json() const;
  static GroundTruth from_json(const std::string& text);
};

struct ScenarioOutput {
  std::vector<GameEvent> events;  // globally sorted by ts
  GroundTruth truth;
};

class InfeasibleConfig : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deterministic: same config + seed gives byte-identical logs.
ScenarioOutput generate_scenario(const ScenarioConfig& cfg);

// Human-readable parameter summary; excludes the seed so seed-only
// variants describe identically.
std::string describe_scenario(const ScenarioConfig& cfg);

// key = value config format ("scenario.toml" style)
ScenarioConfig parse_scenario_config(const std::string& text);
std::string scenario_config_to_text(const ScenarioConfig& cfg);

}  // namespace theft_trace
