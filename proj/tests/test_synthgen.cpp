#include <doctest.h>

#include <map>
#include <set>

#include "theft_trace/sequence.hpp"
#include "theft_trace/session.hpp"
#include "theft_trace/synthgen.hpp"

using namespace theft_trace;

namespace {

// small scenario so these unit tests stay fast
ScenarioConfig small_config() {
  ScenarioConfig cfg;
  cfg.n_normal_accounts = 30;
  cfg.sessions_per_normal_account = 4;
  cfg.n_victims = 5;
  cfg.theft_sessions_per_type = {4, 5, 2, 3};
  cfg.type4_more_than_hour = 1;
  cfg.n_farmers = 2;
  cfg.n_crafter_accounts = 3;
  cfg.n_normal_trades = 80;
  cfg.n_blacklist_ips = 3;
  cfg.n_excluded_noise_events = 20;
  return cfg;
}

}  // namespace

TEST_CASE("generation is deterministic and seed-sensitive") {
  const auto cfg = small_config();
  const auto a = generate_scenario(cfg);
  const auto b = generate_scenario(cfg);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i)
    CHECK(serialize_event(a.events[i]) == serialize_event(b.events[i]));
  CHECK(a.truth.to_json() == b.truth.to_json());

  auto cfg2 = cfg;
  cfg2.seed = cfg.seed + 1;
  const auto c = generate_scenario(cfg2);
  bool identical = a.events.size() == c.events.size();
  if (identical)
    for (std::size_t i = 0; i < a.events.size(); ++i)
      if (!(serialize_event(a.events[i]) == serialize_event(c.events[i]))) {
        identical = false;
        break;
      }
  CHECK_FALSE(identical);
}

TEST_CASE("events are globally sorted and parse back") {
  const auto out = generate_scenario(small_config());
  for (std::size_t i = 1; i < out.events.size(); ++i)
    CHECK(out.events[i - 1].ts <= out.events[i].ts);
  for (std::size_t i = 0; i < out.events.size(); i += 97) {
    const auto again = parse_log_line(serialize_event(out.events[i]));
    CHECK(again == out.events[i]);
  }
}

TEST_CASE("ground truth matches the sessionized log") {
  const auto cfg = small_config();
  const auto out = generate_scenario(cfg);
  const auto sr = sessionize(filter_events(out.events));
  CHECK(sr.orphans.empty());
  CHECK(sr.sessions.size() == out.truth.sessions.size());

  std::map<std::pair<std::string, Timestamp>, std::string> labels;
  for (const auto& s : out.truth.sessions)
    labels[{s.account, s.login_ts}] = s.label;
  int theft = 0;
  for (const auto& s : sr.sessions) {
    auto it = labels.find({s.account, s.login_ts});
    REQUIRE(it != labels.end());
    if (it->second == "theft") ++theft;
    CHECK_FALSE(s.truncated);
  }
  const auto& t = cfg.theft_sessions_per_type;
  CHECK(theft == t[0] + t[1] + t[2] + t[3]);
}

TEST_CASE("theft sessions land in the configured duration buckets") {
  const auto cfg = small_config();
  const auto out = generate_scenario(cfg);
  const auto sr = sessionize(filter_events(out.events));
  std::map<std::pair<std::string, Timestamp>, const Session*> by_key;
  for (const auto& s : sr.sessions) by_key[{s.account, s.login_ts}] = &s;

  std::map<int, int> counts;
  int more_than_hour = 0;
  for (const auto& lbl : out.truth.sessions) {
    if (lbl.label != "theft") continue;
    const Session* s = by_key.at({lbl.account, lbl.login_ts});
    const auto d = classify_session_duration(s->duration_s());
    CHECK(static_cast<int>(d.type) == lbl.theft_type);
    counts[lbl.theft_type]++;
    if (lbl.theft_type == 4 && d.subtype == Type4Subtype::MoreThanHour) {
      ++more_than_hour;
      CHECK(lbl.more_than_hour);
    }
  }
  CHECK(counts[1] == cfg.theft_sessions_per_type[0]);
  CHECK(counts[2] == cfg.theft_sessions_per_type[1]);
  CHECK(counts[3] == cfg.theft_sessions_per_type[2]);
  CHECK(counts[4] == cfg.theft_sessions_per_type[3]);
  CHECK(more_than_hour == cfg.type4_more_than_hour);
}

TEST_CASE("blacklist IPs appear only in theft-day victim logins") {
  const auto out = generate_scenario(small_config());
  const std::set<std::string> bl(out.truth.blacklist_ips.begin(),
                                 out.truth.blacklist_ips.end());
  CHECK(bl.size() == 3);
  std::set<std::string> victims(out.truth.victims.begin(),
                                out.truth.victims.end());
  for (const auto& ev : out.events)
    if (ev.type == EventCode::LOGIN && bl.count(ev.ip))
      CHECK((victims.count(ev.account) ||
             out.truth.merchant_account == ev.account ||
             std::count(out.truth.banker_accounts.begin(),
                        out.truth.banker_accounts.end(), ev.account) > 0));
}

TEST_CASE("infeasible configs are rejected with a diagnosis") {
  auto cfg = small_config();
  cfg.theft_day_offset = cfg.n_days;  // theft outside the range
  CHECK_THROWS_AS(generate_scenario(cfg), InfeasibleConfig);

  cfg = small_config();
  cfg.sessions_per_normal_account = cfg.n_days;  // needs 2x days
  CHECK_THROWS_AS(generate_scenario(cfg), InfeasibleConfig);

  cfg = small_config();
  cfg.n_victims = 0;
  CHECK_THROWS_AS(generate_scenario(cfg), InfeasibleConfig);

  cfg = small_config();
  cfg.theft_sessions_per_type = {20, 1, 0, 0};  // 5 victims, 1 spending session
  CHECK_THROWS_AS(generate_scenario(cfg), InfeasibleConfig);

  cfg = small_config();
  cfg.gfg_depth = 5;
  CHECK_THROWS_AS(generate_scenario(cfg), InfeasibleConfig);

  cfg = small_config();
  cfg.n_crafter_accounts = cfg.n_normal_accounts + 1;
  CHECK_THROWS_AS(generate_scenario(cfg), InfeasibleConfig);
}

TEST_CASE("gfg depth 2 wires farmers straight to bankers") {
  auto cfg = small_config();
  cfg.gfg_depth = 2;
  const auto out = generate_scenario(cfg);
  CHECK(out.truth.merchant_account.empty());
  std::set<std::string> bankers(out.truth.banker_accounts.begin(),
                                out.truth.banker_accounts.end());
  bool farmer_to_banker = false;
  for (const auto& ev : out.events)
    if (ev.type == EventCode::TRADE_GIVE && ev.attrs.counterparty &&
        bankers.count(*ev.attrs.counterparty) &&
        std::count(out.truth.farmer_accounts.begin(),
                   out.truth.farmer_accounts.end(), ev.account) > 0)
      farmer_to_banker = true;
  CHECK(farmer_to_banker);
}

TEST_CASE("config text round trip") {
  auto cfg = small_config();
  cfg.start_date = "2011-03-05";
  cfg.theft_day_ratio = 0.65;
  const std::string text = scenario_config_to_text(cfg);
  const ScenarioConfig back = parse_scenario_config(text);
  CHECK(scenario_config_to_text(back) == text);
  CHECK(back.n_victims == cfg.n_victims);
  CHECK(back.start_date == cfg.start_date);
  CHECK(back.seed == cfg.seed);
}

TEST_CASE("config parser: comments, blanks, and errors") {
  const ScenarioConfig cfg = parse_scenario_config(
      "# a comment\n\nn_victims = 9  # trailing comment\nseed = 3\n");
  CHECK(cfg.n_victims == 9);
  CHECK(cfg.seed == 3);
  CHECK_THROWS(parse_scenario_config("nonsense line\n"));
  CHECK_THROWS(parse_scenario_config("unknown_key = 5\n"));
}

TEST_CASE("ground truth json round trip") {
  const auto out = generate_scenario(small_config());
  const std::string j = out.truth.to_json();
  const GroundTruth back = GroundTruth::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(back.victims == out.truth.victims);
  CHECK(back.theft_dates == out.truth.theft_dates);
  CHECK(back.sessions.size() == out.truth.sessions.size());
}

TEST_CASE("describe_scenario is seed-independent") {
  auto cfg = small_config();
  const std::string a = describe_scenario(cfg);
  cfg.seed += 100;
  CHECK(describe_scenario(cfg) == a);
  CHECK(a.find("5 victims") != std::string::npos);
}
