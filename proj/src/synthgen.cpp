#include "theft_trace/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <random>
#include <sstream>

#include "theft_trace/sequence.hpp"

namespace theft_trace {
namespace {

using json = nlohmann::ordered_json;

struct TwinTemplate {
  // parameters of a theft session a crafter duplicate must reproduce
  int type = 2;
  Timestamp duration = 0;
  int level = 45;
  Money spend = 0;  // total across E events
  Money gain = 0;   // F event
};

class Generator {
 public:
  explicit Generator(const ScenarioConfig& cfg)
      : cfg_(cfg), rng_(cfg.seed) {}

  ScenarioOutput run() {
    validate();
    const auto base = parse_date(cfg_.start_date);
    if (!base) throw InfeasibleConfig("unparseable start_date");
    base_day_ = day_of(*base);
    theft_day_ = base_day_ + cfg_.theft_day_offset;

    setup_gfg_accounts();
    generate_victims();
    generate_normals();
    generate_suspicious();
    generate_gfg_infra();
    generate_normal_trades();
    generate_noise();

    std::stable_sort(out_.events.begin(), out_.events.end(),
                     [](const GameEvent& a, const GameEvent& b) {
                       return a.ts < b.ts;
                     });
    std::sort(out_.truth.sessions.begin(), out_.truth.sessions.end(),
              [](const SessionLabel& a, const SessionLabel& b) {
                if (a.login_ts != b.login_ts) return a.login_ts < b.login_ts;
                return a.account < b.account;
              });
    return std::move(out_);
  }

 private:
  // ---- helpers -----------------------------------------------------------

  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  double uniform_real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  void validate() const {
    const auto& t = cfg_.theft_sessions_per_type;
    const int total_theft = t[0] + t[1] + t[2] + t[3];
    const int spend_capable = t[1] + t[2] + t[3];
    if (cfg_.n_normal_accounts < 0 || cfg_.sessions_per_normal_account < 0 ||
        cfg_.n_victims < 0 || t[0] < 0 || t[1] < 0 || t[2] < 0 || t[3] < 0)
      throw InfeasibleConfig("negative count in config");
    if (cfg_.theft_day_offset >= cfg_.n_days)
      throw InfeasibleConfig("theft day falls outside the date range");
    if (2 * cfg_.sessions_per_normal_account > cfg_.n_days)
      throw InfeasibleConfig("too many sessions per normal account for the date range");
    if (total_theft > 0) {
      if (cfg_.n_victims < 1)
        throw InfeasibleConfig("theft sessions configured but no victims");
      if (cfg_.n_blacklist_ips < 1)
        throw InfeasibleConfig("theft sessions configured but no blacklist IPs");
      if (spend_capable < cfg_.n_victims)
        throw InfeasibleConfig(
            "more victims than spending theft sessions (types 2-4)");
    }
    if (t[2] + t[3] > 0) {
      if (cfg_.n_farmers < 1 || cfg_.n_farmers > cfg_.n_victims)
        throw InfeasibleConfig("trade-bearing theft sessions need 1..n_victims farmers");
      if (cfg_.n_bankers < 1)
        throw InfeasibleConfig("trade-bearing theft sessions need bankers");
      if (cfg_.gfg_depth != 2 && cfg_.gfg_depth != 3)
        throw InfeasibleConfig("gfg_depth must be 2 or 3");
    }
    if (cfg_.n_crafter_accounts > cfg_.n_normal_accounts)
      throw InfeasibleConfig("more crafter accounts than normal accounts");
    if (cfg_.type4_more_than_hour > t[3])
      throw InfeasibleConfig("type4_more_than_hour exceeds type-4 session count");
  }

  GameEvent base_event(Timestamp ts, const std::string& account,
                       const std::string& ip, int zone, EventCode code) {
    GameEvent ev;
    ev.ts = ts;
    ev.account = account;
    ev.character = account + "_c1";
    ev.ip = ip;
    ev.zone = zone;
    ev.type = code;
    return ev;
  }

  void emit(GameEvent ev) { out_.events.push_back(std::move(ev)); }

  std::string next_item() { return "itm_" + std::to_string(1 + item_seq_++ % 50); }

  // ---- GFG account bookkeeping ------------------------------------------

  void setup_gfg_accounts() {
    for (int i = 0; i < cfg_.n_blacklist_ips; ++i)
      out_.truth.blacklist_ips.push_back("203.0.113." + std::to_string(i + 1));
    for (int i = 0; i < cfg_.n_victims; ++i) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "v%02d", i + 1);
      out_.truth.victims.emplace_back(buf);
    }
    for (int i = 0; i < cfg_.n_farmers && i < cfg_.n_victims; ++i)
      out_.truth.farmer_accounts.push_back(out_.truth.victims[i]);
    for (int i = 0; i < cfg_.n_bankers; ++i)
      out_.truth.banker_accounts.push_back("gb" + std::to_string(i + 1));
    if (cfg_.gfg_depth == 3) out_.truth.merchant_account = "gm1";
    const auto& t = cfg_.theft_sessions_per_type;
    if (t[2] + t[3] > 0) {
      out_.truth.theft_zones.insert(cfg_.theft_zone_collect);
      out_.truth.theft_zones.insert(cfg_.theft_zone_deliver);
    } else if (t[0] + t[1] > 0) {
      out_.truth.theft_zones.insert(cfg_.theft_zone_collect);
    }
  }

  std::string blacklist_ip_for(int victim_idx) const {
    return out_.truth.blacklist_ips[victim_idx % out_.truth.blacklist_ips.size()];
  }

  // ---- session builders --------------------------------------------------

  struct ActivityCounts {
    int moves = 1, etc = 1, purchases = 0, produces = 0, sales = 0, item_moves = 0;
  };

  // Ordinary session: A C <shuffled activity> [E F] B. Production runs are
  // capped at two events so no motif substring can appear.
  void emit_plain_session(const std::string& account, const std::string& ip,
                          int zone, Timestamp ts0, Timestamp duration, int level,
                          std::int64_t exp_point, std::optional<Money> balance,
                          Money spend, const ActivityCounts& act) {
    std::vector<EventCode> body;
    auto add = [&](EventCode c, int n) { for (int i = 0; i < n; ++i) body.push_back(c); };
    add(EventCode::MOVE_WALK, act.moves);
    add(EventCode::ETC_BATTLE_ATTACK, act.etc);
    add(EventCode::PURCHASE_NPC, act.purchases);
    add(EventCode::PROD_COLLECT, act.produces);
    add(EventCode::SALE_USERSHOP, act.sales);
    add(EventCode::ITEM_MOVE, act.item_moves);
    std::shuffle(body.begin(), body.end(), rng_);

    std::vector<GameEvent> evs;
    evs.push_back(base_event(ts0, account, ip, zone, EventCode::LOGIN));
    auto info = base_event(ts0, account, ip, zone, EventCode::USER_INFO_SNAPSHOT);
    info.attrs.level = level;
    info.attrs.exp_point = exp_point;
    info.attrs.balance = balance;
    evs.push_back(std::move(info));
    for (EventCode c : body) {
      auto ev = base_event(ts0, account, ip, zone, c);
      const auto cat = code_category(c);
      if (cat == ActionCategory::ItemProduction ||
          cat == ActionCategory::ItemPurchase || cat == ActionCategory::ItemSale ||
          c == EventCode::ITEM_MOVE) {
        ev.attrs.item_id = next_item();
        ev.attrs.quantity = 1;
      }
      evs.push_back(std::move(ev));
    }
    if (spend > 0) {
      auto dec = base_event(ts0, account, ip, zone, EventCode::MONEY_SPEND_SHOP);
      dec.attrs.money_delta = -spend;
      evs.push_back(std::move(dec));
      auto inc = base_event(ts0, account, ip, zone, EventCode::MONEY_GAIN_QUEST);
      inc.attrs.money_delta = spend;  // replenished, balance stays level
      evs.push_back(std::move(inc));
    }
    evs.push_back(base_event(ts0, account, ip, zone, EventCode::LOGOUT));
    spread_and_emit(std::move(evs), ts0, duration);
  }

  // Theft session for a given type; returns the twin template.
  TwinTemplate emit_theft_session(const std::string& victim, int type,
                                  Timestamp ts0, Timestamp duration,
                                  const std::string& ip, int level, Money spend,
                                  const std::string& trade_target) {
    TwinTemplate twin;
    twin.type = type;
    twin.duration = duration;
    twin.level = level;
    twin.spend = spend;
    twin.gain = spend;

    const int zone = cfg_.theft_zone_collect;
    std::vector<GameEvent> evs;
    evs.push_back(base_event(ts0, victim, ip, zone, EventCode::LOGIN));
    auto info = base_event(ts0, victim, ip, zone, EventCode::USER_INFO_SNAPSHOT);
    info.attrs.level = level;
    info.attrs.exp_point = 0;  // thief-played sessions gain no experience
    evs.push_back(std::move(info));

    auto push_gain = [&](Money amount) {
      auto ev = base_event(ts0, victim, ip, zone, EventCode::MONEY_GAIN_SALE);
      ev.attrs.money_delta = amount;
      evs.push_back(std::move(ev));
    };
    auto push_spend = [&](Money amount) {
      auto ev = base_event(ts0, victim, ip, zone, EventCode::MONEY_SPEND_SHOP);
      ev.attrs.money_delta = -amount;
      evs.push_back(std::move(ev));
    };
    auto push_item = [&](EventCode c) {
      auto ev = base_event(ts0, victim, ip, zone, c);
      ev.attrs.item_id = next_item();
      ev.attrs.quantity = 1;
      evs.push_back(std::move(ev));
    };
    auto push_trade = [&] {
      auto ev = base_event(ts0, victim, ip, zone, EventCode::TRADE_GIVE);
      ev.attrs.counterparty = trade_target;
      ev.attrs.item_id = next_item();
      ev.attrs.quantity = 1;
      ev.attrs.paid_amount = 0;  // stolen goods move unpaid
      evs.push_back(std::move(ev));
    };
    auto push_produce3 = [&] {
      for (int i = 0; i < 3; ++i) push_item(EventCode::PROD_PRODUCE);
    };
    auto push_sell3 = [&] {
      for (int i = 0; i < 3; ++i) push_item(EventCode::SALE_NPC);
    };

    switch (type) {
      case 1:  // ACGGGB -> PRODUCE_PROBE
        push_produce3();
        break;
      case 2:  // ACF GGGIIIE B
        push_gain(spend);
        push_produce3();
        push_sell3();
        push_spend(spend);
        break;
      case 3:  // ACF GGGIIIE J B
        push_gain(spend);
        push_produce3();
        push_sell3();
        push_spend(spend);
        push_trade();
        break;
      case 4: {  // ACF GGGIIIE IIIE JJ B
        push_gain(spend);
        push_produce3();
        push_sell3();
        const Money first = spend / 2;
        push_spend(first);
        push_sell3();
        push_spend(spend - first);
        push_trade();
        push_trade();
        break;
      }
    }
    evs.push_back(base_event(ts0, victim, ip, zone, EventCode::LOGOUT));
    spread_and_emit(std::move(evs), ts0, duration);
    return twin;
  }

  // Crafter duplicate: feature-identical to its theft twin but with the
  // letters reordered so no motif substring appears.
  void emit_dup_session(const std::string& account, const std::string& ip,
                        int zone, Timestamp ts0, const TwinTemplate& twin,
                        const std::string& trade_target) {
    std::vector<GameEvent> evs;
    evs.push_back(base_event(ts0, account, ip, zone, EventCode::LOGIN));
    auto info = base_event(ts0, account, ip, zone, EventCode::USER_INFO_SNAPSHOT);
    info.attrs.level = twin.level;
    info.attrs.exp_point = 0;
    evs.push_back(std::move(info));

    auto push_item = [&](EventCode c) {
      auto ev = base_event(ts0, account, ip, zone, c);
      ev.attrs.item_id = next_item();
      ev.attrs.quantity = 1;
      evs.push_back(std::move(ev));
    };
    auto push_money = [&](Money delta) {
      auto ev = base_event(ts0, account, ip, zone,
                           delta < 0 ? EventCode::MONEY_SPEND_SHOP
                                     : EventCode::MONEY_GAIN_SALE);
      ev.attrs.money_delta = delta;
      evs.push_back(std::move(ev));
    };
    auto push_trade = [&] {
      auto ev = base_event(ts0, account, ip, zone, EventCode::TRADE_GIVE);
      ev.attrs.counterparty = trade_target;
      ev.attrs.item_id = next_item();
      ev.attrs.quantity = 1;
      ev.attrs.paid_amount = 0;
      evs.push_back(std::move(ev));
    };
    // motif-free orders: GGIGII instead of GGGIII
    auto push_block = [&] {
      push_item(EventCode::PROD_PRODUCE);
      push_item(EventCode::PROD_PRODUCE);
      push_item(EventCode::SALE_NPC);
      push_item(EventCode::PROD_PRODUCE);
      push_item(EventCode::SALE_NPC);
      push_item(EventCode::SALE_NPC);
    };
    push_money(twin.gain);
    switch (twin.type) {
      case 2:
        push_block();
        push_money(-twin.spend);
        break;
      case 3:
        push_block();
        push_money(-twin.spend);
        push_trade();
        break;
      case 4: {
        push_block();
        const Money first = twin.spend / 2;
        push_money(-first);
        push_item(EventCode::SALE_NPC);
        push_item(EventCode::SALE_NPC);
        push_item(EventCode::SALE_NPC);
        push_money(-(twin.spend - first));
        push_trade();
        push_trade();
        break;
      }
    }
    evs.push_back(base_event(ts0, account, ip, zone, EventCode::LOGOUT));
    spread_and_emit(std::move(evs), ts0, twin.duration);
  }

  // Distribute event timestamps evenly across [ts0, ts0+duration]; first is
  // the login, last is the logout.
  void spread_and_emit(std::vector<GameEvent> evs, Timestamp ts0,
                       Timestamp duration) {
    const int n = static_cast<int>(evs.size());
    for (int i = 0; i < n; ++i)
      evs[i].ts = n > 1 ? ts0 + duration * i / (n - 1) : ts0;
    for (auto& ev : evs) emit(std::move(ev));
  }

  void record_session(const std::string& account, Timestamp login_ts,
                      const std::string& label, int type = 0,
                      bool more_than_hour = false) {
    out_.truth.sessions.push_back({account, login_ts, label, type, more_than_hour});
  }

  // ---- victims -----------------------------------------------------------

  void generate_victims() {
    const auto& t = cfg_.theft_sessions_per_type;
    const int total_theft = t[0] + t[1] + t[2] + t[3];
    if (cfg_.n_victims == 0) return;

    struct VictimState {
      std::string account;
      std::string owner_ip;
      int level = 45;
      Money balance = 50000;
      bool farmer = false;
      std::vector<int> session_types;  // theft sessions on the theft day
    };
    std::vector<VictimState> victims;
    for (int i = 0; i < cfg_.n_victims; ++i) {
      VictimState v;
      v.account = out_.truth.victims[i];
      v.owner_ip = "10.1.0." + std::to_string(i + 1);
      // one victim may sit below the level-40 band
      v.level = (i == cfg_.n_victims - 1 && cfg_.n_victims > 10)
                    ? uniform_int(20, 39)
                    : uniform_int(41, 50);
      v.balance = uniform_int(40000, 90000);
      v.farmer = i < cfg_.n_farmers;
      victims.push_back(std::move(v));
    }

    // assign trade-bearing sessions to farmers, spending sessions to all
    if (total_theft > 0) {
      int farmer_rr = 0;
      for (int k = 0; k < t[2]; ++k)
        victims[farmer_rr++ % cfg_.n_farmers].session_types.push_back(3);
      for (int k = 0; k < t[3]; ++k)
        victims[farmer_rr++ % cfg_.n_farmers].session_types.push_back(4);
      int remaining2 = t[1];
      for (auto& v : victims)  // every victim needs a spending session
        if (v.session_types.empty() && remaining2 > 0) {
          v.session_types.push_back(2);
          --remaining2;
        }
      int rr = 0;
      while (remaining2-- > 0)
        victims[rr++ % cfg_.n_victims].session_types.push_back(2);
      for (int k = 0; k < t[0]; ++k)
        victims[rr++ % cfg_.n_victims].session_types.push_back(1);
      for (const auto& v : victims)
        if (v.session_types.empty() ||
            std::all_of(v.session_types.begin(), v.session_types.end(),
                        [](int ty) { return ty == 1; }))
          throw InfeasibleConfig("victim '" + v.account +
                                 "' received no spending theft session");
    }

    int mth_left = cfg_.type4_more_than_hour;
    for (std::size_t i = 0; i < victims.size(); ++i) {
      auto& v = victims[i];
      // owner week: one ordinary session per day before the theft
      for (int d = 0; d < cfg_.theft_day_offset; ++d) {
        const Timestamp ts0 =
            day_start(base_day_ + d) + 9 * 3600 + uniform_int(0, 3600);
        const Timestamp dur = uniform_int(1800, 5400);
        const double r = uniform_real(cfg_.normal_ratio_min, cfg_.normal_ratio_max);
        const Money spend = static_cast<Money>(
            std::llround(static_cast<double>(v.balance) * r / (1.0 - r)));
        ActivityCounts act;
        act.moves = uniform_int(1, 4);
        act.etc = uniform_int(1, 5);
        act.purchases = uniform_int(0, 2);
        act.produces = uniform_int(0, 2);
        act.sales = uniform_int(0, 2);
        emit_plain_session(v.account, v.owner_ip,
                           cfg_.normal_zone_base + static_cast<int>(i) % cfg_.n_normal_zones,
                           ts0, dur, v.level, uniform_int(1000, 99999),
                           d == 0 ? std::optional<Money>(v.balance) : std::nullopt,
                           spend, act);
        record_session(v.account, ts0, "normal");
      }
      if (total_theft == 0) continue;

      out_.truth.theft_dates[v.account] = theft_day_;
      const std::string thief_ip = blacklist_ip_for(static_cast<int>(i));
      const std::string trade_target =
          cfg_.gfg_depth == 3 ? out_.truth.merchant_account
                              : out_.truth.banker_accounts[i % out_.truth.banker_accounts.size()];

      // theft-day total spend hits the configured ratio
      const double r7 = uniform_real(cfg_.theft_day_ratio - 0.02,
                                     cfg_.theft_day_ratio + 0.05);
      const Money total_spend = static_cast<Money>(
          std::llround(static_cast<double>(v.balance) * r7 / (1.0 - r7)));
      int n_spenders = 0;
      for (int ty : v.session_types)
        if (ty >= 2) ++n_spenders;
      Money spent = 0;
      int spender_idx = 0;

      Timestamp cursor = day_start(theft_day_) + 5 * 3600 + 1800;
      for (int ty : v.session_types) {
        Timestamp dur = 0;
        bool mth = false;
        switch (ty) {
          case 1: dur = uniform_int(20, 55); break;
          case 2: dur = uniform_int(70, 290); break;
          case 3: dur = uniform_int(310, 590); break;
          case 4:
            if (mth_left > 0) {
              dur = uniform_int(3700, 7000);
              mth = true;
              --mth_left;
            } else {
              dur = uniform_int(650, 3400);
            }
            break;
        }
        Money spend = 0;
        if (ty >= 2) {
          ++spender_idx;
          spend = spender_idx == n_spenders ? total_spend - spent
                                            : total_spend / n_spenders;
          spent += spend;
        }
        if (cursor + dur > day_start(theft_day_) + 86100)
          throw InfeasibleConfig("theft sessions overflow the theft day for '" +
                                 v.account + "'");
        const TwinTemplate twin = emit_theft_session(
            v.account, ty, cursor, dur, thief_ip, v.level, spend, trade_target);
        record_session(v.account, cursor, "theft", ty, mth);
        if (ty >= 2) twin_pool_[ty].push_back(twin);
        cursor += dur + 600;
      }
    }
  }

  // ---- normal accounts ---------------------------------------------------

  void generate_normals() {
    for (int idx = 0; idx < cfg_.n_normal_accounts; ++idx) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "n%03d", idx + 1);
      const std::string account = buf;
      const bool crafter = idx < cfg_.n_crafter_accounts;
      const std::string ip =
          "10.0." + std::to_string(idx / 250) + "." + std::to_string(idx % 250 + 1);
      const int level = crafter ? uniform_int(41, 50) : uniform_int(10, 50);
      const std::int64_t exp_point = uniform_int(1000, 99999);
      Money balance = uniform_int(30000, 80000);

      const TwinTemplate* twin = crafter ? pick_twin(idx) : nullptr;
      const int dup_slot = twin ? cfg_.sessions_per_normal_account / 2 : -1;

      for (int s = 0; s < cfg_.sessions_per_normal_account; ++s) {
        const int day = (idx + 2 * s) % cfg_.n_days;
        const int zone = cfg_.normal_zone_base + (idx + s) % cfg_.n_normal_zones;
        const Timestamp ts0 = day_start(base_day_ + day) + 8 * 3600 +
                              (idx % 12) * 1200 + uniform_int(0, 600);
        if (s == dup_slot) {
          char cbuf[8];
          std::snprintf(cbuf, sizeof(cbuf), "n%03d",
                        (idx + 1) % cfg_.n_normal_accounts + 1);
          emit_dup_session(account, ip, zone, ts0, *twin, cbuf);
          record_session(account, ts0, "normal");
          continue;
        }
        Timestamp dur = roll_normal_duration(crafter);
        const double r = uniform_real(cfg_.normal_ratio_min, cfg_.normal_ratio_max);
        const Money spend = static_cast<Money>(
            std::llround(static_cast<double>(balance) * r / (1.0 - r)));
        ActivityCounts act;
        act.moves = uniform_int(1, 4);
        act.etc = uniform_int(1, 5);
        act.purchases = uniform_int(0, 2);
        act.produces = uniform_int(0, 2);
        act.sales = uniform_int(0, 2);
        act.item_moves = uniform_int(0, 1);
        emit_plain_session(account, ip, zone, ts0, dur, level, exp_point,
                           s == 0 ? std::optional<Money>(balance) : std::nullopt,
                           spend, act);
        record_session(account, ts0, "normal");
        if (dur >= 30)  // trades are attached to these sessions later
          trade_slots_.push_back({account, ip, zone, ts0, dur});
      }
    }
  }

  Timestamp roll_normal_duration(bool crafter) {
    const double u = uniform_real(0.0, 1.0);
    if (u < 0.10 && !crafter) return uniform_int(20, 55);
    if (u < 0.25) return uniform_int(70, 290);
    if (u < 0.40) return uniform_int(310, 590);
    if (uniform_real(0.0, 1.0) < 0.08) return uniform_int(3700, 7000);
    return uniform_int(650, 3400);
  }

  const TwinTemplate* pick_twin(int crafter_idx) {
    static const int order[3] = {2, 3, 4};
    for (int probe = 0; probe < 3; ++probe) {
      const int ty = order[(crafter_idx + probe) % 3];
      const auto& pool = twin_pool_[ty];
      if (!pool.empty()) return &pool[(crafter_idx / 3) % pool.size()];
    }
    return nullptr;
  }

  // ---- suspicious accounts ----------------------------------------------

  void generate_suspicious() {
    if (out_.truth.victims.empty()) return;
    auto make_sessions = [&](const std::string& account, const std::string& ip,
                             const std::vector<int>& days, int trade_day,
                             int trade_zone, Money paid,
                             const std::string& victim) {
      const int level = uniform_int(20, 50);
      bool first = true;
      for (int d : days) {
        const int zone = d == trade_day
                             ? trade_zone
                             : cfg_.normal_zone_base + d % cfg_.n_normal_zones;
        const Timestamp ts0 = day_start(base_day_ + d) + 14 * 3600 +
                              uniform_int(0, 1800);
        const Timestamp dur = uniform_int(900, 3600);
        ActivityCounts act;
        act.moves = uniform_int(1, 3);
        act.etc = uniform_int(1, 3);
        emit_plain_session(account, ip, zone, ts0, dur, level,
                           uniform_int(1000, 99999),
                           first ? std::optional<Money>(uniform_int(20000, 60000))
                                 : std::nullopt,
                           0, act);
        record_session(account, ts0, d == trade_day && paid == 0 &&
                                             trade_zone == cfg_.theft_zone_deliver
                                         ? "infra"
                                         : "normal");
        first = false;
        if (d == trade_day) {
          auto ev = base_event(ts0 + dur / 2, account, ip, zone,
                               EventCode::TRADE_GIVE);
          ev.attrs.counterparty = victim;
          ev.attrs.item_id = next_item();
          ev.attrs.quantity = 1;
          ev.attrs.paid_amount = paid;
          emit(std::move(ev));
        }
      }
    };

    for (int i = 0; i < cfg_.n_suspicious_a; ++i) {
      const std::string account = "sa" + std::to_string(i + 1);
      make_sessions(account, "172.16.0." + std::to_string(i + 1), {1, 2, 3}, 3,
                    cfg_.normal_zone_base + i % cfg_.n_normal_zones, 800,
                    out_.truth.victims[i % out_.truth.victims.size()]);
      out_.truth.expected_groups[account] = "SuspiciousA";
    }
    for (int i = 0; i < cfg_.n_suspicious_b; ++i) {
      const std::string account = "sb" + std::to_string(i + 1);
      std::vector<int> days;
      for (int d = 0; d <= cfg_.theft_day_offset; ++d) days.push_back(d);
      make_sessions(account, "172.16.1." + std::to_string(i + 1), days,
                    cfg_.theft_day_offset, cfg_.theft_zone_collect, 0,
                    out_.truth.victims[i % out_.truth.victims.size()]);
      out_.truth.expected_groups[account] = "SuspiciousB";
    }
    for (int i = 0; i < cfg_.n_suspicious_fresh; ++i) {
      const std::string account = "sg" + std::to_string(i + 1);
      make_sessions(account, "198.51.100." + std::to_string(i + 1),
                    {cfg_.theft_day_offset}, cfg_.theft_day_offset,
                    cfg_.theft_zone_deliver, 0,
                    out_.truth.victims[i % out_.truth.victims.size()]);
      out_.truth.expected_groups[account] = "SuspiciousB_LikelyTheft";
    }
  }

  // ---- merchant / bankers ------------------------------------------------

  void generate_gfg_infra() {
    const auto& t = cfg_.theft_sessions_per_type;
    if (t[2] + t[3] == 0) return;

    const int zone = cfg_.theft_zone_deliver;
    if (cfg_.gfg_depth == 3) {
      const std::string& merchant = out_.truth.merchant_account;
      const std::string ip = blacklist_ip_for(0);
      const Timestamp ts0 = day_start(theft_day_) + 21 * 3600;
      const Timestamp dur = 1800;
      std::vector<GameEvent> evs;
      evs.push_back(base_event(ts0, merchant, ip, zone, EventCode::LOGIN));
      for (const auto& banker : out_.truth.banker_accounts)
        for (int k = 0; k < 3; ++k) {
          auto ev = base_event(ts0, merchant, ip, zone, EventCode::TRADE_GIVE);
          ev.attrs.counterparty = banker;
          ev.attrs.item_id = next_item();
          ev.attrs.quantity = 1;
          ev.attrs.paid_amount = 0;
          evs.push_back(std::move(ev));
        }
      evs.push_back(base_event(ts0, merchant, ip, zone, EventCode::LOGOUT));
      spread_and_emit(std::move(evs), ts0, dur);
      record_session(merchant, ts0, "infra");
    }
    // bankers just log in to receive
    int b = 0;
    for (const auto& banker : out_.truth.banker_accounts) {
      const std::string ip = blacklist_ip_for(++b);
      const Timestamp ts0 = day_start(theft_day_) + 22 * 3600 + b * 300;
      std::vector<GameEvent> evs;
      evs.push_back(base_event(ts0, banker, ip, zone, EventCode::LOGIN));
      evs.push_back(base_event(ts0, banker, ip, zone, EventCode::LOGOUT));
      spread_and_emit(std::move(evs), ts0, 600);
      record_session(banker, ts0, "infra");
    }
  }

  // ---- normal-population trades -----------------------------------------

  void generate_normal_trades() {
    if (trade_slots_.empty() || cfg_.n_normal_trades == 0) return;
    const int paid_per_hundred =
        static_cast<int>(std::llround(cfg_.normal_paid_fraction * 100));
    for (int i = 0; i < cfg_.n_normal_trades; ++i) {
      const auto& slot = trade_slots_[i % trade_slots_.size()];
      int cp = static_cast<int>((i * 13 + 7) % cfg_.n_normal_accounts);
      char buf[8];
      std::snprintf(buf, sizeof(buf), "n%03d", cp + 1);
      std::string counterparty = buf;
      if (counterparty == slot.account) {
        std::snprintf(buf, sizeof(buf), "n%03d", (cp + 1) % cfg_.n_normal_accounts + 1);
        counterparty = buf;
      }
      const Timestamp ts =
          slot.ts0 + 10 + (i * 17) % std::max<Timestamp>(1, slot.duration - 20);
      auto ev = base_event(ts, slot.account, slot.ip, slot.zone,
                           EventCode::TRADE_GIVE);
      ev.attrs.counterparty = counterparty;
      ev.attrs.item_id = next_item();
      ev.attrs.quantity = 1;
      ev.attrs.paid_amount = i % 100 < paid_per_hundred ? 500 + (i * 37) % 4500 : 0;
      emit(std::move(ev));
    }
  }

  // ---- excluded system noise --------------------------------------------

  void generate_noise() {
    const auto& codes = all_codes();
    std::vector<EventCode> excluded;
    for (EventCode c : codes)
      if (!is_analysis_code(c)) excluded.push_back(c);
    for (int i = 0; i < cfg_.n_excluded_noise_events; ++i) {
      const Timestamp ts =
          day_start(base_day_ + i % cfg_.n_days) + (i * 401) % 86400;
      emit(base_event(ts, "system", "127.0.0.1", 0, excluded[i % excluded.size()]));
    }
  }

  struct TradeSlot {
    std::string account;
    std::string ip;
    int zone;
    Timestamp ts0;
    Timestamp duration;
  };

  ScenarioConfig cfg_;
  std::mt19937_64 rng_;
  ScenarioOutput out_;
  DayIndex base_day_ = 0;
  DayIndex theft_day_ = 0;
  int item_seq_ = 0;
  std::map<int, std::vector<TwinTemplate>> twin_pool_;
  std::vector<TradeSlot> trade_slots_;
};

}  // namespace

ScenarioOutput generate_scenario(const ScenarioConfig& cfg) {
  return Generator(cfg).run();
}

std::string describe_scenario(const ScenarioConfig& cfg) {
  const auto& t = cfg.theft_sessions_per_type;
  const int total_theft = t[0] + t[1] + t[2] + t[3];
  std::ostringstream os;
  os << "scenario: " << cfg.n_normal_accounts << " normal accounts x "
     << cfg.sessions_per_normal_account << " sessions over " << cfg.n_days
     << " days starting " << cfg.start_date << "\n";
  if (total_theft == 0) {
    os << "no theft injected\n";
  } else {
    os << "theft: " << cfg.n_victims << " victims, " << total_theft
       << " theft sessions (type1 " << t[0] << ", type2 " << t[1] << ", type3 "
       << t[2] << ", type4 " << t[3] << "; " << cfg.type4_more_than_hour
       << " longer than an hour) on day " << cfg.theft_day_offset + 1 << "\n";
    os << "blacklist IPs: " << cfg.n_blacklist_ips << "\n";
    os << "gfg: depth " << cfg.gfg_depth << ", " << cfg.n_farmers
       << " farmers, " << cfg.n_bankers << " bankers\n";
  }
  os << "expenditure ratio: normals " << cfg.normal_ratio_min << "-"
     << cfg.normal_ratio_max << ", theft day " << cfg.theft_day_ratio << "\n";
  os << "trades: " << cfg.n_normal_trades << " normal trades, paid fraction "
     << cfg.normal_paid_fraction << "\n";
  return os.str();
}

std::string GroundTruth::to_json() const {
  json j;
  j["victims"] = victims;
  j["farmer_accounts"] = farmer_accounts;
  j["banker_accounts"] = banker_accounts;
  j["merchant_account"] = merchant_account;
  j["blacklist_ips"] = blacklist_ips;
  json dates = json::object();
  for (const auto& [acct, day] : theft_dates)
    dates[acct] = format_date(day_start(day));
  j["theft_dates"] = dates;
  j["expected_groups"] = expected_groups;
  j["theft_zones"] = theft_zones;
  json sess = json::array();
  for (const auto& s : sessions) {
    json e;
    e["account"] = s.account;
    e["login_ts"] = format_timestamp(s.login_ts);
    e["label"] = s.label;
    if (s.label == "theft") {
      e["type"] = s.theft_type;
      e["more_than_hour"] = s.more_than_hour;
    }
    sess.push_back(std::move(e));
  }
  j["sessions"] = sess;
  return j.dump(2) + "\n";
}

GroundTruth GroundTruth::from_json(const std::string& text) {
  const json j = json::parse(text);
  GroundTruth g;
  g.victims = j.at("victims").get<std::vector<std::string>>();
  g.farmer_accounts = j.at("farmer_accounts").get<std::vector<std::string>>();
  g.banker_accounts = j.at("banker_accounts").get<std::vector<std::string>>();
  g.merchant_account = j.at("merchant_account").get<std::string>();
  g.blacklist_ips = j.at("blacklist_ips").get<std::vector<std::string>>();
  for (const auto& [acct, date] : j.at("theft_dates").items()) {
    const auto ts = parse_date(date.get<std::string>());
    if (!ts) throw std::runtime_error("bad theft date in ground truth");
    g.theft_dates[acct] = day_of(*ts);
  }
  g.expected_groups =
      j.at("expected_groups").get<std::map<std::string, std::string>>();
  for (const auto& z : j.at("theft_zones")) g.theft_zones.insert(z.get<int>());
  for (const auto& e : j.at("sessions")) {
    SessionLabel s;
    s.account = e.at("account").get<std::string>();
    const auto ts = parse_timestamp(e.at("login_ts").get<std::string>());
    if (!ts) throw std::runtime_error("bad session ts in ground truth");
    s.login_ts = *ts;
    s.label = e.at("label").get<std::string>();
    if (s.label == "theft") {
      s.theft_type = e.at("type").get<int>();
      s.more_than_hour = e.at("more_than_hour").get<bool>();
    }
    g.sessions.push_back(std::move(s));
  }
  return g;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);

    auto as_int = [&] { return std::stoi(value); };
    auto as_double = [&] { return std::stod(value); };
    if (key == "n_normal_accounts") cfg.n_normal_accounts = as_int();
    else if (key == "sessions_per_normal_account") cfg.sessions_per_normal_account = as_int();
    else if (key == "n_victims") cfg.n_victims = as_int();
    else if (key == "theft_type1") cfg.theft_sessions_per_type[0] = as_int();
    else if (key == "theft_type2") cfg.theft_sessions_per_type[1] = as_int();
    else if (key == "theft_type3") cfg.theft_sessions_per_type[2] = as_int();
    else if (key == "theft_type4") cfg.theft_sessions_per_type[3] = as_int();
    else if (key == "type4_more_than_hour") cfg.type4_more_than_hour = as_int();
    else if (key == "normal_ratio_min") cfg.normal_ratio_min = as_double();
    else if (key == "normal_ratio_max") cfg.normal_ratio_max = as_double();
    else if (key == "theft_day_ratio") cfg.theft_day_ratio = as_double();
    else if (key == "gfg_depth") cfg.gfg_depth = as_int();
    else if (key == "n_farmers") cfg.n_farmers = as_int();
    else if (key == "n_bankers") cfg.n_bankers = as_int();
    else if (key == "normal_paid_fraction") cfg.normal_paid_fraction = as_double();
    else if (key == "n_normal_trades") cfg.n_normal_trades = as_int();
    else if (key == "n_crafter_accounts") cfg.n_crafter_accounts = as_int();
    else if (key == "n_normal_zones") cfg.n_normal_zones = as_int();
    else if (key == "normal_zone_base") cfg.normal_zone_base = as_int();
    else if (key == "theft_zone_collect") cfg.theft_zone_collect = as_int();
    else if (key == "theft_zone_deliver") cfg.theft_zone_deliver = as_int();
    else if (key == "start_date") cfg.start_date = value;
    else if (key == "n_days") cfg.n_days = as_int();
    else if (key == "theft_day_offset") cfg.theft_day_offset = as_int();
    else if (key == "n_blacklist_ips") cfg.n_blacklist_ips = as_int();
    else if (key == "n_suspicious_a") cfg.n_suspicious_a = as_int();
    else if (key == "n_suspicious_b") cfg.n_suspicious_b = as_int();
    else if (key == "n_suspicious_fresh") cfg.n_suspicious_fresh = as_int();
    else if (key == "n_excluded_noise_events") cfg.n_excluded_noise_events = as_int();
    else if (key == "seed") cfg.seed = std::stoull(value);
    else
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
  }
  return cfg;
}

std::string scenario_config_to_text(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << "n_normal_accounts = " << cfg.n_normal_accounts << "\n"
     << "sessions_per_normal_account = " << cfg.sessions_per_normal_account << "\n"
     << "n_victims = " << cfg.n_victims << "\n"
     << "theft_type1 = " << cfg.theft_sessions_per_type[0] << "\n"
     << "theft_type2 = " << cfg.theft_sessions_per_type[1] << "\n"
     << "theft_type3 = " << cfg.theft_sessions_per_type[2] << "\n"
     << "theft_type4 = " << cfg.theft_sessions_per_type[3] << "\n"
     << "type4_more_than_hour = " << cfg.type4_more_than_hour << "\n"
     << "normal_ratio_min = " << cfg.normal_ratio_min << "\n"
     << "normal_ratio_max = " << cfg.normal_ratio_max << "\n"
     << "theft_day_ratio = " << cfg.theft_day_ratio << "\n"
     << "gfg_depth = " << cfg.gfg_depth << "\n"
     << "n_farmers = " << cfg.n_farmers << "\n"
     << "n_bankers = " << cfg.n_bankers << "\n"
     << "normal_paid_fraction = " << cfg.normal_paid_fraction << "\n"
     << "n_normal_trades = " << cfg.n_normal_trades << "\n"
     << "n_crafter_accounts = " << cfg.n_crafter_accounts << "\n"
     << "n_normal_zones = " << cfg.n_normal_zones << "\n"
     << "normal_zone_base = " << cfg.normal_zone_base << "\n"
     << "theft_zone_collect = " << cfg.theft_zone_collect << "\n"
     << "theft_zone_deliver = " << cfg.theft_zone_deliver << "\n"
     << "start_date = \"" << cfg.start_date << "\"\n"
     << "n_days = " << cfg.n_days << "\n"
     << "theft_day_offset = " << cfg.theft_day_offset << "\n"
     << "n_blacklist_ips = " << cfg.n_blacklist_ips << "\n"
     << "n_suspicious_a = " << cfg.n_suspicious_a << "\n"
     << "n_suspicious_b = " << cfg.n_suspicious_b << "\n"
     << "n_suspicious_fresh = " << cfg.n_suspicious_fresh << "\n"
     << "n_excluded_noise_events = " << cfg.n_excluded_noise_events << "\n"
     << "seed = " << cfg.seed << "\n";
  return os.str();
}

}  // namespace theft_trace
