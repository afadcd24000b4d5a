#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "theft_trace/sequence.hpp"

using namespace theft_trace;

namespace {

GameEvent ev(Timestamp ts, EventCode code) {
  GameEvent e;
  e.ts = ts;
  e.account = "a";
  e.type = code;
  return e;
}

// brute-force reference: enumerate every substring, count support, keep
// frequent ones not subsumed by an equal-support superstring
std::vector<Pattern> oracle_mine(const std::vector<std::string>& strings,
                                 double frac, int max_len) {
  const int n = static_cast<int>(strings.size());
  const int threshold = static_cast<int>(std::ceil(frac * n - 1e-9));
  std::set<std::string> subs;
  for (const auto& s : strings)
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t len = 1;
           len <= static_cast<std::size_t>(max_len) && i + len <= s.size(); ++len)
        subs.insert(s.substr(i, len));
  std::vector<Pattern> freq;
  for (const auto& c : subs) {
    int support = 0;
    for (const auto& s : strings)
      if (s.find(c) != std::string::npos) ++support;
    if (support >= threshold) freq.push_back({c, support});
  }
  std::vector<Pattern> out;
  for (const auto& p : freq) {
    bool subsumed = false;
    for (const auto& q : freq)
      if (q.chars.size() > p.chars.size() && q.support == p.support &&
          q.chars.find(p.chars) != std::string::npos) {
        subsumed = true;
        break;
      }
    if (!subsumed) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Pattern& a, const Pattern& b) {
    if (a.chars.size() != b.chars.size()) return a.chars.size() > b.chars.size();
    if (a.support != b.support) return a.support > b.support;
    return a.chars < b.chars;
  });
  return out;
}

std::vector<MotifHit> hits_of(const std::string& s) { return match_motifs(s); }

bool has_motif(const std::vector<MotifHit>& hits, Motif m) {
  return std::any_of(hits.begin(), hits.end(),
                     [&](const MotifHit& h) { return h.motif == m; });
}

}  // namespace

TEST_CASE("encode_session maps categories to letters") {
  Session s;
  s.events = {ev(0, EventCode::LOGIN),       ev(1, EventCode::USER_INFO_SNAPSHOT),
              ev(2, EventCode::MOVE_WALK),   ev(3, EventCode::MONEY_SPEND_SHOP),
              ev(4, EventCode::MONEY_GAIN_QUEST), ev(5, EventCode::PROD_PRODUCE),
              ev(6, EventCode::PURCHASE_NPC), ev(7, EventCode::SALE_NPC),
              ev(8, EventCode::TRADE_GIVE),  ev(9, EventCode::ETC_CHAT_SAY),
              ev(10, EventCode::LOGOUT)};
  CHECK(encode_session(s) == "ACDEFGHIJKB");
}

TEST_CASE("duration buckets are half-open") {
  CHECK(classify_session_duration(0).type == SessionType::Type1);
  CHECK(classify_session_duration(59).type == SessionType::Type1);
  CHECK(classify_session_duration(60).type == SessionType::Type2);
  CHECK(classify_session_duration(299).type == SessionType::Type2);
  CHECK(classify_session_duration(300).type == SessionType::Type3);
  CHECK(classify_session_duration(599).type == SessionType::Type3);
  CHECK(classify_session_duration(600).type == SessionType::Type4);
  CHECK(classify_session_duration(3599).subtype == Type4Subtype::WithinHour);
  CHECK(classify_session_duration(3600).subtype == Type4Subtype::MoreThanHour);
  CHECK_THROWS_AS(classify_session_duration(-1), std::invalid_argument);
}

TEST_CASE("mining: worked example") {
  // "ABAB" and "ABAC": "ABA" appears in both; "AB" subsumed (same support)
  const auto r = mine_common_sequences({"ABAB", "ABAC"}, 1.0);
  REQUIRE_FALSE(r.empty());
  CHECK(r[0].chars == "ABA");
  CHECK(r[0].support == 2);
  for (const auto& p : r) CHECK(p.chars != "AB");  // subsumed by ABA
}

TEST_CASE("mining: support threshold uses ceil") {
  // 3 strings at frac 0.5 -> threshold ceil(1.5) = 2
  const auto r = mine_common_sequences({"XY", "XY", "Z"}, 0.5);
  bool found = false;
  for (const auto& p : r)
    if (p.chars == "XY") {
      found = true;
      CHECK(p.support == 2);
    }
  CHECK(found);
}

TEST_CASE("mining equals brute-force oracle on random inputs") {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 200; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 8);
    std::vector<std::string> strings;
    for (int i = 0; i < n; ++i) {
      const int len = 1 + static_cast<int>(rng() % 25);
      std::string s;
      for (int j = 0; j < len; ++j)
        s += static_cast<char>('A' + rng() % 11);
      strings.push_back(std::move(s));
    }
    const double frac = (iter % 3 == 0) ? 1.0 : (iter % 3 == 1) ? 0.75 : 0.5;
    const auto got = mine_common_sequences(strings, frac);
    const auto want = oracle_mine(strings, frac, 12);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].chars == want[i].chars);
      CHECK(got[i].support == want[i].support);
    }
  }
}

TEST_CASE("mining input validation") {
  CHECK_THROWS_AS(mine_common_sequences({}), std::invalid_argument);
  CHECK_THROWS_AS(mine_common_sequences({"A"}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(mine_common_sequences({"A"}, 1.1), std::invalid_argument);
  CHECK_THROWS_AS(mine_common_sequences({"A"}, 1.0, 0), std::invalid_argument);
}

TEST_CASE("motif: login probe requires two AB repeats") {
  CHECK_FALSE(has_motif(hits_of("AB"), Motif::LoginProbe));
  const auto h = hits_of("ABAB");
  REQUIRE(has_motif(h, Motif::LoginProbe));
  CHECK(h[0].start == 0);
  CHECK(h[0].end == 3);
  // maximal run: ABABAB is one hit, not two
  const auto h3 = hits_of("ABABAB");
  REQUIRE(h3.size() == 1);
  CHECK(h3[0].end == 5);
}

TEST_CASE("motif: produce probe and produce-sell-spend") {
  const auto probe = hits_of("ACGGGB");
  REQUIRE(probe.size() == 1);
  CHECK(probe[0].motif == Motif::ProduceProbe);
  CHECK(probe[0].start == 2);
  CHECK(probe[0].end == 5);

  const auto pss = hits_of("ACFGGGIIIEB");
  REQUIRE(pss.size() == 1);
  CHECK(pss[0].motif == Motif::ProduceSellSpend);
  CHECK(pss[0].start == 3);
  CHECK(pss[0].end == 9);
}

TEST_CASE("motif: trade tail only counts after a produce-sell-spend") {
  CHECK_FALSE(has_motif(hits_of("AJB"), Motif::TradeTail));
  const auto h = hits_of("ACFGGGIIIEJB");
  REQUIRE(h.size() == 2);
  CHECK(h[0].motif == Motif::ProduceSellSpend);
  CHECK(h[1].motif == Motif::TradeTail);
  CHECK(h[1].start == 10);
  CHECK(h[1].end == 10);
  // two tails after one PSS
  const auto h2 = hits_of("ACFGGGIIIEJJB");
  CHECK(h2.size() == 3);
}

TEST_CASE("motif: overlapping candidates resolve leftmost-first") {
  // GGGGB: probe fires at the leftmost GGG that completes GGGB
  const auto h = hits_of("GGGGB");
  REQUIRE(h.size() == 1);
  CHECK(h[0].motif == Motif::ProduceProbe);
  CHECK(h[0].start == 1);
  CHECK(h[0].end == 4);
}

TEST_CASE("motif names") {
  CHECK(motif_name(Motif::LoginProbe) == "LOGIN_PROBE");
  CHECK(motif_name(Motif::ProduceProbe) == "PRODUCE_PROBE");
  CHECK(motif_name(Motif::ProduceSellSpend) == "PRODUCE_SELL_SPEND");
  CHECK(motif_name(Motif::TradeTail) == "TRADE_TAIL");
}
