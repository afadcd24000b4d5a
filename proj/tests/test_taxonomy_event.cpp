#include <doctest.h>

#include "theft_trace/event.hpp"
#include "theft_trace/taxonomy.hpp"

using namespace theft_trace;

TEST_CASE("taxonomy is the closed 59-code vocabulary") {
  const auto& codes = all_codes();
  CHECK(codes.size() == kTotalCodeCount);
  int analysis = 0, excluded = 0;
  for (EventCode c : codes) {
    if (is_analysis_code(c)) {
      ++analysis;
      CHECK(code_category(c).has_value());
    } else {
      ++excluded;
      CHECK_FALSE(code_category(c).has_value());
    }
    // names are unique and reversible
    CHECK(code_from_name(code_name(c)) == c);
  }
  CHECK(analysis == kAnalysisCodeCount);
  CHECK(excluded == kExcludedCodeCount);
  CHECK_FALSE(code_from_name("NOT_A_CODE").has_value());
}

TEST_CASE("category letters span A..K") {
  CHECK(category_letter(ActionCategory::Login) == 'A');
  CHECK(category_letter(ActionCategory::Logout) == 'B');
  CHECK(category_letter(ActionCategory::UserInformation) == 'C');
  CHECK(category_letter(ActionCategory::Movement) == 'D');
  CHECK(category_letter(ActionCategory::MoneyDecrease) == 'E');
  CHECK(category_letter(ActionCategory::MoneyIncrease) == 'F');
  CHECK(category_letter(ActionCategory::ItemProduction) == 'G');
  CHECK(category_letter(ActionCategory::ItemPurchase) == 'H');
  CHECK(category_letter(ActionCategory::ItemSale) == 'I');
  CHECK(category_letter(ActionCategory::Trade) == 'J');
  CHECK(category_letter(ActionCategory::Etc) == 'K');
}

TEST_CASE("seven production codes, one per production feature") {
  int prod = 0;
  for (EventCode c : all_codes())
    if (code_category(c) == ActionCategory::ItemProduction) ++prod;
  CHECK(prod == 7);
}

TEST_CASE("well-formed LOGIN line parses to letter A") {
  const std::string line =
      R"({"ts":"2010-06-29T13:45:02Z","account":"u17","char":"c17a","ip":"10.0.0.5","zone":210,"type":"LOGIN","attrs":{}})";
  const GameEvent ev = parse_log_line(line);
  CHECK(ev.account == "u17");
  CHECK(ev.character == "c17a");
  CHECK(ev.ip == "10.0.0.5");
  CHECK(ev.zone == 210);
  CHECK(ev.type == EventCode::LOGIN);
  CHECK(category_letter(*ev.category()) == 'A');
}

TEST_CASE("serialize/parse round-trips byte-identically") {
  const char* lines[] = {
      R"({"ts":"2010-06-29T13:45:02Z","account":"u17","char":"c17a","ip":"10.0.0.5","zone":210,"type":"LOGIN","attrs":{}})",
      R"({"ts":"2010-06-29T13:46:02Z","account":"u17","char":"c17a","ip":"10.0.0.5","zone":210,"type":"MONEY_SPEND_SHOP","attrs":{"money_delta":-1500}})",
      R"({"ts":"2010-06-29T13:47:02Z","account":"u17","char":"c17a","ip":"10.0.0.5","zone":210,"type":"TRADE_GIVE","attrs":{"counterparty":"u21","item_id":"itm_9","quantity":1,"paid_amount":0}})",
      R"({"ts":"2010-06-29T13:48:02Z","account":"u17","char":"c17a","ip":"10.0.0.5","zone":210,"type":"USER_INFO_SNAPSHOT","attrs":{"level":47,"exp_point":0}})",
  };
  for (const char* line : lines) {
    CAPTURE(line);
    const GameEvent ev = parse_log_line(line);
    const std::string out = serialize_event(ev);
    const GameEvent again = parse_log_line(out);
    CHECK(ev == again);
    CHECK(serialize_event(again) == out);
  }
}

namespace {
ParseReason reason_of(const std::string& line) {
  try {
    parse_log_line(line);
  } catch (const ParseError& e) {
    return e.reason();
  }
  FAIL("expected ParseError");
  return ParseReason::MalformedRecord;
}
}  // namespace

TEST_CASE("malformed records carry reason codes") {
  CHECK(reason_of("not json") == ParseReason::MalformedRecord);
  CHECK(reason_of(R"({"ts":"2010-06-29T13:45:02Z"})") ==
        ParseReason::MalformedRecord);
  CHECK(reason_of(
            R"({"ts":"2010-06-29T99:45:02Z","account":"u17","char":"c","ip":"10.0.0.5","zone":1,"type":"LOGIN","attrs":{}})") ==
        ParseReason::MalformedRecord);
  CHECK(reason_of(
            R"({"ts":"2010-06-29T13:45:02Z","account":"u17","char":"c","ip":"999.0.0.5","zone":1,"type":"LOGIN","attrs":{}})") ==
        ParseReason::MalformedRecord);
  CHECK(reason_of(
            R"({"ts":"2010-06-29T13:45:02Z","account":"u17","char":"c","ip":"10.0.0.5","zone":1,"type":"TELEPATHY","attrs":{}})") ==
        ParseReason::UnknownEventType);
  // trade event without counterparty
  CHECK(reason_of(
            R"({"ts":"2010-06-29T13:45:02Z","account":"u17","char":"c","ip":"10.0.0.5","zone":1,"type":"TRADE_GIVE","attrs":{"item_id":"i","quantity":1,"paid_amount":0}})") ==
        ParseReason::AttributeMismatch);
  // money decrease must be negative
  CHECK(reason_of(
            R"({"ts":"2010-06-29T13:45:02Z","account":"u17","char":"c","ip":"10.0.0.5","zone":1,"type":"MONEY_SPEND_SHOP","attrs":{"money_delta":1500}})") ==
        ParseReason::AttributeMismatch);
  // trading with yourself
  CHECK(reason_of(
            R"({"ts":"2010-06-29T13:45:02Z","account":"u17","char":"c","ip":"10.0.0.5","zone":1,"type":"TRADE_GIVE","attrs":{"counterparty":"u17","item_id":"i","quantity":1,"paid_amount":0}})") ==
        ParseReason::AttributeMismatch);
  // stray attribute on a LOGIN
  CHECK(reason_of(
            R"({"ts":"2010-06-29T13:45:02Z","account":"u17","char":"c","ip":"10.0.0.5","zone":1,"type":"LOGIN","attrs":{"money_delta":-5}})") ==
        ParseReason::AttributeMismatch);
}

TEST_CASE("filter_events drops excluded codes only") {
  std::vector<GameEvent> events;
  for (EventCode c : all_codes()) {
    GameEvent ev;
    ev.type = c;
    events.push_back(ev);
  }
  const auto kept = filter_events(events);
  CHECK(kept.size() == kAnalysisCodeCount);
  for (const auto& ev : kept) CHECK(is_analysis_code(ev.type));
}
