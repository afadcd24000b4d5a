#include "theft_trace/event.hpp"

#include <json.hpp>

namespace theft_trace {
namespace {

using json = nlohmann::json;

[[noreturn]] void malformed(const std::string& msg) {
  throw ParseError(ParseReason::MalformedRecord, msg);
}

[[noreturn]] void mismatch(const std::string& msg) {
  throw ParseError(ParseReason::AttributeMismatch, msg);
}

bool valid_ipv4(const std::string& s) {
  int octets = 0, value = 0, digits = 0;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      value = value * 10 + (c - '0');
      if (++digits > 3 || value > 255) return false;
    } else if (c == '.') {
      if (digits == 0) return false;
      ++octets;
      value = digits = 0;
    } else {
      return false;
    }
  }
  return octets == 3 && digits > 0;
}

std::int64_t require_int(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer())
    mismatch(std::string("missing or non-integer attr '") + key + "'");
  return it->get<std::int64_t>();
}

std::string require_str(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    mismatch(std::string("missing or non-string attr '") + key + "'");
  return it->get<std::string>();
}

void check_no_extras(const json& attrs,
                     std::initializer_list<const char*> allowed) {
  for (auto it = attrs.begin(); it != attrs.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) mismatch("unexpected attr '" + it.key() + "'");
  }
}

void validate_attrs(GameEvent& ev, const json& attrs) {
  const auto cat = ev.category();
  if (!cat) {  // excluded system events carry no attrs
    check_no_extras(attrs, {});
    return;
  }
  switch (*cat) {
    case ActionCategory::MoneyDecrease:
    case ActionCategory::MoneyIncrease: {
      check_no_extras(attrs, {"money_delta"});
      const Money delta = require_int(attrs, "money_delta");
      if (*cat == ActionCategory::MoneyDecrease && delta >= 0)
        mismatch("money-decrease event requires negative money_delta");
      if (*cat == ActionCategory::MoneyIncrease && delta <= 0)
        mismatch("money-increase event requires positive money_delta");
      ev.attrs.money_delta = delta;
      break;
    }
    case ActionCategory::Trade: {
      if (ev.type == EventCode::TRADE_GIVE) {
        check_no_extras(attrs,
                        {"counterparty", "item_id", "quantity", "paid_amount"});
        ev.attrs.counterparty = require_str(attrs, "counterparty");
        if (*ev.attrs.counterparty == ev.account)
          mismatch("trade counterparty equals account");
        ev.attrs.item_id = require_str(attrs, "item_id");
        ev.attrs.quantity = require_int(attrs, "quantity");
        ev.attrs.paid_amount = require_int(attrs, "paid_amount");
        if (*ev.attrs.paid_amount < 0) mismatch("negative paid_amount");
      } else {  // ITEM_MOVE
        check_no_extras(attrs, {"item_id", "quantity"});
        ev.attrs.item_id = require_str(attrs, "item_id");
        ev.attrs.quantity = require_int(attrs, "quantity");
      }
      if (*ev.attrs.quantity < 1) mismatch("quantity must be >= 1");
      break;
    }
    case ActionCategory::UserInformation: {
      check_no_extras(attrs, {"level", "exp_point", "balance"});
      ev.attrs.level = require_int(attrs, "level");
      ev.attrs.exp_point = require_int(attrs, "exp_point");
      if (attrs.contains("balance")) {
        ev.attrs.balance = require_int(attrs, "balance");
        if (*ev.attrs.balance < 0) mismatch("negative balance");
      }
      break;
    }
    case ActionCategory::ItemProduction:
    case ActionCategory::ItemPurchase:
    case ActionCategory::ItemSale: {
      check_no_extras(attrs, {"item_id", "quantity"});
      ev.attrs.item_id = require_str(attrs, "item_id");
      ev.attrs.quantity = require_int(attrs, "quantity");
      if (*ev.attrs.quantity < 1) mismatch("quantity must be >= 1");
      break;
    }
    default:
      check_no_extras(attrs, {});
      break;
  }
}

void append_json_string(std::string& out, const std::string& s) {
  out += json(s).dump();
}

}  // namespace

std::string_view parse_reason_name(ParseReason r) {
  switch (r) {
    case ParseReason::MalformedRecord: return "MalformedRecord";
    case ParseReason::UnknownEventType: return "UnknownEventType";
    case ParseReason::AttributeMismatch: return "AttributeMismatch";
  }
  return "?";
}

GameEvent parse_log_line(const std::string& line) {
  const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) malformed("invalid JSON record");

  for (const char* key : {"ts", "account", "char", "ip", "zone", "type", "attrs"})
    if (!j.contains(key)) malformed(std::string("missing field '") + key + "'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::initializer_list<const char*> top = {
        "ts", "account", "char", "ip", "zone", "type", "attrs"};
    bool ok = false;
    for (const char* k : top)
      if (it.key() == k) ok = true;
    if (!ok) malformed("unexpected field '" + it.key() + "'");
  }

  GameEvent ev;
  if (!j["ts"].is_string()) malformed("ts must be a string");
  const auto ts = parse_timestamp(j["ts"].get<std::string>());
  if (!ts) malformed("unparseable timestamp");
  ev.ts = *ts;

  if (!j["account"].is_string() || j["account"].get<std::string>().empty())
    malformed("account must be a non-empty string");
  ev.account = j["account"].get<std::string>();
  if (!j["char"].is_string()) malformed("char must be a string");
  ev.character = j["char"].get<std::string>();
  if (!j["ip"].is_string() || !valid_ipv4(j["ip"].get<std::string>()))
    malformed("ip must be a dotted-quad IPv4 string");
  ev.ip = j["ip"].get<std::string>();
  if (!j["zone"].is_number_integer()) malformed("zone must be an integer");
  ev.zone = j["zone"].get<int>();

  if (!j["type"].is_string()) malformed("type must be a string");
  const auto code = code_from_name(j["type"].get<std::string>());
  if (!code)
    throw ParseError(ParseReason::UnknownEventType,
                     "unknown event type '" + j["type"].get<std::string>() + "'");
  ev.type = *code;

  if (!j["attrs"].is_object()) malformed("attrs must be an object");
  validate_attrs(ev, j["attrs"]);
  return ev;
}

std::string serialize_event(const GameEvent& ev) {
  std::string out = "{\"ts\":\"";
  out += format_timestamp(ev.ts);
  out += "\",\"account\":";
  append_json_string(out, ev.account);
  out += ",\"char\":";
  append_json_string(out, ev.character);
  out += ",\"ip\":";
  append_json_string(out, ev.ip);
  out += ",\"zone\":";
  out += std::to_string(ev.zone);
  out += ",\"type\":\"";
  out += code_name(ev.type);
  out += "\",\"attrs\":{";
  bool first = true;
  auto emit_int = [&](const char* key, std::int64_t v) {
    if (!first) out += ',';
    first = false;
    out += '"';
    out += key;
    out += "\":";
    out += std::to_string(v);
  };
  auto emit_str = [&](const char* key, const std::string& v) {
    if (!first) out += ',';
    first = false;
    out += '"';
    out += key;
    out += "\":";
    append_json_string(out, v);
  };
  const auto& a = ev.attrs;
  if (a.money_delta) emit_int("money_delta", *a.money_delta);
  if (a.counterparty) emit_str("counterparty", *a.counterparty);
  if (a.item_id) emit_str("item_id", *a.item_id);
  if (a.quantity) emit_int("quantity", *a.quantity);
  if (a.paid_amount) emit_int("paid_amount", *a.paid_amount);
  if (a.level) emit_int("level", *a.level);
  if (a.exp_point) emit_int("exp_point", *a.exp_point);
  if (a.balance) emit_int("balance", *a.balance);
  out += "}}";
  return out;
}

std::vector<GameEvent> filter_events(const std::vector<GameEvent>& events) {
  std::vector<GameEvent> out;
  out.reserve(events.size());
  for (const auto& ev : events)
    if (is_analysis_code(ev.type)) out.push_back(ev);
  return out;
}

}  // namespace theft_trace
