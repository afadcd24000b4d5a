#include "theft_trace/taxonomy.hpp"

#include <array>
#include <unordered_map>

namespace theft_trace {
namespace {

struct CodeInfo {
  EventCode code;
  std::string_view name;
  // excluded system codes carry no category
  std::optional<ActionCategory> category;
};

constexpr std::optional<ActionCategory> kNone = std::nullopt;

const std::array<CodeInfo, kTotalCodeCount>& code_table() {
  using EC = EventCode;
  using AC = ActionCategory;
  static const std::array<CodeInfo, kTotalCodeCount> table{{
      {EC::LOGIN, "LOGIN", AC::Login},
      {EC::LOGOUT, "LOGOUT", AC::Logout},
      {EC::USER_INFO_LEVEL, "USER_INFO_LEVEL", AC::UserInformation},
      {EC::USER_INFO_EXP, "USER_INFO_EXP", AC::UserInformation},
      {EC::USER_INFO_SNAPSHOT, "USER_INFO_SNAPSHOT", AC::UserInformation},
      {EC::MOVE_WALK, "MOVE_WALK", AC::Movement},
      {EC::MOVE_TELEPORT, "MOVE_TELEPORT", AC::Movement},
      {EC::MOVE_FLIGHT, "MOVE_FLIGHT", AC::Movement},
      {EC::MONEY_SPEND_SHOP, "MONEY_SPEND_SHOP", AC::MoneyDecrease},
      {EC::MONEY_SPEND_FEE, "MONEY_SPEND_FEE", AC::MoneyDecrease},
      {EC::MONEY_SPEND_REPAIR, "MONEY_SPEND_REPAIR", AC::MoneyDecrease},
      {EC::MONEY_GAIN_QUEST, "MONEY_GAIN_QUEST", AC::MoneyIncrease},
      {EC::MONEY_GAIN_LOOT, "MONEY_GAIN_LOOT", AC::MoneyIncrease},
      {EC::MONEY_GAIN_SALE, "MONEY_GAIN_SALE", AC::MoneyIncrease},
      {EC::PROD_GAIN, "PROD_GAIN", AC::ItemProduction},
      {EC::PROD_COLLECT, "PROD_COLLECT", AC::ItemProduction},
      {EC::PROD_PRODUCE, "PROD_PRODUCE", AC::ItemProduction},
      {EC::PROD_INSTALL, "PROD_INSTALL", AC::ItemProduction},
      {EC::PROD_NONINSTALL, "PROD_NONINSTALL", AC::ItemProduction},
      {EC::PROD_EXTRACT, "PROD_EXTRACT", AC::ItemProduction},
      {EC::PROD_EXTRACT_BULK, "PROD_EXTRACT_BULK", AC::ItemProduction},
      {EC::PURCHASE_NPC, "PURCHASE_NPC", AC::ItemPurchase},
      {EC::PURCHASE_USERSHOP, "PURCHASE_USERSHOP", AC::ItemPurchase},
      {EC::SALE_NPC, "SALE_NPC", AC::ItemSale},
      {EC::SALE_USERSHOP, "SALE_USERSHOP", AC::ItemSale},
      {EC::SALE_AGENCY, "SALE_AGENCY", AC::ItemSale},
      {EC::TRADE_GIVE, "TRADE_GIVE", AC::Trade},
      {EC::ITEM_MOVE, "ITEM_MOVE", AC::Trade},
      {EC::ETC_BATTLE_ATTACK, "ETC_BATTLE_ATTACK", AC::Etc},
      {EC::ETC_BATTLE_DAMAGE, "ETC_BATTLE_DAMAGE", AC::Etc},
      {EC::ETC_BATTLE_KILL, "ETC_BATTLE_KILL", AC::Etc},
      {EC::ETC_SKILL_USE, "ETC_SKILL_USE", AC::Etc},
      {EC::ETC_SKILL_LEARN, "ETC_SKILL_LEARN", AC::Etc},
      {EC::ETC_FRIEND_ADD, "ETC_FRIEND_ADD", AC::Etc},
      {EC::ETC_FRIEND_REMOVE, "ETC_FRIEND_REMOVE", AC::Etc},
      {EC::ETC_PARTY_JOIN, "ETC_PARTY_JOIN", AC::Etc},
      {EC::ETC_PARTY_LEAVE, "ETC_PARTY_LEAVE", AC::Etc},
      {EC::ETC_CHAT_SAY, "ETC_CHAT_SAY", AC::Etc},
      {EC::ETC_CHAT_WHISPER, "ETC_CHAT_WHISPER", AC::Etc},
      {EC::ETC_QUEST_ACCEPT, "ETC_QUEST_ACCEPT", AC::Etc},
      {EC::ETC_QUEST_COMPLETE, "ETC_QUEST_COMPLETE", AC::Etc},
      {EC::EXCLUDED_MAINTENANCE_NOTICE, "EXCLUDED_MAINTENANCE_NOTICE", kNone},
      {EC::EXCLUDED_HEARTBEAT, "EXCLUDED_HEARTBEAT", kNone},
      {EC::EXCLUDED_SERVER_TICK, "EXCLUDED_SERVER_TICK", kNone},
      {EC::EXCLUDED_GM_BROADCAST, "EXCLUDED_GM_BROADCAST", kNone},
      {EC::EXCLUDED_PATCH_NOTICE, "EXCLUDED_PATCH_NOTICE", kNone},
      {EC::EXCLUDED_BILLING_SYNC, "EXCLUDED_BILLING_SYNC", kNone},
      {EC::EXCLUDED_SESSION_KEEPALIVE, "EXCLUDED_SESSION_KEEPALIVE", kNone},
      {EC::EXCLUDED_ZONE_LOAD, "EXCLUDED_ZONE_LOAD", kNone},
      {EC::EXCLUDED_ZONE_UNLOAD, "EXCLUDED_ZONE_UNLOAD", kNone},
      {EC::EXCLUDED_METRICS_SNAPSHOT, "EXCLUDED_METRICS_SNAPSHOT", kNone},
      {EC::EXCLUDED_AUTOSAVE, "EXCLUDED_AUTOSAVE", kNone},
      {EC::EXCLUDED_WEATHER_TICK, "EXCLUDED_WEATHER_TICK", kNone},
      {EC::EXCLUDED_NPC_RESPAWN, "EXCLUDED_NPC_RESPAWN", kNone},
      {EC::EXCLUDED_MARKET_INDEX, "EXCLUDED_MARKET_INDEX", kNone},
      {EC::EXCLUDED_EVENT_BANNER, "EXCLUDED_EVENT_BANNER", kNone},
      {EC::EXCLUDED_QUEUE_STATUS, "EXCLUDED_QUEUE_STATUS", kNone},
      {EC::EXCLUDED_CLOCK_SYNC, "EXCLUDED_CLOCK_SYNC", kNone},
      {EC::EXCLUDED_DIAGNOSTIC, "EXCLUDED_DIAGNOSTIC", kNone},
  }};
  return table;
}

}  // namespace

char category_letter(ActionCategory c) {
  return static_cast<char>('A' + static_cast<int>(c));
}

std::string_view category_name(ActionCategory c) {
  static constexpr std::array<std::string_view, 11> names{
      "Login",         "Logout",       "UserInformation", "Movement",
      "MoneyDecrease", "MoneyIncrease", "ItemProduction",  "ItemPurchase",
      "ItemSale",      "Trade",        "Etc"};
  return names[static_cast<int>(c)];
}

bool is_analysis_code(EventCode c) { return code_category(c).has_value(); }

std::string_view code_name(EventCode c) {
  return code_table()[static_cast<int>(c)].name;
}

std::optional<EventCode> code_from_name(std::string_view name) {
  static const auto index = [] {
    std::unordered_map<std::string_view, EventCode> m;
    for (const auto& info : code_table()) m.emplace(info.name, info.code);
    return m;
  }();
  auto it = index.find(name);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::optional<ActionCategory> code_category(EventCode c) {
  return code_table()[static_cast<int>(c)].category;
}

const std::vector<EventCode>& all_codes() {
  static const auto codes = [] {
    std::vector<EventCode> v;
    for (const auto& info : code_table()) v.push_back(info.code);
    return v;
  }();
  return codes;
}

}  // namespace theft_trace
