#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace theft_trace {

// Eleven action categories, each mapped to one sequence letter A..K.
enum class ActionCategory : std::uint8_t {
  Login,            // A
  Logout,           // B
  UserInformation,  // C
  Movement,         // D
  MoneyDecrease,    // E
  MoneyIncrease,    // F
  ItemProduction,   // G
  ItemPurchase,     // H
  ItemSale,         // I
  Trade,            // J
  Etc,              // K
};

char category_letter(ActionCategory c);
std::string_view category_name(ActionCategory c);

// Closed 59-code vocabulary: 41 analysis codes + 18 excluded system codes.
enum class EventCode : std::uint8_t {
  // Login / Logout
  LOGIN,
  LOGOUT,
  // User information
  USER_INFO_LEVEL,
  USER_INFO_EXP,
  USER_INFO_SNAPSHOT,
  // Movement
  MOVE_WALK,
  MOVE_TELEPORT,
  MOVE_FLIGHT,
  // Game money decrease
  MONEY_SPEND_SHOP,
  MONEY_SPEND_FEE,
  MONEY_SPEND_REPAIR,
  // Game money increase
  MONEY_GAIN_QUEST,
  MONEY_GAIN_LOOT,
  MONEY_GAIN_SALE,
  // Item production (seven codes, one per production feature)
  PROD_GAIN,
  PROD_COLLECT,
  PROD_PRODUCE,
  PROD_INSTALL,
  PROD_NONINSTALL,
  PROD_EXTRACT,
  PROD_EXTRACT_BULK,
  // Item purchase
  PURCHASE_NPC,
  PURCHASE_USERSHOP,
  // Item sale
  SALE_NPC,
  SALE_USERSHOP,
  SALE_AGENCY,
  // Trade
  TRADE_GIVE,
  ITEM_MOVE,
  // Etc (battle / social / misc)
  ETC_BATTLE_ATTACK,
  ETC_BATTLE_DAMAGE,
  ETC_BATTLE_KILL,
  ETC_SKILL_USE,
  ETC_SKILL_LEARN,
  ETC_FRIEND_ADD,
  ETC_FRIEND_REMOVE,
  ETC_PARTY_JOIN,
  ETC_PARTY_LEAVE,
  ETC_CHAT_SAY,
  ETC_CHAT_WHISPER,
  ETC_QUEST_ACCEPT,
  ETC_QUEST_COMPLETE,
  // System codes excluded from analysis
  EXCLUDED_MAINTENANCE_NOTICE,
  EXCLUDED_HEARTBEAT,
  EXCLUDED_SERVER_TICK,
  EXCLUDED_GM_BROADCAST,
  EXCLUDED_PATCH_NOTICE,
  EXCLUDED_BILLING_SYNC,
  EXCLUDED_SESSION_KEEPALIVE,
  EXCLUDED_ZONE_LOAD,
  EXCLUDED_ZONE_UNLOAD,
  EXCLUDED_METRICS_SNAPSHOT,
  EXCLUDED_AUTOSAVE,
  EXCLUDED_WEATHER_TICK,
  EXCLUDED_NPC_RESPAWN,
  EXCLUDED_MARKET_INDEX,
  EXCLUDED_EVENT_BANNER,
  EXCLUDED_QUEUE_STATUS,
  EXCLUDED_CLOCK_SYNC,
  EXCLUDED_DIAGNOSTIC,
};

inline constexpr int kAnalysisCodeCount = 41;
inline constexpr int kExcludedCodeCount = 18;
inline constexpr int kTotalCodeCount = 59;

bool is_analysis_code(EventCode c);
std::string_view code_name(EventCode c);
std::optional<EventCode> code_from_name(std::string_view name);

// Category of an analysis code. Excluded codes have no category.
std::optional<ActionCategory> code_category(EventCode c);

const std::vector<EventCode>& all_codes();

}  // namespace theft_trace
