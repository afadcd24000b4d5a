#include "theft_trace/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace theft_trace {

const std::array<std::string, kFeatureCount>& feature_names() {
  static const std::array<std::string, kFeatureCount> names{
      "level",          "playtime_s",     "exp_point",
      "movement_count", "money_dec_count", "money_dec_amount",
      "money_inc_count", "money_inc_amount", "prod_gain",
      "prod_collect",   "prod_produce",   "prod_install",
      "prod_noninstall", "prod_extract",  "prod_extract_count",
      "sale_npc",       "sale_usershop",  "sale_agency",
      "trade_count",    "item_move_count"};
  return names;
}

int LabeledDataset::count(Label l) const {
  return static_cast<int>(
      std::count_if(rows.begin(), rows.end(),
                    [l](const LabeledRow& r) { return r.label == l; }));
}

double expenditure_ratio(Money daily_used, Money opening_amount) {
  if (daily_used < 0 || opening_amount < 0)
    throw std::invalid_argument("expenditure_ratio: negative input");
  if (daily_used == 0 && opening_amount == 0)
    throw std::invalid_argument("expenditure_ratio: undefined for 0/0");
  return static_cast<double>(daily_used) /
         static_cast<double>(opening_amount + daily_used);
}

ExpenditureSeries daily_expenditure_series(const std::string& account,
                                           const std::vector<GameEvent>& events) {
  ExpenditureSeries series;
  series.account = account;

  Money initial = 0;
  for (const auto& ev : events) {
    if (ev.account != account) continue;
    if (ev.category() == ActionCategory::UserInformation && ev.attrs.balance) {
      initial = *ev.attrs.balance;
      break;
    }
  }

  // day -> (used, net delta)
  std::map<DayIndex, std::pair<Money, Money>> by_day;
  for (const auto& ev : events) {
    if (ev.account != account || !ev.attrs.money_delta) continue;
    const Money delta = *ev.attrs.money_delta;
    auto& [used, net] = by_day[day_of(ev.ts)];
    if (delta < 0) used += -delta;
    net += delta;
  }
  if (by_day.empty()) return series;

  Money balance = initial;
  const DayIndex first = by_day.begin()->first;
  const DayIndex last = by_day.rbegin()->first;
  for (DayIndex d = first; d <= last; ++d) {
    const Money opening = balance;
    Money used = 0;
    auto it = by_day.find(d);
    if (it != by_day.end()) {
      used = it->second.first;
      balance += it->second.second;
      if (balance < 0) {
        series.negative_balance_days.push_back(d);
        balance = 0;
      }
    }
    if (used > 0 || opening > 0)
      series.days.push_back({d, expenditure_ratio(used, opening)});
  }
  return series;
}

FeatureVector extract_features(const Session& s, const std::string& action_string) {
  FeatureVector f;
  f[kPlaytimeS] = static_cast<double>(s.duration_s());
  (void)action_string;  // features derive from typed events; the string is
                        // the same information positionally

  for (const auto& ev : s.events) {
    const auto cat = ev.category();
    if (!cat) continue;
    switch (*cat) {
      case ActionCategory::UserInformation:
        if (ev.attrs.level) f[kLevel] = static_cast<double>(*ev.attrs.level);
        if (ev.attrs.exp_point)
          f[kExpPoint] = static_cast<double>(*ev.attrs.exp_point);
        break;
      case ActionCategory::Movement:
        f[kMovementCount] += 1;
        break;
      case ActionCategory::MoneyDecrease:
        f[kMoneyDecCount] += 1;
        f[kMoneyDecAmount] += static_cast<double>(-*ev.attrs.money_delta);
        break;
      case ActionCategory::MoneyIncrease:
        f[kMoneyIncCount] += 1;
        f[kMoneyIncAmount] += static_cast<double>(*ev.attrs.money_delta);
        break;
      case ActionCategory::ItemProduction:
        switch (ev.type) {
          case EventCode::PROD_GAIN: f[kProdGain] += 1; break;
          case EventCode::PROD_COLLECT: f[kProdCollect] += 1; break;
          case EventCode::PROD_PRODUCE: f[kProdProduce] += 1; break;
          case EventCode::PROD_INSTALL: f[kProdInstall] += 1; break;
          case EventCode::PROD_NONINSTALL: f[kProdNoninstall] += 1; break;
          case EventCode::PROD_EXTRACT:
          case EventCode::PROD_EXTRACT_BULK:
            f[kProdExtractCount] += 1;
            f[kProdExtract] += static_cast<double>(
                ev.attrs.quantity.value_or(0));
            break;
          default: break;
        }
        break;
      case ActionCategory::ItemSale:
        switch (ev.type) {
          case EventCode::SALE_NPC: f[kSaleNpc] += 1; break;
          case EventCode::SALE_USERSHOP: f[kSaleUsershop] += 1; break;
          case EventCode::SALE_AGENCY: f[kSaleAgency] += 1; break;
          default: break;
        }
        break;
      case ActionCategory::Trade:
        if (ev.type == EventCode::TRADE_GIVE) f[kTradeCount] += 1;
        else f[kItemMoveCount] += 1;
        break;
      default:
        break;
    }
  }
  return f;
}

UndersampleResult undersample(const LabeledDataset& d, double ratio,
                              std::uint64_t seed) {
  if (ratio <= 0.0) throw std::invalid_argument("undersample: ratio must be > 0");
  const int n_pos = d.count(Label::Theft);
  if (n_pos == 0) throw std::invalid_argument("undersample: no positive rows");

  std::vector<std::size_t> normal_idx;
  UndersampleResult out;
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    if (d.rows[i].label == Label::Theft) out.dataset.rows.push_back(d.rows[i]);
    else normal_idx.push_back(i);
  }

  const auto target = static_cast<std::size_t>(
      std::llround(static_cast<double>(n_pos) / ratio));
  std::mt19937_64 rng(seed);
  std::shuffle(normal_idx.begin(), normal_idx.end(), rng);
  if (normal_idx.size() < target) out.too_few_normals = true;
  normal_idx.resize(std::min(target, normal_idx.size()));
  std::sort(normal_idx.begin(), normal_idx.end());  // stable row order
  for (std::size_t i : normal_idx) out.dataset.rows.push_back(d.rows[i]);
  return out;
}

}  // namespace theft_trace
