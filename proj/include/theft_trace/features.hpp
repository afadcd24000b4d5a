#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "theft_trace/sequence.hpp"
#include "theft_trace/session.hpp"

namespace theft_trace {

inline constexpr int kFeatureCount = 20;

// Per-session numeric feature vector. Order is fixed and matches
// feature_names().
struct FeatureVector {
  std::array<double, kFeatureCount> values{};

  double& operator[](int i) { return values[i]; }
  double operator[](int i) const { return values[i]; }
};

const std::array<std::string, kFeatureCount>& feature_names();

// Indices into FeatureVector::values.
enum FeatureIndex {
  kLevel = 0,
  kPlaytimeS,
  kExpPoint,
  kMovementCount,
  kMoneyDecCount,
  kMoneyDecAmount,
  kMoneyIncCount,
  kMoneyIncAmount,
  kProdGain,
  kProdCollect,
  kProdProduce,
  kProdInstall,
  kProdNoninstall,
  kProdExtract,       // total quantity extracted
  kProdExtractCount,  // number of extraction events
  kSaleNpc,
  kSaleUsershop,
  kSaleAgency,
  kTradeCount,
  kItemMoveCount,
};

enum class Label { Normal = 0, Theft = 1 };

struct LabeledRow {
  FeatureVector features;
  Label label = Label::Normal;
  SessionType session_type = SessionType::Type4;
  std::string account;      // session ref
  int session_index = -1;   // index into the source session list
};

struct LabeledDataset {
  std::vector<LabeledRow> rows;

  int count(Label l) const;
};

// Eq.-style spend fraction: used / (opening + used). Both zero is undefined.
double expenditure_ratio(Money daily_used, Money opening_amount);

struct ExpenditureDay {
  DayIndex day = 0;
  double ratio = 0.0;
};

struct ExpenditureSeries {
  std::string account;
  std::vector<ExpenditureDay> days;
  // days where cumulative deltas drove the balance below zero (floored)
  std::vector<DayIndex> negative_balance_days;
};

// One ratio per UTC calendar day with money activity or positive opening
// balance. Initial balance comes from the first user-information event
// carrying a `balance` attr, else 0. Events must be sorted by ts.
ExpenditureSeries daily_expenditure_series(const std::string& account,
                                           const std::vector<GameEvent>& events);

FeatureVector extract_features(const Session& s, const std::string& action_string);

struct UndersampleResult {
  LabeledDataset dataset;
  bool too_few_normals = false;  // warning: ratio target not reachable
};

// Keeps all theft rows; samples normals without replacement to hit the
// positive:negative ratio. Deterministic given seed.
UndersampleResult undersample(const LabeledDataset& d, double ratio,
                              std::uint64_t seed);

}  // namespace theft_trace
