#include "theft_trace/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace theft_trace {

std::string encode_session(const Session& s) {
  std::string out;
  out.reserve(s.events.size());
  for (const auto& ev : s.events) {
    const auto cat = ev.category();
    if (cat) out += category_letter(*cat);
  }
  return out;
}

SessionDuration classify_session_duration(Timestamp duration_s) {
  if (duration_s < 0)
    throw std::invalid_argument("classify_session_duration: negative duration");
  SessionDuration d{SessionType::Type4, Type4Subtype::WithinHour};
  if (duration_s < 60) d.type = SessionType::Type1;
  else if (duration_s < 300) d.type = SessionType::Type2;
  else if (duration_s < 600) d.type = SessionType::Type3;
  else d.subtype = duration_s < 3600 ? Type4Subtype::WithinHour
                                     : Type4Subtype::MoreThanHour;
  return d;
}

std::vector<Pattern> mine_common_sequences(const std::vector<std::string>& strings,
                                           double min_support_frac, int max_len) {
  if (strings.empty())
    throw std::invalid_argument("mine_common_sequences: empty input");
  if (min_support_frac <= 0.0 || min_support_frac > 1.0 || max_len < 1)
    throw std::invalid_argument("mine_common_sequences: bad parameters");

  const int n = static_cast<int>(strings.size());
  const int threshold = static_cast<int>(
      std::ceil(min_support_frac * n - 1e-9));

  std::set<std::string> candidates;
  for (const auto& s : strings)
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t len = 1; len <= static_cast<std::size_t>(max_len) &&
                                i + len <= s.size();
           ++len)
        candidates.insert(s.substr(i, len));

  std::vector<Pattern> frequent;
  for (const auto& c : candidates) {
    int support = 0;
    for (const auto& s : strings)
      if (s.find(c) != std::string::npos) ++support;
    if (support >= threshold) frequent.push_back({c, support});
  }

  std::vector<Pattern> maximal;
  for (const auto& p : frequent) {
    bool subsumed = false;
    for (const auto& q : frequent) {
      if (q.chars.size() <= p.chars.size()) continue;
      if (q.support == p.support && q.chars.find(p.chars) != std::string::npos) {
        subsumed = true;
        break;
      }
    }
    if (!subsumed) maximal.push_back(p);
  }

  std::sort(maximal.begin(), maximal.end(), [](const Pattern& a, const Pattern& b) {
    if (a.chars.size() != b.chars.size()) return a.chars.size() > b.chars.size();
    if (a.support != b.support) return a.support > b.support;
    return a.chars < b.chars;
  });
  return maximal;
}

std::string_view motif_name(Motif m) {
  switch (m) {
    case Motif::LoginProbe: return "LOGIN_PROBE";
    case Motif::ProduceProbe: return "PRODUCE_PROBE";
    case Motif::ProduceSellSpend: return "PRODUCE_SELL_SPEND";
    case Motif::TradeTail: return "TRADE_TAIL";
  }
  return "?";
}

std::vector<MotifHit> match_motifs(const std::string& a) {
  std::vector<MotifHit> hits;
  bool pss_seen = false;
  const int n = static_cast<int>(a.size());
  int i = 0;
  while (i < n) {
    // maximal run of "AB" repeats
    int reps = 0;
    while (i + 2 * (reps + 1) <= n && a[i + 2 * reps] == 'A' &&
           a[i + 2 * reps + 1] == 'B')
      ++reps;
    if (reps >= 2) {
      hits.push_back({Motif::LoginProbe, i, i + 2 * reps - 1});
      i += 2 * reps;
      continue;
    }
    if (a.compare(i, 7, "GGGIIIE") == 0) {
      hits.push_back({Motif::ProduceSellSpend, i, i + 6});
      pss_seen = true;
      i += 7;
      continue;
    }
    if (a.compare(i, 4, "GGGB") == 0) {
      hits.push_back({Motif::ProduceProbe, i, i + 3});
      i += 4;
      continue;
    }
    if (a[i] == 'J' && pss_seen) {
      hits.push_back({Motif::TradeTail, i, i});
      ++i;
      continue;
    }
    ++i;
  }
  return hits;
}

}  // namespace theft_trace
