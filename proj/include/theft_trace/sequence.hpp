#pragma once

#include <string>
#include <vector>

#include "theft_trace/session.hpp"

namespace theft_trace {

// Session rendered as one letter per analysis event (Login->A .. Etc->K).
std::string encode_session(const Session& s);

enum class SessionType { Type1 = 1, Type2 = 2, Type3 = 3, Type4 = 4 };
enum class Type4Subtype { WithinHour, MoreThanHour };

struct SessionDuration {
  SessionType type;
  Type4Subtype subtype;  // meaningful for Type4 only
};

// Half-open buckets: [0,60) [60,300) [300,600) [600,inf); Type4 subtype
// boundary at 3600 s.
SessionDuration classify_session_duration(Timestamp duration_s);

struct Pattern {
  std::string chars;
  int support = 0;
  int length() const { return static_cast<int>(chars.size()); }
};

// All maximal contiguous substrings occurring in >= ceil(frac*n) inputs.
// A pattern is dropped when a returned superstring has equal support.
// Sorted by (length desc, support desc, lexicographic).
std::vector<Pattern> mine_common_sequences(const std::vector<std::string>& strings,
                                           double min_support_frac = 1.0,
                                           int max_len = 12);

enum class Motif { LoginProbe, ProduceProbe, ProduceSellSpend, TradeTail };

std::string_view motif_name(Motif m);

struct MotifHit {
  Motif motif;
  int start = 0;  // inclusive
  int end = 0;    // inclusive
};

// Leftmost non-overlapping scan for:
//   LoginProbe       "AB" repeated >= 2 times (maximal run)
//   ProduceProbe     "GGGB"
//   ProduceSellSpend "GGGIIIE"
//   TradeTail        "J" after a ProduceSellSpend hit
std::vector<MotifHit> match_motifs(const std::string& action_string);

}  // namespace theft_trace
