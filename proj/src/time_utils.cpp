#include "theft_trace/time_utils.hpp"

#include <array>
#include <cstdio>

namespace theft_trace {
namespace {

// days-from-civil / civil-from-days (Howard Hinnant's algorithms)
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yr + (m <= 2));
}

bool is_leap(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> dim{31, 28, 31, 30, 31, 30,
                                           31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return dim[m - 1];
}

bool parse_ymd(const char* p, int& y, int& mo, int& d) {
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  for (int i : {0, 1, 2, 3, 5, 6, 8, 9})
    if (!digit(p[i])) return false;
  if (p[4] != '-' || p[7] != '-') return false;
  y = (p[0] - '0') * 1000 + (p[1] - '0') * 100 + (p[2] - '0') * 10 + (p[3] - '0');
  mo = (p[5] - '0') * 10 + (p[6] - '0');
  d = (p[8] - '0') * 10 + (p[9] - '0');
  if (mo < 1 || mo > 12) return false;
  if (d < 1 || d > days_in_month(y, mo)) return false;
  return true;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(const std::string& text) {
  if (text.size() != 20) return std::nullopt;
  const char* p = text.c_str();
  int y, mo, d;
  if (!parse_ymd(p, y, mo, d)) return std::nullopt;
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (p[10] != 'T' || p[13] != ':' || p[16] != ':' || p[19] != 'Z')
    return std::nullopt;
  for (int i : {11, 12, 14, 15, 17, 18})
    if (!digit(p[i])) return std::nullopt;
  const int hh = (p[11] - '0') * 10 + (p[12] - '0');
  const int mm = (p[14] - '0') * 10 + (p[15] - '0');
  const int ss = (p[17] - '0') * 10 + (p[18] - '0');
  if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
  return days_from_civil(y, mo, d) * 86400 + hh * 3600 + mm * 60 + ss;
}

std::string format_timestamp(Timestamp ts) {
  const DayIndex day = day_of(ts);
  const int sod = static_cast<int>(ts - day_start(day));
  int y, mo, d;
  civil_from_days(day, y, mo, d);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, mo, d,
                sod / 3600, (sod / 60) % 60, sod % 60);
  return buf;
}

std::string format_date(Timestamp ts) {
  int y, mo, d;
  civil_from_days(day_of(ts), y, mo, d);
  char buf[12];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, mo, d);
  return buf;
}

std::optional<Timestamp> parse_date(const std::string& text) {
  if (text.size() != 10) return std::nullopt;
  int y, mo, d;
  if (!parse_ymd(text.c_str(), y, mo, d)) return std::nullopt;
  return days_from_civil(y, mo, d) * 86400;
}

}  // namespace theft_trace
