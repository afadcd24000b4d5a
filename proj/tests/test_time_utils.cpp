#include <doctest.h>

#include "theft_trace/time_utils.hpp"

using namespace theft_trace;

TEST_CASE("timestamp round trip") {
  const char* samples[] = {
      "1970-01-01T00:00:00Z", "2010-06-29T13:45:02Z", "2000-02-29T23:59:59Z",
      "1999-12-31T00:00:00Z", "2024-02-29T12:00:00Z",
  };
  for (const char* s : samples) {
    const auto ts = parse_timestamp(s);
    REQUIRE(ts.has_value());
    CHECK(format_timestamp(*ts) == s);
  }
  CHECK(*parse_timestamp("1970-01-01T00:00:00Z") == 0);
  CHECK(*parse_timestamp("1970-01-02T00:00:01Z") == 86401);
}

TEST_CASE("invalid timestamps rejected") {
  const char* bad[] = {
      "", "2010-06-29", "2010-06-29 13:45:02Z", "2010-06-29T13:45:02",
      "2010-13-01T00:00:00Z", "2010-00-01T00:00:00Z", "2010-02-30T00:00:00Z",
      "2011-02-29T00:00:00Z", "2010-06-29T24:00:00Z", "2010-06-29T23:60:00Z",
      "2010-06-29T23:00:61Z", "2010-6-29T13:45:02Z", "x010-06-29T13:45:02Z",
  };
  for (const char* s : bad) {
    CAPTURE(s);
    CHECK_FALSE(parse_timestamp(s).has_value());
  }
}

TEST_CASE("date helpers") {
  const auto ts = parse_date("2010-06-29");
  REQUIRE(ts.has_value());
  CHECK(*ts % 86400 == 0);
  CHECK(format_date(*ts) == "2010-06-29");
  CHECK(format_date(*ts + 86399) == "2010-06-29");
  CHECK(format_date(*ts + 86400) == "2010-06-30");
  CHECK_FALSE(parse_date("2010-06-31").has_value());
  CHECK_FALSE(parse_date("2010/06/29").has_value());
}

TEST_CASE("day_of floors across the epoch") {
  CHECK(day_of(0) == 0);
  CHECK(day_of(86399) == 0);
  CHECK(day_of(86400) == 1);
  CHECK(day_of(-1) == -1);
  CHECK(day_of(-86400) == -1);
  CHECK(day_of(-86401) == -2);
  CHECK(day_start(day_of(123456789)) <= 123456789);
}
