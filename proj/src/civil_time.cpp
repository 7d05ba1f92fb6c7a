#include "replywatch/civil_time.hpp"

#include <cstdio>

#include "replywatch/errors.hpp"

namespace replywatch {
namespace {

using namespace std::chrono;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Reads exactly `n` digits at `pos`.
bool read_fixed(std::string_view s, std::size_t pos, std::size_t n, int* out) {
  if (pos + n > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (!is_digit(s[i])) return false;
    v = v * 10 + (s[i] - '0');
  }
  *out = v;
  return true;
}

[[noreturn]] void fail(std::string_view text) {
  throw TimestampError("unparseable timestamp '" + std::string(text) + "'");
}

Date read_date(std::string_view text, std::string_view whole) {
  int y = 0, m = 0, d = 0;
  if (!read_fixed(text, 0, 4, &y) || text.size() < 10 || text[4] != '-' ||
      !read_fixed(text, 5, 2, &m) || text[7] != '-' ||
      !read_fixed(text, 8, 2, &d)) {
    fail(whole);
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) fail(whole);
  return sys_days{ymd};
}

}  // namespace

Timestamp parse_rfc3339(std::string_view text) {
  const Date date = read_date(text, text);
  if (text.size() < 19 || (text[10] != 'T' && text[10] != 't' && text[10] != ' ')) {
    fail(text);
  }
  int hh = 0, mm = 0, ss = 0;
  if (!read_fixed(text, 11, 2, &hh) || text[13] != ':' ||
      !read_fixed(text, 14, 2, &mm) || text[16] != ':' ||
      !read_fixed(text, 17, 2, &ss)) {
    fail(text);
  }
  // 60 is a leap second; fold it into the next minute.
  if (hh > 23 || mm > 59 || ss > 60) fail(text);

  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    if (pos == start) fail(text);
  }
  if (pos >= text.size()) fail(text);

  long offset_minutes = 0;
  const char zone = text[pos];
  if (zone == 'Z' || zone == 'z') {
    ++pos;
  } else if (zone == '+' || zone == '-') {
    int oh = 0, om = 0;
    if (!read_fixed(text, pos + 1, 2, &oh) || pos + 3 >= text.size() ||
        text[pos + 3] != ':' || !read_fixed(text, pos + 4, 2, &om) ||
        oh > 23 || om > 59) {
      fail(text);
    }
    offset_minutes = (zone == '+' ? 1 : -1) * (oh * 60L + om);
    pos += 6;
  } else {
    fail(text);
  }
  if (pos != text.size()) fail(text);

  return Timestamp{date} + hours{hh} + minutes{mm} + seconds{ss} -
         minutes{offset_minutes};
}

Date parse_date(std::string_view text) {
  if (text.size() != 10) fail(text);
  return read_date(text, text);
}

Date utc_date(Timestamp ts) { return floor<days>(ts); }

std::string format_date(Date d) {
  const year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_month(Date d) { return format_date(d).substr(0, 7); }

std::string format_timestamp(Timestamp ts) {
  const Date d = utc_date(ts);
  const auto tod = hh_mm_ss{ts - Timestamp{d}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "T%02ld:%02ld:%02ldZ",
                static_cast<long>(tod.hours().count()),
                static_cast<long>(tod.minutes().count()),
                static_cast<long>(tod.seconds().count()));
  return format_date(d) + buf;
}

}  // namespace replywatch
