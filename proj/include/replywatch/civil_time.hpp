#ifndef REPLYWATCH_CIVIL_TIME_HPP
#define REPLYWATCH_CIVIL_TIME_HPP

#include <chrono>
#include <string>
#include <string_view>

namespace replywatch {

using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

// RFC 3339 date-time ("2019-03-01T10:00:00Z", "2019-03-01T11:00:00.123+01:00").
// Fractional seconds are truncated; the result is UTC. Throws TimestampError.
Timestamp parse_rfc3339(std::string_view text);

// "YYYY-MM-DD". Throws TimestampError.
Date parse_date(std::string_view text);

Date utc_date(Timestamp ts);

std::string format_date(Date d);        // YYYY-MM-DD
std::string format_month(Date d);       // YYYY-MM
std::string format_timestamp(Timestamp ts);  // YYYY-MM-DDTHH:MM:SSZ

}  // namespace replywatch

#endif  // REPLYWATCH_CIVIL_TIME_HPP
