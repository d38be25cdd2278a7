#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sentitrade {

/// Calendar date at day resolution (UTC).
using Date = std::chrono::sys_days;

/// Every recoverable failure in the library surfaces as this exception type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses `YYYY-MM-DD`. Throws Error on anything else.
Date parse_date(std::string_view text);
std::string format_date(Date d);

/// UTC calendar date containing the epoch-seconds timestamp.
Date utc_date_of(std::int64_t epoch_seconds);

/// Half-open interval [begin, end).
struct DateRange {
    Date begin;
    Date end;

    bool contains(Date d) const { return d >= begin && d < end; }
    bool empty() const { return end <= begin; }
};

/// Parses `YYYY-MM-DD..YYYY-MM-DD` (end exclusive).
DateRange parse_date_range(std::string_view text);
std::string format_date_range(const DateRange& r);

/// The calendar year as [Jan 1, Jan 1 of next year).
DateRange year_range(int year);

/// Fixed 9-significant-digit rendering used by every CSV writer.
/// Negative zero prints as "0"; non-finite values print as "nan"/"inf"/"-inf".
std::string format_number(double v);

}  // namespace sentitrade
