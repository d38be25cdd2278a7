#include "sentitrade/common.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace sentitrade {

namespace {

int parse_fixed_int(std::string_view text, std::string_view whole) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error("invalid date '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw Error("invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    }
    const int y = parse_fixed_int(text.substr(0, 4), text);
    const int m = parse_fixed_int(text.substr(5, 2), text);
    const int d = parse_fixed_int(text.substr(8, 2), text);
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        throw Error("invalid date '" + std::string(text) + "'");
    }
    return Date{ymd};
}

std::string format_date(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

Date utc_date_of(std::int64_t epoch_seconds) {
    return std::chrono::floor<std::chrono::days>(std::chrono::sys_seconds{std::chrono::seconds{epoch_seconds}});
}

DateRange parse_date_range(std::string_view text) {
    const auto sep = text.find("..");
    if (sep == std::string_view::npos) {
        throw Error("invalid date range '" + std::string(text) + "' (expected START..END)");
    }
    DateRange r{parse_date(text.substr(0, sep)), parse_date(text.substr(sep + 2))};
    if (r.empty()) {
        throw Error("empty date range '" + std::string(text) + "'");
    }
    return r;
}

std::string format_date_range(const DateRange& r) {
    return format_date(r.begin) + ".." + format_date(r.end);
}

DateRange year_range(int year) {
    using namespace std::chrono;
    return {Date{std::chrono::year{year} / January / 1}, Date{std::chrono::year{year + 1} / January / 1}};
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace sentitrade
