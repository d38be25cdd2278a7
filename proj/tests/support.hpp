// Shared builders for the test suites.
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "sentitrade/market_data.hpp"
#include "sentitrade/signal.hpp"

namespace testsupport {

using sentitrade::Date;

inline Date day0() {
    return sentitrade::parse_date("2021-01-04");
}

/// Consecutive calendar days starting at `start`.
inline sentitrade::TradingCalendar calendar(std::size_t n, Date start = day0()) {
    sentitrade::TradingCalendar c;
    for (std::size_t i = 0; i < n; ++i) c.days.push_back(start + std::chrono::days{static_cast<int>(i)});
    return c;
}

inline sentitrade::PricePanel panel(const std::vector<std::string>& tickers,
                                    const std::vector<std::vector<double>>& closes, Date start = day0()) {
    sentitrade::PricePanel p;
    p.calendar = calendar(closes.front().size(), start);
    p.tickers = tickers;
    p.closes = closes;
    return p;
}

/// Signals carrying only an SVC column, aligned to `cal`.
inline std::vector<sentitrade::signal::DailySignal> svc_signals(const std::string& ticker,
                                                                const sentitrade::TradingCalendar& cal,
                                                                const std::vector<double>& svc) {
    std::vector<sentitrade::signal::DailySignal> out;
    for (std::size_t i = 0; i < cal.size(); ++i) {
        sentitrade::signal::DailySignal s;
        s.ticker = ticker;
        s.date = cal.days[i];
        s.today = {ticker, cal.days[i], std::nullopt, 0};
        s.svc = svc.at(i);
        out.push_back(s);
    }
    return out;
}

inline std::int64_t epoch(const std::string& date, int hour = 12) {
    const auto d = sentitrade::parse_date(date);
    return std::chrono::duration_cast<std::chrono::seconds>(d.time_since_epoch()).count() + hour * 3600;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("sentitrade_" + tag + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << text;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testsupport
