#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentitrade/common.hpp"

namespace sentitrade {

using Ticker = std::string;
using TickerSet = std::set<Ticker>;

struct CompanyEntry {
    Ticker ticker;                   // uppercase symbol
    std::vector<std::string> names;  // matched case-insensitively
};

/// The set of companies comments are filtered against.
class CompanyRegistry {
public:
    CompanyRegistry() = default;
    /// Throws Error on an empty/duplicate ticker or an empty name list.
    explicit CompanyRegistry(std::vector<CompanyEntry> entries);

    /// Google, Tesla, Meta, Nvidia, Apple, eBay, Amazon, Netflix, Microsoft, Intel.
    static CompanyRegistry tech10();

    const std::vector<CompanyEntry>& entries() const { return entries_; }
    bool contains(std::string_view ticker) const;
    std::vector<Ticker> tickers() const;

    /// Keeps only the listed tickers; throws if one is unknown.
    CompanyRegistry restricted_to(std::span<const Ticker> tickers) const;

private:
    std::vector<CompanyEntry> entries_;
};

/// Tickers referenced by `body`. A symbol matches as a case-sensitive whole
/// word (`MSFT`) or as a cashtag in any case (`$msft`); a company name matches
/// as a case-insensitive whole word or phrase. Word characters are ASCII
/// letters and digits; every other byte is a boundary.
TickerSet match_companies(std::string_view body, const CompanyRegistry& registry);

struct CommentRecord {
    std::int64_t timestamp = 0;  // UTC epoch seconds
    std::string body;
    TickerSet tickers;            // non-empty, subset of the registry
    std::optional<double> score;  // in [-0.5, 0.5]
    std::size_t source_line = 0;  // physical line in the file it was read from

    Date day() const { return utc_date_of(timestamp); }
};

struct CommentLoad {
    std::vector<CommentRecord> records;  // ascending timestamp
    std::size_t dropped = 0;             // rows that matched no registry company
};

/// Reads the `timestamp,body,tickers,score` CSV. An empty `tickers` cell is
/// filled by match_companies; listed symbols outside the registry are ignored.
CommentLoad load_comments(const std::filesystem::path& path, const CompanyRegistry& registry);

/// Writes records back in the same schema.
void write_comments(const std::filesystem::path& path, std::span<const CommentRecord> records);

struct PriceBar {
    Date date;
    double close = 0.0;
};

struct PriceSeries {
    Ticker ticker;
    std::vector<PriceBar> bars;  // strictly increasing dates, closes > 0

    /// Close on `d`, or nullopt when there is no bar.
    std::optional<double> close_on(Date d) const;
};

/// Reads a `date,close` CSV; the ticker is the file stem.
PriceSeries load_prices(const std::filesystem::path& path);

/// Loads `<dir>/<TICKER>.csv` for every ticker; the error names a missing ticker.
std::vector<PriceSeries> load_price_dir(const std::filesystem::path& dir, std::span<const Ticker> tickers);

struct TradingCalendar {
    std::vector<Date> days;

    std::size_t size() const { return days.size(); }
    /// Index of `d`, or nullopt if it is not a trading day.
    std::optional<std::size_t> index_of(Date d) const;
    /// Days inside `range`, as a calendar of its own.
    TradingCalendar within(const DateRange& range) const;
};

/// Dates on which every series has a bar, restricted to `range`.
TradingCalendar build_calendar(std::span<const PriceSeries> series, const DateRange& range);

/// Closes of `series` on each calendar day; throws if a day is missing.
std::vector<double> aligned_closes(const PriceSeries& series, const TradingCalendar& calendar);

/// Closes of several tickers on one shared calendar: closes[ticker][day].
struct PricePanel {
    TradingCalendar calendar;
    std::vector<Ticker> tickers;
    std::vector<std::vector<double>> closes;

    static PricePanel build(std::span<const PriceSeries> series, const TradingCalendar& calendar);

    std::size_t days() const { return calendar.size(); }
    /// Rows for the given ticker indices, same calendar.
    PricePanel select(std::span<const std::size_t> ticker_indices) const;
    /// Same tickers, days inside `range` only; throws when none remain.
    PricePanel within(const DateRange& range) const;
    std::size_t index_of(std::string_view ticker) const;
};

}  // namespace sentitrade
