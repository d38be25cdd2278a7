#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sentitrade/market_data.hpp"

namespace sentitrade::signal {

/// Comments about one ticker on one UTC calendar day.
/// `mean_sentiment` is present iff `count > 0`.
struct DailyAggregate {
    Ticker ticker;
    Date date;
    std::optional<double> mean_sentiment;
    std::int64_t count = 0;
};

/// Day-over-day change at a trading date. `svc == delta_sentiment * |delta_count|`.
struct DailySignal {
    Ticker ticker;
    Date date;
    DailyAggregate today;
    double delta_sentiment = 0.0;
    std::int64_t delta_count = 0;
    double svc = 0.0;
};

/// Mean score and count of the comments naming `ticker` on `date`.
/// Throws "unscored comment" if one of them has no score.
DailyAggregate daily_aggregate(std::span<const CommentRecord> comments, const Ticker& ticker, Date date);

/// Every day with at least one comment for `ticker`, keyed by date.
std::map<Date, DailyAggregate> aggregate_by_day(std::span<const CommentRecord> comments, const Ticker& ticker);

/// Sentiment change between two aggregates; zero when either side has no comments.
double delta_sentiment(const DailyAggregate& prev, const DailyAggregate& cur);

/// Sentiment Volume Change: delta_sentiment(prev, cur) * |cur.count - prev.count|.
double svc(const DailyAggregate& prev, const DailyAggregate& cur);

/// One signal per trading day, each comparing that day's aggregate with the
/// previous calendar day's. The first trading day carries zeros.
std::vector<DailySignal> signal_series(std::span<const CommentRecord> comments, const Ticker& ticker,
                                       const TradingCalendar& calendar);

enum class Lag {
    NextDay,       // close[d] -> close[d+1]
    DayAfterNext,  // close[d+1] -> close[d+2]
};

Lag parse_lag(std::string_view text);
std::string_view to_string(Lag lag);

/// Fractional price change after `date`, counted in trading days.
double forward_return(const PriceSeries& prices, const TradingCalendar& calendar, Date date, Lag lag);

/// `ticker,date,mean_sentiment,count,delta_sentiment,delta_count,svc` rows.
void write_signals(const std::filesystem::path& path, std::span<const std::vector<DailySignal>> per_ticker);

/// SVC column only, as consumed by the strategies.
std::vector<double> svc_values(std::span<const DailySignal> series);

/// Signals whose dates fall in `calendar`, in calendar order; throws on a gap.
std::vector<DailySignal> restrict_to(std::span<const DailySignal> series, const TradingCalendar& calendar);

}  // namespace sentitrade::signal
