#include "sentitrade/signal.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "sentitrade/csv.hpp"

namespace sentitrade::signal {

namespace {

struct Accumulator {
    double sum = 0.0;
    std::int64_t count = 0;
};

DailyAggregate finish(const Ticker& ticker, Date date, const Accumulator& acc) {
    DailyAggregate agg{ticker, date, std::nullopt, acc.count};
    if (acc.count > 0) agg.mean_sentiment = acc.sum / static_cast<double>(acc.count);
    return agg;
}

void add(Accumulator& acc, const CommentRecord& c) {
    if (!c.score) {
        throw Error("unscored comment at timestamp " + std::to_string(c.timestamp));
    }
    acc.sum += *c.score;
    ++acc.count;
}

}  // namespace

DailyAggregate daily_aggregate(std::span<const CommentRecord> comments, const Ticker& ticker, Date date) {
    Accumulator acc;
    for (const auto& c : comments) {
        if (c.day() == date && c.tickers.contains(ticker)) add(acc, c);
    }
    return finish(ticker, date, acc);
}

std::map<Date, DailyAggregate> aggregate_by_day(std::span<const CommentRecord> comments, const Ticker& ticker) {
    std::map<Date, Accumulator> acc;
    for (const auto& c : comments) {
        if (c.tickers.contains(ticker)) add(acc[c.day()], c);
    }
    std::map<Date, DailyAggregate> out;
    for (const auto& [d, a] : acc) out.emplace(d, finish(ticker, d, a));
    return out;
}

double delta_sentiment(const DailyAggregate& prev, const DailyAggregate& cur) {
    if (!prev.mean_sentiment || !cur.mean_sentiment) return 0.0;
    return *cur.mean_sentiment - *prev.mean_sentiment;
}

double svc(const DailyAggregate& prev, const DailyAggregate& cur) {
    return delta_sentiment(prev, cur) * static_cast<double>(std::llabs(cur.count - prev.count));
}

std::vector<DailySignal> signal_series(std::span<const CommentRecord> comments, const Ticker& ticker,
                                       const TradingCalendar& calendar) {
    if (calendar.days.empty()) throw Error("signal_series: empty calendar");
    const auto by_day = aggregate_by_day(comments, ticker);
    auto lookup = [&](Date d) {
        auto it = by_day.find(d);
        return it != by_day.end() ? it->second : DailyAggregate{ticker, d, std::nullopt, 0};
    };

    std::vector<DailySignal> out;
    out.reserve(calendar.size());
    for (std::size_t i = 0; i < calendar.size(); ++i) {
        const Date d = calendar.days[i];
        DailySignal s{ticker, d, lookup(d), 0.0, 0, 0.0};
        if (i > 0) {
            const DailyAggregate prev = lookup(d - std::chrono::days{1});
            s.delta_sentiment = delta_sentiment(prev, s.today);
            s.delta_count = s.today.count - prev.count;
            s.svc = svc(prev, s.today);
        }
        out.push_back(std::move(s));
    }
    return out;
}

Lag parse_lag(std::string_view text) {
    if (text == "next_day") return Lag::NextDay;
    if (text == "day_after_next") return Lag::DayAfterNext;
    throw Error("unknown lag '" + std::string(text) + "' (expected next_day or day_after_next)");
}

std::string_view to_string(Lag lag) {
    return lag == Lag::NextDay ? "next_day" : "day_after_next";
}

double forward_return(const PriceSeries& prices, const TradingCalendar& calendar, Date date, Lag lag) {
    const auto idx = calendar.index_of(date);
    if (!idx) throw Error("forward_return: " + format_date(date) + " is not a trading day");
    const std::size_t from = *idx + (lag == Lag::NextDay ? 0 : 1);
    const std::size_t to = from + 1;
    if (to >= calendar.size()) {
        throw Error("forward_return: insufficient forward bars after " + format_date(date));
    }
    const auto a = prices.close_on(calendar.days[from]);
    const auto b = prices.close_on(calendar.days[to]);
    if (!a || !b) throw Error("forward_return: " + prices.ticker + " missing a close near " + format_date(date));
    return (*b - *a) / *a;
}

void write_signals(const std::filesystem::path& path, std::span<const std::vector<DailySignal>> per_ticker) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "ticker,date,mean_sentiment,count,delta_sentiment,delta_count,svc\n";
    for (const auto& series : per_ticker) {
        for (const auto& s : series) {
            out << csv::join({s.ticker, format_date(s.date),
                              s.today.mean_sentiment ? format_number(*s.today.mean_sentiment) : std::string{},
                              std::to_string(s.today.count), format_number(s.delta_sentiment),
                              std::to_string(s.delta_count), format_number(s.svc)})
                << '\n';
        }
    }
}

std::vector<double> svc_values(std::span<const DailySignal> series) {
    std::vector<double> out;
    out.reserve(series.size());
    for (const auto& s : series) out.push_back(s.svc);
    return out;
}

std::vector<DailySignal> restrict_to(std::span<const DailySignal> series, const TradingCalendar& calendar) {
    std::vector<DailySignal> out;
    out.reserve(calendar.size());
    auto it = series.begin();
    for (Date d : calendar.days) {
        it = std::lower_bound(it, series.end(), d, [](const DailySignal& s, Date x) { return s.date < x; });
        if (it == series.end() || it->date != d) {
            throw Error("no signal on trading day " + format_date(d));
        }
        out.push_back(*it);
    }
    return out;
}

}  // namespace sentitrade::signal
