#include <gtest/gtest.h>

#include "sentitrade/signal.hpp"
#include "support.hpp"

using namespace sentitrade;
using namespace sentitrade::signal;
using testsupport::epoch;

namespace {

CommentRecord comment(const std::string& date, double score, TickerSet tickers = {"MSFT"}, int hour = 12) {
    return CommentRecord{epoch(date, hour), "x", std::move(tickers), score, 0};
}

DailyAggregate agg(std::optional<double> mean, std::int64_t count) {
    return DailyAggregate{"MSFT", parse_date("2021-01-04"), mean, count};
}

}  // namespace

TEST(DailyAggregate, MeanOfScores) {
    const std::vector<CommentRecord> c = {comment("2021-01-04", 0.2), comment("2021-01-04", 0.4),
                                          comment("2021-01-05", -0.5), comment("2021-01-04", 0.1, {"AAPL"})};
    const auto a = daily_aggregate(c, "MSFT", parse_date("2021-01-04"));
    EXPECT_NEAR(*a.mean_sentiment, 0.3, 1e-15);
    EXPECT_EQ(a.count, 2);
}

TEST(DailyAggregate, EmptyDay) {
    const std::vector<CommentRecord> c = {comment("2021-01-04", 0.2)};
    const auto a = daily_aggregate(c, "MSFT", parse_date("2021-01-06"));
    EXPECT_FALSE(a.mean_sentiment);
    EXPECT_EQ(a.count, 0);
}

TEST(DailyAggregate, SymmetricScoresAverageToZero) {
    const std::vector<CommentRecord> c = {comment("2021-01-04", -0.5), comment("2021-01-04", 0.5)};
    const auto a = daily_aggregate(c, "MSFT", parse_date("2021-01-04"));
    EXPECT_EQ(*a.mean_sentiment, 0.0);
    EXPECT_EQ(a.count, 2);
}

TEST(DailyAggregate, UnscoredCommentFails) {
    std::vector<CommentRecord> c = {comment("2021-01-04", 0.1)};
    c[0].score.reset();
    try {
        daily_aggregate(c, "MSFT", parse_date("2021-01-04"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("unscored comment"), std::string::npos);
    }
}

TEST(DailyAggregate, MultiTickerCommentCountsForEach) {
    const std::vector<CommentRecord> c = {comment("2021-01-04", 0.3, {"MSFT", "AAPL"})};
    EXPECT_EQ(daily_aggregate(c, "AAPL", parse_date("2021-01-04")).count, 1);
    EXPECT_EQ(daily_aggregate(c, "MSFT", parse_date("2021-01-04")).count, 1);
}

TEST(Svc, SameMeanIsZero) {
    EXPECT_EQ(svc(agg(0.1, 100), agg(0.1, 250)), 0.0);
}

TEST(Svc, RisingSentimentAndVolume) {
    EXPECT_NEAR(svc(agg(0.0, 100), agg(0.2, 150)), 10.0, 1e-12);
}

TEST(Svc, FallingSentimentAndVolume) {
    EXPECT_NEAR(svc(agg(0.3, 200), agg(0.1, 140)), -12.0, 1e-12);
}

TEST(Svc, AbsentSideGivesZeroDelta) {
    EXPECT_EQ(delta_sentiment(agg(std::nullopt, 0), agg(0.4, 30)), 0.0);
    EXPECT_EQ(svc(agg(0.4, 30), agg(std::nullopt, 0)), 0.0);
}

TEST(SignalSeries, SingleDay) {
    const std::vector<CommentRecord> c = {comment("2021-01-03", 0.4), comment("2021-01-04", -0.2)};
    const auto s = signal_series(c, "MSFT", testsupport::calendar(1));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].svc, 0.0);
    EXPECT_EQ(s[0].delta_count, 0);
}

TEST(SignalSeries, NoCommentsAllZero) {
    const auto s = signal_series({}, "MSFT", testsupport::calendar(5));
    ASSERT_EQ(s.size(), 5u);
    for (const auto& x : s) EXPECT_EQ(x.svc, 0.0);
}

TEST(SignalSeries, PreviousCalendarDayBaseline) {
    // Trading days Fri 2021-01-08 and Mon 2021-01-11; Sunday's comments are the Monday baseline.
    TradingCalendar cal;
    cal.days = {parse_date("2021-01-08"), parse_date("2021-01-11")};
    std::vector<CommentRecord> c;
    for (int i = 0; i < 4; ++i) c.push_back(comment("2021-01-08", 0.3));
    c.push_back(comment("2021-01-10", 0.1));
    c.push_back(comment("2021-01-10", 0.1));
    for (int i = 0; i < 5; ++i) c.push_back(comment("2021-01-11", 0.4));
    const auto s = signal_series(c, "MSFT", cal);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].svc, 0.0);
    EXPECT_NEAR(s[1].delta_sentiment, 0.3, 1e-12);
    EXPECT_EQ(s[1].delta_count, 3);
    EXPECT_NEAR(s[1].svc, 0.9, 1e-12);
    EXPECT_EQ(s[1].svc, s[1].delta_sentiment * 3.0);
}

TEST(SignalSeries, SvcRecomputableFromAggregates) {
    std::vector<CommentRecord> c;
    const double scores[] = {0.1, -0.2, 0.3, 0.05, -0.4, 0.25, 0.0};
    for (int d = 0; d < 7; ++d) {
        for (int k = 0; k <= d % 3; ++k) {
            const auto date = format_date(testsupport::day0() + std::chrono::days{d});
            c.push_back(comment(date, scores[(d + k) % 7]));
        }
    }
    const auto cal = testsupport::calendar(7);
    const auto s = signal_series(c, "MSFT", cal);
    for (std::size_t i = 1; i < s.size(); ++i) {
        const auto prev = daily_aggregate(c, "MSFT", cal.days[i] - std::chrono::days{1});
        EXPECT_EQ(s[i].svc, svc(prev, s[i].today));
        EXPECT_EQ(s[i].svc, s[i].delta_sentiment * std::abs(static_cast<double>(s[i].delta_count)));
    }
}

TEST(ForwardReturn, NextDay) {
    PriceSeries p{"X", {{testsupport::day0(), 100.0}, {testsupport::day0() + std::chrono::days{1}, 104.21}}};
    const auto cal = testsupport::calendar(2);
    EXPECT_NEAR(forward_return(p, cal, cal.days[0], Lag::NextDay), 0.0421, 1e-12);
}

TEST(ForwardReturn, Flat) {
    PriceSeries p{"X", {{testsupport::day0(), 50.0}, {testsupport::day0() + std::chrono::days{1}, 50.0}}};
    const auto cal = testsupport::calendar(2);
    EXPECT_EQ(forward_return(p, cal, cal.days[0], Lag::NextDay), 0.0);
}

TEST(ForwardReturn, DayAfterNext) {
    const auto cal = testsupport::calendar(3);
    PriceSeries p{"X", {{cal.days[0], 100.0}, {cal.days[1], 110.0}, {cal.days[2], 121.0}}};
    EXPECT_NEAR(forward_return(p, cal, cal.days[0], Lag::DayAfterNext), 0.10, 1e-12);
    EXPECT_THROW(forward_return(p, cal, cal.days[1], Lag::DayAfterNext), Error);
    EXPECT_THROW(forward_return(p, cal, cal.days[2], Lag::NextDay), Error);
}

TEST(ForwardReturn, CountsTradingDays) {
    TradingCalendar cal;
    cal.days = {parse_date("2021-01-08"), parse_date("2021-01-11")};
    PriceSeries p{"X", {{cal.days[0], 100.0}, {cal.days[1], 90.0}}};
    EXPECT_NEAR(forward_return(p, cal, cal.days[0], Lag::NextDay), -0.1, 1e-12);
}

TEST(Lag, ParseNames) {
    EXPECT_EQ(parse_lag("next_day"), Lag::NextDay);
    EXPECT_EQ(parse_lag("day_after_next"), Lag::DayAfterNext);
    EXPECT_EQ(to_string(Lag::DayAfterNext), "day_after_next");
    EXPECT_THROW(parse_lag("tomorrow"), Error);
}

TEST(RestrictTo, SlicesAndDetectsGaps) {
    const auto cal = testsupport::calendar(5);
    const auto s = testsupport::svc_signals("X", cal, {0, 1, 2, 3, 4});
    TradingCalendar sub;
    sub.days = {cal.days[1], cal.days[2]};
    const auto r = restrict_to(s, sub);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[1].svc, 2.0);
    sub.days.push_back(cal.days[4] + std::chrono::days{1});
    EXPECT_THROW(restrict_to(s, sub), Error);
}
