#include <gtest/gtest.h>

#include <cmath>

#include "sentitrade/config.hpp"
#include "support.hpp"

using namespace sentitrade;
using namespace sentitrade::config;

TEST(Toml, ScalarsAndComments) {
    const auto t = parse_toml(R"(# run
name = "basic \"quoted\""   # trailing comment
path = 'C:\raw'
count = 1_000
ratio = -2.5e-1
flag = true
big = inf
)");
    EXPECT_EQ(t.at("name").as_string("name"), "basic \"quoted\"");
    EXPECT_EQ(t.at("path").as_string("path"), "C:\\raw");
    EXPECT_EQ(t.at("count").as_int("count"), 1000);
    EXPECT_EQ(t.at("ratio").as_double("ratio"), -0.25);
    EXPECT_EQ(std::get<bool>(t.at("flag").data), true);
    EXPECT_TRUE(std::isinf(t.at("big").as_double("big")));
    EXPECT_EQ(t.at("count").as_double("count"), 1000.0);
    EXPECT_THROW(t.at("name").as_double("name"), Error);
}

TEST(Toml, ArraysAndSections) {
    const auto t = parse_toml(R"(
grid_pos = [2.5, 5,
            7.5, ]   # multi-line with trailing comma
[registry]
AAPL = ["Apple"]
"BRK.B" = ["Berkshire", "Berkshire Hathaway"]
)");
    EXPECT_EQ(t.at("grid_pos").as_double_list("grid_pos"), (std::vector<double>{2.5, 5, 7.5}));
    EXPECT_EQ(t.at("registry.AAPL").as_string_list("r"), std::vector<std::string>{"Apple"});
    EXPECT_EQ(t.at("registry.BRK.B").as_string_list("r").size(), 2u);
}

TEST(Toml, ErrorsCarryLineNumbers) {
    try {
        parse_toml("a = 1\nb = [1, 2\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
    }
    EXPECT_THROW(parse_toml("a = 1\na = 2\n"), Error);
    EXPECT_THROW(parse_toml("a = \"open\n"), Error);
    EXPECT_THROW(parse_toml("a = 1 2\n"), Error);
    EXPECT_THROW(parse_toml("= 3\n"), Error);
}

TEST(RunConfig, Defaults) {
    RunConfig c;
    EXPECT_EQ(c.single.initial_total, 100.0);
    EXPECT_EQ(c.single.invest_fraction, 0.5);
    EXPECT_EQ(c.single.pos_threshold, 10.0);
    EXPECT_EQ(c.single.neg_threshold, -15.0);
    EXPECT_EQ(c.exclusion_radius, 20.0);
    EXPECT_EQ(c.neutral_band, 0.1);
    EXPECT_EQ(format_date_range(c.period_a), "2020-02-01..2020-04-01");
    EXPECT_EQ(format_date_range(c.period_b), "2020-04-01..2020-07-01");
    EXPECT_EQ(c.registry.tickers().size(), 10u);
    EXPECT_EQ(c.jobs, 1u);
    EXPECT_TRUE(c.periods().empty());
}

TEST(RunConfig, ApplyResolvesRelativePaths) {
    testsupport::TempDir dir("cfg");
    std::filesystem::create_directories(dir / "prices");
    testsupport::write_file(dir / "comments.csv", "timestamp,body,tickers,score\n");
    RunConfig c;
    c.apply(parse_toml(R"(
comments = "comments.csv"
prices_dir = "prices"
out = "results"
tickers = ["AAPL", "MSFT"]
years = [2020, 2021]
pos_threshold = 12
neg_threshold = -7.5
lag = "day_after_next"
regressor = "sentiment"
k_values = [1, 2]
scorer = "lexicon"
)"),
            dir.path());
    EXPECT_EQ(c.comments, dir / "comments.csv");
    EXPECT_EQ(c.out, dir / "results");
    EXPECT_EQ(c.single.pos_threshold, 12.0);
    EXPECT_EQ(c.lag, signal::Lag::DayAfterNext);
    EXPECT_EQ(c.regressor, stats::Regressor::DeltaSentiment);
    EXPECT_EQ(c.scorer, Scorer::Lexicon);
    EXPECT_EQ(c.k_values, (std::vector<std::size_t>{1, 2}));
    const auto p = c.periods();
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0].first, "2020");
    EXPECT_EQ(format_date_range(p[1].second), "2021-01-01..2022-01-01");
    EXPECT_NO_THROW(c.validate());
}

TEST(RunConfig, CustomRegistry) {
    RunConfig c;
    c.apply(parse_toml("[registry]\nACME = [\"Acme\", \"Acme Corp\"]\n"), {});
    EXPECT_EQ(c.registry.tickers(), std::vector<Ticker>{"ACME"});
}

TEST(RunConfig, RejectsUnknownKeysAndBadValues) {
    RunConfig c;
    EXPECT_THROW(c.apply(parse_toml("threshold = 3\n"), {}), Error);
    EXPECT_THROW(c.apply(parse_toml("lag = \"weekly\"\n"), {}), Error);
    EXPECT_THROW(c.apply(parse_toml("jobs = 0\n"), {}), Error);
    EXPECT_THROW(c.apply(parse_toml("k_values = [1.5]\n"), {}), Error);
    EXPECT_THROW(c.apply(parse_toml("pos_threshold = \"ten\"\n"), {}), Error);
}

TEST(RunConfig, ValidateChecksInvariants) {
    {
        RunConfig c;
        c.comments = "/definitely/not/here.csv";
        EXPECT_THROW(c.validate(), Error);
    }
    {
        RunConfig c;
        c.single.pos_threshold = -1;
        EXPECT_THROW(c.validate(), Error);
    }
    {
        RunConfig c;
        const auto d = parse_date("2021-01-01");
        c.range = DateRange{d, d};
        EXPECT_THROW(c.validate(), Error);
    }
    {
        RunConfig c;
        c.tickers = {"IBM"};
        EXPECT_THROW(c.validate(), Error);
    }
    {
        RunConfig c;
        c.strategy = "momentum";
        EXPECT_THROW(c.validate(), Error);
    }
}

TEST(FlagTable, ParsesScalarsAndLists) {
    const auto t = flag_table({{"pos_threshold", "12.5"},
                               {"tickers", "AAPL,MSFT"},
                               {"grid_neg", "-5,-10"},
                               {"strategy", "multi"},
                               {"range", "2021-01-01..2021-06-01"}});
    EXPECT_EQ(t.at("pos_threshold").as_double("x"), 12.5);
    EXPECT_EQ(t.at("tickers").as_string_list("x"), (std::vector<std::string>{"AAPL", "MSFT"}));
    EXPECT_EQ(t.at("grid_neg").as_double_list("x"), (std::vector<double>{-5, -10}));
    EXPECT_EQ(t.at("strategy").as_string("x"), "multi");
    RunConfig c;
    c.apply(t, {});
    EXPECT_EQ(c.strategy, "multi");
    EXPECT_EQ(c.grid.neg_candidates.size(), 2u);
}

TEST(FlagTable, EveryKnownKeyIsAccepted) {
    const std::map<std::string, std::string> samples = {
        {"comments", "c.csv"},        {"prices_dir", "prices"},   {"lexicon", "lex.txt"},
        {"labels", "labels.csv"},     {"tickers", "AAPL"},        {"range", "2021-01-01..2021-02-01"},
        {"years", "2021"},            {"scorer", "lexicon"},      {"neutral_band", "0.2"},
        {"lexicon_floor", "0.1"},     {"strategy", "bh50"},       {"initial_total", "250"},
        {"invest_fraction", "0.25"},  {"pos_threshold", "7"},     {"neg_threshold", "-7"},
        {"grid_pos", "1,2"},          {"grid_neg", "-1,-2"},      {"period_a", "2021-01-01..2021-02-01"},
        {"period_b", "2021-02-01..2021-03-01"}, {"k_values", "1,3"}, {"exclusion_radius", "5"},
        {"lag", "next_day"},          {"regressor", "svc"},       {"bin_width", "0.01"},
    };
    for (const auto& key : known_keys()) {
        ASSERT_TRUE(samples.count(key)) << key;
        RunConfig c;
        EXPECT_NO_THROW(c.apply(flag_table({{key, samples.at(key)}}), {})) << key;
    }
}
