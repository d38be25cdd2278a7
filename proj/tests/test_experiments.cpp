#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "grid_fixture.hpp"
#include "sentitrade/experiments.hpp"
#include "support.hpp"
#include "synthetic.hpp"

using namespace sentitrade;
using namespace sentitrade::experiments;

TEST(PercentileRanks, Basic) {
    const std::vector<double> v = {3, 1, 2};
    EXPECT_EQ(percentile_ranks(v), (std::vector<double>{1.0, 0.0, 0.5}));
}

TEST(PercentileRanks, TiesShareMeanRank) {
    const std::vector<double> v = {1, 1, 2};
    EXPECT_EQ(percentile_ranks(v), (std::vector<double>{0.25, 0.25, 1.0}));
    const std::vector<double> all = {4, 4, 4, 4};
    EXPECT_EQ(percentile_ranks(all), (std::vector<double>(4, 0.5)));
}

TEST(PercentileRanks, Singleton) {
    const std::vector<double> v = {42};
    EXPECT_EQ(percentile_ranks(v), std::vector<double>{1.0});
}

TEST(PercentileRanks, LargerValueNeverRanksLower) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> u(-5, 5);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> v(12);
        for (auto& x : v) x = u(rng);
        const auto p = percentile_ranks(v);
        for (std::size_t i = 0; i < v.size(); ++i) {
            EXPECT_GE(p[i], 0.0);
            EXPECT_LE(p[i], 1.0);
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (v[i] > v[j]) EXPECT_GT(p[i], p[j]);
                if (v[i] == v[j]) EXPECT_EQ(p[i], p[j]);
            }
        }
    }
}

TEST(ThresholdGrid, StandardAndValidation) {
    const auto g = ThresholdGrid::standard();
    ASSERT_EQ(g.pos_candidates.size(), 10u);
    EXPECT_EQ(g.pos_candidates.front(), 2.5);
    EXPECT_EQ(g.pos_candidates.back(), 25.0);
    EXPECT_EQ(g.neg_candidates.back(), -25.0);
    EXPECT_THROW((ThresholdGrid{{}, {-1}}.validate()), Error);
    EXPECT_THROW((ThresholdGrid{{1, -1}, {-1}}.validate()), Error);
    EXPECT_THROW((ThresholdGrid{{2, 1}, {-1}}.validate()), Error);
    EXPECT_THROW((ThresholdGrid{{1}, {-2, -1}}.validate()), Error);
}

TEST(GridSearch, HandRankedFixture) {
    const auto f = testsupport::grid_fixture();
    const Universe u{&f.panel, f.signals};
    const auto g = threshold_grid_search(f.grid, u, f.period_a, f.period_b, strategy::SingleStockConfig{});
    EXPECT_EQ(g.gain_a, testsupport::kGridGainA);
    EXPECT_EQ(g.gain_b, testsupport::kGridGainB);
    EXPECT_EQ(g.pct_a, testsupport::kGridPctA);
    EXPECT_EQ(g.pct_b, testsupport::kGridPctB);
    EXPECT_EQ(g.combined, testsupport::kGridCombined);
    EXPECT_EQ(g.chosen_pos, 10.0);
    EXPECT_EQ(g.chosen_neg, -10.0);
}

TEST(GridSearch, TiesGoToLargerPosThenMoreNegativeNeg) {
    const auto f = testsupport::grid_fixture(true);
    const Universe u{&f.panel, f.signals};
    const auto g = threshold_grid_search(f.grid, u, f.period_a, f.period_b, strategy::SingleStockConfig{});
    for (const auto& row : g.combined) {
        for (double c : row) EXPECT_EQ(c, 0.5);
    }
    EXPECT_EQ(g.chosen_pos, 15.0);
    EXPECT_EQ(g.chosen_neg, -15.0);
}

TEST(GridSearch, SingletonGrid) {
    auto f = testsupport::grid_fixture();
    f.grid = ThresholdGrid{{10}, {-15}};
    const Universe u{&f.panel, f.signals};
    const auto g = threshold_grid_search(f.grid, u, f.period_a, f.period_b, strategy::SingleStockConfig{});
    EXPECT_EQ(g.chosen_pos, 10.0);
    EXPECT_EQ(g.chosen_neg, -15.0);
    EXPECT_EQ(g.combined[0][0], 1.0);
}

TEST(GridSearch, ChosenPairIsMaximal) {
    const auto f = testsupport::grid_fixture();
    const Universe u{&f.panel, f.signals};
    const auto g = threshold_grid_search(ThresholdGrid{{2.5, 5, 7.5, 10, 12.5, 15}, {-2.5, -5, -10, -12.5, -20}}, u,
                                         f.period_a, f.period_b, strategy::SingleStockConfig{});
    double chosen = -1.0;
    for (std::size_t i = 0; i < g.grid.pos_candidates.size(); ++i) {
        for (std::size_t j = 0; j < g.grid.neg_candidates.size(); ++j) {
            if (g.grid.pos_candidates[i] == g.chosen_pos && g.grid.neg_candidates[j] == g.chosen_neg) {
                chosen = g.combined[i][j];
            }
        }
    }
    for (const auto& row : g.combined) {
        for (double c : row) EXPECT_GE(chosen, c);
    }
}

TEST(GridSearch, JobsDoNotChangeResult) {
    const auto f = testsupport::grid_fixture();
    const Universe u{&f.panel, f.signals};
    const auto g1 = threshold_grid_search(ThresholdGrid::standard(), u, f.period_a, f.period_b, {}, 1);
    const auto g4 = threshold_grid_search(ThresholdGrid::standard(), u, f.period_a, f.period_b, {}, 4);
    EXPECT_EQ(g1.combined, g4.combined);
    EXPECT_EQ(g1.chosen_pos, g4.chosen_pos);
}

TEST(GridSearch, PeriodOutsideDataFails) {
    const auto f = testsupport::grid_fixture();
    const Universe u{&f.panel, f.signals};
    EXPECT_THROW(threshold_grid_search(f.grid, u, parse_date_range("2030-01-01..2030-02-01"), f.period_b, {}), Error);
}

TEST(Combinatorics, BinomialAndEnumeration) {
    EXPECT_EQ(binomial(10, 0), 1u);
    EXPECT_EQ(binomial(10, 3), 120u);
    EXPECT_EQ(binomial(10, 10), 1u);
    EXPECT_EQ(binomial(3, 4), 0u);
    const auto c = combinations(4, 2);
    ASSERT_EQ(c.size(), 6u);
    EXPECT_EQ(c.front(), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(c.back(), (std::vector<std::size_t>{2, 3}));
    std::uint64_t total = 0;
    for (std::size_t k = 1; k <= 10; ++k) {
        EXPECT_EQ(combinations(10, k).size(), binomial(10, k));
        total += binomial(10, k);
    }
    EXPECT_EQ(total, 1023u);
}

using testsupport::synthetic;

TEST(Permutation, FullSubsetIsSingleRun) {
    const auto s = synthetic(4, 30, 1);
    const Universe u{&s.panel, s.signals};
    const std::size_t ks[] = {4};
    const auto rows = permutation_experiment(u, ks, 100.0);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].strategy, "multi_stock");
    EXPECT_EQ(rows[1].strategy, "bh");
    EXPECT_EQ(rows[0].n_subsets, 1u);
    const auto direct = strategy::multi_stock_run(s.signals, s.panel, 100.0);
    EXPECT_EQ(rows[0].mean_return, direct.metrics.total_return);
}

TEST(Permutation, SingletonsDegenerateToBuyAndHold) {
    const auto s = synthetic(10, 25, 2);
    const Universe u{&s.panel, s.signals};
    const std::size_t ks[] = {1};
    const auto rows = permutation_experiment(u, ks, 100.0);
    EXPECT_EQ(rows[0].n_subsets, 10u);
    EXPECT_NEAR(rows[0].mean_return, rows[1].mean_return, 1e-12);
    EXPECT_NEAR(rows[0].mean_risk, rows[1].mean_risk, 1e-12);
}

TEST(Permutation, BuyAndHoldMeanIsKIndependent) {
    const auto s = synthetic(6, 20, 3);
    const Universe u{&s.panel, s.signals};
    const std::size_t ks[] = {1, 2, 3, 4, 5, 6};
    const auto rows = permutation_experiment(u, ks, 100.0);
    double population = 0.0;
    for (const auto& c : s.panel.closes) population += c.back() / c.front() - 1.0;
    population /= 6.0;
    for (const auto& r : rows) {
        if (r.strategy == "bh") EXPECT_NEAR(r.mean_return, population, 1e-12) << "k=" << r.k;
    }
}

TEST(Permutation, RejectsKOutsideUniverse) {
    const auto s = synthetic(3, 10, 4);
    const Universe u{&s.panel, s.signals};
    const std::size_t ks[] = {4};
    EXPECT_THROW(permutation_experiment(u, ks, 100.0), Error);
    const std::size_t zero[] = {0};
    EXPECT_THROW(permutation_experiment(u, zero, 100.0), Error);
}

namespace {

strategy::BacktestResult series(const std::vector<double>& v) {
    strategy::BacktestResult r;
    r.dates = testsupport::calendar(v.size()).days;
    r.total_value = v;
    return r;
}

}  // namespace

TEST(Distribution, SelfComparisonIsZero) {
    const auto a = series({100, 103, 99, 104});
    const auto d = daily_diff_distribution(a, a);
    for (double x : d.diffs) EXPECT_EQ(x, 0.0);
    EXPECT_EQ(d.mean, 0.0);
    ASSERT_EQ(d.histogram.size(), 1u);
    EXPECT_EQ(d.histogram[0].count, 3u);
}

TEST(Distribution, ConstantOffset) {
    const auto d = daily_diff_distribution(series({100, 101, 102.01, 103.0301}), series({100, 100, 100, 100}));
    EXPECT_NEAR(d.mean, 0.01, 1e-12);
    EXPECT_NEAR(d.stddev, 0.0, 1e-12);
}

TEST(Distribution, PlantedFiveDiffs) {
    // growths a: .02, 0, -.05, .05, 0 ; b: .01, 0, 0, 0, 0
    const auto a = series({100, 102, 102, 96.9, 101.745, 101.745});
    const auto b = series({100, 101, 101, 101, 101, 101});
    const auto d = daily_diff_distribution(a, b, 0.0025);
    ASSERT_EQ(d.diffs.size(), 5u);
    EXPECT_NEAR(d.mean, (0.01 + 0 - 0.05 + 0.05 + 0) / 5.0, 1e-12);
    EXPECT_NEAR(d.min, -0.05, 1e-12);
    EXPECT_NEAR(d.max, 0.05, 1e-12);
    std::size_t total = 0;
    for (const auto& bin : d.histogram) {
        total += bin.count;
        EXPECT_NEAR(bin.hi - bin.lo, 0.0025, 1e-15);
    }
    EXPECT_EQ(total, 5u);
}

TEST(Distribution, MisalignedRejected) {
    auto b = series({1, 2, 3});
    b.dates[1] += std::chrono::days{10};
    EXPECT_THROW(daily_diff_distribution(series({1, 2, 3}), b), Error);
}

TEST(Shares, UniformWeights) {
    const auto p = testsupport::panel({"A", "B", "C", "D"}, {{1, 2}, {3, 4}, {5, 6}, {7, 8}});
    auto r = series({100, 100});
    r.tickers = p.tickers;
    r.weights = {{0.25, 0.25, 0.25, 0.25}, {0.25, 0.25, 0.25, 0.25}};
    const auto s = investment_share_analysis(r, p);
    for (double w : s.mean_weight_pct) EXPECT_NEAR(w, 25.0, 1e-12);
    EXPECT_NEAR(s.mean_weight_stddev, 0.0, 1e-12);
}

TEST(Shares, ThreeTickerStddev) {
    const auto p = testsupport::panel({"A", "B", "C"}, {{10, 10}, {20, 20}, {30, 30}});
    auto r = series({100, 100});
    r.tickers = p.tickers;
    r.weights = {{0.5, 0.3, 0.2}, {0.3, 0.3, 0.4}};
    const auto s = investment_share_analysis(r, p);
    EXPECT_NEAR(s.mean_weight_pct[0], 40.0, 1e-12);
    EXPECT_NEAR(s.mean_weight_pct[1], 30.0, 1e-12);
    EXPECT_NEAR(s.mean_weight_pct[2], 30.0, 1e-12);
    EXPECT_NEAR(std::accumulate(s.mean_weight_pct.begin(), s.mean_weight_pct.end(), 0.0), 100.0, 1e-6);
    // mean 33.33; deviations 6.67, -3.33, -3.33; sum of squares 66.67 over 2 -> sqrt(33.33)
    EXPECT_NEAR(s.mean_weight_stddev, 5.773502691896258, 1e-9);
    // flat prices: the static allocation earns nothing
    EXPECT_NEAR(s.static_bh_return, 0.0, 1e-12);
    EXPECT_NEAR(s.equal_bh_return, 0.0, 1e-12);
}

TEST(Shares, MissingWeightsRejected) {
    const auto p = testsupport::panel({"A"}, {{1, 2}});
    auto r = series({100, 200});
    r.tickers = p.tickers;
    EXPECT_THROW(investment_share_analysis(r, p), Error);
}

TEST(Writers, GridCsvRowMajor) {
    const auto f = testsupport::grid_fixture();
    const Universe u{&f.panel, f.signals};
    const auto g = threshold_grid_search(f.grid, u, f.period_a, f.period_b, {});
    testsupport::TempDir dir("grid");
    write_grid(dir / "g.csv", g);
    const auto text = testsupport::read_file(dir / "g.csv");
    EXPECT_EQ(text.substr(0, text.find('\n')), "pos_threshold,neg_threshold,gain_a,gain_b,pct_a,pct_b,combined");
    EXPECT_NE(text.find("\n5,-5,18.75,-37.5,0.8125,0,0.40625\n"), std::string::npos) << text;
    EXPECT_NE(text.find("\n10,-10,18.75,0,0.8125,0.8125,0.8125\n"), std::string::npos) << text;
}
