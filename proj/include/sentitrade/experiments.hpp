#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "sentitrade/strategy.hpp"

namespace sentitrade::experiments {

/// Candidate thresholds: positives ascending, negatives descending.
struct ThresholdGrid {
    std::vector<double> pos_candidates;
    std::vector<double> neg_candidates;

    /// 2.5, 5, ..., 25 and -2.5, -5, ..., -25.
    static ThresholdGrid standard();
    void validate() const;
};

/// Matrices are indexed [pos][neg].
using Matrix = std::vector<std::vector<double>>;

struct GridResult {
    ThresholdGrid grid;
    Matrix gain_a, gain_b;  // mean USD gain over the invest_fraction B&H
    Matrix pct_a, pct_b;    // percentile of each gain within its period
    Matrix combined;        // mean of the two percentiles
    double chosen_pos = 0.0;
    double chosen_neg = 0.0;
};

/// Percentile of each value among `values`: ascending 0-based rank over
/// (count - 1), tied values sharing their mean rank. A single value scores 1.
std::vector<double> percentile_ranks(std::span<const double> values);

/// Per-ticker inputs for sweeps. `signals[i]` belongs to `prices.tickers[i]`
/// and covers the panel's calendar.
struct Universe {
    const PricePanel* prices = nullptr;
    std::span<const std::vector<signal::DailySignal>> signals;
};

/// Runs the single-stock strategy for every threshold pair on every ticker in
/// both periods, averages the gain over the B&H baseline across tickers, ranks
/// the gains within each period and picks the pair with the highest mean
/// percentile. Ties go to the larger positive threshold, then to the more
/// negative one. `base` supplies initial_total and invest_fraction.
GridResult threshold_grid_search(const ThresholdGrid& grid, const Universe& universe, const DateRange& period_a,
                                 const DateRange& period_b, const strategy::SingleStockConfig& base,
                                 unsigned jobs = 1);

struct PermutationRow {
    std::size_t k = 0;
    std::string strategy;  // "multi_stock" or "bh"
    double mean_return = 0.0;
    double mean_risk = 0.0;
    std::optional<double> mean_ratio;  // over subsets whose ratio is defined
    std::uint64_t n_subsets = 0;
};

/// Every size-k subset (lexicographic order) of `tickers`.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

std::uint64_t binomial(std::size_t n, std::size_t k);

/// For each k, runs multi_stock_run and full-investment equal-weight B&H on
/// every size-k subset of the universe and averages return, risk and ratio.
/// Output order is (k ascending, multi_stock then bh) whatever `jobs` is.
std::vector<PermutationRow> permutation_experiment(const Universe& universe, std::span<const std::size_t> k_values,
                                                   double initial_total, unsigned jobs = 1);

struct Bin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

struct DistributionReport {
    std::vector<double> diffs;
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
    double bin_width = 0.0;
    std::vector<Bin> histogram;  // contiguous bins from the min bin to the max bin
};

/// Day-by-day growth differences a - b over identical dates.
DistributionReport daily_diff_distribution(const strategy::BacktestResult& a, const strategy::BacktestResult& b,
                                           double bin_width = 0.0025);

struct ShareReport {
    std::vector<Ticker> tickers;
    std::vector<double> mean_weight_pct;  // sums to 100
    double mean_weight_stddev = 0.0;      // sample stddev across tickers, in percentage points
    std::vector<double> price_return;     // per ticker over the run
    double static_bh_return = 0.0;        // B&H with the mean weights as fixed allocation
    double equal_bh_return = 0.0;
};

/// Averages the daily weights of a multi-stock run and tests whether holding
/// that allocation statically would have matched its outcome.
ShareReport investment_share_analysis(const strategy::BacktestResult& multi_result, const PricePanel& prices);

void write_grid(const std::filesystem::path& path, const GridResult& g);
void write_permutation(const std::filesystem::path& path, std::span<const PermutationRow> rows);
void write_distribution(const std::filesystem::path& path, const DistributionReport& d);
void write_shares(const std::filesystem::path& path, const ShareReport& s);

}  // namespace sentitrade::experiments
