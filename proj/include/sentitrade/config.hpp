#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sentitrade/experiments.hpp"
#include "sentitrade/market_data.hpp"
#include "sentitrade/signal.hpp"
#include "sentitrade/stats.hpp"
#include "sentitrade/strategy.hpp"

namespace sentitrade::config {

/// A TOML value as far as run configuration needs it.
struct Value {
    using Array = std::vector<Value>;
    std::variant<std::string, std::int64_t, double, bool, Array> data;

    std::string as_string(std::string_view key) const;
    double as_double(std::string_view key) const;
    std::int64_t as_int(std::string_view key) const;
    std::vector<std::string> as_string_list(std::string_view key) const;
    std::vector<double> as_double_list(std::string_view key) const;
};

/// Flat key/value table; keys inside `[section]` become `section.key`.
using Table = std::map<std::string, Value>;

/// Parses the TOML subset used by run configs: tables, bare or quoted keys,
/// basic and literal strings, integers, floats, booleans and (nested,
/// multi-line) arrays. Throws Error with the line number on anything else.
Table parse_toml(std::string_view text);
Table load_toml(const std::filesystem::path& path);

enum class Scorer { Precomputed, Lexicon };

/// Everything a CLI command needs. Defaults follow the published setup.
struct RunConfig {
    std::filesystem::path comments;    // comment CSV, or a directory of them
    std::filesystem::path prices_dir;  // holds <TICKER>.csv
    std::filesystem::path lexicon;
    std::filesystem::path labels;      // optional `score,label` CSV for evaluation
    std::filesystem::path out = "out";
    unsigned jobs = 1;

    CompanyRegistry registry = CompanyRegistry::tech10();
    std::vector<Ticker> tickers;  // defaults to every registry ticker
    std::optional<DateRange> range;
    std::vector<int> years;

    Scorer scorer = Scorer::Precomputed;
    double neutral_band = 0.1;
    double lexicon_floor = 0.1;

    std::string strategy = "all";  // single, multi, bh50, bh100 or all
    strategy::SingleStockConfig single;

    experiments::ThresholdGrid grid = experiments::ThresholdGrid::standard();
    DateRange period_a;
    DateRange period_b;
    std::vector<std::size_t> k_values;  // defaults to 1..#tickers

    double exclusion_radius = 20.0;
    signal::Lag lag = signal::Lag::NextDay;
    stats::Regressor regressor = stats::Regressor::Svc;
    double bin_width = 0.0025;

    RunConfig();

    /// Overlays `table` on the defaults. Relative paths resolve against `base_dir`.
    void apply(const Table& table, const std::filesystem::path& base_dir);
    /// Checks cross-field invariants and that every configured path exists.
    void validate() const;

    /// Labelled periods the backtest and report commands iterate over: one per
    /// configured year, else `range`, else empty (callers use the whole data set).
    std::vector<std::pair<std::string, DateRange>> periods() const;
};

/// Every scalar/array key RunConfig understands, for building CLI flags.
const std::vector<std::string>& known_keys();

/// Turns raw `--key value` strings into a Table. List keys take
/// comma-separated items; values that are not valid TOML stay strings.
Table flag_table(const std::map<std::string, std::string>& flags);

}  // namespace sentitrade::config
