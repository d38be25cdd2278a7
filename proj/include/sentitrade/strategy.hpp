#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sentitrade/market_data.hpp"
#include "sentitrade/signal.hpp"

namespace sentitrade::strategy {

/// Parameters of the single-stock threshold strategy.
struct SingleStockConfig {
    double initial_total = 100.0;
    double invest_fraction = 0.5;
    double pos_threshold = 10.0;
    double neg_threshold = -15.0;

    /// Throws unless pos_threshold > 0 > neg_threshold, initial_total > 0
    /// and invest_fraction is in [0,1].
    void validate() const;
};

enum class Action { Buy, Sell, Reverse, None };
std::string_view to_string(Action a);

/// One row of the trade log.
struct TradeEvent {
    Date date;
    Ticker ticker;
    Action action = Action::None;
    double amount_usd = 0.0;
    double shares = 0.0;
    double svc = 0.0;
};

enum class ReversalDirection { ToInvest, ToSavings };

struct PendingReversal {
    ReversalDirection direction;
    double amount = 0.0;
};

/// Cash plus fractional share positions. Savings and shares are never negative.
struct PortfolioLedger {
    double savings = 0.0;
    std::map<Ticker, double> positions;
    std::optional<PendingReversal> pending_reversal;
    std::vector<TradeEvent> history;

    double shares(const Ticker& t) const;
    /// savings + shares * close for a single-ticker ledger.
    double value(const Ticker& t, double close) const;
};

/// What the strategy sees at one close.
struct StepInput {
    Date date;
    double close = 0.0;
    double svc = 0.0;
};

/// One day of the threshold strategy at `in.close`.
/// A pending reversal always runs first and suppresses new triggers that day;
/// it moves back min(recorded amount, what the source account holds).
/// Otherwise svc > pos_threshold moves all savings into the stock and
/// svc < neg_threshold moves the whole position into savings, each recording
/// the reversal for the next step. Every call appends one history row.
PortfolioLedger single_stock_step(PortfolioLedger ledger, const Ticker& ticker, const StepInput& in,
                                  const SingleStockConfig& config);

struct Metrics {
    double total_return = 0.0;    // V_end / V_start - 1
    double risk = 0.0;            // sample stddev of daily growth; 0 when fewer than 2 growths
    bool risk_defined = false;    // false when the series has fewer than 3 values
    std::optional<double> ratio;  // total_return / risk; absent when risk is 0
};

/// Return, risk and return-to-risk of a value series (fractions, not percent).
Metrics metrics(std::span<const double> values);

/// Daily growth V_t / V_{t-1} - 1.
std::vector<double> daily_growth(std::span<const double> values);

struct BacktestResult {
    std::vector<Date> dates;
    std::vector<double> total_value;
    std::vector<Ticker> tickers;
    /// Per date, fraction of total value held in each ticker (multi-stock and B&H).
    std::vector<std::vector<double>> weights;
    std::vector<TradeEvent> trades;
    Metrics metrics;
};

/// Invests invest_fraction * initial_total split equally over the panel's
/// tickers at the first close and never trades again.
BacktestResult bh_run(const PricePanel& prices, double initial_total, double invest_fraction);

/// Buy and hold with an explicit initial allocation (fractions of initial_total).
BacktestResult static_bh_run(const PricePanel& prices, std::span<const double> allocation, double initial_total);

/// Single-stock strategy for `ticker` over `signals`, which must cover exactly
/// the panel's calendar. Starts like bh_run with invest_fraction.
/// `trades` keeps the days that did something; quiet days are dropped.
BacktestResult single_stock_run(std::span<const signal::DailySignal> signals, const PricePanel& prices,
                                const Ticker& ticker, const SingleStockConfig& config);

/// Sums several runs on the same dates into one value series.
BacktestResult combine(std::span<const BacktestResult> runs);

/// Shifted SVC values and the weights derived from them.
struct WeightPlan {
    std::vector<double> shifted;
    std::vector<double> weights;
};

/// Absent values count as 0. Returns nullopt (hold positions) when every
/// value is equal; otherwise shifted_i = svc_i - min and weights are the
/// shifted values over their sum. Throws on an empty input.
std::optional<WeightPlan> rebalance_weights(std::span<const std::optional<double>> svc);

/// Keyed form of rebalance_weights; nullopt means no rebalance.
std::optional<std::map<Ticker, double>> multi_stock_weights(const std::map<Ticker, std::optional<double>>& svc);

/// Liquidates `shares` at `closes` and buys back according to `weights`.
std::vector<double> rebalance_positions(std::span<const double> shares, std::span<const double> closes,
                                        std::span<const double> weights);

/// Equal-weight purchase of initial_total at the first close, then a full
/// rebalance to the SVC weights at every later close (held on no-rebalance days).
/// `signals[i]` belongs to `prices.tickers[i]` and covers the panel's calendar.
BacktestResult multi_stock_run(std::span<const std::vector<signal::DailySignal>> signals, const PricePanel& prices,
                               double initial_total);

/// Same run from bare SVC columns, svc[ticker][day], already aligned to the panel.
BacktestResult multi_stock_run(std::span<const std::vector<double>> svc, const PricePanel& prices,
                               double initial_total);

/// `date,total_value[,<ticker>...]` with per-ticker weight columns when present.
void write_result(const std::filesystem::path& path, const BacktestResult& r);
/// `return_pct,risk_pct,ratio` in percent; ratio left empty when undefined.
void write_metrics(const std::filesystem::path& path, const Metrics& m);
/// `date,ticker,action,amount_usd,shares,svc`.
void write_trades(const std::filesystem::path& path, std::span<const TradeEvent> trades);

}  // namespace sentitrade::strategy
