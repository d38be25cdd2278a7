#include "sentitrade/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "sentitrade/csv.hpp"

namespace sentitrade::strategy {

namespace {

void check_aligned(std::span<const signal::DailySignal> signals, const TradingCalendar& calendar,
                   const Ticker& ticker) {
    if (signals.size() != calendar.size()) {
        throw Error("signals for " + ticker + " cover " + std::to_string(signals.size()) + " days, calendar has " +
                    std::to_string(calendar.size()));
    }
    for (std::size_t i = 0; i < signals.size(); ++i) {
        if (signals[i].date != calendar.days[i]) {
            throw Error("signals for " + ticker + " misaligned with calendar at " + format_date(calendar.days[i]));
        }
    }
}

double portfolio_value(double savings, std::span<const double> shares,
                       const std::vector<std::vector<double>>& closes, std::size_t day) {
    double v = savings;
    for (std::size_t t = 0; t < shares.size(); ++t) v += shares[t] * closes[t][day];
    return v;
}

std::vector<double> position_weights(std::span<const double> shares, const std::vector<std::vector<double>>& closes,
                                     std::size_t day, double total) {
    std::vector<double> w(shares.size(), 0.0);
    if (total <= 0.0) return w;
    for (std::size_t t = 0; t < shares.size(); ++t) w[t] = shares[t] * closes[t][day] / total;
    return w;
}

void require_panel(const PricePanel& prices) {
    if (prices.tickers.empty()) throw Error("backtest: no tickers");
    if (prices.days() == 0) throw Error("backtest: empty calendar");
}

}  // namespace

void SingleStockConfig::validate() const {
    if (!(pos_threshold > 0.0)) throw Error("pos_threshold must be positive");
    if (!(neg_threshold < 0.0)) throw Error("neg_threshold must be negative");
    if (!(initial_total > 0.0)) throw Error("initial_total must be positive");
    if (!(invest_fraction >= 0.0 && invest_fraction <= 1.0)) throw Error("invest_fraction must be in [0,1]");
}

std::string_view to_string(Action a) {
    switch (a) {
        case Action::Buy: return "buy";
        case Action::Sell: return "sell";
        case Action::Reverse: return "reverse";
        case Action::None: return "none";
    }
    return "none";
}

double PortfolioLedger::shares(const Ticker& t) const {
    auto it = positions.find(t);
    return it == positions.end() ? 0.0 : it->second;
}

double PortfolioLedger::value(const Ticker& t, double close) const {
    return savings + shares(t) * close;
}

PortfolioLedger single_stock_step(PortfolioLedger ledger, const Ticker& ticker, const StepInput& in,
                                  const SingleStockConfig& config) {
    if (!(in.close > 0.0)) throw Error("single_stock_step: close must be positive");
    double& held = ledger.positions[ticker];
    TradeEvent ev{in.date, ticker, Action::None, 0.0, 0.0, in.svc};

    if (ledger.pending_reversal) {
        const PendingReversal pending = *ledger.pending_reversal;
        ledger.pending_reversal.reset();
        ev.action = Action::Reverse;
        if (pending.direction == ReversalDirection::ToSavings) {
            const double available = held * in.close;
            if (pending.amount >= available) {
                ev.amount_usd = available;
                ev.shares = -held;
                ledger.savings += available;
                held = 0.0;
            } else {
                const double sold = pending.amount / in.close;
                ev.amount_usd = pending.amount;
                ev.shares = -sold;
                ledger.savings += pending.amount;
                held = std::max(0.0, held - sold);
            }
        } else {
            const double moved = std::min(pending.amount, ledger.savings);
            const double bought = moved / in.close;
            ev.amount_usd = moved;
            ev.shares = bought;
            ledger.savings = moved == ledger.savings ? 0.0 : std::max(0.0, ledger.savings - moved);
            held += bought;
        }
    } else if (in.svc > config.pos_threshold) {
        const double moved = ledger.savings;
        const double bought = moved / in.close;
        ev.action = Action::Buy;
        ev.amount_usd = moved;
        ev.shares = bought;
        ledger.savings = 0.0;
        held += bought;
        ledger.pending_reversal = PendingReversal{ReversalDirection::ToSavings, moved};
    } else if (in.svc < config.neg_threshold) {
        const double moved = held * in.close;
        ev.action = Action::Sell;
        ev.amount_usd = moved;
        ev.shares = -held;
        ledger.savings += moved;
        held = 0.0;
        ledger.pending_reversal = PendingReversal{ReversalDirection::ToInvest, moved};
    }
    ledger.history.push_back(std::move(ev));
    return ledger;
}

std::vector<double> daily_growth(std::span<const double> values) {
    std::vector<double> g;
    if (values.size() < 2) return g;
    g.reserve(values.size() - 1);
    for (std::size_t i = 1; i < values.size(); ++i) g.push_back(values[i] / values[i - 1] - 1.0);
    return g;
}

Metrics metrics(std::span<const double> values) {
    if (values.size() < 2) throw Error("metrics: need at least 2 values");
    for (double v : values) {
        if (!(v > 0.0)) throw Error("metrics: values must be positive");
    }
    Metrics m;
    m.total_return = values.back() / values.front() - 1.0;
    const auto g = daily_growth(values);
    if (g.size() >= 2) {
        m.risk_defined = true;
        const double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
        double ss = 0.0;
        for (double x : g) ss += (x - mean) * (x - mean);
        m.risk = std::sqrt(ss / static_cast<double>(g.size() - 1));
    }
    if (m.risk > 0.0) m.ratio = m.total_return / m.risk;
    return m;
}

BacktestResult static_bh_run(const PricePanel& prices, std::span<const double> allocation, double initial_total) {
    require_panel(prices);
    if (allocation.size() != prices.tickers.size()) throw Error("static_bh_run: allocation size mismatch");
    if (!(initial_total > 0.0)) throw Error("static_bh_run: initial_total must be positive");
    double invested = 0.0;
    std::vector<double> shares(allocation.size());
    for (std::size_t t = 0; t < allocation.size(); ++t) {
        if (!(allocation[t] >= 0.0)) throw Error("static_bh_run: negative allocation");
        shares[t] = allocation[t] * initial_total / prices.closes[t][0];
        invested += allocation[t];
    }
    if (invested > 1.0 + 1e-9) throw Error("static_bh_run: allocation exceeds 100%");
    const double savings = std::max(0.0, initial_total - invested * initial_total);

    BacktestResult r;
    r.dates = prices.calendar.days;
    r.tickers = prices.tickers;
    for (std::size_t d = 0; d < prices.days(); ++d) {
        const double v = portfolio_value(savings, shares, prices.closes, d);
        r.total_value.push_back(v);
        r.weights.push_back(position_weights(shares, prices.closes, d, v));
    }
    if (r.total_value.size() >= 2) r.metrics = metrics(r.total_value);
    return r;
}

BacktestResult bh_run(const PricePanel& prices, double initial_total, double invest_fraction) {
    require_panel(prices);
    if (!(invest_fraction >= 0.0 && invest_fraction <= 1.0)) throw Error("bh_run: invest_fraction must be in [0,1]");
    if (!(initial_total > 0.0)) throw Error("bh_run: initial_total must be positive");
    const auto k = static_cast<double>(prices.tickers.size());
    const double per_ticker = invest_fraction * initial_total / k;
    const double savings = initial_total - invest_fraction * initial_total;

    std::vector<double> shares(prices.tickers.size());
    for (std::size_t t = 0; t < shares.size(); ++t) shares[t] = per_ticker / prices.closes[t][0];

    BacktestResult r;
    r.dates = prices.calendar.days;
    r.tickers = prices.tickers;
    for (std::size_t d = 0; d < prices.days(); ++d) {
        const double v = portfolio_value(savings, shares, prices.closes, d);
        r.total_value.push_back(v);
        r.weights.push_back(position_weights(shares, prices.closes, d, v));
    }
    if (r.total_value.size() >= 2) r.metrics = metrics(r.total_value);
    return r;
}

BacktestResult single_stock_run(std::span<const signal::DailySignal> signals, const PricePanel& prices,
                                const Ticker& ticker, const SingleStockConfig& config) {
    config.validate();
    require_panel(prices);
    check_aligned(signals, prices.calendar, ticker);
    const auto& closes = prices.closes[prices.index_of(ticker)];

    PortfolioLedger ledger;
    ledger.savings = config.initial_total - config.invest_fraction * config.initial_total;
    ledger.positions[ticker] = config.invest_fraction * config.initial_total / 1.0 / closes[0];

    BacktestResult r;
    r.dates = prices.calendar.days;
    r.tickers = {ticker};
    auto record = [&](std::size_t d) {
        const double v = ledger.value(ticker, closes[d]);
        r.total_value.push_back(v);
        r.weights.push_back({v > 0.0 ? ledger.shares(ticker) * closes[d] / v : 0.0});
    };
    record(0);
    for (std::size_t d = 1; d < prices.days(); ++d) {
        ledger = single_stock_step(std::move(ledger), ticker, {prices.calendar.days[d], closes[d], signals[d].svc},
                                   config);
        record(d);
    }
    for (auto& ev : ledger.history) {
        if (ev.action != Action::None) r.trades.push_back(std::move(ev));
    }
    if (r.total_value.size() >= 2) r.metrics = metrics(r.total_value);
    return r;
}

BacktestResult combine(std::span<const BacktestResult> runs) {
    if (runs.empty()) throw Error("combine: no runs");
    BacktestResult out;
    out.dates = runs.front().dates;
    out.total_value.assign(out.dates.size(), 0.0);
    for (const auto& r : runs) {
        if (r.dates != out.dates) throw Error("combine: runs cover different dates");
        for (std::size_t d = 0; d < r.total_value.size(); ++d) out.total_value[d] += r.total_value[d];
        out.trades.insert(out.trades.end(), r.trades.begin(), r.trades.end());
    }
    std::stable_sort(out.trades.begin(), out.trades.end(),
                     [](const auto& a, const auto& b) { return a.date < b.date; });
    if (out.total_value.size() >= 2) out.metrics = metrics(out.total_value);
    return out;
}

std::optional<WeightPlan> rebalance_weights(std::span<const std::optional<double>> svc) {
    if (svc.empty()) throw Error("rebalance_weights: no tickers");
    std::vector<double> values;
    values.reserve(svc.size());
    for (const auto& v : svc) values.push_back(v.value_or(0.0));
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi) return std::nullopt;
    const double min = *lo;

    WeightPlan plan;
    plan.shifted.reserve(values.size());
    double sum = 0.0;
    for (double v : values) {
        plan.shifted.push_back(v - min);
        sum += v - min;
    }
    plan.weights.reserve(values.size());
    for (double s : plan.shifted) plan.weights.push_back(s / sum);
    return plan;
}

std::optional<std::map<Ticker, double>> multi_stock_weights(const std::map<Ticker, std::optional<double>>& svc) {
    if (svc.empty()) throw Error("multi_stock_weights: no tickers");
    std::vector<std::optional<double>> values;
    for (const auto& [_, v] : svc) values.push_back(v);
    auto plan = rebalance_weights(values);
    if (!plan) return std::nullopt;
    std::map<Ticker, double> out;
    std::size_t i = 0;
    for (const auto& [t, _] : svc) out.emplace(t, plan->weights[i++]);
    return out;
}

std::vector<double> rebalance_positions(std::span<const double> shares, std::span<const double> closes,
                                        std::span<const double> weights) {
    if (shares.size() != closes.size() || shares.size() != weights.size()) {
        throw Error("rebalance_positions: size mismatch");
    }
    double total = 0.0;
    for (std::size_t t = 0; t < shares.size(); ++t) total += shares[t] * closes[t];
    std::vector<double> out(shares.size());
    for (std::size_t t = 0; t < shares.size(); ++t) out[t] = weights[t] * total / closes[t];
    return out;
}

BacktestResult multi_stock_run(std::span<const std::vector<signal::DailySignal>> signals, const PricePanel& prices,
                               double initial_total) {
    require_panel(prices);
    if (signals.size() != prices.tickers.size()) throw Error("multi_stock_run: need one signal series per ticker");
    std::vector<std::vector<double>> svc;
    svc.reserve(signals.size());
    for (std::size_t t = 0; t < signals.size(); ++t) {
        check_aligned(signals[t], prices.calendar, prices.tickers[t]);
        svc.push_back(signal::svc_values(signals[t]));
    }
    return multi_stock_run(std::span<const std::vector<double>>(svc), prices, initial_total);
}

BacktestResult multi_stock_run(std::span<const std::vector<double>> svc_by_ticker, const PricePanel& prices,
                               double initial_total) {
    require_panel(prices);
    if (!(initial_total > 0.0)) throw Error("multi_stock_run: initial_total must be positive");
    const std::size_t k = prices.tickers.size();
    if (svc_by_ticker.size() != k) throw Error("multi_stock_run: need one SVC series per ticker");
    for (const auto& col : svc_by_ticker) {
        if (col.size() != prices.days()) throw Error("multi_stock_run: SVC series length differs from calendar");
    }

    std::vector<double> shares(k);
    for (std::size_t t = 0; t < k; ++t) shares[t] = initial_total / static_cast<double>(k) / prices.closes[t][0];

    BacktestResult r;
    r.dates = prices.calendar.days;
    r.tickers = prices.tickers;
    std::vector<std::optional<double>> svc(k);
    std::vector<double> closes(k);
    for (std::size_t d = 0; d < prices.days(); ++d) {
        if (d > 0) {
            for (std::size_t t = 0; t < k; ++t) {
                svc[t] = svc_by_ticker[t][d];
                closes[t] = prices.closes[t][d];
            }
            if (auto plan = rebalance_weights(svc)) {
                auto next = rebalance_positions(shares, closes, plan->weights);
                for (std::size_t t = 0; t < k; ++t) {
                    const double delta = next[t] - shares[t];
                    if (delta == 0.0) continue;
                    r.trades.push_back({prices.calendar.days[d], prices.tickers[t],
                                        delta > 0 ? Action::Buy : Action::Sell, std::abs(delta) * closes[t], delta,
                                        svc_by_ticker[t][d]});
                }
                shares = std::move(next);
            }
        }
        const double v = portfolio_value(0.0, shares, prices.closes, d);
        r.total_value.push_back(v);
        r.weights.push_back(position_weights(shares, prices.closes, d, v));
    }
    if (r.total_value.size() >= 2) r.metrics = metrics(r.total_value);
    return r;
}

void write_result(const std::filesystem::path& path, const BacktestResult& r) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    const bool with_weights = !r.weights.empty() && !r.tickers.empty();
    out << "date,total_value";
    if (with_weights) {
        for (const auto& t : r.tickers) out << ',' << csv::escape(t);
    }
    out << '\n';
    for (std::size_t d = 0; d < r.dates.size(); ++d) {
        out << format_date(r.dates[d]) << ',' << format_number(r.total_value[d]);
        if (with_weights) {
            for (double w : r.weights[d]) out << ',' << format_number(w);
        }
        out << '\n';
    }
}

void write_metrics(const std::filesystem::path& path, const Metrics& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "return_pct,risk_pct,ratio\n";
    out << format_number(100.0 * m.total_return) << ',' << format_number(100.0 * m.risk) << ','
        << (m.ratio ? format_number(*m.ratio) : std::string{}) << '\n';
}

void write_trades(const std::filesystem::path& path, std::span<const TradeEvent> trades) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "date,ticker,action,amount_usd,shares,svc\n";
    for (const auto& t : trades) {
        out << csv::join({format_date(t.date), csv::escape(t.ticker), std::string(to_string(t.action)),
                          format_number(t.amount_usd), format_number(t.shares), format_number(t.svc)})
            << '\n';
    }
}

}  // namespace sentitrade::strategy
