#include "sentitrade/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "sentitrade/csv.hpp"
#include "sentitrade/parallel.hpp"

namespace sentitrade::experiments {

namespace {

// Twice the mean 0-based ascending rank of every value; always an integer.
std::vector<std::int64_t> doubled_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::int64_t> out(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const auto doubled = static_cast<std::int64_t>(i + j);
        for (std::size_t m = i; m <= j; ++m) out[order[m]] = doubled;
        i = j + 1;
    }
    return out;
}

double sample_stddev(std::span<const double> xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

struct PeriodData {
    PricePanel prices;
    std::vector<std::vector<signal::DailySignal>> signals;  // per ticker
    std::vector<double> baseline_final;                     // per ticker, B&H final value
};

PeriodData prepare_period(const Universe& u, const DateRange& period, const strategy::SingleStockConfig& base) {
    PeriodData p;
    try {
        p.prices = u.prices->within(period);
    } catch (const Error&) {
        throw Error("grid search period " + format_date_range(period) + " lies outside the loaded data");
    }
    if (p.prices.days() < 2) {
        throw Error("grid search period " + format_date_range(period) + " has fewer than 2 trading days");
    }
    for (std::size_t t = 0; t < p.prices.tickers.size(); ++t) {
        p.signals.push_back(signal::restrict_to(u.signals[t], p.prices.calendar));
        const std::size_t idx[] = {t};
        const auto bh = strategy::bh_run(p.prices.select(idx), base.initial_total, base.invest_fraction);
        p.baseline_final.push_back(bh.total_value.back());
    }
    return p;
}

double mean_gain(const PeriodData& p, const strategy::SingleStockConfig& cfg) {
    double sum = 0.0;
    for (std::size_t t = 0; t < p.prices.tickers.size(); ++t) {
        const auto r = strategy::single_stock_run(p.signals[t], p.prices, p.prices.tickers[t], cfg);
        sum += r.total_value.back() - p.baseline_final[t];
    }
    return sum / static_cast<double>(p.prices.tickers.size());
}

void require_universe(const Universe& u) {
    if (u.prices == nullptr || u.prices->tickers.empty()) throw Error("experiment: empty universe");
    if (u.signals.size() != u.prices->tickers.size()) throw Error("experiment: need one signal series per ticker");
}

}  // namespace

ThresholdGrid ThresholdGrid::standard() {
    ThresholdGrid g;
    for (int i = 1; i <= 10; ++i) {
        g.pos_candidates.push_back(2.5 * i);
        g.neg_candidates.push_back(-2.5 * i);
    }
    return g;
}

void ThresholdGrid::validate() const {
    if (pos_candidates.empty() || neg_candidates.empty()) throw Error("threshold grid: empty candidate list");
    for (double p : pos_candidates) {
        if (!(p > 0.0)) throw Error("threshold grid: positive candidates must be > 0");
    }
    for (double n : neg_candidates) {
        if (!(n < 0.0)) throw Error("threshold grid: negative candidates must be < 0");
    }
    if (!std::is_sorted(pos_candidates.begin(), pos_candidates.end())) {
        throw Error("threshold grid: positive candidates must be ascending");
    }
    if (!std::is_sorted(neg_candidates.begin(), neg_candidates.end(), std::greater<>{})) {
        throw Error("threshold grid: negative candidates must be descending");
    }
}

std::vector<double> percentile_ranks(std::span<const double> values) {
    if (values.size() == 1) return {1.0};
    const auto doubled = doubled_ranks(values);
    const double denom = 2.0 * static_cast<double>(values.size() - 1);
    std::vector<double> out;
    out.reserve(values.size());
    for (auto r : doubled) out.push_back(static_cast<double>(r) / denom);
    return out;
}

GridResult threshold_grid_search(const ThresholdGrid& grid, const Universe& universe, const DateRange& period_a,
                                 const DateRange& period_b, const strategy::SingleStockConfig& base, unsigned jobs) {
    grid.validate();
    require_universe(universe);
    const PeriodData a = prepare_period(universe, period_a, base);
    const PeriodData b = prepare_period(universe, period_b, base);

    const std::size_t np = grid.pos_candidates.size();
    const std::size_t nn = grid.neg_candidates.size();
    const std::size_t cells = np * nn;
    std::vector<double> flat_a(cells), flat_b(cells);
    parallel_for(cells, jobs, [&](std::size_t c) {
        strategy::SingleStockConfig cfg = base;
        cfg.pos_threshold = grid.pos_candidates[c / nn];
        cfg.neg_threshold = grid.neg_candidates[c % nn];
        flat_a[c] = mean_gain(a, cfg);
        flat_b[c] = mean_gain(b, cfg);
    });

    const auto pa = percentile_ranks(flat_a);
    const auto pb = percentile_ranks(flat_b);
    const auto ra = doubled_ranks(flat_a);
    const auto rb = doubled_ranks(flat_b);

    GridResult g;
    g.grid = grid;
    auto shape = [&](Matrix& m) { m.assign(np, std::vector<double>(nn, 0.0)); };
    shape(g.gain_a);
    shape(g.gain_b);
    shape(g.pct_a);
    shape(g.pct_b);
    shape(g.combined);

    std::size_t best = 0;
    for (std::size_t c = 0; c < cells; ++c) {
        const std::size_t i = c / nn, j = c % nn;
        g.gain_a[i][j] = flat_a[c];
        g.gain_b[i][j] = flat_b[c];
        g.pct_a[i][j] = pa[c];
        g.pct_b[i][j] = pb[c];
        g.combined[i][j] = (pa[c] + pb[c]) / 2.0;

        // Rank sums compare exactly; ties prefer larger pos, then more negative neg.
        const auto score = ra[c] + rb[c];
        const auto best_score = ra[best] + rb[best];
        const double pos = grid.pos_candidates[i], neg = grid.neg_candidates[j];
        const double best_pos = grid.pos_candidates[best / nn], best_neg = grid.neg_candidates[best % nn];
        if (score > best_score || (score == best_score && (pos > best_pos || (pos == best_pos && neg < best_neg)))) {
            best = c;
        }
    }
    g.chosen_pos = grid.pos_candidates[best / nn];
    g.chosen_neg = grid.neg_candidates[best % nn];
    return g;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::vector<PermutationRow> permutation_experiment(const Universe& universe, std::span<const std::size_t> k_values,
                                                   double initial_total, unsigned jobs) {
    require_universe(universe);
    const PricePanel& prices = *universe.prices;
    const std::size_t n = prices.tickers.size();
    for (std::size_t k : k_values) {
        if (k < 1 || k > n) throw Error("permutation_experiment: k=" + std::to_string(k) + " outside 1.." +
                                        std::to_string(n));
    }
    if (prices.days() < 2) throw Error("permutation_experiment: need at least 2 trading days");

    std::vector<std::vector<double>> svc;
    for (std::size_t t = 0; t < n; ++t) {
        const auto aligned = signal::restrict_to(universe.signals[t], prices.calendar);
        svc.push_back(signal::svc_values(aligned));
    }

    struct Task {
        std::size_t k_slot;
        std::vector<std::size_t> subset;
    };
    std::vector<Task> tasks;
    for (std::size_t s = 0; s < k_values.size(); ++s) {
        for (auto& c : combinations(n, k_values[s])) tasks.push_back({s, std::move(c)});
    }

    std::vector<strategy::Metrics> multi(tasks.size()), bh(tasks.size());
    parallel_for(tasks.size(), jobs, [&](std::size_t i) {
        const auto panel = prices.select(tasks[i].subset);
        std::vector<std::vector<double>> sub_svc;
        sub_svc.reserve(tasks[i].subset.size());
        for (std::size_t t : tasks[i].subset) sub_svc.push_back(svc[t]);
        multi[i] = strategy::multi_stock_run(std::span<const std::vector<double>>(sub_svc), panel, initial_total)
                       .metrics;
        bh[i] = strategy::bh_run(panel, initial_total, 1.0).metrics;
    });

    std::vector<PermutationRow> rows;
    for (std::size_t s = 0; s < k_values.size(); ++s) {
        for (const auto* source : {&multi, &bh}) {
            PermutationRow row;
            row.k = k_values[s];
            row.strategy = source == &multi ? "multi_stock" : "bh";
            double ratio_sum = 0.0;
            std::size_t ratio_n = 0;
            for (std::size_t i = 0; i < tasks.size(); ++i) {
                if (tasks[i].k_slot != s) continue;
                const auto& m = (*source)[i];
                row.mean_return += m.total_return;
                row.mean_risk += m.risk;
                if (m.ratio) {
                    ratio_sum += *m.ratio;
                    ++ratio_n;
                }
                ++row.n_subsets;
            }
            row.mean_return /= static_cast<double>(row.n_subsets);
            row.mean_risk /= static_cast<double>(row.n_subsets);
            if (ratio_n > 0) row.mean_ratio = ratio_sum / static_cast<double>(ratio_n);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

DistributionReport daily_diff_distribution(const strategy::BacktestResult& a, const strategy::BacktestResult& b,
                                           double bin_width) {
    if (a.dates != b.dates) throw Error("daily_diff_distribution: results cover different dates");
    if (a.total_value.size() < 2) throw Error("daily_diff_distribution: need at least 2 days");
    if (!(bin_width > 0.0)) throw Error("daily_diff_distribution: bin width must be positive");

    const auto ga = strategy::daily_growth(a.total_value);
    const auto gb = strategy::daily_growth(b.total_value);
    DistributionReport r;
    r.bin_width = bin_width;
    r.diffs.reserve(ga.size());
    for (std::size_t i = 0; i < ga.size(); ++i) r.diffs.push_back(ga[i] - gb[i]);

    r.mean = std::accumulate(r.diffs.begin(), r.diffs.end(), 0.0) / static_cast<double>(r.diffs.size());
    r.stddev = sample_stddev(r.diffs, r.mean);
    const auto [lo, hi] = std::minmax_element(r.diffs.begin(), r.diffs.end());
    r.min = *lo;
    r.max = *hi;

    const auto bin_of = [&](double d) { return static_cast<std::int64_t>(std::floor(d / bin_width)); };
    const std::int64_t first = bin_of(r.min), last = bin_of(r.max);
    r.histogram.resize(static_cast<std::size_t>(last - first + 1));
    for (std::int64_t i = first; i <= last; ++i) {
        auto& bin = r.histogram[static_cast<std::size_t>(i - first)];
        bin.lo = static_cast<double>(i) * bin_width;
        bin.hi = static_cast<double>(i + 1) * bin_width;
    }
    for (double d : r.diffs) ++r.histogram[static_cast<std::size_t>(bin_of(d) - first)].count;
    return r;
}

ShareReport investment_share_analysis(const strategy::BacktestResult& multi_result, const PricePanel& prices) {
    if (multi_result.weights.empty()) throw Error("investment_share_analysis: result carries no weights");
    if (multi_result.dates != prices.calendar.days || multi_result.tickers != prices.tickers) {
        throw Error("investment_share_analysis: prices do not match the result");
    }
    const std::size_t k = prices.tickers.size();
    ShareReport s;
    s.tickers = prices.tickers;
    s.mean_weight_pct.assign(k, 0.0);
    for (const auto& row : multi_result.weights) {
        if (row.size() != k) throw Error("investment_share_analysis: malformed weight row");
        for (std::size_t t = 0; t < k; ++t) s.mean_weight_pct[t] += row[t];
    }
    const auto days = static_cast<double>(multi_result.weights.size());
    std::vector<double> allocation(k);
    for (std::size_t t = 0; t < k; ++t) {
        allocation[t] = s.mean_weight_pct[t] / days;
        s.mean_weight_pct[t] = 100.0 * allocation[t];
    }
    const double mean_pct = std::accumulate(s.mean_weight_pct.begin(), s.mean_weight_pct.end(), 0.0) /
                            static_cast<double>(k);
    s.mean_weight_stddev = sample_stddev(s.mean_weight_pct, mean_pct);

    for (std::size_t t = 0; t < k; ++t) {
        s.price_return.push_back(prices.closes[t].back() / prices.closes[t].front() - 1.0);
    }

    // Normalise so float drift in the averaged weights cannot exceed 100%.
    const double total = std::accumulate(allocation.begin(), allocation.end(), 0.0);
    if (total > 0.0) {
        for (double& w : allocation) w /= total;
    }
    const double v0 = multi_result.total_value.front();
    const auto fixed = strategy::static_bh_run(prices, allocation, v0);
    const auto equal = strategy::bh_run(prices, v0, 1.0);
    s.static_bh_return = fixed.total_value.back() / fixed.total_value.front() - 1.0;
    s.equal_bh_return = equal.total_value.back() / equal.total_value.front() - 1.0;
    return s;
}

void write_grid(const std::filesystem::path& path, const GridResult& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "pos_threshold,neg_threshold,gain_a,gain_b,pct_a,pct_b,combined\n";
    for (std::size_t i = 0; i < g.grid.pos_candidates.size(); ++i) {
        for (std::size_t j = 0; j < g.grid.neg_candidates.size(); ++j) {
            out << csv::join({format_number(g.grid.pos_candidates[i]), format_number(g.grid.neg_candidates[j]),
                              format_number(g.gain_a[i][j]), format_number(g.gain_b[i][j]),
                              format_number(g.pct_a[i][j]), format_number(g.pct_b[i][j]),
                              format_number(g.combined[i][j])})
                << '\n';
        }
    }
}

void write_permutation(const std::filesystem::path& path, std::span<const PermutationRow> rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "k,strategy,mean_return,mean_risk,mean_ratio,n_subsets\n";
    for (const auto& r : rows) {
        out << csv::join({std::to_string(r.k), r.strategy, format_number(r.mean_return), format_number(r.mean_risk),
                          r.mean_ratio ? format_number(*r.mean_ratio) : std::string{}, std::to_string(r.n_subsets)})
            << '\n';
    }
}

void write_distribution(const std::filesystem::path& path, const DistributionReport& d) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "bin_lo,bin_hi,count\n";
    for (const auto& b : d.histogram) {
        out << format_number(b.lo) << ',' << format_number(b.hi) << ',' << b.count << '\n';
    }
    out << '\n' << "metric,value\n";
    out << "n," << d.diffs.size() << '\n';
    out << "mean," << format_number(d.mean) << '\n';
    out << "stddev," << format_number(d.stddev) << '\n';
    out << "min," << format_number(d.min) << '\n';
    out << "max," << format_number(d.max) << '\n';
    out << "bin_width," << format_number(d.bin_width) << '\n';
}

void write_shares(const std::filesystem::path& path, const ShareReport& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "ticker,mean_weight_pct,price_return\n";
    for (std::size_t t = 0; t < s.tickers.size(); ++t) {
        out << csv::join({csv::escape(s.tickers[t]), format_number(s.mean_weight_pct[t]),
                          format_number(s.price_return[t])})
            << '\n';
    }
    out << '\n' << "metric,value\n";
    out << "mean_weight_stddev_pct," << format_number(s.mean_weight_stddev) << '\n';
    out << "static_bh_return," << format_number(s.static_bh_return) << '\n';
    out << "equal_bh_return," << format_number(s.equal_bh_return) << '\n';
    out << "static_minus_equal," << format_number(s.static_bh_return - s.equal_bh_return) << '\n';
}

}  // namespace sentitrade::experiments
