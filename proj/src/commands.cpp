#include "sentitrade/commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sentitrade/csv.hpp"
#include "sentitrade/experiments.hpp"
#include "sentitrade/market_data.hpp"
#include "sentitrade/sentiment.hpp"
#include "sentitrade/signal.hpp"
#include "sentitrade/stats.hpp"
#include "sentitrade/strategy.hpp"

namespace sentitrade::commands {

namespace fs = std::filesystem;

namespace {

constexpr const char* kScoredFile = "comments_scored.csv";
const std::vector<std::string> kStrategies = {"single", "bh50", "bh100", "multi"};

std::vector<Ticker> universe_tickers(const config::RunConfig& cfg) {
    return cfg.tickers.empty() ? cfg.registry.tickers() : cfg.tickers;
}

CompanyRegistry universe_registry(const config::RunConfig& cfg) {
    const auto tickers = universe_tickers(cfg);
    return cfg.registry.restricted_to(tickers);
}

std::vector<fs::path> comment_files(const fs::path& path) {
    if (path.empty()) throw Error("no comments path configured");
    if (!fs::is_directory(path)) return {path};
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error("no .csv files in '" + path.string() + "'");
    return files;
}

struct FileComments {
    fs::path file;
    CommentLoad load;
};

std::vector<FileComments> load_comment_files(const fs::path& path, const CompanyRegistry& registry) {
    std::vector<FileComments> out;
    for (const auto& f : comment_files(path)) out.push_back({f, load_comments(f, registry)});
    return out;
}

std::vector<CommentRecord> merged(const std::vector<FileComments>& files) {
    std::vector<CommentRecord> all;
    for (const auto& f : files) all.insert(all.end(), f.load.records.begin(), f.load.records.end());
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    return all;
}

fs::path require_artifact(const config::RunConfig& cfg, const std::string& name, std::string_view producer) {
    const fs::path p = cfg.out / name;
    if (!fs::exists(p)) {
        throw Error("missing prerequisite " + name + " in '" + cfg.out.string() + "' (run `" + std::string(producer) +
                    "` first)");
    }
    return p;
}

/// Prices for the universe on the calendar of days every ticker traded.
struct MarketData {
    std::vector<Ticker> tickers;
    std::vector<PriceSeries> prices;
    TradingCalendar calendar;
    PricePanel panel;
};

MarketData load_market(const config::RunConfig& cfg) {
    if (cfg.prices_dir.empty()) throw Error("no prices_dir configured");
    MarketData m;
    m.tickers = universe_tickers(cfg);
    m.prices = load_price_dir(cfg.prices_dir, m.tickers);
    Date lo = Date::max();
    Date hi = Date::min();
    for (const auto& s : m.prices) {
        if (s.bars.empty()) throw Error("price file for " + s.ticker + " has no rows");
        lo = std::min(lo, s.bars.front().date);
        hi = std::max(hi, s.bars.back().date);
    }
    m.calendar = build_calendar(m.prices, DateRange{lo, hi + std::chrono::days{1}});
    m.panel = PricePanel::build(m.prices, m.calendar);
    return m;
}

std::vector<CommentRecord> load_scored(const config::RunConfig& cfg) {
    const auto path = require_artifact(cfg, kScoredFile, "sentitrade score");
    return load_comments(path, universe_registry(cfg)).records;
}

std::vector<std::vector<signal::DailySignal>> build_signals(std::span<const CommentRecord> comments,
                                                            const MarketData& m) {
    std::vector<std::vector<signal::DailySignal>> out;
    for (const auto& t : m.tickers) out.push_back(signal::signal_series(comments, t, m.calendar));
    return out;
}

std::vector<std::pair<std::string, DateRange>> periods_or_all(const config::RunConfig& cfg, const MarketData& m) {
    auto periods = cfg.periods();
    if (periods.empty()) {
        periods.emplace_back("all", DateRange{m.calendar.days.front(), m.calendar.days.back() + std::chrono::days{1}});
    }
    return periods;
}

struct PeriodData {
    PricePanel panel;
    std::vector<std::vector<signal::DailySignal>> signals;
};

PeriodData slice(const MarketData& m, std::span<const std::vector<signal::DailySignal>> signals,
                 const DateRange& range) {
    PeriodData p;
    p.panel = m.panel.within(range);
    for (const auto& s : signals) p.signals.push_back(signal::restrict_to(s, p.panel.calendar));
    return p;
}

std::string num(double v) {
    return format_number(v);
}

std::string pct(double fraction) {
    return format_number(fraction * 100.0);
}

// Markdown sections. Each command owns one; summary.md is rebuilt from all of them.

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

void publish_section(const config::RunConfig& cfg, std::string_view command, const std::string& markdown) {
    const fs::path dir = cfg.out / ".summary";
    fs::create_directories(dir);
    write_text(dir / (std::string(command) + ".md"), markdown);

    std::string summary = "# sentitrade summary\n";
    for (const auto& name : names()) {
        const fs::path part = dir / (name + ".md");
        if (!fs::exists(part)) continue;
        std::ifstream in(part, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        summary += "\n" + ss.str();
    }
    write_text(cfg.out / "summary.md", summary);
}

std::string table_row(const std::vector<std::string>& cells) {
    std::string row = "|";
    for (const auto& c : cells) row += " " + c + " |";
    return row + "\n";
}

std::string table_header(const std::vector<std::string>& cells) {
    std::string rule = "|";
    for (std::size_t i = 0; i < cells.size(); ++i) rule += "---|";
    return table_row(cells) + rule + "\n";
}

// Commands

int cmd_ingest(const config::RunConfig& cfg, std::ostream& out) {
    const auto registry = universe_registry(cfg);
    const auto files = load_comment_files(cfg.comments, registry);
    std::size_t dropped = 0;
    for (const auto& f : files) dropped += f.load.dropped;
    const auto comments = merged(files);
    const auto market = load_market(cfg);

    fs::create_directories(cfg.out);
    write_comments(cfg.out / "comments.csv", comments);

    std::map<Ticker, std::size_t> mentions;
    for (const auto& c : comments) {
        for (const auto& t : c.tickers) ++mentions[t];
    }

    std::ostringstream csv_out;
    csv_out << "metric,value\n"
            << "comments_kept," << comments.size() << "\n"
            << "comments_dropped," << dropped << "\n"
            << "tickers," << market.tickers.size() << "\n"
            << "trading_days," << market.calendar.size() << "\n";
    write_text(cfg.out / "ingest.csv", csv_out.str());

    out << "comments kept: " << comments.size() << "\n"
        << "comments dropped: " << dropped << "\n"
        << "tickers: " << market.tickers.size() << "\n"
        << "trading days: " << market.calendar.size() << "\n";

    std::string md = "## Ingest\n\n";
    md += table_header({"Ticker", "Comments", "Price rows"});
    for (std::size_t i = 0; i < market.tickers.size(); ++i) {
        const auto& t = market.tickers[i];
        md += table_row({t, std::to_string(mentions[t]), std::to_string(market.prices[i].bars.size())});
    }
    md += "\nKept " + std::to_string(comments.size()) + " comments, dropped " + std::to_string(dropped) + "; " +
          std::to_string(market.calendar.size()) + " common trading days.\n";
    publish_section(cfg, "ingest", md);
    return 0;
}

std::vector<sentiment::LabeledScore> load_labels(const fs::path& path) {
    const auto rows = csv::read_file(path);
    if (rows.empty()) throw Error("'" + path.string() + "': missing header");
    csv::require_header(rows.front(), {"score", "label"}, path);
    std::vector<sentiment::LabeledScore> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i].fields;
        const std::string where = path.string() + ":" + std::to_string(rows[i].line);
        if (f.size() != 2) throw Error(where + ": expected 2 fields");
        sentiment::LabeledScore ls;
        try {
            std::size_t used = 0;
            ls.score = std::stod(f[0], &used);
            if (used != f[0].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error(where + ": bad score '" + f[0] + "'");
        }
        try {
            ls.label = sentiment::parse_human_label(f[1]);
        } catch (const Error& e) {
            throw Error(where + ": " + e.what());
        }
        out.push_back(ls);
    }
    return out;
}

int cmd_score(const config::RunConfig& cfg, std::ostream& out) {
    auto files = load_comment_files(cfg.comments, universe_registry(cfg));
    std::string mode;
    if (cfg.scorer == config::Scorer::Precomputed) {
        mode = "precomputed";
        std::vector<std::string> missing;
        for (const auto& f : files) {
            for (const auto& r : f.load.records) {
                if (!r.score) missing.push_back(f.file.filename().string() + " row " + std::to_string(r.source_line));
            }
        }
        if (!missing.empty()) {
            std::sort(missing.begin(), missing.end());
            std::string msg = "missing precomputed score in " + std::to_string(missing.size()) + " row(s): ";
            for (std::size_t i = 0; i < missing.size(); ++i) msg += (i ? ", " : "") + missing[i];
            throw Error(msg);
        }
    } else {
        mode = "lexicon";
        if (cfg.lexicon.empty()) throw Error("scorer = lexicon needs a lexicon path");
        const auto lex = sentiment::Lexicon::load(cfg.lexicon);
        for (auto& f : files) {
            for (auto& r : f.load.records) {
                r.score = sentiment::composite_score(sentiment::lexicon_score(r.body, lex, cfg.lexicon_floor));
            }
        }
    }
    const auto comments = merged(files);
    fs::create_directories(cfg.out);
    write_comments(cfg.out / kScoredFile, comments);
    out << "scored " << comments.size() << " comments (" << mode << ")\n";

    std::string md = "## Score\n\nScored " + std::to_string(comments.size()) + " comments with the " + mode +
                     " scorer.\n";
    if (!cfg.labels.empty()) {
        const auto labels = load_labels(cfg.labels);
        const auto report = sentiment::evaluate_against_labels(labels, cfg.neutral_band);
        sentiment::write_report(cfg.out / "evaluation.csv", report);
        out << "label accuracy: " << num(report.accuracy) << "\n";
        md += "\nAgreement with human labels: " + std::to_string(report.matches) + " of " +
              std::to_string(report.total) + " (accuracy " + num(report.accuracy) + ").\n";
    }
    publish_section(cfg, "score", md);
    return 0;
}

int cmd_signal(const config::RunConfig& cfg, std::ostream& out) {
    const auto comments = load_scored(cfg);
    const auto market = load_market(cfg);
    const auto signals = build_signals(comments, market);
    signal::write_signals(cfg.out / "signals.csv", signals);

    std::string md = "## Signals\n\n" + table_header({"Ticker", "Days with comments", "Min SVC", "Max SVC"});
    for (std::size_t i = 0; i < market.tickers.size(); ++i) {
        std::size_t active = 0;
        double lo = 0.0;
        double hi = 0.0;
        for (const auto& s : signals[i]) {
            if (s.today.count > 0) ++active;
            lo = std::min(lo, s.svc);
            hi = std::max(hi, s.svc);
        }
        md += table_row({market.tickers[i], std::to_string(active), num(lo), num(hi)});
    }
    out << "wrote signals for " << market.tickers.size() << " tickers over " << market.calendar.size()
        << " trading days\n";
    publish_section(cfg, "signal", md);
    return 0;
}

int cmd_correlate(const config::RunConfig& cfg, std::ostream& out) {
    const auto comments = load_scored(cfg);
    const auto market = load_market(cfg);
    const auto signals = build_signals(comments, market);
    const auto result = stats::correlation_experiment(signals, market.prices, market.calendar, cfg.lag,
                                                      cfg.regressor, cfg.exclusion_radius);
    stats::write_points(cfg.out / "correlation_points.csv", result.points);
    stats::write_summary(cfg.out / "correlation.csv", result.summary);
    const auto& s = result.summary;
    out << "n=" << s.n << " slope=" << num(s.slope) << " r_squared=" << num(s.r_squared)
        << " p_value=" << num(s.p_value) << "\n";

    std::string md = "## Correlation\n\nRegressor `" + std::string(stats::to_string(cfg.regressor)) + "`, lag `" +
                     std::string(signal::to_string(cfg.lag)) + "`, exclusion radius " + num(cfg.exclusion_radius) +
                     ".\n\n";
    md += table_header({"n", "slope", "intercept", "r_squared", "p_value"});
    md += table_row({std::to_string(s.n), num(s.slope), num(s.intercept), num(s.r_squared), num(s.p_value)});
    publish_section(cfg, "correlate", md);
    return 0;
}

std::string artifact(const std::string& label, const std::string& strategy, const std::string& kind) {
    return "backtest_" + label + "_" + strategy + (kind.empty() ? "" : "_" + kind) + ".csv";
}

std::string ratio_cell(const strategy::Metrics& m) {
    return m.ratio ? num(*m.ratio) : "-";
}

int cmd_backtest(const config::RunConfig& cfg, std::ostream& out) {
    const auto comments = load_scored(cfg);
    const auto market = load_market(cfg);
    const auto signals = build_signals(comments, market);
    const double basket = cfg.single.initial_total * static_cast<double>(market.tickers.size());

    std::vector<std::string> wanted;
    for (const auto& s : kStrategies) {
        if (cfg.strategy == "all" || cfg.strategy == s) wanted.push_back(s);
    }

    std::string md = "## Backtest\n\n";
    md += table_header({"Period", "Strategy", "Return %", "Risk %", "Ratio"});
    for (const auto& [label, range] : periods_or_all(cfg, market)) {
        const auto period = slice(market, signals, range);
        for (const auto& name : wanted) {
            strategy::BacktestResult r;
            if (name == "single") {
                std::vector<strategy::BacktestResult> runs;
                for (std::size_t i = 0; i < period.panel.tickers.size(); ++i) {
                    runs.push_back(strategy::single_stock_run(period.signals[i], period.panel,
                                                              period.panel.tickers[i], cfg.single));
                }
                r = strategy::combine(runs);
            } else if (name == "bh50") {
                r = strategy::bh_run(period.panel, basket, cfg.single.invest_fraction);
            } else if (name == "bh100") {
                r = strategy::bh_run(period.panel, basket, 1.0);
            } else {
                r = strategy::multi_stock_run(period.signals, period.panel, basket);
            }
            strategy::write_result(cfg.out / artifact(label, name, ""), r);
            strategy::write_metrics(cfg.out / artifact(label, name, "metrics"), r.metrics);
            strategy::write_trades(cfg.out / artifact(label, name, "trades"), r.trades);
            out << label << " " << name << ": return " << pct(r.metrics.total_return) << "% risk "
                << pct(r.metrics.risk) << "%\n";
            md += table_row({label, name, pct(r.metrics.total_return), pct(r.metrics.risk), ratio_cell(r.metrics)});
        }
    }
    publish_section(cfg, "backtest", md);
    return 0;
}

int cmd_grid(const config::RunConfig& cfg, std::ostream& out) {
    const auto comments = load_scored(cfg);
    const auto market = load_market(cfg);
    const auto signals = build_signals(comments, market);
    const experiments::Universe universe{&market.panel, signals};
    const auto g =
        experiments::threshold_grid_search(cfg.grid, universe, cfg.period_a, cfg.period_b, cfg.single, cfg.jobs);
    experiments::write_grid(cfg.out / "grid.csv", g);

    double best = 0.0;
    for (std::size_t i = 0; i < g.grid.pos_candidates.size(); ++i) {
        for (std::size_t j = 0; j < g.grid.neg_candidates.size(); ++j) {
            if (g.grid.pos_candidates[i] == g.chosen_pos && g.grid.neg_candidates[j] == g.chosen_neg) {
                best = g.combined[i][j];
            }
        }
    }
    write_text(cfg.out / "grid_choice.csv", "pos_threshold,neg_threshold,combined\n" + num(g.chosen_pos) + "," +
                                                 num(g.chosen_neg) + "," + num(best) + "\n");
    out << "chosen thresholds: pos=" << num(g.chosen_pos) << " neg=" << num(g.chosen_neg) << " combined=" << num(best)
        << "\n";

    std::string md = "## Threshold grid\n\nPeriods " + format_date_range(cfg.period_a) + " and " +
                     format_date_range(cfg.period_b) + ", " +
                     std::to_string(g.grid.pos_candidates.size() * g.grid.neg_candidates.size()) +
                     " pairs. Chosen pair: (" + num(g.chosen_pos) + ", " + num(g.chosen_neg) +
                     ") with combined percentile " + num(best) + ".\n";
    publish_section(cfg, "grid", md);
    return 0;
}

int cmd_permute(const config::RunConfig& cfg, std::ostream& out) {
    const auto comments = load_scored(cfg);
    const auto market = load_market(cfg);
    const auto signals = build_signals(comments, market);
    std::vector<std::size_t> ks = cfg.k_values;
    if (ks.empty()) {
        for (std::size_t k = 1; k <= market.tickers.size(); ++k) ks.push_back(k);
    }
    for (auto k : ks) {
        if (k > market.tickers.size()) {
            throw Error("k_values entry " + std::to_string(k) + " exceeds the " +
                        std::to_string(market.tickers.size()) + " tickers");
        }
    }

    std::string md = "## Permutations\n\n";
    md += table_header({"Period", "k", "Strategy", "Mean return %", "Mean risk %", "Mean ratio", "Subsets"});
    for (const auto& [label, range] : periods_or_all(cfg, market)) {
        const auto period = slice(market, signals, range);
        const experiments::Universe universe{&period.panel, period.signals};
        const auto rows = experiments::permutation_experiment(universe, ks, cfg.single.initial_total, cfg.jobs);
        experiments::write_permutation(cfg.out / ("permutation_" + label + ".csv"), rows);
        std::uint64_t total = 0;
        for (const auto& r : rows) {
            if (r.strategy == "bh") total += r.n_subsets;
            md += table_row({label, std::to_string(r.k), r.strategy, pct(r.mean_return), pct(r.mean_risk),
                             r.mean_ratio ? num(*r.mean_ratio) : "-", std::to_string(r.n_subsets)});
        }
        out << label << ": " << total << " subsets per strategy\n";
    }
    publish_section(cfg, "permute", md);
    return 0;
}

std::optional<strategy::Metrics> read_metrics(const fs::path& path) {
    if (!fs::exists(path)) return std::nullopt;
    const auto rows = csv::read_file(path);
    if (rows.size() != 2 || rows[1].fields.size() != 3) throw Error("'" + path.string() + "': malformed metrics");
    csv::require_header(rows[0], {"return_pct", "risk_pct", "ratio"}, path);
    const auto& f = rows[1].fields;
    strategy::Metrics m;
    m.total_return = std::stod(f[0]) / 100.0;
    m.risk = std::stod(f[1]) / 100.0;
    if (!f[2].empty()) m.ratio = std::stod(f[2]);
    return m;
}

strategy::BacktestResult read_result(const fs::path& path) {
    const auto rows = csv::read_file(path);
    if (rows.empty() || rows[0].fields.size() < 2) throw Error("'" + path.string() + "': malformed result");
    strategy::BacktestResult r;
    r.tickers.assign(rows[0].fields.begin() + 2, rows[0].fields.end());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i].fields;
        if (f.size() != rows[0].fields.size()) throw Error("'" + path.string() + "': ragged row");
        r.dates.push_back(parse_date(f[0]));
        r.total_value.push_back(std::stod(f[1]));
        if (!r.tickers.empty()) {
            std::vector<double> w;
            for (std::size_t j = 2; j < f.size(); ++j) w.push_back(std::stod(f[j]));
            r.weights.push_back(std::move(w));
        }
    }
    return r;
}

std::string pct_cell(const std::optional<strategy::Metrics>& m, bool risk) {
    if (!m) return "-";
    return pct(risk ? m->risk : m->total_return);
}

int cmd_report(const config::RunConfig& cfg, std::ostream& out) {
    const auto market = load_market(cfg);
    const auto periods = periods_or_all(cfg, market);

    std::map<std::pair<std::string, std::string>, std::optional<strategy::Metrics>> metrics;
    bool any = false;
    for (const auto& [label, range] : periods) {
        for (const auto& s : kStrategies) {
            auto m = read_metrics(cfg.out / artifact(label, s, "metrics"));
            any = any || m.has_value();
            metrics[{label, s}] = m;
        }
    }
    if (!any) {
        throw Error("missing prerequisite " + artifact(periods.front().first, "single", "metrics") + " in '" +
                    cfg.out.string() + "' (run `sentitrade backtest` first)");
    }
    auto get = [&](const std::string& label, const std::string& s) { return metrics.at({label, s}); };

    std::string md = "## Report\n\n### Single-stock strategy returns (%)\n\n";
    md += table_header({"Period", "Strategy", "$50 B&H", "$100 B&H"});
    for (const auto& [label, range] : periods) {
        md += table_row({label, pct_cell(get(label, "single"), false), pct_cell(get(label, "bh50"), false),
                         pct_cell(get(label, "bh100"), false)});
    }
    md += "\n### Single-stock strategy risk (%)\n\n";
    md += table_header({"Period", "Strategy", "$50 B&H", "$100 B&H"});
    for (const auto& [label, range] : periods) {
        md += table_row({label, pct_cell(get(label, "single"), true), pct_cell(get(label, "bh50"), true),
                         pct_cell(get(label, "bh100"), true)});
    }
    md += "\n### Multi-stock strategy returns (%)\n\n";
    md += table_header({"Period", "Multi-stock", "B&H"});
    for (const auto& [label, range] : periods) {
        md += table_row({label, pct_cell(get(label, "multi"), false), pct_cell(get(label, "bh100"), false)});
    }
    md += "\n### Multi-stock strategy risk (%) and return-to-risk ratio\n\n";
    md += table_header({"Period", "Multi-stock risk", "B&H risk", "Multi-stock ratio", "B&H ratio"});
    for (const auto& [label, range] : periods) {
        const auto multi = get(label, "multi");
        const auto bh = get(label, "bh100");
        md += table_row({label, pct_cell(multi, true), pct_cell(bh, true), multi ? ratio_cell(*multi) : "-",
                         bh ? ratio_cell(*bh) : "-"});
    }

    bool compared = false;
    for (const auto& [label, range] : periods) {
        const fs::path multi_path = cfg.out / artifact(label, "multi", "");
        const fs::path bh_path = cfg.out / artifact(label, "bh100", "");
        if (!fs::exists(multi_path) || !fs::exists(bh_path)) continue;
        if (!compared) {
            md += "\n### Multi-stock vs B&H\n\n";
            md += table_header({"Period", "Mean daily diff %", "Diff stddev %", "Mean weight stddev (pp)",
                                "Static mean-weight B&H %", "Equal-weight B&H %"});
            compared = true;
        }
        const auto multi = read_result(multi_path);
        const auto bh = read_result(bh_path);
        const auto dist = experiments::daily_diff_distribution(multi, bh, cfg.bin_width);
        experiments::write_distribution(cfg.out / ("distribution_" + label + ".csv"), dist);
        const auto shares = experiments::investment_share_analysis(multi, market.panel.within(range));
        experiments::write_shares(cfg.out / ("shares_" + label + ".csv"), shares);
        md += table_row({label, pct(dist.mean), pct(dist.stddev), num(shares.mean_weight_stddev),
                         pct(shares.static_bh_return), pct(shares.equal_bh_return)});
    }
    out << "report covers " << periods.size() << " period(s)\n";
    publish_section(cfg, "report", md);
    return 0;
}

}  // namespace

const std::vector<std::string>& names() {
    static const std::vector<std::string> n = {"ingest", "score",  "signal",  "correlate",
                                               "backtest", "grid", "permute", "report"};
    return n;
}

int run(std::string_view name, const config::RunConfig& config, std::ostream& out, std::ostream& err) {
    static const std::map<std::string, std::function<int(const config::RunConfig&, std::ostream&)>, std::less<>>
        table = {
            {"ingest", cmd_ingest}, {"score", cmd_score}, {"signal", cmd_signal},   {"correlate", cmd_correlate},
            {"backtest", cmd_backtest}, {"grid", cmd_grid}, {"permute", cmd_permute}, {"report", cmd_report},
        };
    const auto it = table.find(name);
    if (it == table.end()) {
        err << "error: unknown command '" << name << "'\n";
        return 1;
    }
    try {
        config.validate();
        fs::create_directories(config.out);
        return it->second(config, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace sentitrade::commands
