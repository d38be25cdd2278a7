#include "sentitrade/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>

#include "sentitrade/csv.hpp"

namespace sentitrade {

namespace {

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

// Occurrence of `needle` in `hay` bounded by non-word characters on both sides.
// With `cashtag`, the occurrence must additionally be preceded by '$'.
bool contains_whole_word(std::string_view hay, std::string_view needle, bool cashtag) {
    if (needle.empty()) return false;
    for (auto pos = hay.find(needle); pos != std::string_view::npos; pos = hay.find(needle, pos + 1)) {
        const auto end = pos + needle.size();
        const bool left_ok = pos == 0 || !is_word_char(hay[pos - 1]);
        const bool right_ok = end == hay.size() || !is_word_char(hay[end]);
        const bool tag_ok = !cashtag || (pos > 0 && hay[pos - 1] == '$');
        if (left_ok && right_ok && tag_ok) return true;
    }
    return false;
}

double parse_double(std::string_view text, const std::string& what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(what + ": cannot parse number '" + std::string(text) + "'");
    }
    return v;
}

std::string row_context(const std::filesystem::path& path, std::size_t line) {
    return "'" + path.string() + "' line " + std::to_string(line);
}

}  // namespace

CompanyRegistry::CompanyRegistry(std::vector<CompanyEntry> entries) : entries_(std::move(entries)) {
    TickerSet seen;
    for (const auto& e : entries_) {
        if (e.ticker.empty()) throw Error("registry: empty ticker");
        if (!seen.insert(e.ticker).second) throw Error("registry: duplicate ticker " + e.ticker);
        if (e.names.empty()) throw Error("registry: ticker " + e.ticker + " has no company names");
        for (const auto& n : e.names) {
            if (n.empty()) throw Error("registry: ticker " + e.ticker + " has an empty name");
        }
    }
}

CompanyRegistry CompanyRegistry::tech10() {
    return CompanyRegistry({
        {"GOOGL", {"Google", "Alphabet"}},
        {"TSLA", {"Tesla"}},
        {"META", {"Meta", "Facebook"}},
        {"NVDA", {"Nvidia"}},
        {"AAPL", {"Apple"}},
        {"EBAY", {"eBay"}},
        {"AMZN", {"Amazon"}},
        {"NFLX", {"Netflix"}},
        {"MSFT", {"Microsoft"}},
        {"INTC", {"Intel"}},
    });
}

bool CompanyRegistry::contains(std::string_view ticker) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.ticker == ticker; });
}

std::vector<Ticker> CompanyRegistry::tickers() const {
    std::vector<Ticker> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.ticker);
    return out;
}

CompanyRegistry CompanyRegistry::restricted_to(std::span<const Ticker> tickers) const {
    std::vector<CompanyEntry> kept;
    for (const auto& t : tickers) {
        auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.ticker == t; });
        if (it == entries_.end()) throw Error("ticker " + t + " is not in the company registry");
        kept.push_back(*it);
    }
    return CompanyRegistry(std::move(kept));
}

TickerSet match_companies(std::string_view body, const CompanyRegistry& registry) {
    TickerSet out;
    if (body.empty()) return out;
    const std::string lowered = to_lower(body);
    for (const auto& entry : registry.entries()) {
        bool hit = contains_whole_word(body, entry.ticker, false) ||
                   contains_whole_word(lowered, to_lower(entry.ticker), true);
        for (auto it = entry.names.begin(); !hit && it != entry.names.end(); ++it) {
            hit = contains_whole_word(lowered, to_lower(*it), false);
        }
        if (hit) out.insert(entry.ticker);
    }
    return out;
}

CommentLoad load_comments(const std::filesystem::path& path, const CompanyRegistry& registry) {
    const auto rows = csv::read_file(path);
    if (rows.empty()) throw Error("'" + path.string() + "': missing header");
    csv::require_header(rows.front(), {"timestamp", "body", "tickers", "score"}, path);

    CommentLoad out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const auto where = row_context(path, row.line);
        if (row.fields.size() != 4) {
            throw Error(where + ": expected 4 fields, got " + std::to_string(row.fields.size()));
        }
        CommentRecord rec;
        rec.source_line = row.line;
        const std::string ts = trim(row.fields[0]);
        auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), rec.timestamp);
        if (ts.empty() || ec != std::errc{} || ptr != ts.data() + ts.size()) {
            throw Error(where + ": unparseable timestamp '" + row.fields[0] + "'");
        }
        rec.body = row.fields[1];

        const std::string listed = trim(row.fields[2]);
        if (listed.empty()) {
            rec.tickers = match_companies(rec.body, registry);
        } else {
            std::string_view rest = listed;
            while (!rest.empty()) {
                const auto semi = rest.find(';');
                const std::string sym = trim(rest.substr(0, semi));
                if (!sym.empty() && registry.contains(sym)) rec.tickers.insert(sym);
                if (semi == std::string_view::npos) break;
                rest.remove_prefix(semi + 1);
            }
        }

        const std::string score = trim(row.fields[3]);
        if (!score.empty()) {
            const double s = parse_double(score, where);
            if (!(s >= -0.5 && s <= 0.5)) {
                throw Error(where + ": score " + score + " outside [-0.5, 0.5]");
            }
            rec.score = s;
        }

        if (rec.tickers.empty()) {
            ++out.dropped;
            continue;
        }
        out.records.push_back(std::move(rec));
    }
    std::stable_sort(out.records.begin(), out.records.end(),
                     [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    return out;
}

void write_comments(const std::filesystem::path& path, std::span<const CommentRecord> records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "timestamp,body,tickers,score\n";
    for (const auto& r : records) {
        std::string tickers;
        for (const auto& t : r.tickers) {
            if (!tickers.empty()) tickers += ';';
            tickers += t;
        }
        out << csv::join({std::to_string(r.timestamp), csv::escape(r.body), csv::escape(tickers),
                          r.score ? format_number(*r.score) : std::string{}})
            << '\n';
    }
}

std::optional<double> PriceSeries::close_on(Date d) const {
    auto it = std::lower_bound(bars.begin(), bars.end(), d, [](const PriceBar& b, Date x) { return b.date < x; });
    if (it == bars.end() || it->date != d) return std::nullopt;
    return it->close;
}

PriceSeries load_prices(const std::filesystem::path& path) {
    const auto rows = csv::read_file(path);
    if (rows.empty()) throw Error("'" + path.string() + "': missing header");
    csv::require_header(rows.front(), {"date", "close"}, path);

    PriceSeries series;
    series.ticker = path.stem().string();
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const auto where = row_context(path, row.line);
        if (row.fields.size() != 2) {
            throw Error(where + ": expected 2 fields, got " + std::to_string(row.fields.size()));
        }
        PriceBar bar;
        try {
            bar.date = parse_date(trim(row.fields[0]));
        } catch (const Error& e) {
            throw Error(where + ": " + e.what());
        }
        bar.close = parse_double(trim(row.fields[1]), where);
        if (!(bar.close > 0.0)) {
            throw Error(where + ": non-positive close " + trim(row.fields[1]));
        }
        series.bars.push_back(bar);
    }
    std::stable_sort(series.bars.begin(), series.bars.end(),
                     [](const auto& a, const auto& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < series.bars.size(); ++i) {
        if (series.bars[i].date == series.bars[i - 1].date) {
            throw Error("'" + path.string() + "': duplicate date " + format_date(series.bars[i].date));
        }
    }
    return series;
}

std::vector<PriceSeries> load_price_dir(const std::filesystem::path& dir, std::span<const Ticker> tickers) {
    std::vector<PriceSeries> out;
    out.reserve(tickers.size());
    for (const auto& t : tickers) {
        const auto file = dir / (t + ".csv");
        if (!std::filesystem::exists(file)) {
            throw Error("missing price file for ticker " + t + " ('" + file.string() + "')");
        }
        out.push_back(load_prices(file));
    }
    return out;
}

std::optional<std::size_t> TradingCalendar::index_of(Date d) const {
    auto it = std::lower_bound(days.begin(), days.end(), d);
    if (it == days.end() || *it != d) return std::nullopt;
    return static_cast<std::size_t>(it - days.begin());
}

TradingCalendar TradingCalendar::within(const DateRange& range) const {
    TradingCalendar out;
    for (Date d : days) {
        if (range.contains(d)) out.days.push_back(d);
    }
    return out;
}

TradingCalendar build_calendar(std::span<const PriceSeries> series, const DateRange& range) {
    if (series.empty()) throw Error("build_calendar: no price series");
    if (range.empty()) throw Error("build_calendar: empty date range");

    std::map<Date, std::size_t> hits;
    for (const auto& s : series) {
        for (const auto& bar : s.bars) {
            if (range.contains(bar.date)) ++hits[bar.date];
        }
    }
    TradingCalendar cal;
    for (const auto& [d, n] : hits) {
        if (n == series.size()) cal.days.push_back(d);
    }
    if (cal.days.empty()) {
        throw Error("no common trading days in " + format_date_range(range));
    }
    return cal;
}

std::vector<double> aligned_closes(const PriceSeries& series, const TradingCalendar& calendar) {
    std::vector<double> out;
    out.reserve(calendar.size());
    for (Date d : calendar.days) {
        auto c = series.close_on(d);
        if (!c) throw Error("ticker " + series.ticker + " has no close on " + format_date(d));
        out.push_back(*c);
    }
    return out;
}

PricePanel PricePanel::build(std::span<const PriceSeries> series, const TradingCalendar& calendar) {
    PricePanel panel;
    panel.calendar = calendar;
    for (const auto& s : series) {
        panel.tickers.push_back(s.ticker);
        panel.closes.push_back(aligned_closes(s, calendar));
    }
    return panel;
}

PricePanel PricePanel::select(std::span<const std::size_t> ticker_indices) const {
    PricePanel out;
    out.calendar = calendar;
    for (std::size_t i : ticker_indices) {
        out.tickers.push_back(tickers.at(i));
        out.closes.push_back(closes.at(i));
    }
    return out;
}

PricePanel PricePanel::within(const DateRange& range) const {
    PricePanel out;
    out.tickers = tickers;
    out.closes.resize(tickers.size());
    for (std::size_t d = 0; d < calendar.size(); ++d) {
        if (!range.contains(calendar.days[d])) continue;
        out.calendar.days.push_back(calendar.days[d]);
        for (std::size_t t = 0; t < tickers.size(); ++t) out.closes[t].push_back(closes[t][d]);
    }
    if (out.calendar.days.empty()) {
        throw Error("no trading days in " + format_date_range(range));
    }
    return out;
}

std::size_t PricePanel::index_of(std::string_view ticker) const {
    auto it = std::find(tickers.begin(), tickers.end(), ticker);
    if (it == tickers.end()) throw Error("ticker " + std::string(ticker) + " has no prices loaded");
    return static_cast<std::size_t>(it - tickers.begin());
}

}  // namespace sentitrade
