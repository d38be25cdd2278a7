#include "sentitrade/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sentitrade::config {

namespace {

std::string type_error(std::string_view key, std::string_view want) {
    return "config key '" + std::string(key) + "': expected " + std::string(want);
}

class TomlParser {
public:
    explicit TomlParser(std::string_view text) : text_(text) {}

    Table parse() {
        Table table;
        std::string section;
        while (true) {
            skip_blank_and_comments();
            if (at_end()) break;
            if (peek() == '[') {
                ++pos_;
                skip_inline_space();
                section = parse_key();
                skip_inline_space();
                expect(']');
                end_of_line();
                continue;
            }
            std::string key = parse_key();
            skip_inline_space();
            expect('=');
            skip_inline_space();
            Value v = parse_value();
            end_of_line();
            const std::string full = section.empty() ? key : section + "." + key;
            if (!table.emplace(full, std::move(v)).second) fail("duplicate key '" + full + "'");
        }
        return table;
    }

    Value parse_single_value() {
        skip_inline_space();
        Value v = parse_value();
        skip_inline_space();
        if (!at_end()) fail("trailing characters after value");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error("config line " + std::to_string(line_) + ": " + msg);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_inline_space() {
        while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
    }

    void skip_comment() {
        if (peek() == '#') {
            while (!at_end() && peek() != '\n') ++pos_;
        }
    }

    void skip_blank_and_comments() {
        while (!at_end()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
            } else if (c == '\n') {
                ++pos_;
                ++line_;
            } else if (c == '#') {
                skip_comment();
            } else {
                break;
            }
        }
    }

    void end_of_line() {
        skip_inline_space();
        skip_comment();
        if (peek() == '\r') ++pos_;
        if (at_end()) return;
        if (peek() != '\n') fail("unexpected characters at end of line");
        ++pos_;
        ++line_;
    }

    std::string parse_key() {
        std::string key;
        while (true) {
            if (peek() == '"') {
                key += parse_basic_string();
            } else {
                const auto start = pos_;
                while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                                     peek() == '-')) {
                    ++pos_;
                }
                if (start == pos_) fail("expected a key");
                key += text_.substr(start, pos_ - start);
            }
            skip_inline_space();
            if (peek() != '.') break;
            ++pos_;
            key += '.';
            skip_inline_space();
        }
        return key;
    }

    std::string parse_basic_string() {
        expect('"');
        std::string out;
        while (true) {
            if (at_end() || peek() == '\n') fail("unterminated string");
            const char c = text_[pos_++];
            if (c == '"') break;
            if (c != '\\') {
                out.push_back(c);
                continue;
            }
            if (at_end()) fail("unterminated escape");
            const char e = text_[pos_++];
            switch (e) {
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                case 'r': out.push_back('\r'); break;
                default: fail(std::string("unsupported escape \\") + e);
            }
        }
        return out;
    }

    std::string parse_literal_string() {
        expect('\'');
        const auto start = pos_;
        while (!at_end() && peek() != '\'' && peek() != '\n') ++pos_;
        if (peek() != '\'') fail("unterminated literal string");
        std::string out(text_.substr(start, pos_ - start));
        ++pos_;
        return out;
    }

    Value parse_array() {
        expect('[');
        Value::Array items;
        while (true) {
            skip_blank_and_comments();
            if (peek() == ']') {
                ++pos_;
                break;
            }
            items.push_back(parse_value());
            skip_blank_and_comments();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            if (peek() == ']') {
                ++pos_;
                break;
            }
            fail("expected ',' or ']' in array");
        }
        return Value{std::move(items)};
    }

    Value parse_scalar_token() {
        const auto start = pos_;
        while (!at_end()) {
            const char c = peek();
            if (c == ',' || c == ']' || c == '#' || c == ' ' || c == '\t' || c == '\r' || c == '\n') break;
            ++pos_;
        }
        std::string tok(text_.substr(start, pos_ - start));
        if (tok.empty()) fail("expected a value");
        if (tok == "true") return Value{true};
        if (tok == "false") return Value{false};
        if (tok == "inf" || tok == "+inf") return Value{std::numeric_limits<double>::infinity()};
        if (tok == "-inf") return Value{-std::numeric_limits<double>::infinity()};
        std::string digits;
        for (char c : tok) {
            if (c != '_') digits.push_back(c);
        }
        const char* b = digits.data();
        const char* e = b + digits.size();
        if (*b == '+') ++b;
        const bool looks_float = digits.find_first_of(".eE") != std::string::npos;
        if (!looks_float) {
            std::int64_t i = 0;
            auto [p, ec] = std::from_chars(b, e, i);
            if (ec == std::errc{} && p == e) return Value{i};
        } else {
            double d = 0.0;
            auto [p, ec] = std::from_chars(b, e, d);
            if (ec == std::errc{} && p == e) return Value{d};
        }
        fail("cannot parse value '" + tok + "'");
    }

    Value parse_value() {
        switch (peek()) {
            case '"': return Value{parse_basic_string()};
            case '\'': return Value{parse_literal_string()};
            case '[': return parse_array();
            default: return parse_scalar_token();
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

std::vector<std::string> split_commas(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

const std::vector<std::string> kListKeys = {"tickers", "years", "grid_pos", "grid_neg", "k_values"};

bool is_list_key(std::string_view key) {
    for (const auto& k : kListKeys) {
        if (k == key) return true;
    }
    return false;
}

Value parse_flag_scalar(const std::string& text) {
    try {
        return TomlParser(text).parse_single_value();
    } catch (const Error&) {
        return Value{text};
    }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_absolute() || base.empty()) return path;
    return base / path;
}

}  // namespace

std::string Value::as_string(std::string_view key) const {
    if (auto* s = std::get_if<std::string>(&data)) return *s;
    throw Error(type_error(key, "a string"));
}

double Value::as_double(std::string_view key) const {
    if (auto* d = std::get_if<double>(&data)) return *d;
    if (auto* i = std::get_if<std::int64_t>(&data)) return static_cast<double>(*i);
    throw Error(type_error(key, "a number"));
}

std::int64_t Value::as_int(std::string_view key) const {
    if (auto* i = std::get_if<std::int64_t>(&data)) return *i;
    throw Error(type_error(key, "an integer"));
}

std::vector<std::string> Value::as_string_list(std::string_view key) const {
    auto* arr = std::get_if<Array>(&data);
    if (!arr) throw Error(type_error(key, "an array of strings"));
    std::vector<std::string> out;
    for (const auto& v : *arr) out.push_back(v.as_string(key));
    return out;
}

std::vector<double> Value::as_double_list(std::string_view key) const {
    auto* arr = std::get_if<Array>(&data);
    if (!arr) throw Error(type_error(key, "an array of numbers"));
    std::vector<double> out;
    for (const auto& v : *arr) out.push_back(v.as_double(key));
    return out;
}

Table parse_toml(std::string_view text) {
    return TomlParser(text).parse();
}

Table load_toml(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_toml(ss.str());
    } catch (const Error& e) {
        throw Error("'" + path.string() + "': " + e.what());
    }
}

Table flag_table(const std::map<std::string, std::string>& flags) {
    Table t;
    for (const auto& [key, text] : flags) {
        if (is_list_key(key)) {
            Value::Array items;
            if (!text.empty()) {
                for (const auto& part : split_commas(text)) items.push_back(parse_flag_scalar(part));
            }
            t.emplace(key, Value{std::move(items)});
        } else {
            t.emplace(key, parse_flag_scalar(text));
        }
    }
    return t;
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "comments",       "prices_dir",      "lexicon",        "labels",         "tickers",
        "range",          "years",           "scorer",         "neutral_band",   "lexicon_floor",
        "strategy",       "initial_total",   "invest_fraction", "pos_threshold", "neg_threshold",
        "grid_pos",       "grid_neg",        "period_a",       "period_b",       "k_values",
        "exclusion_radius", "lag",           "regressor",      "bin_width",
    };
    return keys;
}

RunConfig::RunConfig()
    : period_a{parse_date_range("2020-02-01..2020-04-01")}, period_b{parse_date_range("2020-04-01..2020-07-01")} {}

void RunConfig::apply(const Table& table, const std::filesystem::path& base_dir) {
    std::vector<CompanyEntry> registry_entries;
    for (const auto& [key, value] : table) {
        if (key.starts_with("registry.")) {
            registry_entries.push_back({key.substr(9), value.as_string_list(key)});
        } else if (key == "comments") {
            comments = resolve(base_dir, value.as_string(key));
        } else if (key == "prices_dir") {
            prices_dir = resolve(base_dir, value.as_string(key));
        } else if (key == "lexicon") {
            lexicon = resolve(base_dir, value.as_string(key));
        } else if (key == "labels") {
            labels = resolve(base_dir, value.as_string(key));
        } else if (key == "out") {
            out = resolve(base_dir, value.as_string(key));
        } else if (key == "jobs") {
            const auto j = value.as_int(key);
            if (j < 1) throw Error("config key 'jobs' must be >= 1");
            jobs = static_cast<unsigned>(j);
        } else if (key == "tickers") {
            tickers = value.as_string_list(key);
        } else if (key == "range") {
            range = parse_date_range(value.as_string(key));
        } else if (key == "years") {
            years.clear();
            for (double y : value.as_double_list(key)) years.push_back(static_cast<int>(y));
        } else if (key == "scorer") {
            const auto s = value.as_string(key);
            if (s == "precomputed") {
                scorer = Scorer::Precomputed;
            } else if (s == "lexicon") {
                scorer = Scorer::Lexicon;
            } else {
                throw Error("config key 'scorer' must be precomputed or lexicon");
            }
        } else if (key == "neutral_band") {
            neutral_band = value.as_double(key);
        } else if (key == "lexicon_floor") {
            lexicon_floor = value.as_double(key);
        } else if (key == "strategy") {
            strategy = value.as_string(key);
        } else if (key == "initial_total") {
            single.initial_total = value.as_double(key);
        } else if (key == "invest_fraction") {
            single.invest_fraction = value.as_double(key);
        } else if (key == "pos_threshold") {
            single.pos_threshold = value.as_double(key);
        } else if (key == "neg_threshold") {
            single.neg_threshold = value.as_double(key);
        } else if (key == "grid_pos") {
            grid.pos_candidates = value.as_double_list(key);
        } else if (key == "grid_neg") {
            grid.neg_candidates = value.as_double_list(key);
        } else if (key == "period_a") {
            period_a = parse_date_range(value.as_string(key));
        } else if (key == "period_b") {
            period_b = parse_date_range(value.as_string(key));
        } else if (key == "k_values") {
            k_values.clear();
            for (double k : value.as_double_list(key)) {
                if (k < 1 || k != std::floor(k)) throw Error("config key 'k_values' must hold positive integers");
                k_values.push_back(static_cast<std::size_t>(k));
            }
        } else if (key == "exclusion_radius") {
            exclusion_radius = value.as_double(key);
        } else if (key == "lag") {
            lag = signal::parse_lag(value.as_string(key));
        } else if (key == "regressor") {
            regressor = stats::parse_regressor(value.as_string(key));
        } else if (key == "bin_width") {
            bin_width = value.as_double(key);
        } else {
            throw Error("unknown config key '" + key + "'");
        }
    }
    if (!registry_entries.empty()) registry = CompanyRegistry(std::move(registry_entries));
}

void RunConfig::validate() const {
    for (const auto* p : {&comments, &prices_dir, &lexicon, &labels}) {
        if (!p->empty() && !std::filesystem::exists(*p)) {
            throw Error("configured path '" + p->string() + "' does not exist");
        }
    }
    for (const auto& t : tickers) {
        if (!registry.contains(t)) throw Error("ticker " + t + " is not in the company registry");
    }
    if (range && range->empty()) throw Error("empty date range");
    if (period_a.empty() || period_b.empty()) throw Error("empty tuning period");
    single.validate();
    grid.validate();
    if (!(neutral_band > 0.0)) throw Error("neutral_band must be positive");
    if (!(lexicon_floor >= 0.0 && lexicon_floor <= 1.0)) throw Error("lexicon_floor must be in [0,1]");
    if (!(exclusion_radius >= 0.0)) throw Error("exclusion_radius must be non-negative");
    if (!(bin_width > 0.0)) throw Error("bin_width must be positive");
    if (strategy != "all" && strategy != "single" && strategy != "multi" && strategy != "bh50" &&
        strategy != "bh100") {
        throw Error("strategy must be one of single, multi, bh50, bh100, all");
    }
}

std::vector<std::pair<std::string, DateRange>> RunConfig::periods() const {
    std::vector<std::pair<std::string, DateRange>> out;
    for (int y : years) out.emplace_back(std::to_string(y), year_range(y));
    if (out.empty() && range) out.emplace_back("range", *range);
    return out;
}

}  // namespace sentitrade::config
