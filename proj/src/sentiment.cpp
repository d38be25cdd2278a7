#include "sentitrade/sentiment.hpp"

#include <cctype>
#include <cmath>
#include <fstream>

#include "sentitrade/common.hpp"

namespace sentitrade::sentiment {

namespace {

std::size_t index_of(HumanLabel l) {
    switch (l) {
        case HumanLabel::Positive: return 0;
        case HumanLabel::Neutral: return 1;
        case HumanLabel::Negative: return 2;
    }
    return 1;
}

std::string lowercase(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) out.push_back(static_cast<char>(std::tolower(c)));
    return out;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

void validate(const ClassProbabilities& p) {
    for (double v : {p.pos, p.neu, p.neg}) {
        if (!(v >= 0.0 && v <= 1.0)) throw Error("class probability outside [0,1]");
    }
    if (std::abs(p.pos + p.neu + p.neg - 1.0) > 1e-6) {
        throw Error("class probabilities do not sum to 1");
    }
}

double composite_score(const ClassProbabilities& p) {
    return p.pos + 0.5 * p.neu - 0.5;
}

int directional_to_signed(DirectionalLabel label) {
    switch (label) {
        case DirectionalLabel::Up: return 1;
        case DirectionalLabel::Neutral: return 0;
        case DirectionalLabel::Down: return -1;
    }
    return 0;
}

double normalize_for_comparison(ScoreSource source, double raw) {
    if (source == ScoreSource::Directional) {
        if (raw != -1.0 && raw != 0.0 && raw != 1.0) {
            throw Error("directional score must be -1, 0 or 1");
        }
        return (raw + 1.0) / 2.0;
    }
    if (!(raw >= -0.5 && raw <= 0.5)) {
        throw Error("composite score outside [-0.5, 0.5]");
    }
    return raw + 0.5;
}

void Lexicon::add(std::string_view word, Polarity polarity) {
    words_[lowercase(word)] = polarity;
}

const Polarity* Lexicon::find(std::string_view word) const {
    auto it = words_.find(std::string(word));
    return it == words_.end() ? nullptr : &it->second;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open lexicon '" + path.string() + "'");
    Lexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto comma = t.find(',');
        if (comma == std::string::npos) {
            throw Error("lexicon line " + std::to_string(lineno) + ": expected word,polarity");
        }
        const std::string word = trim(t.substr(0, comma));
        const std::string pol = trim(t.substr(comma + 1));
        if (word.empty()) throw Error("lexicon line " + std::to_string(lineno) + ": empty word");
        if (pol == "pos") {
            lex.add(word, Polarity::Positive);
        } else if (pol == "neg") {
            lex.add(word, Polarity::Negative);
        } else {
            throw Error("lexicon line " + std::to_string(lineno) + ": polarity must be pos or neg");
        }
    }
    if (lex.empty()) throw Error("lexicon '" + path.string() + "' is empty");
    return lex;
}

ClassProbabilities lexicon_score(std::string_view body, const Lexicon& lexicon, double neutral_floor) {
    if (lexicon.empty()) throw Error("lexicon_score: empty lexicon");
    std::size_t pos = 0, neg = 0;
    std::string word;
    auto flush = [&] {
        if (word.empty()) return;
        if (const Polarity* p = lexicon.find(word)) {
            (*p == Polarity::Positive ? pos : neg) += 1;
        }
        word.clear();
    };
    for (unsigned char c : body) {
        if (std::isalnum(c)) {
            word.push_back(static_cast<char>(std::tolower(c)));
        } else {
            flush();
        }
    }
    flush();

    const std::size_t total = pos + neg;
    if (total == 0) return {0.0, 1.0, 0.0};
    const double scale = 1.0 - neutral_floor;
    return {scale * static_cast<double>(pos) / static_cast<double>(total), neutral_floor,
            scale * static_cast<double>(neg) / static_cast<double>(total)};
}

HumanLabel label_for_score(double score, double neutral_band) {
    if (score > neutral_band) return HumanLabel::Positive;
    if (score < -neutral_band) return HumanLabel::Negative;
    return HumanLabel::Neutral;
}

AccuracyReport evaluate_against_labels(std::span<const LabeledScore> pairs, double neutral_band) {
    if (pairs.empty()) throw Error("evaluate_against_labels: no labelled pairs");
    if (!(neutral_band > 0.0)) throw Error("evaluate_against_labels: neutral band must be positive");
    AccuracyReport r;
    for (const auto& p : pairs) {
        const HumanLabel predicted = label_for_score(p.score, neutral_band);
        ++r.confusion[index_of(p.label)][index_of(predicted)];
        if (predicted == p.label) ++r.matches;
    }
    r.total = pairs.size();
    r.accuracy = static_cast<double>(r.matches) / static_cast<double>(r.total);
    return r;
}

void write_report(const std::filesystem::path& path, const AccuracyReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "metric,value\n";
    out << "total," << report.total << '\n';
    out << "matches," << report.matches << '\n';
    out << "accuracy," << format_number(report.accuracy) << '\n';
    out << '\n';
    out << "truth\\predicted,Positive,Neutral,Negative\n";
    constexpr HumanLabel order[] = {HumanLabel::Positive, HumanLabel::Neutral, HumanLabel::Negative};
    for (std::size_t i = 0; i < 3; ++i) {
        out << to_string(order[i]);
        for (std::size_t j = 0; j < 3; ++j) out << ',' << report.confusion[i][j];
        out << '\n';
    }
}

std::string_view to_string(HumanLabel label) {
    switch (label) {
        case HumanLabel::Positive: return "Positive";
        case HumanLabel::Neutral: return "Neutral";
        case HumanLabel::Negative: return "Negative";
    }
    return "Neutral";
}

HumanLabel parse_human_label(std::string_view text) {
    const std::string t = lowercase(trim(text));
    if (t == "positive") return HumanLabel::Positive;
    if (t == "neutral") return HumanLabel::Neutral;
    if (t == "negative") return HumanLabel::Negative;
    throw Error("unknown label '" + std::string(text) + "'");
}

}  // namespace sentitrade::sentiment
