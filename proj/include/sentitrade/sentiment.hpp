#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

namespace sentitrade::sentiment {

/// Class probabilities from a three-way classifier.
struct ClassProbabilities {
    double pos = 0.0;
    double neu = 0.0;
    double neg = 0.0;
};

/// Throws Error unless every component is in [0,1] and they sum to 1 within 1e-6.
void validate(const ClassProbabilities& p);

enum class DirectionalLabel { Up, Neutral, Down };
enum class HumanLabel { Positive, Neutral, Negative };

/// pos + neu/2 - 1/2, in [-0.5, 0.5].
double composite_score(const ClassProbabilities& p);

int directional_to_signed(DirectionalLabel label);

enum class ScoreSource { Directional, Composite };

/// Maps either score family onto [0,1] for side-by-side comparison:
/// directional {-1,0,1} -> {0,0.5,1}; composite shifts up by 0.5.
double normalize_for_comparison(ScoreSource source, double raw);

enum class Polarity { Positive, Negative };

/// Word list for the deterministic stand-in scorer. Keys are lowercase.
class Lexicon {
public:
    Lexicon() = default;
    void add(std::string_view word, Polarity polarity);
    bool empty() const { return words_.empty(); }
    std::size_t size() const { return words_.size(); }
    const Polarity* find(std::string_view word) const;

    /// `word,polarity` per line, polarity in {pos,neg}; blank lines and `#` comments skipped.
    static Lexicon load(const std::filesystem::path& path);

private:
    std::unordered_map<std::string, Polarity> words_;
};

/// Deterministic stand-in for model inference. With P positive and N
/// negative hits among the lowercase words of `body` and T = P + N:
/// (0,1,0) when T is 0, else (0.9 P/T, 0.1, 0.9 N/T).
ClassProbabilities lexicon_score(std::string_view body, const Lexicon& lexicon, double neutral_floor = 0.1);

struct LabeledScore {
    double score = 0.0;  // composite, [-0.5, 0.5]
    HumanLabel label = HumanLabel::Neutral;
};

/// Positive above `neutral_band`, Negative below its negation, Neutral otherwise.
HumanLabel label_for_score(double score, double neutral_band);

struct AccuracyReport {
    std::size_t total = 0;
    std::size_t matches = 0;
    double accuracy = 0.0;
    // confusion[truth][predicted], indexed Positive, Neutral, Negative
    std::array<std::array<std::size_t, 3>, 3> confusion{};
};

AccuracyReport evaluate_against_labels(std::span<const LabeledScore> pairs, double neutral_band = 0.1);

/// `metric,value` rows followed by a `truth\predicted` confusion block.
void write_report(const std::filesystem::path& path, const AccuracyReport& report);

std::string_view to_string(HumanLabel label);
HumanLabel parse_human_label(std::string_view text);

}  // namespace sentitrade::sentiment
