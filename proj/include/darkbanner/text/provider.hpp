#pragma once

#include <map>
#include <optional>
#include <string>

namespace darkbanner::text {

struct SentimentResult {
    double score = 0.0;      // valence in [-1, 1]
    double magnitude = 0.0;  // total affect strength, >= 0
};

// Valence map keyed by Porter stem. Scoring matches stemmed tokens of the
// input against the map: score is the clamped mean of matched valences,
// magnitude the sum of their absolute values.
class Lexicon {
public:
    static Lexicon from_tsv(const std::string& content);
    static Lexicon from_file(const std::string& path);
    // The copy shipped under data/ has identical content; a test keeps them in sync.
    static const Lexicon& builtin();

    void add(const std::string& term, double valence);
    std::optional<double> valence_of_stem(const std::string& stem) const;
    std::size_t size() const { return valence_by_stem_.size(); }
    const std::string& version() const { return version_; }

private:
    std::map<std::string, double> valence_by_stem_;
    std::string version_ = "unversioned";
};

struct ProviderConfig {
    enum class Kind { offline_default, external };
    Kind kind = Kind::offline_default;
    std::string endpoint;  // e.g. http://host:port/v1/text
    std::string api_key;
    bool fallback_to_offline = true;
    int max_retries = 3;

    static ProviderConfig offline();
    // Reads DARKBANNER_TEXT_ENDPOINT / DARKBANNER_TEXT_KEY when args are empty.
    static ProviderConfig external(std::string endpoint = "", std::string api_key = "");
};

// Offline default is the identity; the external service receives
// {"op":"translate","text":...} and answers {"text":...}.
std::string translate(const std::string& input, const ProviderConfig& provider);

// Offline default: tokenize + stem, then lexicon-average valence.
// External service receives {"op":"sentiment","text":...} and answers
// {"score":...,"magnitude":...}, validated against the result invariants.
SentimentResult score_sentiment(const std::string& input, const Lexicon& lexicon,
                                const ProviderConfig& provider);

}  // namespace darkbanner::text
