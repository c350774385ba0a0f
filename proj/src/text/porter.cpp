#include "darkbanner/text/porter.hpp"

#include <array>
#include <cstring>

namespace darkbanner::text {

namespace {

struct Stemmer {
    std::string w;

    explicit Stemmer(std::string word) : w(std::move(word)) {}

    // Consonant-ness depends only on earlier positions, so prefixes of the
    // current word can be measured without copying.
    bool is_consonant(std::size_t i) const {
        const char c = w[i];
        switch (c) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !is_consonant(i - 1);
            default:
                return true;
        }
    }

    // m of w[0..len): number of VC sequences in [C](VC)^m[V].
    int measure(std::size_t len) const {
        int m = 0;
        std::size_t i = 0;
        while (i < len && is_consonant(i)) ++i;
        while (i < len) {
            while (i < len && !is_consonant(i)) ++i;
            if (i >= len) break;
            ++m;
            while (i < len && is_consonant(i)) ++i;
        }
        return m;
    }

    bool has_vowel(std::size_t len) const {
        for (std::size_t i = 0; i < len; ++i)
            if (!is_consonant(i)) return true;
        return false;
    }

    bool double_consonant(std::size_t len) const {
        return len >= 2 && w[len - 1] == w[len - 2] && is_consonant(len - 1);
    }

    // *o: ends consonant-vowel-consonant where the final consonant is not w/x/y.
    bool cvc(std::size_t len) const {
        if (len < 3) return false;
        if (!is_consonant(len - 3) || is_consonant(len - 2) || !is_consonant(len - 1)) return false;
        const char c = w[len - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(const char* suffix) const {
        const std::size_t n = std::strlen(suffix);
        return w.size() >= n && w.compare(w.size() - n, n, suffix) == 0;
    }

    void replace_suffix(std::size_t suffix_len, const char* replacement) {
        w.resize(w.size() - suffix_len);
        w += replacement;
    }

    struct Rule {
        const char* suffix;
        const char* replacement;
    };

    // Within a step only the rule with the longest matching suffix is
    // considered; if the stem fails the measure condition nothing happens.
    void apply_step(const Rule* rules, std::size_t n_rules, int min_measure) {
        const Rule* best = nullptr;
        std::size_t best_len = 0;
        for (std::size_t i = 0; i < n_rules; ++i) {
            const std::size_t len = std::strlen(rules[i].suffix);
            if (len > best_len && ends(rules[i].suffix)) {
                best = &rules[i];
                best_len = len;
            }
        }
        if (!best) return;
        const std::size_t stem_len = w.size() - best_len;
        if (measure(stem_len) > min_measure) replace_suffix(best_len, best->replacement);
    }

    void step1a() {
        if (ends("sses")) replace_suffix(4, "ss");
        else if (ends("ies")) replace_suffix(3, "i");
        else if (ends("ss")) { /* unchanged */ }
        else if (ends("s")) replace_suffix(1, "");
    }

    void step1b() {
        if (ends("eed")) {
            if (measure(w.size() - 3) > 0) replace_suffix(3, "ee");
            return;
        }
        bool stripped = false;
        if (ends("ed") && has_vowel(w.size() - 2)) {
            replace_suffix(2, "");
            stripped = true;
        } else if (ends("ing") && has_vowel(w.size() - 3)) {
            replace_suffix(3, "");
            stripped = true;
        }
        if (!stripped) return;
        if (ends("at") || ends("bl") || ends("iz")) {
            w += "e";
        } else if (double_consonant(w.size())) {
            const char c = w.back();
            if (c != 'l' && c != 's' && c != 'z') w.pop_back();
        } else if (measure(w.size()) == 1 && cvc(w.size())) {
            w += "e";
        }
    }

    void step1c() {
        if (ends("y") && has_vowel(w.size() - 1)) w.back() = 'i';
    }

    void step2() {
        static constexpr std::array<Rule, 20> rules{{
            {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
            {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
            {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
            {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
            {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
        }};
        apply_step(rules.data(), rules.size(), 0);
    }

    void step3() {
        static constexpr std::array<Rule, 7> rules{{
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
            {"ical", "ic"},  {"ful", ""},   {"ness", ""},
        }};
        apply_step(rules.data(), rules.size(), 0);
    }

    void step4() {
        static constexpr std::array<Rule, 18> rules{{
            {"al", ""},   {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
            {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
            {"ent", ""},  {"ou", ""},   {"ism", ""},  {"ate", ""}, {"iti", ""},
            {"ous", ""},  {"ive", ""},  {"ize", ""},
        }};
        // "ion" has an extra stem condition, so the generic longest-match
        // scan must include it before deciding.
        const Rule ion{"ion", ""};
        const Rule* best = nullptr;
        std::size_t best_len = 0;
        for (const auto& r : rules) {
            const std::size_t len = std::strlen(r.suffix);
            if (len > best_len && ends(r.suffix)) {
                best = &r;
                best_len = len;
            }
        }
        if (3 > best_len && ends("ion")) {
            best = &ion;
            best_len = 3;
        }
        if (!best) return;
        const std::size_t stem_len = w.size() - best_len;
        if (best == &ion) {
            if (stem_len >= 1 && (w[stem_len - 1] == 's' || w[stem_len - 1] == 't') &&
                measure(stem_len) > 1) {
                replace_suffix(best_len, "");
            }
            return;
        }
        if (measure(stem_len) > 1) replace_suffix(best_len, best->replacement);
    }

    void step5a() {
        if (!ends("e")) return;
        const std::size_t stem_len = w.size() - 1;
        const int m = measure(stem_len);
        if (m > 1 || (m == 1 && !cvc(stem_len))) w.pop_back();
    }

    void step5b() {
        if (w.size() >= 2 && w.back() == 'l' && double_consonant(w.size()) &&
            measure(w.size()) > 1) {
            w.pop_back();
        }
    }
};

}  // namespace

std::string porter_stem(const std::string& word) {
    if (word.size() < 3) return word;
    Stemmer s(word);
    s.step1a();
    s.step1b();
    s.step1c();
    s.step2();
    s.step3();
    s.step4();
    s.step5a();
    s.step5b();
    return s.w;
}

TokenList stem_tokens(const TokenList& tokens) {
    TokenList out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(porter_stem(t));
    return out;
}

}  // namespace darkbanner::text
