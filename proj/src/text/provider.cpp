#include "darkbanner/text/provider.hpp"

#include "darkbanner/core/csv.hpp"
#include "darkbanner/core/error.hpp"
#include "darkbanner/text/lexicon_builtin.hpp"
#include "darkbanner/text/porter.hpp"
#include "darkbanner/text/tokenize.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace darkbanner::text {

namespace {

double parse_valence(const std::string& s, const std::string& line) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw InvalidLexicon("bad valence in line: " + line);
    return v;
}

// Splits "http://host:port/path" into client base and request path.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    std::string rest = endpoint;
    std::string scheme = "http://";
    if (rest.rfind("http://", 0) == 0) rest = rest.substr(7);
    else if (rest.rfind("https://", 0) == 0) {
        scheme = "https://";
        rest = rest.substr(8);
    }
    const auto slash = rest.find('/');
    const std::string host = slash == std::string::npos ? rest : rest.substr(0, slash);
    const std::string path = slash == std::string::npos ? "/" : rest.substr(slash);
    return {scheme + host, path};
}

nlohmann::json call_external(const ProviderConfig& provider, const nlohmann::json& request) {
    const auto [base, path] = split_endpoint(provider.endpoint);
    httplib::Client client(base);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(10, 0);
    httplib::Headers headers;
    if (!provider.api_key.empty()) headers.emplace("Authorization", "Bearer " + provider.api_key);

    std::string last_error = "no attempt made";
    const int attempts = std::max(1, provider.max_retries);
    for (int i = 0; i < attempts; ++i) {
        auto res = client.Post(path, headers, request.dump(), "application/json");
        if (!res) {
            last_error = "connection failed";
            continue;
        }
        if (res->status != 200) {
            last_error = "http status " + std::to_string(res->status);
            continue;
        }
        try {
            return nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& e) {
            last_error = std::string("bad response body: ") + e.what();
        }
    }
    throw ProviderUnavailable(last_error + " (" + provider.endpoint + ")");
}

}  // namespace

Lexicon Lexicon::from_tsv(const std::string& content) {
    Lexicon lex;
    std::istringstream in(content);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first && line.rfind("#", 0) == 0) lex.version_ = line.substr(1);
        first = false;
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw InvalidLexicon("line without tab: " + line);
        lex.add(line.substr(0, tab), parse_valence(line.substr(tab + 1), line));
    }
    return lex;
}

Lexicon Lexicon::from_file(const std::string& path) {
    return from_tsv(core::read_text_file(path));
}

const Lexicon& Lexicon::builtin() {
    static const Lexicon lex = from_tsv(kBuiltinLexiconTsv);
    return lex;
}

void Lexicon::add(const std::string& term, double valence) {
    if (valence < -1.0 || valence > 1.0) {
        throw InvalidLexicon("valence outside [-1,1] for term '" + term + "'");
    }
    const auto tokens = tokenize(term);
    if (tokens.size() != 1) throw InvalidLexicon("term is not a single token: '" + term + "'");
    // First entry wins when two surface forms share a stem.
    valence_by_stem_.emplace(porter_stem(tokens.front()), valence);
}

std::optional<double> Lexicon::valence_of_stem(const std::string& stem) const {
    const auto it = valence_by_stem_.find(stem);
    if (it == valence_by_stem_.end()) return std::nullopt;
    return it->second;
}

ProviderConfig ProviderConfig::offline() { return ProviderConfig{}; }

ProviderConfig ProviderConfig::external(std::string endpoint, std::string api_key) {
    ProviderConfig cfg;
    cfg.kind = Kind::external;
    if (endpoint.empty()) {
        if (const char* env = std::getenv("DARKBANNER_TEXT_ENDPOINT")) endpoint = env;
    }
    if (api_key.empty()) {
        if (const char* env = std::getenv("DARKBANNER_TEXT_KEY")) api_key = env;
    }
    cfg.endpoint = std::move(endpoint);
    cfg.api_key = std::move(api_key);
    return cfg;
}

std::string translate(const std::string& input, const ProviderConfig& provider) {
    if (provider.kind == ProviderConfig::Kind::offline_default) return input;
    try {
        const auto response =
            call_external(provider, {{"op", "translate"}, {"text", input}});
        if (!response.contains("text") || !response["text"].is_string()) {
            throw ProviderUnavailable("translate response lacks \"text\"");
        }
        return response["text"].get<std::string>();
    } catch (const ProviderUnavailable&) {
        if (provider.fallback_to_offline) return input;
        throw;
    }
}

SentimentResult score_sentiment(const std::string& input, const Lexicon& lexicon,
                                const ProviderConfig& provider) {
    if (provider.kind == ProviderConfig::Kind::external) {
        try {
            const auto response =
                call_external(provider, {{"op", "sentiment"}, {"text", input}});
            if (!response.contains("score") || !response.contains("magnitude") ||
                !response["score"].is_number() || !response["magnitude"].is_number()) {
                throw ProviderUnavailable("sentiment response lacks score/magnitude");
            }
            SentimentResult r{response["score"].get<double>(),
                              response["magnitude"].get<double>()};
            if (r.score < -1.0 || r.score > 1.0 || r.magnitude < 0.0) {
                throw ProviderUnavailable("sentiment response violates invariants");
            }
            return r;
        } catch (const ProviderUnavailable&) {
            if (!provider.fallback_to_offline) throw;
            // fall through to the offline path
        }
    }

    const auto stems = stem_tokens(tokenize(input));
    double sum = 0.0;
    double magnitude = 0.0;
    std::size_t matched = 0;
    for (const auto& stem : stems) {
        if (const auto valence = lexicon.valence_of_stem(stem)) {
            sum += *valence;
            magnitude += std::abs(*valence);
            ++matched;
        }
    }
    const double score = std::clamp(sum / static_cast<double>(std::max<std::size_t>(1, matched)),
                                    -1.0, 1.0);
    return SentimentResult{score, magnitude};
}

}  // namespace darkbanner::text
