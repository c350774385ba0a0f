#include "darkbanner/core/csv.hpp"
#include "darkbanner/core/error.hpp"
#include "darkbanner/core/rng.hpp"
#include "darkbanner/text/lexicon_builtin.hpp"
#include "darkbanner/text/porter.hpp"
#include "darkbanner/text/provider.hpp"
#include "darkbanner/text/tokenize.hpp"

#include <doctest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <thread>

using namespace darkbanner;

TEST_CASE("tokenize basics") {
    CHECK(text::tokenize("Configure  Preferences!") ==
          text::TokenList{"configure", "preferences"});
    CHECK(text::tokenize("") == text::TokenList{});
    CHECK(text::tokenize("Read More") == text::TokenList{"read", "more"});
    CHECK(text::tokenize("a-b_c 42x") == text::TokenList{"a", "b", "c", "42x"});
    // Multi-byte characters act as separators.
    CHECK(text::tokenize("L\xC3\xA6s mere") == text::TokenList{"l", "s", "mere"});
}

TEST_CASE("tokenize is idempotent under re-joining") {
    core::Rng rng(11);
    const std::string alphabet = "abcXYZ019 .,!-_\t\"'/();:ae";
    for (int trial = 0; trial < 200; ++trial) {
        std::string s;
        const std::size_t len = rng.uniform_index(40);
        for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng.uniform_index(alphabet.size())]);
        const auto once = text::tokenize(s);
        CHECK(text::tokenize(text::join_tokens(once)) == once);
        for (const auto& token : once) {
            CHECK(!token.empty());
            for (char c : token) CHECK(((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')));
        }
    }
}

TEST_CASE("porter stemmer reference vectors") {
    const std::pair<const char*, const char*> vectors[] = {
        {"running", "run"},        {"options", "option"},     {"caresses", "caress"},
        {"ponies", "poni"},        {"ties", "ti"},            {"caress", "caress"},
        {"cats", "cat"},           {"feed", "feed"},          {"agreed", "agre"},
        {"plastered", "plaster"},  {"bled", "bled"},          {"motoring", "motor"},
        {"sing", "sing"},          {"sized", "size"},         {"hopping", "hop"},
        {"tanned", "tan"},         {"falling", "fall"},       {"hissing", "hiss"},
        {"fizzed", "fizz"},        {"failing", "fail"},       {"filing", "file"},
        {"happy", "happi"},        {"sky", "sky"},            {"relational", "relat"},
        {"conditional", "condit"}, {"rational", "ration"},    {"digitizer", "digit"},
        {"conformabli", "conform"}, {"vileli", "vile"},       {"analogousli", "analog"},
        {"operator", "oper"},      {"feudalism", "feudal"},   {"decisiveness", "decis"},
        {"hopefulness", "hope"},   {"callousness", "callous"}, {"formaliti", "formal"},
        {"sensitiviti", "sensit"}, {"sensibiliti", "sensibl"}, {"triplicate", "triplic"},
        {"formative", "form"},     {"formalize", "formal"},   {"hopeful", "hope"},
        {"goodness", "good"},      {"revival", "reviv"},      {"allowance", "allow"},
        {"inference", "infer"},    {"airliner", "airlin"},    {"gyroscopic", "gyroscop"},
        {"adjustable", "adjust"},  {"defensible", "defens"},  {"irritant", "irrit"},
        {"replacement", "replac"}, {"adjustment", "adjust"},  {"dependent", "depend"},
        {"adoption", "adopt"},     {"communism", "commun"},   {"activate", "activ"},
        {"angulariti", "angular"}, {"homologous", "homolog"}, {"effective", "effect"},
        {"bowdlerize", "bowdler"}, {"probate", "probat"},     {"rate", "rate"},
        {"cease", "ceas"},         {"controll", "control"},   {"roll", "roll"},
        {"buttons", "button"},     {"links", "link"},         {"boxes", "box"},
        {"scrolling", "scroll"},   {"immediately", "immedi"}, {"immediate", "immedi"},
    };
    for (const auto& [word, stem] : vectors) {
        CAPTURE(word);
        CHECK(text::porter_stem(word) == stem);
    }
    CHECK(text::porter_stem("at") == "at");  // too short to stem
}

TEST_CASE("stem_tokens preserves length and non-emptiness") {
    CHECK(text::stem_tokens({"running"}) == text::TokenList{"run"});
    CHECK(text::stem_tokens({}) == text::TokenList{});
    core::Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        text::TokenList tokens;
        const std::size_t count = rng.uniform_index(6);
        for (std::size_t t = 0; t < count; ++t) {
            std::string word;
            const std::size_t len = 1 + rng.uniform_index(12);
            for (std::size_t i = 0; i < len; ++i) {
                word.push_back(static_cast<char>('a' + rng.uniform_index(26)));
            }
            tokens.push_back(word);
        }
        const auto stems = text::stem_tokens(tokens);
        REQUIRE(stems.size() == tokens.size());
        for (const auto& s : stems) CHECK(!s.empty());
    }
}

TEST_CASE("sentiment scoring follows the lexicon-average rule") {
    const auto lexicon = text::Lexicon::from_tsv("good\t0.8\nbad\t-0.8\n");
    const auto offline = text::ProviderConfig::offline();

    const auto none = text::score_sentiment("zq xv", lexicon, offline);
    CHECK(none.score == 0.0);
    CHECK(none.magnitude == 0.0);

    const auto good = text::score_sentiment("good", lexicon, offline);
    CHECK(good.score == doctest::Approx(0.8));
    CHECK(good.magnitude == doctest::Approx(0.8));

    const auto mixed = text::score_sentiment("good bad", lexicon, offline);
    CHECK(mixed.score == doctest::Approx(0.0));
    CHECK(mixed.magnitude == doctest::Approx(1.6));

    // Stem matching: "goodness" stems to "good".
    const auto stemmed = text::score_sentiment("Goodness!", lexicon, offline);
    CHECK(stemmed.score == doctest::Approx(0.8));
}

TEST_CASE("lexicon rejects out-of-range valences and non-token terms") {
    CHECK_THROWS_AS(text::Lexicon::from_tsv("good\t1.5\n"), InvalidLexicon);
    CHECK_THROWS_AS(text::Lexicon::from_tsv("two words\t0.5\n"), InvalidLexicon);
    CHECK_THROWS_AS(text::Lexicon::from_tsv("novalence\n"), InvalidLexicon);
}

TEST_CASE("builtin lexicon matches the shipped data file") {
    const auto shipped =
        core::read_text_file(std::string(DARKBANNER_SOURCE_DIR) + "/data/sentiment_lexicon.tsv");
    CHECK(shipped == std::string(text::kBuiltinLexiconTsv));
    CHECK(text::Lexicon::builtin().size() > 150);
    CHECK(text::Lexicon::builtin().version().find("v1") != std::string::npos);
}

TEST_CASE("sentiment invariants hold under fuzzing") {
    core::Rng rng(23);
    const auto& lexicon = text::Lexicon::builtin();
    const auto offline = text::ProviderConfig::offline();
    for (int trial = 0; trial < 300; ++trial) {
        std::string s;
        const std::size_t len = rng.uniform_index(60);
        for (std::size_t i = 0; i < len; ++i) {
            s.push_back(static_cast<char>(32 + rng.uniform_index(95)));
        }
        const auto r = text::score_sentiment(s, lexicon, offline);
        CHECK(r.score >= -1.0);
        CHECK(r.score <= 1.0);
        CHECK(r.magnitude >= 0.0);
    }
    const auto empty = text::score_sentiment("", lexicon, offline);
    CHECK(empty.score == 0.0);
    CHECK(empty.magnitude == 0.0);
}

TEST_CASE("offline translation is the identity") {
    const auto offline = text::ProviderConfig::offline();
    CHECK(text::translate("L\xC3\xA6s mere", offline) == "L\xC3\xA6s mere");
    CHECK(text::translate("", offline) == "");
}

TEST_CASE("external provider speaks the wire format") {
    httplib::Server server;
    std::atomic<int> requests{0};
    server.Post("/v1/text", [&](const httplib::Request& req, httplib::Response& res) {
        ++requests;
        const auto body = nlohmann::json::parse(req.body);
        if (body.at("op") == "translate") {
            res.set_content(nlohmann::json{{"text", "translated:" + body.at("text").get<std::string>()}}.dump(),
                            "application/json");
        } else {
            res.set_content(nlohmann::json{{"score", 0.25}, {"magnitude", 1.5}}.dump(),
                            "application/json");
        }
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    auto provider = text::ProviderConfig::external(
        "http://127.0.0.1:" + std::to_string(port) + "/v1/text", "k");
    provider.fallback_to_offline = false;

    CHECK(text::translate("Read more", provider) == "translated:Read more");
    const auto sentiment =
        text::score_sentiment("whatever", text::Lexicon::builtin(), provider);
    CHECK(sentiment.score == doctest::Approx(0.25));
    CHECK(sentiment.magnitude == doctest::Approx(1.5));
    CHECK(requests.load() == 2);

    server.stop();
    server_thread.join();
}

TEST_CASE("external provider failure raises or falls back per config") {
    auto down = text::ProviderConfig::external("http://127.0.0.1:1/v1/text", "");
    down.fallback_to_offline = false;
    down.max_retries = 1;
    CHECK_THROWS_AS(text::translate("x", down), ProviderUnavailable);
    CHECK_THROWS_AS(text::score_sentiment("x", text::Lexicon::builtin(), down),
                    ProviderUnavailable);

    down.fallback_to_offline = true;
    CHECK(text::translate("x", down) == "x");
    const auto fallback = text::score_sentiment("good", text::Lexicon::builtin(), down);
    CHECK(fallback.score > 0.0);
}

TEST_CASE("external provider validates response invariants") {
    httplib::Server server;
    server.Post("/t", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(nlohmann::json{{"score", 2.0}, {"magnitude", 1.0}}.dump(),
                        "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    auto provider =
        text::ProviderConfig::external("http://127.0.0.1:" + std::to_string(port) + "/t", "");
    provider.fallback_to_offline = false;
    provider.max_retries = 1;
    CHECK_THROWS_AS(text::score_sentiment("x", text::Lexicon::builtin(), provider),
                    ProviderUnavailable);

    server.stop();
    server_thread.join();
}
