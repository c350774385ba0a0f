#include "darkbanner/core/csv.hpp"
#include "darkbanner/core/error.hpp"
#include "darkbanner/core/rng.hpp"
#include "darkbanner/pipeline/stages.hpp"

#include <doctest.h>

using namespace darkbanner;

TEST_CASE("csv round trip with quoting") {
    const std::string text = "a,b,c\n1,\"x, y\",\"he said \"\"hi\"\"\"\n,,\n";
    const auto table = core::parse_csv(text);
    REQUIRE(table.header == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0][1] == "x, y");
    CHECK(table.rows[0][2] == "he said \"hi\"");
    CHECK(table.rows[1] == std::vector<std::string>{"", "", ""});

    CHECK(core::format_csv_row({"x, y"}) == "\"x, y\"\n");
    CHECK(core::format_csv_row({"plain", "he said \"hi\""}) ==
          "plain,\"he said \"\"hi\"\"\"\n");
}

TEST_CASE("csv skips leading provenance comments") {
    const auto table = core::parse_csv("# config_hash=0xabc seed=42\n# more\na,b\n1,2\n");
    CHECK(table.header == std::vector<std::string>{"a", "b"});
    REQUIRE(table.rows.size() == 1);
    CHECK(table.row_lines[0] == 4);
}

TEST_CASE("csv handles embedded newlines and crlf") {
    const auto table = core::parse_csv("a,b\r\n\"line1\nline2\",z\r\n");
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0][0] == "line1\nline2");
}

TEST_CASE("csv rejects unterminated quotes") {
    CHECK_THROWS_AS(core::parse_csv("a\n\"oops\n"), ParseError);
}

TEST_CASE("rng streams are deterministic and index-separated") {
    core::Rng a(core::derive_seed(42, 0));
    core::Rng b(core::derive_seed(42, 0));
    core::Rng c(core::derive_seed(42, 1));
    bool any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next();
        CHECK(va == b.next());
        if (va != c.next()) any_diff = true;
    }
    CHECK(any_diff);

    core::Rng u(7);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.uniform();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
        CHECK(u.uniform_index(10) < 10);
    }
}

TEST_CASE("run config round-trips through its file format") {
    pipeline::RunConfig config;
    config.input_csv = "data/banner_data.csv";
    config.output_dir = "/tmp/out";
    config.seed = 7;
    config.seeds_count = 3;
    config.k_clusters = 4;
    config.grid_rates = {0.1, 0.05};
    config.grid_estimators = {5, 10};
    config.provider = "external";
    config.provider_endpoint = "http://localhost:9099/v1";
    config.lexicon_path = "lex.tsv";
    config.force = true;

    const std::string text = config.to_kv_text();
    const auto parsed = pipeline::RunConfig::from_kv_text(text);
    CHECK(parsed.to_kv_text() == text);
    CHECK(parsed.config_hash() == config.config_hash());
    CHECK(parsed.seed == 7);
    CHECK(parsed.grid_rates == config.grid_rates);
    CHECK(parsed.force);

    pipeline::RunConfig defaults;
    CHECK(defaults.seed == 42);
    CHECK(defaults.seeds_count == 10);
    CHECK(defaults.k_clusters == 6);
    CHECK(defaults.train_fraction == doctest::Approx(2.0 / 3.0));
    CHECK(defaults.grid_rates == std::vector<double>{0.15, 0.1, 0.05, 0.01, 0.005, 0.001});
    CHECK(defaults.grid_estimators == std::vector<int>{10, 15, 20, 25, 30, 35, 40});
    CHECK(pipeline::RunConfig::from_kv_text(defaults.to_kv_text()).config_hash() ==
          defaults.config_hash());
}

TEST_CASE("config hash is sensitive to every field") {
    pipeline::RunConfig a;
    pipeline::RunConfig b;
    b.seed = 43;
    CHECK(a.config_hash() != b.config_hash());
    pipeline::RunConfig c;
    c.grid_rates.push_back(0.2);
    CHECK(a.config_hash() != c.config_hash());
}
