#include <doctest.h>

#include "ytf/report.hpp"

using namespace ytf;

TEST_CASE("git-style content hash matches git hash-object") {
    // echo -n 'hello' | git hash-object --stdin
    CHECK(report::content_hash("hello") == "b6fc4c620b67d95f953a5c1c1230aaab5db5a1b0");
    CHECK(report::content_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}

TEST_CASE("wrapped reports are stable modulo the timestamp") {
    nlohmann::ordered_json cfg{{"n", 6}, {"seed", 7}};
    nlohmann::ordered_json payload{{"value", 1.25}};
    auto a = report::wrap_report(cfg, payload);
    auto b = report::wrap_report(cfg, payload);
    a.erase("timestamp");
    b.erase("timestamp");
    CHECK(a.dump() == b.dump());
    CHECK(a["config_hash"] == b["config_hash"]);
    CHECK(a["tolerances"]["version"] == "1");
}
