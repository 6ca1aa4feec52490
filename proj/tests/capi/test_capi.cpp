#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <memory>
#include <string>

#include "qgroups.h"

namespace {

using Ctx = std::unique_ptr<qg_context, decltype(&qg_context_free)>;

Ctx make(const char* algebra) {
    qg_context* c = nullptr;
    REQUIRE(qg_context_new(algebra, &c) == QG_OK);
    return Ctx(c, qg_context_free);
}

std::string take(char* s) {
    std::string r(s);
    qg_string_free(s);
    return r;
}

nlohmann::json entry(const nlohmann::json& doc, const std::vector<int>& m, const std::vector<int>& n) {
    for (const auto& b : doc["blocks"])
        for (const auto& e : b["entries"])
            if (e["m"] == m && e["n"] == n) return e["coeff"];
    return nullptr;
}

}  // namespace

TEST_CASE("contexts and errors") {
    qg_context* c = nullptr;
    CHECK(qg_context_new("X7", &c) == QG_ERR_INVALID_ARGUMENT);
    CHECK(c == nullptr);
    CHECK(qg_context_new(nullptr, &c) == QG_ERR_NULL_POINTER);
    CHECK(qg_default_bound("A2") == 3);
    CHECK(qg_default_bound("B2") == 2);
    CHECK(qg_default_bound("G2") == 1);
    auto ctx = make("A2");
    char* out = nullptr;
    CHECK(qg_transition_json(ctx.get(), "1,1,2", "2,1,2", 1, &out) == QG_ERR_INVALID_ARGUMENT);
    CHECK(std::string(qg_last_error(ctx.get())).find("not a reduced word") != std::string::npos);
    CHECK(qg_transition_json(ctx.get(), "1,2,1", "2,1,2", -1, &out) == QG_ERR_INVALID_ARGUMENT);
    CHECK(qg_verify_json(ctx.get(), "nope", 1, &out, nullptr) == QG_ERR_INVALID_ARGUMENT);
    CHECK(qg_set_jobs(ctx.get(), 0) == QG_ERR_INVALID_ARGUMENT);
    CHECK(qg_transition_json(nullptr, "1,2,1", "2,1,2", 1, &out) == QG_ERR_NULL_POINTER);
}

TEST_CASE("transition documents") {
    auto ctx = make("A2");
    char* out = nullptr;
    REQUIRE(qg_transition_json(ctx.get(), "1,2,1", "2,1,2", 3, &out) == QG_OK);
    const auto doc = nlohmann::json::parse(take(out));
    CHECK(doc["source"] == nlohmann::json::array({1, 2, 1}));
    CHECK(entry(doc, {1, 0, 1}, {1, 0, 1}) == "( 1*q^1 ) / ( 1*q^0 )");
    CHECK(entry(doc, {0, 1, 0}, {1, 0, 1}) == "( 1*q^0 + -1*q^2 ) / ( 1*q^0 )");
    CHECK(entry(doc, {0, 1, 0}, {0, 1, 0}) == "( -1*q^1 ) / ( 1*q^0 )");

    REQUIRE(qg_transition_json(ctx.get(), "1,2,1", "1,2,1", 2, &out) == QG_OK);
    for (const auto& b : nlohmann::json::parse(take(out))["blocks"])
        for (const auto& e : b["entries"]) {
            CHECK(e["m"] == e["n"]);
            CHECK(e["coeff"] == "( 1*q^0 ) / ( 1*q^0 )");
        }

    REQUIRE(qg_transition_json(ctx.get(), "1,2,1", "2,1,2", 0, &out) == QG_OK);
    const auto zero = nlohmann::json::parse(take(out));
    REQUIRE(zero["blocks"].size() == 1);
    CHECK(zero["blocks"][0]["entries"].size() == 1);
    CHECK(zero["blocks"][0]["entries"][0]["m"] == nlohmann::json::array({0, 0, 0}));
}

TEST_CASE("intertwiner agrees with the transition matrix") {
    for (auto [alg, from, to, bound] : {std::tuple{"A2", "1,2,1", "2,1,2", 3}, std::tuple{"B2", "1,2,1,2", "2,1,2,1", 2}}) {
        auto ctx = make(alg);
        REQUIRE(qg_set_jobs(ctx.get(), 3) == QG_OK);
        char* out = nullptr;
        int diffs = -1;
        REQUIRE(qg_intertwiner_json(ctx.get(), from, to, bound, -1, 1, &out, &diffs) == QG_OK);
        const auto doc = nlohmann::json::parse(take(out));
        CHECK(diffs == 0);
        CHECK(doc["diff"].empty());
        char* g = nullptr;
        REQUIRE(qg_transition_json(ctx.get(), from, to, bound, &g) == QG_OK);
        CHECK(nlohmann::json::parse(take(g))["blocks"] == doc["blocks"]);
    }
    auto ctx = make("A2");
    char* out = nullptr;
    CHECK(qg_intertwiner_json(ctx.get(), "1,2,1", "2,1,2", 3, 2, 0, &out, nullptr) == QG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("output is deterministic across job counts and cache state") {
    const auto dir = std::filesystem::temp_directory_path() / "qg_capi_cache_test";
    std::filesystem::remove_all(dir);
    auto run = [&](int jobs, bool cache, bool recheck) {
        auto ctx = make("B2");
        REQUIRE(qg_set_jobs(ctx.get(), jobs) == QG_OK);
        REQUIRE(qg_set_cache_dir(ctx.get(), cache ? dir.c_str() : "") == QG_OK);
        REQUIRE(qg_set_recheck_cache(ctx.get(), recheck ? 1 : 0) == QG_OK);
        char* out = nullptr;
        REQUIRE(qg_transition_json(ctx.get(), "1,2,1,2", "2,1,2,1", 2, &out) == QG_OK);
        return take(out);
    };
    const std::string base = run(1, false, false);
    CHECK(run(4, false, false) == base);
    CHECK(run(2, true, false) == base);
    CHECK(!std::filesystem::is_empty(dir));
    CHECK(run(1, true, true) == base);
    auto ctx = make("B2");
    REQUIRE(qg_set_recheck_cache(ctx.get(), 0) == QG_OK);
    REQUIRE(qg_set_cache_dir(ctx.get(), "") == QG_OK);
    std::filesystem::remove_all(dir);
}

TEST_CASE("verify documents") {
    auto a1 = make("A1");
    char* out = nullptr;
    int failures = -1;
    REQUIRE(qg_verify_json(a1.get(), "main2", 6, &out, &failures) == QG_OK);
    CHECK(failures == 0);
    const auto doc = nlohmann::json::parse(take(out));
    REQUIRE(doc["checks"].size() == 1);
    CHECK(doc["checks"][0]["pass"] == true);

    auto g2 = make("G2");
    REQUIRE(qg_verify_json(g2.get(), "braid", 1, &out, &failures) == QG_OK);
    CHECK(failures == 0);
    qg_string_free(out);

    REQUIRE(qg_verify_json(g2.get(), "", 1, &out, &failures) == QG_OK);
    CHECK(failures == 0);
    CHECK(nlohmann::json::parse(take(out))["checks"].empty());

    auto a2 = make("A2");
    REQUIRE(qg_verify_json(a2.get(), "relations,pairing,braid,rtt,spectra,main2", 2, &out, &failures) == QG_OK);
    CHECK(failures == 0);
    qg_string_free(out);
}

TEST_CASE("R-matrix documents") {
    auto a1 = make("A1");
    char* out = nullptr;
    REQUIRE(qg_rmatrix_json(a1.get(), "1", "1", &out) == QG_OK);
    const auto doc = nlohmann::json::parse(take(out));
    CHECK(doc["shift"] == "1/2");
    CHECK(doc["entries"].size() == 5);
    CHECK(qg_rmatrix_json(a1.get(), "1,0", "1", &out) == QG_ERR_INVALID_ARGUMENT);
}
