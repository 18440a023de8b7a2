#include <doctest.h>

#include <forbh/verify.hpp>

#include "helpers.hpp"

using namespace forbh;
using namespace forbh::testing;

namespace {

Structure ordered_points(SignaturePtr sig_ordered, int n)
{
    std::vector<std::string> dom;
    std::vector<int> ord;
    for (int i = 0; i < n; ++i) {
        dom.push_back("x" + std::to_string(i));
        ord.push_back(i);
    }
    return make_structure(sig_ordered, dom,
                          std::vector<std::vector<Tuple>>(sig_ordered->size()), ord);
}

} // namespace

TEST_CASE("arrow check on the worked examples")
{
    SignaturePtr sig = with_order(make_signature({}, false), true);
    Structure one = ordered_points(sig, 1);
    Structure two = ordered_points(sig, 2);
    Structure three = ordered_points(sig, 3);

    SUBCASE("identity at one colour")
    {
        ArrowInstance inst{{two, std::nullopt}, {two, std::nullopt}, {one, std::nullopt}, 1};
        ArrowVerdict v = arrow_check(inst);
        CHECK(v.status == arrow_status::verified);
        CHECK(v.colorings_total == 1);
        CHECK(reverify_arrow_witnesses(inst, v));
    }

    SUBCASE("pigeonhole: three points arrow two points at two colours")
    {
        ArrowInstance inst{{three, std::nullopt}, {two, std::nullopt}, {one, std::nullopt}, 2};
        ArrowVerdict v = arrow_check(inst);
        CHECK(v.status == arrow_status::verified);
        CHECK(v.colorings_total == 8);
        CHECK(v.colorings_checked == 8);
        CHECK(reverify_arrow_witnesses(inst, v));

        // monotonicity: fewer colours stay verified
        ArrowInstance down{{three, std::nullopt}, {two, std::nullopt}, {one, std::nullopt}, 1};
        CHECK(arrow_check(down).status == arrow_status::verified);
    }

    SUBCASE("two points cannot arrow themselves at two colours")
    {
        ArrowInstance inst{{two, std::nullopt}, {two, std::nullopt}, {one, std::nullopt}, 2};
        ArrowVerdict v = arrow_check(inst);
        CHECK(v.status == arrow_status::refuted);
        CHECK(v.counterexample_index == 1); // colexicographically least
        CHECK(v.counterexample == std::vector<int>{1, 0});
        CHECK(v.colorings_checked == 2);
    }

    SUBCASE("budget produces an honest infeasible verdict")
    {
        ArrowInstance inst{{three, std::nullopt}, {two, std::nullopt}, {one, std::nullopt}, 2};
        ArrowVerdict v = arrow_check(inst, 4);
        CHECK(v.status == arrow_status::infeasible);
        CHECK(v.colorings_total == 8);
    }

    SUBCASE("no copy of B refutes immediately")
    {
        ArrowInstance inst{{one, std::nullopt}, {two, std::nullopt}, {one, std::nullopt}, 1};
        ArrowVerdict v = arrow_check(inst);
        CHECK(v.status == arrow_status::refuted);
        CHECK(v.counterexample_index == 0);
    }
}

TEST_CASE("arrow check takes the parallel path on larger colour spaces")
{
    SignaturePtr sig = with_order(make_signature({}, false), true);
    Structure big = ordered_points(sig, 13);
    Structure two = ordered_points(sig, 2);
    Structure one = ordered_points(sig, 1);

    // 2^13 colourings, verified: every colouring has a same-coloured pair
    ArrowInstance inst{{big, std::nullopt}, {two, std::nullopt}, {one, std::nullopt}, 2};
    ArrowVerdict v = arrow_check(inst);
    CHECK(v.status == arrow_status::verified);
    CHECK(v.colorings_total == 8192);
    CHECK(reverify_arrow_witnesses(inst, v));

    // refuted with early cancellation: the least counterexample index is
    // reported no matter how the ranges were scheduled
    ArrowInstance self{{big, std::nullopt}, {big, std::nullopt}, {one, std::nullopt}, 2};
    ArrowVerdict r = arrow_check(self);
    CHECK(r.status == arrow_status::refuted);
    CHECK(r.counterexample_index == 1);
    ArrowVerdict r1 = arrow_check(self, 1ull << 24, 1);
    CHECK(r1.counterexample_index == r.counterexample_index);
}

TEST_CASE("expansion oracle diffs and negative control")
{
    ContextPtr ctx = two_path_context();
    OracleReport ok = check_expansion_oracle(single_edge(), *ctx);
    CHECK(ok.ok);
    OracleReport empty = check_expansion_oracle(make_structure(ctx->sigma, {}, {}), *ctx);
    CHECK(empty.ok);
    OracleReport bad = check_expansion_oracle(single_edge(), *ctx, true);
    CHECK_FALSE(bad.ok);
    CHECK(bad.diffs.size() >= 1);
}

TEST_CASE("property suites pass at reduced scale")
{
    struct Case {
        const char* name;
        int scale;
    };
    const Case cases[] = {
        {"lemma-2.1", 2},  {"eq-3.1", 2},           {"lemma-3.4", 3}, {"lemma-3.5", 2},
        {"lemma-3.6", 4},  {"thm-3.7-amalgam", 2},  {"prop-5.1", 1},  {"lemma-6.1", 0},
        {"lemma-6.2", 0},  {"distinguished-copies", 0},
    };
    for (const Case& c : cases) {
        SuiteReport r = run_property_suite(c.name, c.scale);
        INFO(c.name);
        CHECK(r.pass);
        CHECK(r.cases > 0);
    }
}

TEST_CASE("every suite detects its injected corruption")
{
    for (const std::string& name : suite_names()) {
        SuiteReport r = run_property_suite(name, name == "lemma-3.4" || name == "lemma-3.6" ? 3 : 2,
                                           true);
        INFO(name);
        CHECK_FALSE(r.pass);
        CHECK(r.injected);
    }
}

TEST_CASE("unknown suite name is rejected")
{
    CHECK_THROWS_AS(run_property_suite("no-such-suite", 1), error);
}
