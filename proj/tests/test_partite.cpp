#include <doctest.h>

#include <forbh/canonical.hpp>
#include <forbh/partite.hpp>
#include <forbh/verify.hpp>

#include "helpers.hpp"

using namespace forbh;
using namespace forbh::testing;

namespace {

Structure ordered_expanded_edge(const ExpandedContext& ctx)
{
    return with_identity_order(canonical_expansion(single_edge(), ctx));
}

// two ordered elements, no relations, no marks
Structure ordered_pair(const ExpandedContext& ctx)
{
    return make_structure(ctx.expanded_ordered(), {"u", "v"},
                          std::vector<std::vector<Tuple>>(ctx.expanded->size()),
                          std::vector<int>{0, 1});
}

} // namespace

TEST_CASE("rectified structures from part sizes")
{
    ContextPtr ctx = two_path_context();

    SUBCASE("all sizes one reproduces the pattern")
    {
        Structure a = ordered_expanded_edge(*ctx);
        PartiteStructure x = rectified_structure(a, {{"a", 1}, {"b", 1}}, *ctx, 0);
        CHECK(isomorphic(x.carrier, a).has_value());
        CHECK(x.part == std::vector<int>{0, 1});
    }

    SUBCASE("a one-element pattern gives disjoint ordered copies")
    {
        Structure a = induced_substructure(ordered_expanded_edge(*ctx), {1});
        PartiteStructure x = rectified_structure(a, {{"b", 4}}, *ctx, 0);
        CHECK(x.carrier.size() == 4);
        CHECK(x.carrier.relations[x.carrier.sig->require("R")].empty());
        int s_in = in_class_symbol(*ctx);
        CHECK(x.carrier.relations[s_in].size() == 4);
        for (int p : x.part)
            CHECK(p == 0);
    }

    SUBCASE("expanded edge with sizes (2,1): three elements, two tuples")
    {
        Structure a = ordered_expanded_edge(*ctx);
        PartiteStructure x = rectified_structure(a, {{"a", 2}, {"b", 1}}, *ctx, 0);
        CHECK(x.carrier.size() == 3);
        CHECK(x.carrier.relations[x.carrier.sig->require("R")].size() == 2);
        check_rectified(x); // biconditional holds
    }

    SUBCASE("size zero parts are allowed")
    {
        Structure a = ordered_expanded_edge(*ctx);
        PartiteStructure x = rectified_structure(a, {{"a", 0}, {"b", 2}}, *ctx, 0);
        CHECK(x.carrier.size() == 2);
        CHECK(x.carrier.relations[x.carrier.sig->require("R")].empty());
    }

    SUBCASE("non-member pattern is rejected")
    {
        int s_in = in_class_symbol(*ctx), s_out = out_class_symbol(*ctx);
        std::vector<std::vector<Tuple>> rels(ctx->expanded->size());
        rels[s_in].push_back({0});
        rels[s_out].push_back({0});
        Structure bad = make_structure(ctx->expanded_ordered(), {"x"}, rels,
                                       std::vector<int>{0});
        CHECK_THROWS_AS(rectified_structure(bad, {{"x", 1}}, *ctx, 0), error);
    }
}

TEST_CASE("partite lemma sizes and base case")
{
    ContextPtr ctx = two_path_context();

    SUBCASE("base case: three copies at two colours need five")
    {
        Structure a = induced_substructure(ordered_expanded_edge(*ctx), {1});
        PartiteStructure b = rectified_structure(a, {{"b", 3}}, *ctx, 0);
        PartiteLemmaResult res = partite_lemma(a, b, 2, *ctx, 0);
        CHECK(res.e.carrier.size() == 5);
        REQUIRE(res.levels.size() == 1);
        CHECK(res.levels[0].extension == 5);
        CHECK(res.levels[0].colors == 2);
    }

    SUBCASE("a single copy is its own witness")
    {
        Structure a = induced_substructure(ordered_expanded_edge(*ctx), {1});
        PartiteStructure b = rectified_structure(a, {{"b", 1}}, *ctx, 0);
        PartiteLemmaResult res = partite_lemma(a, b, 7, *ctx, 0);
        CHECK(res.e.carrier.size() == 1);
    }

    SUBCASE("two-part recursion: k = 3 and 8 colours")
    {
        Structure a = ordered_pair(*ctx);
        PartiteStructure b = rectified_structure(a, {{"u", 2}, {"v", 2}}, *ctx, 0);
        PartiteLemmaResult res = partite_lemma(a, b, 2, *ctx, 0);
        REQUIRE(res.levels.size() == 2);
        CHECK(res.levels[0].element == "u");
        CHECK(res.levels[0].extension == 3);
        CHECK(res.levels[0].colors == 2);
        CHECK(res.levels[1].colors == 8);
        CHECK(res.levels[1].extension == 9);
        CHECK(res.e_sizes.at("u") == 3);
        CHECK(res.e_sizes.at("v") == 9);
        CHECK(res.e.carrier.size() == 12);
    }

    SUBCASE("arrow property verified exhaustively on a small instance")
    {
        Structure a = ordered_pair(*ctx);
        PartiteStructure b = rectified_structure(a, {{"u", 1}, {"v", 2}}, *ctx, 0);
        PartiteLemmaResult res = partite_lemma(a, b, 2, *ctx, 0);
        CHECK(res.e_sizes.at("u") == 1);
        CHECK(res.e_sizes.at("v") == 3);

        std::vector<int> id{0, 1};
        ArrowInstance inst{{res.e.carrier, res.e.part},
                          {b.carrier, b.part},
                          {a, id},
                          2};
        ArrowVerdict v = arrow_check(inst);
        CHECK(v.status == arrow_status::verified);
        CHECK(v.sites == 3);
        CHECK(v.colorings_total == 8);
        CHECK(reverify_arrow_witnesses(inst, v));
    }
}

TEST_CASE("rectification")
{
    ContextPtr ctx = two_path_context();
    Structure b = ordered_expanded_edge(*ctx);
    SignaturePtr psig = ctx->sigma_ordered();
    Structure p = make_structure_named(psig, {"p0", "p1", "p2"},
                                       {{"R", {{"p0", "p1"}, {"p0", "p2"}, {"p1", "p2"}}}},
                                       std::vector<std::string>{"p0", "p1", "p2"});
    C0Result c0 = build_c0(p, b, *ctx, 0);
    REQUIRE(c0.p_copies_of_b.size() == 3);
    CHECK(c0.c0.carrier.size() == 6);

    PartiteStructure d = rectify(c0.c0, *ctx, 0);
    int r_sym = d.carrier.sig->require("R");
    CHECK(c0.c0.carrier.relations[r_sym].size() == 3);
    CHECK(d.carrier.relations[r_sym].size() == 8); // five cross-copy tuples added

    // naive quadruple loop over all candidate pairs
    const Structure& cc = c0.c0.carrier;
    auto profile = [&](int e) {
        std::vector<char> out;
        for (int sym : cc.sig->expansion_symbols())
            out.push_back(cc.has_tuple(sym, {e}) ? 1 : 0);
        return out;
    };
    for (int x0 = 0; x0 < cc.size(); ++x0)
        for (int x1 = 0; x1 < cc.size(); ++x1) {
            bool expected = false;
            for (const Tuple& y : cc.relations[r_sym]) {
                if (c0.c0.part[y[0]] == c0.c0.part[x0] && c0.c0.part[y[1]] == c0.c0.part[x1] &&
                    profile(y[0]) == profile(x0) && profile(y[1]) == profile(x1) &&
                    c0.c0.part[x0] != c0.c0.part[x1])
                    expected = true;
            }
            CHECK(d.carrier.has_tuple(r_sym, {x0, x1}) == expected);
        }

    // idempotence and the rectified condition
    PartiteStructure dd = rectify(d, *ctx, 0);
    CHECK(dd.carrier == d.carrier);
    CHECK(satisfies_part_rect(d));

    // transversal inputs are fixed points
    std::vector<int> copy0;
    for (int x = 0; x < b.size(); ++x)
        copy0.push_back(c0.distinguished[0].map[x]);
    std::vector<int> part0;
    for (int x : copy0)
        part0.push_back(c0.c0.part[x]);
    PartiteStructure tv{induced_substructure(cc, copy0), p, part0, partite_mode::transversal};
    CHECK(is_transversal(tv));
    PartiteStructure tv_rect = rectify(tv, *ctx, 0);
    CHECK(tv_rect.carrier == tv.carrier);
}

TEST_CASE("rectified substructures")
{
    ContextPtr ctx = two_path_context();
    Structure b = ordered_expanded_edge(*ctx);
    SignaturePtr psig = ctx->sigma_ordered();
    Structure p = make_structure_named(psig, {"p0", "p1", "p2"},
                                       {{"R", {{"p0", "p1"}, {"p0", "p2"}, {"p1", "p2"}}}},
                                       std::vector<std::string>{"p0", "p1", "p2"});
    C0Result c0 = build_c0(p, b, *ctx, 0);
    PartiteStructure d = rectify(c0.c0, *ctx, 0);

    SUBCASE("selection over a full copy")
    {
        PartiteStructure at{b, p, c0.p_copies_of_b[0].map, partite_mode::transversal};
        PartiteStructure bk = rectified_substructure(d, at);
        // copy 0 sits on parts (p0, p1): tails on p0 (two of them), heads on p1 (one)
        CHECK(bk.carrier.size() == 3);
        check_rectified(bk);
        // an element with matching trace but wrong profile is excluded:
        // part p1 also hosts the tail of the third copy, marked out
        int excluded = 0;
        for (int x = 0; x < d.carrier.size(); ++x) {
            bool in_bk = bk.carrier.element_index(d.carrier.domain[x]) >= 0;
            bool trace_matches = false;
            for (int v : at.part)
                trace_matches = trace_matches || v == d.part[x];
            if (trace_matches && !in_bk)
                ++excluded;
        }
        CHECK(excluded == 1);
    }

    SUBCASE("one-element pattern selects the whole matching slice of a part")
    {
        Structure a1 = induced_substructure(b, {1});
        PartiteStructure at{a1, p, {c0.p_copies_of_b[0].map[1]}, partite_mode::transversal};
        PartiteStructure bk = rectified_substructure(d, at);
        CHECK(bk.carrier.size() == 1); // only the in-marked element of part p1
        CHECK(bk.carrier.relations[bk.carrier.sig->require("R")].empty());
    }

    SUBCASE("host must satisfy the rectified condition")
    {
        PartiteStructure at{b, p, c0.p_copies_of_b[0].map, partite_mode::transversal};
        CHECK_THROWS_AS(rectified_substructure(c0.c0, at), error);
    }

    SUBCASE("missing embedding is reported")
    {
        // part p0 hosts only out-marked tails, so an in-marked pattern there
        // admits no partite embedding
        Structure a1 = induced_substructure(b, {1});
        PartiteStructure at{a1, p, {0}, partite_mode::transversal};
        try {
            rectified_substructure(d, at);
            CHECK(false);
        } catch (const error& e) {
            CHECK(e.code() == errc::no_embedding);
        }
    }
}
