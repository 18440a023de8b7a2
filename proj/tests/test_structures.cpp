#include <doctest.h>

#include <forbh/canonical.hpp>
#include <forbh/enumerate.hpp>
#include <forbh/graphs.hpp>
#include <forbh/hom.hpp>
#include <forbh/ops.hpp>

#include <set>

#include "helpers.hpp"

using namespace forbh;
using namespace forbh::testing;

TEST_CASE("validation accepts a minimal digraph and rejects broken input")
{
    SignaturePtr sig = digraph_sig();
    Structure s = digraph(sig, {"a", "b"}, {{"a", "b"}});
    CHECK(s.size() == 2);
    CHECK(s.relations[0].size() == 1);

    CHECK_THROWS_AS(make_structure_named(sig, {"a"}, {{"R", {{"a", "b"}}}}), error);
    CHECK_THROWS_AS(make_structure_named(sig, {"a", "a"}, {}), error);
    CHECK_THROWS_AS(make_structure_named(sig, {"a"}, {{"R", {{"a"}}}}), error);
    CHECK_THROWS_AS(make_structure_named(sig, {"a"}, {{"Q", {}}}), error);

    SignaturePtr osig = with_order(sig, true);
    CHECK_THROWS_AS(make_structure_named(osig, {"a", "b"}, {},
                                         std::vector<std::string>{"a"}),
                    error);
    CHECK_THROWS_AS(make_structure_named(osig, {"a", "b"}, {},
                                         std::vector<std::string>{"a", "a"}),
                    error);
}

TEST_CASE("induced substructure: identity, empty, and the quaternary example")
{
    SignaturePtr sig = make_signature(
        {{"R", 4, false}, {"R'", 2, false}, {"D", 1, true}, {"O", 1, true}}, false);
    Structure a = make_structure_named(
        sig, {"a", "b", "c"},
        {{"R", {{"a", "b", "b", "c"}}}, {"R'", {{"a", "c"}}}, {"D", {{"a"}, {"b"}}}, {"O", {{"c"}}}});

    CHECK(induced_substructure(a, {0, 1, 2}) == a);
    CHECK(induced_substructure(a, {}).size() == 0);

    Structure sub = induced_substructure_named(a, {"a", "c"});
    CHECK(sub.relations[sub.sig->require("R")].empty());
    CHECK(sub.relations[sub.sig->require("R'")].size() == 1);
    CHECK(sub.has_tuple(sub.sig->require("D"), {sub.element_index("a")}));
    CHECK_FALSE(sub.has_tuple(sub.sig->require("D"), {sub.element_index("c")}));
    CHECK(sub.has_tuple(sub.sig->require("O"), {sub.element_index("c")}));

    // restriction composes
    Structure once = induced_substructure_named(a, {"a", "b"});
    Structure twice = induced_substructure_named(once, {"a"});
    CHECK(twice == induced_substructure_named(a, {"a"}));
}

TEST_CASE("sum: sizes, tagging, and the coproduct property at small scale")
{
    SignaturePtr sig = digraph_sig();
    CHECK(sum({}, sig).size() == 0);

    Structure a = digraph(sig, {"x"}, {});
    Structure b = digraph(sig, {"u", "v"}, {{"u", "v"}});
    Structure s = sum({a, b});
    CHECK(s.size() == 3);
    CHECK(s.relations[0].size() == 1);
    CHECK(s.element_index("0:x") == 0);
    CHECK(s.element_index("1:u") >= 0);

    // homs out of a sum correspond to pairs of homs
    std::vector<Structure> pool;
    for (int n = 0; n <= 2; ++n)
        for (const Structure& w : all_structures_up_to_iso(sig, n))
            pool.push_back(w);
    for (const Structure& x : pool)
        for (const Structure& y : pool) {
            Structure xy = sum({x, y});
            for (const Structure& c : pool) {
                size_t lhs = naive_homs(xy, c).size();
                size_t rhs = naive_homs(x, c).size() * naive_homs(y, c).size();
                CHECK(lhs == rhs);
            }
        }
}

TEST_CASE("factor: singleton partition and collapse-all")
{
    SignaturePtr sig = digraph_sig();
    Structure a = digraph(sig, {"x", "y"}, {{"x", "y"}});

    Partition singletons{{{0}, {1}}};
    CHECK(isomorphic(factor(a, singletons), a).has_value());

    Partition all{{{0, 1}}};
    Structure q = factor(a, all);
    CHECK(q.size() == 1);
    CHECK(q.has_tuple(0, {0, 0}));

    CHECK_THROWS_AS(factor(a, Partition{{{0}}}), error);
    CHECK_THROWS_AS(factor(a, Partition{{{0}, {0, 1}}}), error);
}

TEST_CASE("join: singleton, two pieces, and reconstruction of the tree at a cut")
{
    SignaturePtr sig = digraph_sig();
    Structure in_piece = digraph(sig, {"p", "q"}, {{"p", "q"}});
    Structure out_piece = digraph(sig, {"q", "r"}, {{"q", "r"}});

    RootedStructure j1 = join({{in_piece, 1}});
    CHECK(isomorphic(j1.structure, in_piece).has_value());

    RootedStructure two = join({{in_piece, 1}, {out_piece, 0}});
    CHECK(two.structure.size() == 3);
    CHECK(isomorphic(two.structure, two_path()).has_value());
    // rooted at the merged middle element
    CHECK(two.structure.domain[two.root] == "0:q");

    CHECK_THROWS_AS(join({}), error);

    // direct-construction oracle: rename apart, merge roots, union relations
    {
        Structure left = digraph(sig, {"lp", "m"}, {{"lp", "m"}});
        Structure right = digraph(sig, {"m", "rr"}, {{"m", "rr"}});
        Structure direct = digraph(sig, {"lp", "m", "rr"}, {{"lp", "m"}, {"m", "rr"}});
        RootedStructure via_ops = join({{left, 1}, {right, 0}});
        CHECK(isomorphic(via_ops.structure, direct).has_value());
    }
}

TEST_CASE("incidence and Gaifman graphs")
{
    SignaturePtr sig = digraph_sig();
    Structure e = single_edge();
    IncidenceGraph inc = incidence_graph(e);
    CHECK(inc.element_count == 2);
    CHECK(inc.tuple_vertices.size() == 1);
    CHECK(inc.edges.size() == 2);

    Structure loop = digraph(sig, {"a"}, {{"a", "a"}});
    IncidenceGraph linc = incidence_graph(loop);
    CHECK(linc.element_count == 1);
    CHECK(linc.edges.size() == 2); // parallel pair

    CHECK(incidence_graph(sum({}, sig)).edges.empty());

    SignaturePtr q4 = make_signature({{"R", 4, false}}, false);
    Structure quad = make_structure_named(q4, {"a", "b", "c"}, {{"R", {{"a", "b", "b", "c"}}}});
    SimpleGraph g = gaifman_graph(quad);
    CHECK(g.edges.size() == 3); // triangle on the distinct entries

    SignaturePtr usig = make_signature({{"U", 1, false}}, false);
    Structure unary_only = make_structure_named(usig, {"a", "b"}, {{"U", {{"a"}}}});
    CHECK(gaifman_graph(unary_only).edges.empty());

    SimpleGraph path = gaifman_graph(two_path());
    CHECK(path.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("connectivity: conventions and examples")
{
    SignaturePtr sig = digraph_sig();
    CHECK(is_connected(digraph(sig, {"a"}, {})));
    CHECK(is_connected(sum({}, sig))); // empty structure counts as connected
    CHECK_FALSE(is_connected(sum({single_edge(), single_edge()})));
    CHECK(is_connected(two_path()));
}

TEST_CASE("tree test")
{
    SignaturePtr sig = digraph_sig();
    CHECK(is_tree(two_path()));
    CHECK_FALSE(is_tree(digraph(sig, {"a"}, {{"a", "a"}})));
    CHECK_FALSE(is_tree(sum({single_edge(), single_edge()})));
    CHECK(is_tree(digraph(sig, {"a"}, {})));
    // two parallel tuples on the same pair close a cycle in the incidence graph
    SignaturePtr two = make_signature({{"R", 2, false}, {"Q", 2, false}}, false);
    Structure parallel = make_structure_named(two, {"a", "b"},
                                              {{"R", {{"a", "b"}}}, {"Q", {{"a", "b"}}}});
    CHECK_FALSE(is_tree(parallel));
}

TEST_CASE("isomorphism and canonical labels")
{
    SignaturePtr sig = digraph_sig();
    Structure e1 = digraph(sig, {"a", "b"}, {{"a", "b"}});
    Structure e2 = digraph(sig, {"x", "y"}, {{"y", "x"}}); // reversed edge, relabelled
    auto iso = isomorphic(e1, e2);
    REQUIRE(iso.has_value());
    CHECK(is_embedding_map(e1, e2, iso->map));

    Structure bare = digraph(sig, {"x", "y"}, {});
    CHECK_FALSE(isomorphic(e1, bare).has_value());
    CHECK(canonical_form(e1) == canonical_form(e2));
    CHECK(canonical_form(e1) != canonical_form(bare));

    // soundness: equal labels iff isomorphic, exhaustively at <= 3 elements
    for (int n = 0; n <= 3; ++n) {
        std::vector<Structure> all;
        for_each_structure(sig, n, -1, nullptr, [&](const Structure& s) {
            all.push_back(s);
            return true;
        });
        std::vector<std::string> labels;
        for (const Structure& s : all)
            labels.push_back(canonical_form(s));
        for (size_t i = 0; i < all.size(); ++i)
            for (size_t j = i + 1; j < all.size(); ++j) {
                bool iso_ij = isomorphic(all[i], all[j]).has_value();
                CHECK(iso_ij == (labels[i] == labels[j]));
            }
    }
}

TEST_CASE("rooted isomorphism distinguishes the root")
{
    SignaturePtr sig = digraph_sig();
    Structure e = single_edge();
    RootedStructure at_tail{e, 0}, at_head{e, 1};
    CHECK(isomorphic_rooted(at_tail, at_tail).has_value());
    CHECK_FALSE(isomorphic_rooted(at_tail, at_head).has_value());
}

TEST_CASE("reduct")
{
    SignaturePtr sig = mixed_sig();
    Structure a = make_structure_named(sig, {"x", "y"}, {{"R", {{"x", "y"}}}, {"U", {{"x"}}}});
    CHECK(reduct(a, {"R", "U"}, false) == a);

    Structure r = reduct(a, {"R"}, false);
    CHECK(r.sig->size() == 1);
    CHECK(r.relations[0].size() == 1);

    Structure bare = reduct(a, {}, false);
    CHECK(bare.sig->size() == 0);
    CHECK(bare.size() == 2);

    CHECK_THROWS_AS(reduct(a, {"Z"}, false), error);
}

TEST_CASE("three connectivity notions coincide at small scale")
{
    SignaturePtr sig = mixed_sig();
    for (int n = 0; n <= 3; ++n) {
        for_each_structure(sig, n, -1, nullptr, [&](const Structure& s) {
            bool inc = is_connected(s);
            bool gai = gaifman_connected(s);
            bool indecomposable = true;
            for (unsigned mask = 1; mask + 1 < (1u << n) && indecomposable; ++mask) {
                bool cross = false;
                for (int sym = 0; sym < s.sig->size() && !cross; ++sym)
                    for (const Tuple& t : s.relations[sym]) {
                        bool in0 = false, in1 = false;
                        for (int x : t)
                            ((mask >> x) & 1 ? in1 : in0) = true;
                        if (in0 && in1) {
                            cross = true;
                            break;
                        }
                    }
                if (!cross)
                    indecomposable = false;
            }
            CHECK(inc == gai);
            CHECK(gai == indecomposable);
            return true;
        });
    }
}
