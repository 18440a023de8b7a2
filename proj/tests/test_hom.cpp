#include <doctest.h>

#include <forbh/enumerate.hpp>
#include <forbh/hom.hpp>
#include <forbh/ops.hpp>

#include <set>

#include "helpers.hpp"

using namespace forbh;
using namespace forbh::testing;

TEST_CASE("hom counts on the worked examples")
{
    SignaturePtr sig = digraph_sig();
    Structure point = digraph(sig, {"x"}, {});
    Structure edge = single_edge();
    Structure path = two_path();

    CHECK(enumerate_homs(point, path).size() == 3);
    // no vertex of a single edge has both an in- and an out-edge
    CHECK(enumerate_homs(path, edge).empty());
    CHECK(naive_homs(path, edge).empty());
    CHECK(enumerate_homs(edge, path).size() == 2);
    CHECK(naive_homs(edge, path).size() == 2);

    CHECK_THROWS_AS(enumerate_homs(point, make_structure_named(mixed_sig(), {"x"}, {})), error);
}

TEST_CASE("hom search agrees with naive enumeration at small scale")
{
    SignaturePtr sig = digraph_sig();
    std::vector<Structure> pool;
    for (int n = 0; n <= 3; ++n)
        for (const Structure& s : all_structures_up_to_iso(sig, n))
            pool.push_back(s);
    for (const Structure& a : pool)
        for (const Structure& b : pool) {
            std::set<std::vector<int>> fast;
            for (const Morphism& m : enumerate_homs(a, b))
                fast.insert(m.map);
            std::set<std::vector<int>> slow;
            for (const auto& m : naive_homs(a, b))
                slow.insert(m);
            CHECK(fast == slow);
        }
}

TEST_CASE("embeddings: counts, ordered identity, and reflection")
{
    SignaturePtr osig = with_order(make_signature({}, false), true);
    auto points = [&](int n) {
        std::vector<std::string> dom;
        std::vector<int> ord;
        for (int i = 0; i < n; ++i) {
            dom.push_back("x" + std::to_string(i));
            ord.push_back(i);
        }
        return make_structure(osig, dom, {}, ord);
    };
    // an ordered structure embeds into itself exactly once
    CHECK(enumerate_embeddings(points(3), points(3)).size() == 1);
    // order-preserving injections of 2 into 3 = binomial(3,2)
    CHECK(enumerate_embeddings(points(2), points(3)).size() == 3);

    SignaturePtr sig = digraph_sig();
    Structure edge = single_edge();
    Structure bare = digraph(sig, {"u", "v"}, {});
    CHECK(enumerate_embeddings(edge, bare).empty());
    // reflection: the bare pair does not embed into the edge either
    CHECK(enumerate_embeddings(bare, edge).empty());

    // every embedding is a hom; composition with an embedding stays a hom
    Structure path = two_path();
    for (const Morphism& e : enumerate_embeddings(edge, path)) {
        CHECK(is_homomorphism(edge, path, e.map));
        for (const Morphism& h : enumerate_homs(edge, edge)) {
            std::vector<int> composed(edge.size());
            for (int i = 0; i < edge.size(); ++i)
                composed[i] = e.map[h.map[i]];
            CHECK(is_homomorphism(edge, path, composed));
        }
    }

    // embeddings agree with the naive filter at small scale
    std::vector<Structure> pool;
    for (int n = 0; n <= 3; ++n)
        for (const Structure& s : all_structures_up_to_iso(sig, n))
            pool.push_back(s);
    for (const Structure& a : pool)
        for (const Structure& b : pool) {
            std::set<std::vector<int>> fast;
            for (const Morphism& m : enumerate_embeddings(a, b))
                fast.insert(m.map);
            std::set<std::vector<int>> slow;
            for (const auto& m : naive_embeddings(a, b))
                slow.insert(m);
            CHECK(fast == slow);
        }
}

TEST_CASE("rooted homs")
{
    SignaturePtr sig = digraph_sig();
    Structure edge = single_edge();
    Structure point = digraph(sig, {"z"}, {});

    RootedStructure bare{point, 0};
    CHECK(exists_rooted_hom(bare, edge, 0));
    CHECK(exists_rooted_hom(bare, edge, 1));

    RootedStructure in_piece{digraph(sig, {"p", "q"}, {{"p", "q"}}), 1};
    CHECK(exists_rooted_hom(in_piece, edge, 1));
    CHECK_FALSE(exists_rooted_hom(in_piece, edge, 0));

    RootedStructure out_piece{digraph(sig, {"q", "r"}, {{"q", "r"}}), 0};
    CHECK(exists_rooted_hom(out_piece, edge, 0));
    CHECK_THROWS_AS(exists_rooted_hom(out_piece, edge, 7), error);
}

TEST_CASE("pinned search equals post-filtered unpinned search")
{
    SignaturePtr sig = digraph_sig();
    Structure a = two_path();
    Structure b = digraph(sig, {"u", "v", "w"}, {{"u", "v"}, {"v", "w"}, {"u", "w"}});
    for (int pin_src = 0; pin_src < a.size(); ++pin_src)
        for (int pin_dst = 0; pin_dst < b.size(); ++pin_dst) {
            SearchConstraint c;
            c.pins[pin_src] = pin_dst;
            std::set<std::vector<int>> pinned;
            for (const Morphism& m : enumerate_homs(a, b, c))
                pinned.insert(m.map);
            std::set<std::vector<int>> filtered;
            for (const Morphism& m : enumerate_homs(a, b))
                if (m.map[pin_src] == pin_dst)
                    filtered.insert(m.map);
            CHECK(pinned == filtered);
        }
}

TEST_CASE("F-freeness")
{
    SignaturePtr sig = digraph_sig();
    std::vector<Structure> f{two_path()};

    CHECK(is_f_free(single_edge(), f).f_free);

    FFreeResult self = is_f_free(two_path(), f);
    CHECK_FALSE(self.f_free);
    CHECK(self.witness == std::vector<int>{0, 1, 2}); // the identity homomorphism

    Structure cycle = digraph(sig, {"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
    FFreeResult cyc = is_f_free(cycle, f);
    CHECK_FALSE(cyc.f_free);
    CHECK(is_homomorphism(two_path(), cycle, cyc.witness));
}
