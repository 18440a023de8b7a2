#include <forbh/hom.hpp>

#include <forbh/graphs.hpp>

#include <algorithm>

namespace forbh {

namespace {

struct Searcher {
    const Structure& a;
    const Structure& b;
    const SearchConstraint& c;
    const std::function<bool(const std::vector<int>&)>& visit;

    bool ordered;
    std::vector<int> rank_a, rank_b;
    std::vector<std::vector<char>> compat;      // [source][target]
    std::vector<int> var_order;                 // assignment sequence
    std::vector<int> step_of;                   // element -> step
    std::vector<std::vector<std::pair<int, int>>> complete_at; // step -> (sym, tuple idx)
    std::vector<std::vector<std::pair<int, int>>> b_incidence; // target elt -> (sym, tuple idx)

    std::vector<int> map;     // partial, -1 unassigned
    std::vector<int> inverse; // embedding mode
    bool stopped = false;

    Searcher(const Structure& a_, const Structure& b_, const SearchConstraint& c_,
             const std::function<bool(const std::vector<int>&)>& visit_)
        : a(a_), b(b_), c(c_), visit(visit_)
    {
        ordered = c.respect_order && a.order && b.order;
        if (ordered) {
            rank_a.resize(a.size());
            for (int k = 0; k < a.size(); ++k)
                rank_a[(*a.order)[k]] = k;
            rank_b.resize(b.size());
            for (int k = 0; k < b.size(); ++k)
                rank_b[(*b.order)[k]] = k;
        }
        build_compat();
        build_var_order();
        build_tuple_schedule();
        if (c.reflect_relations) {
            b_incidence.resize(b.size());
            for (int sym = 0; sym < b.sig->size(); ++sym)
                for (int ti = 0; ti < static_cast<int>(b.relations[sym].size()); ++ti)
                    for (int x : b.relations[sym][ti])
                        b_incidence[x].emplace_back(sym, ti);
            for (auto& inc : b_incidence) {
                std::sort(inc.begin(), inc.end());
                inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
            }
        }
    }

    // single-element tuples (unary marks and loops) prefiltered per pair
    void build_compat()
    {
        compat.assign(a.size(), std::vector<char>(b.size(), 1));
        for (int x = 0; x < a.size(); ++x) {
            auto pin = c.pins.find(x);
            for (int y = 0; y < b.size(); ++y) {
                char ok = 1;
                if (pin != c.pins.end() && pin->second != y)
                    ok = 0;
                if (ok && c.source_part && (*c.source_part)[x] != (*c.target_part)[y])
                    ok = 0;
                for (int sym = 0; ok && sym < a.sig->size(); ++sym) {
                    int ar = a.sig->arity(sym);
                    Tuple lx(ar, x), ly(ar, y);
                    bool in_a = a.has_tuple(sym, lx);
                    bool in_b = b.has_tuple(sym, ly);
                    if (in_a && !in_b)
                        ok = 0;
                    if (c.reflect_relations && in_b && !in_a)
                        ok = 0;
                }
                compat[x][y] = ok;
            }
        }
    }

    // most-constrained-first over the Gaifman graph, pins up front
    void build_var_order()
    {
        SimpleGraph gai = gaifman_graph(a);
        std::vector<std::vector<int>> adj(a.size());
        for (auto [x, y] : gai.edges) {
            adj[x].push_back(y);
            adj[y].push_back(x);
        }
        std::vector<int> candidates(a.size(), 0);
        for (int x = 0; x < a.size(); ++x)
            candidates[x] = static_cast<int>(std::count(compat[x].begin(), compat[x].end(), 1));

        std::vector<char> chosen(a.size(), 0);
        for (const auto& [x, y] : c.pins) {
            (void)y;
            var_order.push_back(x);
            chosen[x] = 1;
        }
        while (static_cast<int>(var_order.size()) < a.size()) {
            int best = -1;
            int best_nbrs = -1, best_cands = 0;
            for (int x = 0; x < a.size(); ++x) {
                if (chosen[x])
                    continue;
                int nbrs = 0;
                for (int y : adj[x])
                    if (chosen[y])
                        ++nbrs;
                if (best < 0 || nbrs > best_nbrs ||
                    (nbrs == best_nbrs && candidates[x] < best_cands)) {
                    best = x;
                    best_nbrs = nbrs;
                    best_cands = candidates[x];
                }
            }
            var_order.push_back(best);
            chosen[best] = 1;
        }
        step_of.assign(a.size(), -1);
        for (int s = 0; s < static_cast<int>(var_order.size()); ++s)
            step_of[var_order[s]] = s;
    }

    void build_tuple_schedule()
    {
        complete_at.assign(std::max(1, a.size()), {});
        for (int sym = 0; sym < a.sig->size(); ++sym) {
            for (int ti = 0; ti < static_cast<int>(a.relations[sym].size()); ++ti) {
                int last = 0;
                for (int x : a.relations[sym][ti])
                    last = std::max(last, step_of[x]);
                complete_at[last].emplace_back(sym, ti);
            }
        }
    }

    bool order_ok(int e, int y) const
    {
        if (!ordered)
            return true;
        for (int x = 0; x < a.size(); ++x) {
            if (map[x] < 0 || x == e)
                continue;
            if (rank_a[x] < rank_a[e] && rank_b[map[x]] > rank_b[y])
                return false;
            if (rank_a[x] > rank_a[e] && rank_b[map[x]] < rank_b[y])
                return false;
        }
        return true;
    }

    bool tuples_ok(int step) const
    {
        for (auto [sym, ti] : complete_at[step]) {
            const Tuple& t = a.relations[sym][ti];
            Tuple image(t.size());
            for (size_t i = 0; i < t.size(); ++i)
                image[i] = map[t[i]];
            if (!b.has_tuple(sym, image))
                return false;
        }
        return true;
    }

    bool reflection_ok(int y) const
    {
        for (auto [sym, ti] : b_incidence[y]) {
            const Tuple& t = b.relations[sym][ti];
            Tuple pre(t.size());
            bool inside = true;
            for (size_t i = 0; i < t.size() && inside; ++i) {
                pre[i] = inverse[t[i]];
                inside = pre[i] >= 0;
            }
            if (inside && !a.has_tuple(sym, pre))
                return false;
        }
        return true;
    }

    void run()
    {
        map.assign(a.size(), -1);
        if (c.reflect_relations || c.require_injective)
            inverse.assign(b.size(), -1);
        if (a.size() == 0) {
            stopped = !visit(map);
            return;
        }
        extend(0);
    }

    void extend(int step)
    {
        if (stopped)
            return;
        if (step == a.size()) {
            stopped = !visit(map);
            return;
        }
        int e = var_order[step];
        bool injective = c.require_injective || c.reflect_relations;
        for (int y = 0; y < b.size() && !stopped; ++y) {
            if (!compat[e][y])
                continue;
            if (injective && inverse[y] >= 0)
                continue;
            if (!order_ok(e, y))
                continue;
            map[e] = y;
            if (injective)
                inverse[y] = e;
            bool ok = tuples_ok(step) && (!c.reflect_relations || reflection_ok(y));
            if (ok)
                extend(step + 1);
            map[e] = -1;
            if (injective)
                inverse[y] = -1;
        }
    }
};

} // namespace

void for_each_hom(const Structure& a, const Structure& b, const SearchConstraint& c,
                  const std::function<bool(const std::vector<int>&)>& visit)
{
    require_same_signature(a, b);
    for (const auto& [x, y] : c.pins) {
        if (x < 0 || x >= a.size())
            fail(errc::unknown_element, "pinned source element out of range");
        if (y < 0 || y >= b.size())
            fail(errc::unknown_element, "pinned target element out of range");
    }
    Searcher s(a, b, c, visit);
    s.run();
}

std::vector<Morphism> enumerate_homs(const Structure& a, const Structure& b,
                                     const SearchConstraint& c)
{
    std::vector<Morphism> out;
    morphism_kind kind =
        c.reflect_relations ? morphism_kind::embedding : morphism_kind::homomorphism;
    for_each_hom(a, b, c, [&](const std::vector<int>& map) {
        out.push_back(Morphism{map, kind});
        return true;
    });
    return out;
}

std::vector<Morphism> enumerate_embeddings(const Structure& a, const Structure& b)
{
    SearchConstraint c;
    c.require_injective = true;
    c.reflect_relations = true;
    return enumerate_homs(a, b, c);
}

std::optional<Morphism> first_hom(const Structure& a, const Structure& b,
                                  const SearchConstraint& c)
{
    std::optional<Morphism> out;
    morphism_kind kind =
        c.reflect_relations ? morphism_kind::embedding : morphism_kind::homomorphism;
    for_each_hom(a, b, c, [&](const std::vector<int>& map) {
        out = Morphism{map, kind};
        return false;
    });
    return out;
}

bool exists_rooted_hom(const RootedStructure& m, const Structure& a, int x)
{
    if (x < 0 || x >= a.size())
        fail(errc::unknown_element, "rooted-hom target element out of range");
    SearchConstraint c;
    c.pins[m.root] = x;
    return first_hom(m.structure, a, c).has_value();
}

FFreeResult is_f_free(const Structure& a, const std::vector<Structure>& forbidden)
{
    for (size_t i = 0; i < forbidden.size(); ++i) {
        require_same_signature(a, forbidden[i]);
        if (auto h = first_hom(forbidden[i], a))
            return FFreeResult{false, static_cast<int>(i), h->map};
    }
    return FFreeResult{};
}

} // namespace forbh
