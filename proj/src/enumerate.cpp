#include <forbh/enumerate.hpp>

#include <forbh/canonical.hpp>
#include <forbh/graphs.hpp>

#include <set>

namespace forbh {

namespace {

// fixed numbering of all possible tuples over n elements
std::vector<std::pair<int, Tuple>> tuple_universe(const Signature& sig, int n)
{
    std::vector<std::pair<int, Tuple>> universe;
    if (n == 0)
        return universe;
    for (int sym = 0; sym < sig.size(); ++sym) {
        int ar = sig.arity(sym);
        Tuple t(ar, 0);
        for (;;) {
            universe.emplace_back(sym, t);
            int i = ar - 1;
            while (i >= 0 && t[i] == n - 1)
                t[i--] = 0;
            if (i < 0)
                break;
            ++t[i];
        }
    }
    return universe;
}

struct Generator {
    SignaturePtr sig;
    int n;
    int max_tuples;
    const std::function<bool(const Structure&)>& keep;
    const std::function<bool(const Structure&)>& visit;
    std::vector<std::pair<int, Tuple>> universe;
    std::vector<std::vector<Tuple>> rels;
    bool stopped = false;

    Structure current() const
    {
        auto r = rels;
        std::vector<std::string> domain;
        for (int i = 0; i < n; ++i)
            domain.push_back("e" + std::to_string(i));
        return make_structure(sig, std::move(domain), std::move(r));
    }

    void grow(int next, int count)
    {
        if (stopped)
            return;
        if (max_tuples >= 0 && count >= max_tuples)
            return;
        for (size_t i = next; i < universe.size() && !stopped; ++i) {
            rels[universe[i].first].push_back(universe[i].second);
            Structure s = current();
            if (!keep || keep(s)) {
                if (visit && !visit(s))
                    stopped = true;
                else
                    grow(static_cast<int>(i) + 1, count + 1);
            }
            rels[universe[i].first].pop_back();
        }
    }
};

} // namespace

void for_each_structure(SignaturePtr sig, int n, int max_tuples,
                        const std::function<bool(const Structure&)>& keep,
                        const std::function<bool(const Structure&)>& visit)
{
    Generator g{sig, n, max_tuples, keep, visit, tuple_universe(*sig, n), {}, false};
    g.rels.assign(sig->size(), {});
    Structure empty = g.current();
    if (keep && !keep(empty))
        return;
    if (visit && !visit(empty))
        return;
    g.grow(0, 0);
}

std::vector<Structure> all_structures_up_to_iso(SignaturePtr sig, int n,
                                                const std::function<bool(const Structure&)>& filter)
{
    std::vector<Structure> out;
    std::set<std::string> seen;
    for_each_structure(sig, n, -1, nullptr, [&](const Structure& s) {
        if (filter && !filter(s))
            return true;
        if (seen.insert(canonical_form(s)).second)
            out.push_back(s);
        return true;
    });
    return out;
}

std::vector<Structure> all_trees(SignaturePtr sig, int max_n)
{
    std::vector<Structure> out;
    std::set<std::string> seen;
    for (int n = 1; n <= max_n; ++n) {
        // prune anything whose incidence graph already has a cycle or a
        // repeated element in a tuple; trees are selected at visit time
        auto acyclic = [](const Structure& s) {
            for (int sym = 0; sym < s.sig->size(); ++sym)
                for (const Tuple& t : s.relations[sym])
                    for (size_t i = 0; i < t.size(); ++i)
                        for (size_t j = i + 1; j < t.size(); ++j)
                            if (t[i] == t[j])
                                return false;
            IncidenceGraph inc = incidence_graph(s);
            int verts = inc.element_count + static_cast<int>(inc.tuple_vertices.size());
            std::vector<int> parent(verts);
            for (int i = 0; i < verts; ++i)
                parent[i] = i;
            std::function<int(int)> find = [&](int x) {
                while (parent[x] != x)
                    x = parent[x] = parent[parent[x]];
                return x;
            };
            for (auto [e, tv] : inc.edges) {
                int a = find(e), b = find(inc.element_count + tv);
                if (a == b)
                    return false;
                parent[b] = a;
            }
            return true;
        };
        for_each_structure(sig, n, -1, acyclic, [&](const Structure& s) {
            if (is_tree(s) && seen.insert(canonical_form(s)).second)
                out.push_back(s);
            return true;
        });
    }
    return out;
}

} // namespace forbh
