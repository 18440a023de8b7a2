#include <forbh/graphs.hpp>

#include <algorithm>
#include <numeric>

namespace forbh {

namespace {

// union-find over n vertices
struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[b] = a;
        return true;
    }
};

} // namespace

IncidenceGraph incidence_graph(const Structure& a)
{
    IncidenceGraph g;
    g.element_count = a.size();
    for (int sym = 0; sym < a.sig->size(); ++sym) {
        for (int ti = 0; ti < static_cast<int>(a.relations[sym].size()); ++ti) {
            int tv = static_cast<int>(g.tuple_vertices.size());
            g.tuple_vertices.push_back({sym, ti});
            for (int x : a.relations[sym][ti])
                g.edges.emplace_back(x, tv);
        }
    }
    return g;
}

SimpleGraph gaifman_graph(const Structure& a)
{
    SimpleGraph g;
    g.vertex_count = a.size();
    for (int sym = 0; sym < a.sig->size(); ++sym) {
        for (const Tuple& t : a.relations[sym]) {
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] != t[j])
                        g.edges.emplace_back(std::min(t[i], t[j]), std::max(t[i], t[j]));
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

bool is_connected(const Structure& a)
{
    IncidenceGraph inc = incidence_graph(a);
    int n = inc.element_count + static_cast<int>(inc.tuple_vertices.size());
    if (n <= 1)
        return true; // empty structure counts as connected
    DisjointSets ds(n);
    int components = n;
    for (auto [e, tv] : inc.edges)
        if (ds.unite(e, inc.element_count + tv))
            --components;
    return components == 1;
}

bool gaifman_connected(const Structure& a)
{
    SimpleGraph g = gaifman_graph(a);
    if (g.vertex_count <= 1)
        return true;
    DisjointSets ds(g.vertex_count);
    int components = g.vertex_count;
    for (auto [x, y] : g.edges)
        if (ds.unite(x, y))
            --components;
    return components == 1;
}

bool is_tree(const Structure& a)
{
    for (int sym = 0; sym < a.sig->size(); ++sym)
        for (const Tuple& t : a.relations[sym])
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] == t[j])
                        return false;
    if (a.size() == 0)
        return false;
    IncidenceGraph inc = incidence_graph(a);
    int n = inc.element_count + static_cast<int>(inc.tuple_vertices.size());
    DisjointSets ds(n);
    for (auto [e, tv] : inc.edges)
        if (!ds.unite(e, inc.element_count + tv))
            return false; // cycle (covers parallel edges too)
    return static_cast<int>(inc.edges.size()) == n - 1; // connected and acyclic
}

std::vector<std::vector<int>> gaifman_components_without(const Structure& a, int removed)
{
    SimpleGraph g = gaifman_graph(a);
    DisjointSets ds(g.vertex_count);
    for (auto [x, y] : g.edges)
        if (x != removed && y != removed)
            ds.unite(x, y);

    std::vector<std::vector<int>> comps;
    std::vector<int> comp_of(g.vertex_count, -1);
    for (int x = 0; x < g.vertex_count; ++x) {
        if (x == removed)
            continue;
        int r = ds.find(x);
        if (comp_of[r] < 0) {
            comp_of[r] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[comp_of[r]].push_back(x);
    }
    return comps;
}

} // namespace forbh
