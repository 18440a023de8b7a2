#include <forbh/canonical.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace forbh {

namespace {

// Color refinement: an element's new color is determined by its old color
// and the multiset of (symbol, coordinate, tuple color pattern) incidences.
std::vector<int> refine(const Structure& a, std::vector<int> colors)
{
    const int n = a.size();
    for (;;) {
        std::vector<std::pair<std::vector<int>, int>> keys(n);
        for (int x = 0; x < n; ++x)
            keys[x] = {{colors[x]}, x};
        for (int sym = 0; sym < a.sig->size(); ++sym) {
            for (const Tuple& t : a.relations[sym]) {
                std::vector<int> pattern;
                pattern.reserve(t.size() + 2);
                for (int c : t)
                    pattern.push_back(colors[c]);
                for (size_t i = 0; i < t.size(); ++i) {
                    auto& k = keys[t[i]].first;
                    k.push_back(sym);
                    k.push_back(static_cast<int>(i));
                    k.insert(k.end(), pattern.begin(), pattern.end());
                    k.push_back(-1);
                }
            }
        }
        // sort each element's incidence items so the key is order-free
        for (auto& [k, x] : keys) {
            // k[0] is the old color; the rest is a flat item list — rebuild sorted
            std::vector<std::vector<int>> items;
            std::vector<int> cur;
            for (size_t i = 1; i < k.size(); ++i) {
                if (k[i] == -1) {
                    items.push_back(cur);
                    cur.clear();
                } else {
                    cur.push_back(k[i]);
                }
            }
            std::sort(items.begin(), items.end());
            std::vector<int> flat{k[0]};
            for (auto& it : items) {
                flat.insert(flat.end(), it.begin(), it.end());
                flat.push_back(-1);
            }
            k = std::move(flat);
        }

        std::map<std::vector<int>, int> ids;
        for (auto& [k, x] : keys)
            ids.emplace(k, 0);
        int next = 0;
        for (auto& [k, id] : ids)
            id = next++;
        std::vector<int> fresh(n);
        for (auto& [k, x] : keys)
            fresh[x] = ids[k];

        int old_count = 1 + (n ? *std::max_element(colors.begin(), colors.end()) : -1);
        if (next == old_count)
            return fresh;
        colors = std::move(fresh);
    }
}

std::string serialize_under(const Structure& a, const std::vector<int>& perm, int root)
{
    // perm[p] = element placed at position p
    std::vector<int> pos(a.size());
    for (int p = 0; p < a.size(); ++p)
        pos[perm[p]] = p;

    std::ostringstream out;
    out << "n" << a.size() << (a.sig->has_order() ? "o" : "") << ";";
    for (const auto& s : a.sig->symbols())
        out << s.name << "/" << s.arity << (s.expansion ? "e" : "") << ",";
    out << ";";
    for (int sym = 0; sym < a.sig->size(); ++sym) {
        std::vector<Tuple> mapped;
        mapped.reserve(a.relations[sym].size());
        for (const Tuple& t : a.relations[sym]) {
            Tuple m(t.size());
            for (size_t i = 0; i < t.size(); ++i)
                m[i] = pos[t[i]];
            mapped.push_back(std::move(m));
        }
        std::sort(mapped.begin(), mapped.end());
        out << a.sig->name(sym) << ":";
        for (const Tuple& t : mapped) {
            out << "(";
            for (size_t i = 0; i < t.size(); ++i)
                out << t[i] << (i + 1 < t.size() ? "," : "");
            out << ")";
        }
        out << ";";
    }
    if (root >= 0)
        out << "r" << pos[root] << ";";
    return out.str();
}

struct CanonState {
    const Structure* a;
    int root;
    std::string best;
    std::vector<int> best_perm;
    bool have = false;
};

void canon_search(CanonState& st, const std::vector<int>& colors)
{
    const Structure& a = *st.a;
    const int n = a.size();

    // locate the first smallest non-singleton cell
    int color_count = n ? 1 + *std::max_element(colors.begin(), colors.end()) : 0;
    std::vector<int> cell_size(color_count, 0);
    for (int c : colors)
        ++cell_size[c];
    int target = -1;
    for (int c = 0; c < color_count; ++c) {
        if (cell_size[c] > 1 && (target < 0 || cell_size[c] < cell_size[target]))
            target = c;
    }

    if (target < 0) {
        std::vector<int> perm(n);
        for (int x = 0; x < n; ++x)
            perm[colors[x]] = x;
        std::string label = serialize_under(a, perm, st.root);
        if (!st.have || label < st.best) {
            st.best = std::move(label);
            st.best_perm = std::move(perm);
            st.have = true;
        }
        return;
    }

    for (int x = 0; x < n; ++x) {
        if (colors[x] != target)
            continue;
        std::vector<int> split(n);
        for (int y = 0; y < n; ++y)
            split[y] = colors[y] * 2 + (y == x ? 1 : 0);
        canon_search(st, refine(a, std::move(split)));
    }
}

// returns (label, permutation position->element)
std::pair<std::string, std::vector<int>> canonical(const Structure& a, int root)
{
    if (a.order) {
        std::vector<int> perm = *a.order;
        return {serialize_under(a, perm, root), perm};
    }
    std::vector<int> colors(a.size(), root < 0 ? 0 : 1);
    if (root >= 0)
        colors[root] = 0;
    CanonState st{&a, root, {}, {}, false};
    if (a.size() == 0) {
        st.best = serialize_under(a, {}, -1);
        st.best_perm = {};
        st.have = true;
    } else {
        canon_search(st, refine(a, std::move(colors)));
    }
    return {st.best, st.best_perm};
}

} // namespace

std::string canonical_form(const Structure& a)
{
    return canonical(a, -1).first;
}

std::string canonical_form_rooted(const Structure& a, int root)
{
    return canonical(a, root).first;
}

std::optional<Morphism> isomorphic(const Structure& a, const Structure& b)
{
    if (!(*a.sig == *b.sig) || a.size() != b.size())
        return std::nullopt;
    for (int sym = 0; sym < a.sig->size(); ++sym)
        if (a.relations[sym].size() != b.relations[sym].size())
            return std::nullopt;

    auto [la, pa] = canonical(a, -1);
    auto [lb, pb] = canonical(b, -1);
    if (la != lb)
        return std::nullopt;

    std::vector<int> pos_a(a.size());
    for (int p = 0; p < a.size(); ++p)
        pos_a[pa[p]] = p;
    std::vector<int> map(a.size());
    for (int x = 0; x < a.size(); ++x)
        map[x] = pb[pos_a[x]];
    if (!is_embedding_map(a, b, map))
        return std::nullopt; // defensive; labels agree only for isomorphic inputs
    return Morphism{std::move(map), morphism_kind::isomorphism};
}

std::optional<Morphism> isomorphic_rooted(const RootedStructure& a, const RootedStructure& b)
{
    if (!(*a.structure.sig == *b.structure.sig) || a.structure.size() != b.structure.size())
        return std::nullopt;
    auto [la, pa] = canonical(a.structure, a.root);
    auto [lb, pb] = canonical(b.structure, b.root);
    if (la != lb)
        return std::nullopt;
    std::vector<int> pos_a(a.structure.size());
    for (int p = 0; p < a.structure.size(); ++p)
        pos_a[pa[p]] = p;
    std::vector<int> map(a.structure.size());
    for (int x = 0; x < a.structure.size(); ++x)
        map[x] = pb[pos_a[x]];
    if (map[a.root] != b.root || !is_embedding_map(a.structure, b.structure, map))
        return std::nullopt;
    return Morphism{std::move(map), morphism_kind::isomorphism};
}

} // namespace forbh
