#include <forbh/structure.hpp>

#include <algorithm>
#include <unordered_map>

namespace forbh {

int Structure::element_index(const std::string& name) const
{
    for (int i = 0; i < size(); ++i)
        if (domain[i] == name)
            return i;
    return -1;
}

bool Structure::has_tuple(int sym, const Tuple& t) const
{
    const auto& set = relations[sym];
    return std::binary_search(set.begin(), set.end(), t);
}

int Structure::rank(int element) const
{
    const auto& ord = *order;
    for (int k = 0; k < static_cast<int>(ord.size()); ++k)
        if (ord[k] == element)
            return k;
    return -1;
}

bool Structure::operator==(const Structure& other) const
{
    if (static_cast<bool>(sig) != static_cast<bool>(other.sig))
        return false;
    if (sig && !(*sig == *other.sig))
        return false;
    return domain == other.domain && relations == other.relations && order == other.order;
}

Structure make_structure(SignaturePtr sig,
                         std::vector<std::string> domain,
                         std::vector<std::vector<Tuple>> relations,
                         std::optional<std::vector<int>> order)
{
    Structure s;
    s.sig = std::move(sig);
    s.domain = std::move(domain);

    {
        auto names = s.domain;
        std::sort(names.begin(), names.end());
        auto dup = std::adjacent_find(names.begin(), names.end());
        if (dup != names.end())
            fail(errc::invalid_domain, "duplicate element '" + *dup + "'", {{"element", *dup}});
    }

    relations.resize(s.sig->size());
    const int n = s.size();
    for (int sym = 0; sym < s.sig->size(); ++sym) {
        for (const Tuple& t : relations[sym]) {
            if (static_cast<int>(t.size()) != s.sig->arity(sym))
                fail(errc::arity_mismatch,
                     "tuple of length " + std::to_string(t.size()) + " for symbol '" +
                         s.sig->name(sym) + "' of arity " + std::to_string(s.sig->arity(sym)),
                     {{"symbol", s.sig->name(sym)}});
            for (int x : t)
                if (x < 0 || x >= n)
                    fail(errc::unknown_element, "tuple entry out of domain",
                         {{"symbol", s.sig->name(sym)}});
        }
        std::sort(relations[sym].begin(), relations[sym].end());
        relations[sym].erase(std::unique(relations[sym].begin(), relations[sym].end()),
                             relations[sym].end());
    }
    s.relations = std::move(relations);

    if (s.sig->has_order()) {
        if (!order)
            fail(errc::invalid_order, "ordered signature but no order given");
        std::vector<char> seen(n, 0);
        if (static_cast<int>(order->size()) != n)
            fail(errc::invalid_order, "order does not cover the domain");
        for (int x : *order) {
            if (x < 0 || x >= n || seen[x])
                fail(errc::invalid_order, "order is not a permutation of the domain");
            seen[x] = 1;
        }
        s.order = std::move(order);
    } else if (order) {
        fail(errc::invalid_order, "order given but signature has none");
    }
    return s;
}

Structure make_structure_named(SignaturePtr sig,
                               std::vector<std::string> domain,
                               const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>& relations,
                               const std::optional<std::vector<std::string>>& order)
{
    std::unordered_map<std::string, int> idx;
    for (int i = 0; i < static_cast<int>(domain.size()); ++i)
        idx[domain[i]] = i;
    auto lookup = [&](const std::string& name) {
        auto it = idx.find(name);
        if (it == idx.end())
            fail(errc::unknown_element, "unknown element '" + name + "'", {{"element", name}});
        return it->second;
    };

    std::vector<std::vector<Tuple>> rels(sig->size());
    for (const auto& [sym_name, tuples] : relations) {
        int sym = sig->require(sym_name);
        for (const auto& named : tuples) {
            Tuple t;
            t.reserve(named.size());
            for (const auto& e : named)
                t.push_back(lookup(e));
            rels[sym].push_back(std::move(t));
        }
    }

    std::optional<std::vector<int>> ord;
    if (order) {
        ord.emplace();
        for (const auto& e : *order)
            ord->push_back(lookup(e));
    }
    return make_structure(std::move(sig), std::move(domain), std::move(rels), std::move(ord));
}

bool is_homomorphism(const Structure& a, const Structure& b, const std::vector<int>& map,
                     bool respect_order)
{
    if (static_cast<int>(map.size()) != a.size())
        return false;
    for (int x : map)
        if (x < 0 || x >= b.size())
            return false;
    for (int sym = 0; sym < a.sig->size(); ++sym) {
        for (const Tuple& t : a.relations[sym]) {
            Tuple image(t.size());
            for (size_t i = 0; i < t.size(); ++i)
                image[i] = map[t[i]];
            if (!b.has_tuple(sym, image))
                return false;
        }
    }
    if (respect_order && a.order && b.order) {
        std::vector<int> rank_b(b.size());
        for (int k = 0; k < b.size(); ++k)
            rank_b[(*b.order)[k]] = k;
        int prev = -1;
        for (int x : *a.order) {
            if (prev >= 0 && rank_b[map[x]] < rank_b[prev])
                return false;
            prev = map[x];
        }
    }
    return true;
}

bool is_embedding_map(const Structure& a, const Structure& b, const std::vector<int>& map,
                      bool respect_order)
{
    if (!is_homomorphism(a, b, map, respect_order))
        return false;
    std::vector<char> used(b.size(), 0);
    for (int x : map) {
        if (used[x])
            return false;
        used[x] = 1;
    }
    // reflect: a tuple of images is in b iff its preimage tuple is in a
    std::vector<int> inverse(b.size(), -1);
    for (int i = 0; i < a.size(); ++i)
        inverse[map[i]] = i;
    for (int sym = 0; sym < b.sig->size(); ++sym) {
        for (const Tuple& t : b.relations[sym]) {
            Tuple pre(t.size());
            bool inside = true;
            for (size_t i = 0; i < t.size() && inside; ++i) {
                pre[i] = inverse[t[i]];
                inside = pre[i] >= 0;
            }
            if (inside && !a.has_tuple(sym, pre))
                return false;
        }
    }
    return true;
}

void require_same_signature(const Structure& a, const Structure& b)
{
    if (!(*a.sig == *b.sig))
        fail(errc::signature_mismatch, "structures are over different signatures");
}

} // namespace forbh
