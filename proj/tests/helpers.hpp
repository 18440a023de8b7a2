#pragma once

#include <forbh/verify.hpp>

namespace forbh::testing {

inline SignaturePtr digraph_sig()
{
    return make_signature({{"R", 2, false}}, false);
}

inline SignaturePtr mixed_sig()
{
    return make_signature({{"R", 2, false}, {"U", 1, false}}, false);
}

inline Structure digraph(SignaturePtr sig, std::vector<std::string> domain,
                         std::vector<std::pair<std::string, std::string>> edges)
{
    std::vector<std::vector<std::string>> tuples;
    for (auto& [u, w] : edges)
        tuples.push_back({u, w});
    return make_structure_named(sig, std::move(domain), {{"R", tuples}});
}

inline Structure two_path()
{
    return digraph(digraph_sig(), {"p", "q", "r"}, {{"p", "q"}, {"q", "r"}});
}

inline Structure single_edge()
{
    return digraph(digraph_sig(), {"a", "b"}, {{"a", "b"}});
}

inline ContextPtr two_path_context()
{
    SignaturePtr sig = digraph_sig();
    return make_context(sig, {digraph(sig, {"p", "q", "r"}, {{"p", "q"}, {"q", "r"}})});
}

inline Structure with_identity_order(const Structure& s)
{
    std::vector<int> order(s.size());
    for (int i = 0; i < s.size(); ++i)
        order[i] = i;
    return make_structure(with_order(s.sig, true), s.domain, s.relations, order);
}

// τ symbol index for "element has an incoming edge" in the two-path context;
// reads the class representatives only (no registry side effects)
inline int in_class_symbol(const ExpandedContext& ctx)
{
    for (int c = 0; c < static_cast<int>(ctx.classes.size()); ++c) {
        const RootedStructure& rep = ctx.classes[c].distinct_representatives.front();
        int r = rep.structure.sig->require("R");
        for (const Tuple& t : rep.structure.relations[r])
            if (t[1] == rep.root)
                return ctx.tau_symbol(c);
    }
    return -1;
}

inline int out_class_symbol(const ExpandedContext& ctx)
{
    for (int c = 0; c < static_cast<int>(ctx.classes.size()); ++c) {
        const RootedStructure& rep = ctx.classes[c].distinct_representatives.front();
        int r = rep.structure.sig->require("R");
        for (const Tuple& t : rep.structure.relations[r])
            if (t[0] == rep.root)
                return ctx.tau_symbol(c);
    }
    return -1;
}

// all maps |B|^|A| filtered by the homomorphism definition; independent of
// the backtracking searcher
inline std::vector<std::vector<int>> naive_homs(const Structure& a, const Structure& b,
                                                bool respect_order = true)
{
    std::vector<std::vector<int>> out;
    if (a.size() == 0) {
        out.push_back({});
        return out;
    }
    if (b.size() == 0)
        return out;
    std::vector<int> map(a.size(), 0);
    for (;;) {
        if (is_homomorphism(a, b, map, respect_order))
            out.push_back(map);
        int i = a.size() - 1;
        while (i >= 0 && map[i] == b.size() - 1)
            map[i--] = 0;
        if (i < 0)
            break;
        ++map[i];
    }
    return out;
}

inline std::vector<std::vector<int>> naive_embeddings(const Structure& a, const Structure& b)
{
    std::vector<std::vector<int>> out;
    for (const auto& map : naive_homs(a, b))
        if (is_embedding_map(a, b, map))
            out.push_back(map);
    return out;
}

} // namespace forbh::testing
