#include <forbh/ops.hpp>

#include <algorithm>

namespace forbh {

Structure induced_substructure(const Structure& a, const std::vector<int>& m)
{
    std::vector<int> keep = m;
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

    std::vector<int> new_index(a.size(), -1);
    std::vector<std::string> domain;
    for (int x : keep) {
        if (x < 0 || x >= a.size())
            fail(errc::unknown_element, "element set not within the domain");
        new_index[x] = static_cast<int>(domain.size());
        domain.push_back(a.domain[x]);
    }

    std::vector<std::vector<Tuple>> rels(a.sig->size());
    for (int sym = 0; sym < a.sig->size(); ++sym) {
        for (const Tuple& t : a.relations[sym]) {
            Tuple mapped(t.size());
            bool inside = true;
            for (size_t i = 0; i < t.size() && inside; ++i) {
                mapped[i] = new_index[t[i]];
                inside = mapped[i] >= 0;
            }
            if (inside)
                rels[sym].push_back(std::move(mapped));
        }
    }

    std::optional<std::vector<int>> order;
    if (a.order) {
        order.emplace();
        for (int x : *a.order)
            if (new_index[x] >= 0)
                order->push_back(new_index[x]);
    }
    return make_structure(a.sig, std::move(domain), std::move(rels), std::move(order));
}

Structure induced_substructure_named(const Structure& a, const std::vector<std::string>& names)
{
    std::vector<int> m;
    for (const auto& n : names) {
        int i = a.element_index(n);
        if (i < 0)
            fail(errc::unknown_element, "unknown element '" + n + "'", {{"element", n}});
        m.push_back(i);
    }
    return induced_substructure(a, m);
}

Structure sum(const std::vector<Structure>& parts, SignaturePtr sig_if_empty)
{
    if (parts.empty()) {
        if (!sig_if_empty)
            sig_if_empty = make_signature({}, false);
        return make_structure(sig_if_empty, {}, {});
    }
    SignaturePtr sig = parts.front().sig;
    for (const Structure& p : parts)
        require_same_signature(parts.front(), p);

    std::vector<std::string> domain;
    std::vector<int> offsets;
    for (size_t i = 0; i < parts.size(); ++i) {
        offsets.push_back(static_cast<int>(domain.size()));
        for (const auto& name : parts[i].domain)
            domain.push_back(std::to_string(i) + ":" + name);
    }

    std::vector<std::vector<Tuple>> rels(sig->size());
    for (size_t i = 0; i < parts.size(); ++i) {
        for (int sym = 0; sym < sig->size(); ++sym) {
            for (const Tuple& t : parts[i].relations[sym]) {
                Tuple shifted(t.size());
                for (size_t k = 0; k < t.size(); ++k)
                    shifted[k] = t[k] + offsets[i];
                rels[sym].push_back(std::move(shifted));
            }
        }
    }

    std::optional<std::vector<int>> order;
    if (sig->has_order()) {
        order.emplace();
        for (size_t i = 0; i < parts.size(); ++i)
            for (int x : *parts[i].order)
                order->push_back(x + offsets[i]);
    }
    return make_structure(sig, std::move(domain), std::move(rels), std::move(order));
}

Structure factor(const Structure& a, const Partition& p)
{
    std::vector<int> block_of(a.size(), -1);
    for (size_t b = 0; b < p.blocks.size(); ++b) {
        if (p.blocks[b].empty())
            fail(errc::invalid_partition, "empty block");
        for (int x : p.blocks[b]) {
            if (x < 0 || x >= a.size() || block_of[x] >= 0)
                fail(errc::invalid_partition, "blocks must disjointly cover the domain");
            block_of[x] = static_cast<int>(b);
        }
    }
    for (int x = 0; x < a.size(); ++x)
        if (block_of[x] < 0)
            fail(errc::invalid_partition, "blocks must disjointly cover the domain");

    std::vector<std::string> domain;
    for (const auto& block : p.blocks) {
        int least = *std::min_element(block.begin(), block.end());
        domain.push_back(a.domain[least]);
    }

    std::vector<std::vector<Tuple>> rels(a.sig->size());
    for (int sym = 0; sym < a.sig->size(); ++sym) {
        for (const Tuple& t : a.relations[sym]) {
            Tuple mapped(t.size());
            for (size_t i = 0; i < t.size(); ++i)
                mapped[i] = block_of[t[i]];
            rels[sym].push_back(std::move(mapped));
        }
    }
    SignaturePtr sig = with_order(a.sig, false);
    return make_structure(sig, std::move(domain), std::move(rels));
}

RootedStructure join(const std::vector<RootedStructure>& parts)
{
    if (parts.empty())
        fail(errc::empty_input, "join of no structures");
    std::vector<Structure> bare;
    bare.reserve(parts.size());
    for (const auto& p : parts)
        bare.push_back(p.structure);
    Structure s = sum(bare);

    Partition q;
    std::vector<int> roots;
    int offset = 0;
    for (const auto& p : parts) {
        roots.push_back(offset + p.root);
        offset += p.structure.size();
    }
    std::sort(roots.begin(), roots.end());
    q.blocks.push_back(roots);
    offset = 0;
    for (const auto& p : parts) {
        for (int x = 0; x < p.structure.size(); ++x)
            if (!std::binary_search(roots.begin(), roots.end(), offset + x))
                q.blocks.push_back({offset + x});
        offset += p.structure.size();
    }
    std::sort(q.blocks.begin(), q.blocks.end());

    Structure glued = factor(s, q);
    int root = glued.element_index(s.domain[roots.front()]);
    return RootedStructure{std::move(glued), root};
}

Structure reduct(const Structure& a, const std::vector<std::string>& keep, bool keep_order)
{
    std::vector<char> kept(a.sig->size(), 0);
    for (const auto& name : keep)
        kept[a.sig->require(name)] = 1;

    std::vector<Signature::Symbol> syms;
    for (int i = 0; i < a.sig->size(); ++i)
        if (kept[i])
            syms.push_back(a.sig->symbols()[i]);
    bool ordered = keep_order && a.sig->has_order();
    SignaturePtr sig = make_signature(std::move(syms), ordered);

    std::vector<std::vector<Tuple>> rels;
    for (int i = 0; i < a.sig->size(); ++i)
        if (kept[i])
            rels.push_back(a.relations[i]);
    std::optional<std::vector<int>> order;
    if (ordered)
        order = a.order;
    return make_structure(sig, a.domain, std::move(rels), std::move(order));
}

Structure base_reduct(const Structure& a, bool keep_order)
{
    std::vector<std::string> keep;
    for (const auto& s : a.sig->symbols())
        if (!s.expansion)
            keep.push_back(s.name);
    return reduct(a, keep, keep_order);
}

Structure drop_order(const Structure& a)
{
    if (!a.sig->has_order())
        return a;
    std::vector<std::string> keep;
    for (const auto& s : a.sig->symbols())
        keep.push_back(s.name);
    return reduct(a, keep, false);
}

Structure rename_elements(const Structure& a, const std::vector<std::string>& fresh_names)
{
    if (static_cast<int>(fresh_names.size()) != a.size())
        fail(errc::invalid_domain, "renaming must cover the domain exactly");
    return make_structure(a.sig, fresh_names, a.relations, a.order);
}

} // namespace forbh
