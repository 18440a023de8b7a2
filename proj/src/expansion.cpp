#include <forbh/expansion.hpp>

#include <forbh/enumerate.hpp>
#include <forbh/graphs.hpp>
#include <forbh/hom.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace forbh {

const char* membership_name(membership m)
{
    switch (m) {
    case membership::in_c: return "InC";
    case membership::not_in_c: return "NotInC";
    case membership::unknown: return "Unknown";
    }
    return "?";
}

std::vector<int> cuts(const Structure& f)
{
    if (!is_tree(f))
        fail(errc::not_a_tree, "cuts are only defined for trees");
    std::vector<int> count(f.size(), 0);
    for (int sym = 0; sym < f.sig->size(); ++sym)
        for (const Tuple& t : f.relations[sym])
            for (int x : t)
                ++count[x]; // trees never repeat an element within a tuple
    std::vector<int> out;
    for (int x = 0; x < f.size(); ++x)
        if (count[x] >= 2)
            out.push_back(x);
    return out;
}

std::vector<Piece> pieces(const Structure& f, int m, int tree_index)
{
    std::vector<int> cs = cuts(f);
    if (std::find(cs.begin(), cs.end(), m) == cs.end())
        fail(errc::not_a_cut, "element is not a cut",
             {{"element", m >= 0 && m < f.size() ? f.domain[m] : "?"}});

    std::vector<Piece> out;
    for (const auto& comp : gaifman_components_without(f, m)) {
        std::vector<int> members = comp;
        members.push_back(m);
        Structure sub = induced_substructure(f, members);
        int root = sub.element_index(f.domain[m]);
        out.push_back(Piece{RootedStructure{std::move(sub), root}, tree_index, m});
    }
    return out;
}

std::vector<RootedStructure> incompatibility_set(const RootedStructure& p,
                                                 const std::vector<Structure>& forbidden)
{
    std::map<std::string, RootedStructure> found;
    for (const Structure& f : forbidden) {
        for (int v = 0; v < f.size(); ++v) {
            auto comps = gaifman_components_without(f, v);
            int nc = static_cast<int>(comps.size());
            if (nc > 20)
                fail(errc::search_budget_exhausted, "too many components at one vertex");
            // every split of the components into a candidate side and a remainder
            for (unsigned mask = 0; mask < (1u << nc); ++mask) {
                std::vector<int> side{v};
                for (int i = 0; i < nc; ++i)
                    if (mask & (1u << i))
                        side.insert(side.end(), comps[i].begin(), comps[i].end());
                Structure cand = induced_substructure(f, side);
                RootedStructure candidate{cand, cand.element_index(f.domain[v])};
                if (candidate.structure.size() != p.structure.size())
                    continue;
                if (!isomorphic_rooted(candidate, p))
                    continue;
                std::vector<int> rest{v};
                for (int i = 0; i < nc; ++i)
                    if (!(mask & (1u << i)))
                        rest.insert(rest.end(), comps[i].begin(), comps[i].end());
                Structure rem = induced_substructure(f, rest);
                RootedStructure partner{rem, rem.element_index(f.domain[v])};
                found.emplace(canonical_form_rooted(partner), std::move(partner));
            }
        }
    }
    std::vector<RootedStructure> out;
    out.reserve(found.size());
    for (auto& [key, rs] : found)
        out.push_back(std::move(rs));
    return out;
}

namespace {

std::string pick_tau_prefix(const Signature& sigma, size_t count)
{
    for (const char* prefix : {"S", "T", "S_", "tau"}) {
        bool clash = false;
        for (size_t i = 0; i < count && !clash; ++i)
            clash = sigma.index_of(std::string(prefix) + std::to_string(i)) >= 0;
        if (!clash)
            return prefix;
    }
    return "tau_";
}

} // namespace

ExpandedContext piece_classes(SignaturePtr sigma, std::vector<Structure> forbidden)
{
    if (sigma->has_order())
        fail(errc::schema_error, "the base signature must be unordered");
    for (size_t i = 0; i < forbidden.size(); ++i) {
        if (!(*forbidden[i].sig == *sigma))
            fail(errc::signature_mismatch, "forbidden structure over a different signature",
                 {{"index", i}});
        if (!is_tree(forbidden[i]))
            fail(errc::not_a_tree, "forbidden structure is not a tree", {{"index", i}});
    }

    ExpandedContext ctx;
    ctx.sigma = sigma;
    ctx.forbidden = std::move(forbidden);

    // group all pieces of all trees by their incompatibility fingerprint
    std::map<std::vector<std::string>, PieceClass> by_key;
    for (int fi = 0; fi < static_cast<int>(ctx.forbidden.size()); ++fi) {
        const Structure& f = ctx.forbidden[fi];
        for (int m : cuts(f)) {
            for (Piece& p : pieces(f, m, fi)) {
                auto inc = incompatibility_set(p.rooted, ctx.forbidden);
                std::vector<std::string> key;
                key.reserve(inc.size());
                for (const auto& rs : inc)
                    key.push_back(canonical_form_rooted(rs));
                PieceClass& cls = by_key[key];
                if (cls.incompatibility_key.empty()) {
                    cls.incompatibility_key = key;
                    cls.incompatibility_set = std::move(inc);
                }
                cls.representatives.push_back(std::move(p));
            }
        }
    }

    std::string prefix = pick_tau_prefix(*sigma, by_key.size());
    int index = 0;
    for (auto& [key, cls] : by_key) {
        cls.id = prefix + std::to_string(index++);
        std::set<std::string> seen;
        for (const Piece& p : cls.representatives) {
            if (seen.insert(canonical_form_rooted(p.rooted)).second)
                cls.distinct_representatives.push_back(p.rooted);
            ctx.max_piece_size_ = std::max(ctx.max_piece_size_, p.rooted.structure.size());
        }
        ctx.classes.push_back(std::move(cls));
    }

    std::vector<Signature::Symbol> symbols = sigma->symbols();
    for (const PieceClass& cls : ctx.classes)
        symbols.push_back({cls.id, 1, true});
    ctx.expanded = make_signature(std::move(symbols), false);
    return ctx;
}

ContextPtr make_context(SignaturePtr sigma, std::vector<Structure> forbidden)
{
    return std::make_shared<const ExpandedContext>(piece_classes(sigma, std::move(forbidden)));
}

int ExpandedContext::tau_symbol(int class_index) const
{
    return expanded->require(classes[class_index].id);
}

int ExpandedContext::class_of_symbol(int sym) const
{
    if (!expanded->is_expansion(sym))
        return -1;
    for (int c = 0; c < static_cast<int>(classes.size()); ++c)
        if (classes[c].id == expanded->name(sym))
            return c;
    return -1;
}

void ExpandedContext::registry_store(const std::string& key, const PatternVerdict& v) const
{
    std::lock_guard<std::mutex> lock(cache_->mutex);
    cache_->registry.emplace(key, v); // idempotent: first verdict wins
}

std::optional<PatternVerdict> ExpandedContext::registry_lookup(const std::string& key) const
{
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->registry.find(key);
    if (it == cache_->registry.end())
        return std::nullopt;
    return it->second;
}

std::vector<std::pair<std::string, PatternVerdict>> ExpandedContext::registry_snapshot() const
{
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return {cache_->registry.begin(), cache_->registry.end()};
}

const std::vector<std::pair<Structure, Structure>>& ExpandedContext::f_free_pool(int n) const
{
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->pools.find(n);
        if (it != cache_->pools.end())
            return it->second;
    }
    auto reps = all_structures_up_to_iso(sigma, n, [&](const Structure& s) {
        return is_f_free(s, forbidden).f_free;
    });
    std::vector<std::pair<Structure, Structure>> pool;
    pool.reserve(reps.size());
    for (Structure& w : reps) {
        Structure expanded_w = canonical_expansion(w, *this);
        pool.emplace_back(std::move(w), std::move(expanded_w));
    }
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return cache_->pools.emplace(n, std::move(pool)).first->second;
}

Structure canonical_expansion(const Structure& a, const ExpandedContext& ctx)
{
    if (!(*a.sig == *ctx.sigma))
        fail(errc::signature_mismatch, "canonical expansion expects a bare σ-structure");
    FFreeResult ff = is_f_free(a, ctx.forbidden);
    if (!ff.f_free) {
        nlohmann::json hom = nlohmann::json::object();
        const Structure& f = ctx.forbidden[ff.forbidden_index];
        for (int i = 0; i < f.size(); ++i)
            hom[f.domain[i]] = a.domain[ff.witness[i]];
        fail(errc::not_f_free, "structure admits a forbidden homomorphism",
             {{"forbidden_index", ff.forbidden_index}, {"hom", hom}});
    }

    std::vector<std::vector<Tuple>> rels(ctx.expanded->size());
    for (int sym = 0; sym < ctx.sigma->size(); ++sym)
        rels[ctx.expanded->require(ctx.sigma->name(sym))] = a.relations[sym];

    for (int c = 0; c < static_cast<int>(ctx.classes.size()); ++c) {
        int sym = ctx.tau_symbol(c);
        for (int x = 0; x < a.size(); ++x) {
            for (const RootedStructure& rep : ctx.classes[c].distinct_representatives) {
                if (exists_rooted_hom(rep, a, x)) {
                    rels[sym].push_back({x});
                    break;
                }
            }
        }
    }
    Structure out = make_structure(ctx.expanded, a.domain, std::move(rels));

    // remember every realized one-element type with this witness
    for (int x = 0; x < out.size(); ++x) {
        Structure pattern = induced_substructure(out, {x});
        std::string key = canonical_form(pattern);
        if (!ctx.registry_lookup(key)) {
            PatternVerdict v;
            v.status = membership::in_c;
            v.certificate = {{"kind", "witness"}, {"element", a.domain[x]}};
            v.witness = a;
            v.witness_image = {x};
            ctx.registry_store(key, v);
        }
    }
    return out;
}

Structure tuple_trace(const Structure& a, const std::string& symbol, const Tuple& t)
{
    int sym = a.sig->require(symbol);
    if (a.sig->is_expansion(sym))
        fail(errc::unknown_symbol, "tuple traces are taken over base symbols only");
    if (!a.has_tuple(sym, t))
        fail(errc::tuple_not_present, "tuple not present in the relation",
             {{"symbol", symbol}});

    int k = static_cast<int>(t.size());
    std::vector<std::string> domain;
    for (int i = 1; i <= k; ++i)
        domain.push_back(std::to_string(i));

    std::vector<std::vector<Tuple>> rels(a.sig->size());
    Tuple full(k);
    for (int i = 0; i < k; ++i)
        full[i] = i;
    rels[sym].push_back(full);
    for (int s = 0; s < a.sig->size(); ++s) {
        if (!a.sig->is_expansion(s) && a.sig->arity(s) != 1)
            continue; // non-unary σ-relations other than the traced one stay empty
        for (int i = 0; i < k; ++i)
            if (a.has_tuple(s, Tuple{t[i]}))
                rels[s].push_back({i});
    }
    SignaturePtr sig = with_order(a.sig, false);
    return make_structure(sig, std::move(domain), std::move(rels));
}

Structure forbidden_singleton(const Structure& f, int m, const ExpandedContext& ctx)
{
    std::vector<Piece> ps = pieces(f, m); // validates tree + cut

    // a class contains the piece iff the incompatibility fingerprints agree
    std::set<std::vector<std::string>> piece_keys;
    for (const Piece& p : ps) {
        auto inc = incompatibility_set(p.rooted, ctx.forbidden);
        std::vector<std::string> key;
        key.reserve(inc.size());
        for (const auto& rs : inc)
            key.push_back(canonical_form_rooted(rs));
        piece_keys.insert(std::move(key));
    }

    std::vector<std::vector<Tuple>> rels(ctx.expanded->size());
    for (int c = 0; c < static_cast<int>(ctx.classes.size()); ++c)
        if (piece_keys.count(ctx.classes[c].incompatibility_key))
            rels[ctx.tau_symbol(c)].push_back({0});
    return make_structure(ctx.expanded, {"1"}, std::move(rels));
}

} // namespace forbh
