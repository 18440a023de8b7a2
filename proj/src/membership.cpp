#include <forbh/membership.hpp>

#include <forbh/hom.hpp>
#include <forbh/json_io.hpp>

#include <algorithm>
#include <set>

namespace forbh {

using nlohmann::json;

int default_bound(const ExpandedContext& ctx)
{
    int m = 0;
    for (const Structure& f : ctx.forbidden)
        m = std::max(m, f.size());
    return std::max(2 * m, 2);
}

Structure element_pattern(const Structure& a, int x, const ExpandedContext& ctx)
{
    (void)ctx;
    return drop_order(induced_substructure(a, {x}));
}

namespace {

// τ-classes marked on pattern element x
std::set<int> tau_marks(const Structure& pattern, int x, const ExpandedContext& ctx)
{
    std::set<int> out;
    for (int c = 0; c < static_cast<int>(ctx.classes.size()); ++c)
        if (pattern.has_tuple(ctx.tau_symbol(c), {x}))
            out.insert(c);
    return out;
}

json hom_json(const Structure& src, const Structure& dst, const std::vector<int>& map)
{
    json j = json::object();
    for (int i = 0; i < src.size(); ++i)
        j[src.domain[i]] = dst.domain[map[i]];
    return j;
}

PatternVerdict not_in_c(json cert)
{
    PatternVerdict v;
    v.status = membership::not_in_c;
    v.certificate = std::move(cert);
    return v;
}

} // namespace

PatternVerdict decide_pattern(const Structure& pattern, const ExpandedContext& ctx, int bound)
{
    std::string key = canonical_form(pattern);
    if (auto hit = ctx.registry_lookup(key))
        return *hit;

    PatternVerdict verdict;
    const int k = pattern.size();

    // not F-free: no witness can contain the pattern
    Structure sigma_part = base_reduct(pattern, false);
    FFreeResult ff = is_f_free(sigma_part, ctx.forbidden);
    if (!ff.f_free) {
        verdict = not_in_c({{"kind", "not_f_free"},
                            {"forbidden_index", ff.forbidden_index},
                            {"hom", hom_json(ctx.forbidden[ff.forbidden_index], pattern, ff.witness)}});
        ctx.registry_store(key, verdict);
        return verdict;
    }

    if (k == 1) {
        // too many τ-marks: a homomorphism from some E(F, m) rejects
        for (int fi = 0; fi < static_cast<int>(ctx.forbidden.size()); ++fi) {
            for (int m : cuts(ctx.forbidden[fi])) {
                Structure e = forbidden_singleton(ctx.forbidden[fi], m, ctx);
                if (auto h = first_hom(e, pattern)) {
                    verdict = not_in_c({{"kind", "e_hom"},
                                        {"forbidden_index", fi},
                                        {"cut", ctx.forbidden[fi].domain[m]},
                                        {"e", emit_structure(e)},
                                        {"hom", hom_json(e, pattern, h->map)}});
                    ctx.registry_store(key, verdict);
                    return verdict;
                }
            }
        }
    } else {
        // one-element substructures must themselves be in the class
        for (int x = 0; x < k; ++x) {
            PatternVerdict sub = decide_pattern(element_pattern(pattern, x, ctx), ctx, bound);
            if (sub.status == membership::not_in_c) {
                verdict = not_in_c({{"kind", "element"},
                                    {"element", pattern.domain[x]},
                                    {"certificate", sub.certificate}});
                ctx.registry_store(key, verdict);
                return verdict;
            }
        }
    }

    // marks forced by the pattern's own σ-part must all be present
    Structure forced = canonical_expansion(sigma_part, ctx);
    long long missing_total = 0;
    for (int x = 0; x < k; ++x) {
        std::set<int> have = tau_marks(pattern, x, ctx);
        std::set<int> need = tau_marks(forced, x, ctx);
        for (int c : need) {
            if (!have.count(c)) {
                // recover the rooted homomorphism behind the forced mark
                for (const RootedStructure& rep : ctx.classes[c].distinct_representatives) {
                    SearchConstraint sc;
                    sc.pins[rep.root] = x;
                    if (auto h = first_hom(rep.structure, sigma_part, sc)) {
                        verdict = not_in_c({{"kind", "missing_forced_mark"},
                                            {"element", pattern.domain[x]},
                                            {"class", ctx.classes[c].id},
                                            {"rooted_hom", hom_json(rep.structure, pattern, h->map)}});
                        ctx.registry_store(key, verdict);
                        return verdict;
                    }
                }
            }
        }
        // marks beyond the forced ones need witnesses with extra elements
        for (int c : have)
            if (!need.count(c))
                ++missing_total;
    }

    // bounded witness search; complete once the minimal-witness size is reached
    long long needed = k + missing_total * std::max(0, ctx.max_piece_size() - 1);
    long long limit = std::min<long long>(std::max<long long>(bound, k), needed);
    for (long long s = k; s <= limit; ++s) {
        for (const auto& [w, w_exp] : ctx.f_free_pool(static_cast<int>(s))) {
            auto embs = enumerate_embeddings(pattern, w_exp);
            if (!embs.empty()) {
                verdict.status = membership::in_c;
                verdict.witness = w;
                verdict.witness_image = embs.front().map;
                verdict.certificate = {{"kind", "witness"},
                                       {"structure", emit_structure(w)},
                                       {"image", hom_json(pattern, w_exp, embs.front().map)}};
                ctx.registry_store(key, verdict);
                return verdict;
            }
        }
    }

    if (std::max<long long>(bound, k) >= needed) {
        verdict = not_in_c({{"kind", "exhausted_complete_search"},
                            {"needed_bound", needed},
                            {"searched_to", limit}});
        ctx.registry_store(key, verdict);
        return verdict;
    }
    // bound-dependent: a later query with a larger bound may still resolve it
    verdict.status = membership::unknown;
    verdict.certificate = {{"kind", "bound_exhausted"},
                           {"bound", bound},
                           {"needed_bound", needed}};
    return verdict;
}

MembershipVerdict is_in_C(const Structure& a, const ExpandedContext& ctx, int bound,
                          bool want_certificate)
{
    if (bound <= 0)
        bound = default_bound(ctx);
    Structure unord = drop_order(a);
    if (!(*unord.sig == *ctx.expanded))
        fail(errc::signature_mismatch, "structure is not over the expanded signature");

    MembershipVerdict out;
    bool unknown = false;
    json unknown_at;

    for (int x = 0; x < unord.size(); ++x) {
        PatternVerdict v = decide_pattern(element_pattern(unord, x, ctx), ctx, bound);
        if (v.status == membership::not_in_c) {
            out.status = membership::not_in_c;
            out.certificate = {{"kind", "element"},
                               {"element", unord.domain[x]},
                               {"certificate", v.certificate}};
            return out;
        }
        if (v.status == membership::unknown && !unknown) {
            unknown = true;
            unknown_at = {{"kind", "element"}, {"element", unord.domain[x]},
                          {"certificate", v.certificate}};
        }
    }
    for (int sym = 0; sym < unord.sig->size(); ++sym) {
        if (unord.sig->is_expansion(sym))
            continue;
        for (const Tuple& t : unord.relations[sym]) {
            Structure trace = tuple_trace(unord, unord.sig->name(sym), t);
            PatternVerdict v = decide_pattern(trace, ctx, bound);
            json where = {{"kind", "trace"}, {"symbol", unord.sig->name(sym)},
                          {"tuple", [&] {
                               json arr = json::array();
                               for (int x : t)
                                   arr.push_back(unord.domain[x]);
                               return arr;
                           }()}};
            if (v.status == membership::not_in_c) {
                where["certificate"] = v.certificate;
                out.status = membership::not_in_c;
                out.certificate = where;
                return out;
            }
            if (v.status == membership::unknown && !unknown) {
                unknown = true;
                where["certificate"] = v.certificate;
                unknown_at = where;
            }
        }
    }

    if (unknown) {
        out.status = membership::unknown;
        out.certificate = unknown_at;
        return out;
    }

    out.status = membership::in_c;
    if (want_certificate) {
        Structure canon = canonize(unord, ctx, bound);
        Structure canon_sigma = base_reduct(canon, false);
        Structure reexpanded = canonical_expansion(canon_sigma, ctx);
        std::vector<int> embed(unord.size());
        for (int x = 0; x < unord.size(); ++x)
            embed[x] = canon.element_index("0:" + unord.domain[x]);
        bool ok = reexpanded == canon;
        for (int x : embed)
            ok = ok && x >= 0;
        ok = ok && is_embedding_map(unord, canon, embed);
        if (!ok)
            fail(errc::membership_failure, "canonical superstructure failed re-verification");
        out.certificate = {{"kind", "canonical_superstructure"},
                           {"structure", emit_structure(canon)},
                           {"embedding", hom_json(unord, canon, embed)}};
    }
    return out;
}

MembershipVerdict is_in_ordered_class(const Structure& a, const ExpandedContext& ctx, int bound)
{
    if (!a.sig->has_order() || !a.order)
        fail(errc::invalid_order, "membership in the ordered class needs an ordered structure");
    return is_in_C(drop_order(a), ctx, bound);
}

Structure canonize(const Structure& a, const ExpandedContext& ctx, int bound)
{
    if (bound <= 0)
        bound = default_bound(ctx);
    Structure unord = drop_order(a);

    std::vector<Structure> parts{unord};
    std::vector<int> glue_target; // per element of a: witness element index in its expansion
    for (int x = 0; x < unord.size(); ++x) {
        PatternVerdict v = decide_pattern(element_pattern(unord, x, ctx), ctx, bound);
        if (v.status != membership::in_c)
            fail(errc::premise_unresolved,
                 "one-element substructure not resolved as a class member",
                 {{"element", unord.domain[x]}, {"status", membership_name(v.status)},
                  {"certificate", v.certificate}});
        parts.push_back(canonical_expansion(*v.witness, ctx));
        glue_target.push_back(v.witness_image.front());
    }

    Structure s = sum(parts);
    std::vector<int> offsets(parts.size());
    int off = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
        offsets[i] = off;
        off += parts[i].size();
    }

    Partition p;
    std::vector<char> taken(s.size(), 0);
    for (int x = 0; x < unord.size(); ++x) {
        std::vector<int> block{offsets[0] + x, offsets[x + 1] + glue_target[x]};
        std::sort(block.begin(), block.end());
        taken[block[0]] = taken[block[1]] = 1;
        p.blocks.push_back(std::move(block));
    }
    for (int i = 0; i < s.size(); ++i)
        if (!taken[i])
            p.blocks.push_back({i});
    std::sort(p.blocks.begin(), p.blocks.end());
    return factor(s, p);
}

AmalgamResult free_amalgam(const Structure& a, const Structure& b1, const Structure& b2,
                           const Morphism& f1, const Morphism& f2, const ExpandedContext& ctx,
                           int bound)
{
    if (bound <= 0)
        bound = default_bound(ctx);
    require_same_signature(a, b1);
    require_same_signature(a, b2);
    bool ordered = a.sig->has_order();

    if (!is_embedding_map(a, b1, f1.map))
        fail(errc::not_embedding, "f1 is not an embedding of the base into the left side");
    if (!is_embedding_map(a, b2, f2.map))
        fail(errc::not_embedding, "f2 is not an embedding of the base into the right side");

    const char* roles[3] = {"base", "left", "right"};
    const Structure* inputs[3] = {&a, &b1, &b2};
    for (int i = 0; i < 3; ++i) {
        MembershipVerdict v = is_in_C(drop_order(*inputs[i]), ctx, bound);
        if (v.status != membership::in_c)
            fail(errc::membership_failure, "input structure is not a verified class member",
                 {{"role", roles[i]}, {"status", membership_name(v.status)},
                  {"certificate", v.certificate}});
    }

    Structure s = sum({drop_order(b1), drop_order(b2)});
    int off2 = b1.size();

    Partition p;
    std::vector<int> block_of(s.size(), -1);
    for (int x = 0; x < a.size(); ++x) {
        std::vector<int> block{f1.map[x], off2 + f2.map[x]};
        p.blocks.push_back(block);
    }
    std::vector<char> taken(s.size(), 0);
    for (auto& b : p.blocks)
        for (int x : b)
            taken[x] = 1;
    for (int i = 0; i < s.size(); ++i)
        if (!taken[i])
            p.blocks.push_back({i});
    std::sort(p.blocks.begin(), p.blocks.end());

    Structure c = factor(s, p);
    for (size_t bi = 0; bi < p.blocks.size(); ++bi)
        for (int x : p.blocks[bi])
            block_of[x] = static_cast<int>(bi);

    Morphism g1{std::vector<int>(b1.size()), morphism_kind::embedding};
    Morphism g2{std::vector<int>(b2.size()), morphism_kind::embedding};
    for (int x = 0; x < b1.size(); ++x)
        g1.map[x] = block_of[x];
    for (int x = 0; x < b2.size(); ++x)
        g2.map[x] = block_of[off2 + x];

    if (ordered) {
        // linear extension of the union of the two orders (Kahn, least name first)
        std::vector<std::vector<int>> succ(c.size());
        std::vector<int> indeg(c.size(), 0);
        auto add_chain = [&](const Structure& b, const Morphism& g) {
            const auto& ord = *b.order;
            for (size_t i = 0; i + 1 < ord.size(); ++i) {
                succ[g.map[ord[i]]].push_back(g.map[ord[i + 1]]);
                ++indeg[g.map[ord[i + 1]]];
            }
        };
        add_chain(b1, g1);
        add_chain(b2, g2);

        std::vector<int> order;
        std::set<std::pair<std::string, int>> avail;
        for (int i = 0; i < c.size(); ++i)
            if (indeg[i] == 0)
                avail.insert({c.domain[i], i});
        while (!avail.empty()) {
            auto [name, i] = *avail.begin();
            avail.erase(avail.begin());
            order.push_back(i);
            for (int j : succ[i])
                if (--indeg[j] == 0)
                    avail.insert({c.domain[j], j});
        }
        if (static_cast<int>(order.size()) != c.size())
            fail(errc::not_embedding, "the two orders are incompatible over the base");
        c = make_structure(with_order(c.sig, true), c.domain, c.relations, order);
    }

    if (!is_embedding_map(b1, c, g1.map) || !is_embedding_map(b2, c, g2.map))
        fail(errc::membership_failure, "amalgam sides failed to embed"); // never expected
    for (int x = 0; x < a.size(); ++x)
        if (g1.map[f1.map[x]] != g2.map[f2.map[x]])
            fail(errc::membership_failure, "amalgam square does not commute"); // never expected

    MembershipVerdict v = is_in_C(drop_order(c), ctx, bound);
    if (v.status != membership::in_c)
        fail(errc::membership_failure, "amalgam failed the membership criterion",
             {{"status", membership_name(v.status)}, {"certificate", v.certificate}});

    return AmalgamResult{std::move(c), std::move(g1), std::move(g2)};
}

} // namespace forbh
