#include <forbh/construction.hpp>

#include <forbh/hom.hpp>
#include <forbh/json_io.hpp>
#include <forbh/verify.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace forbh {

using nlohmann::json;

namespace {

std::vector<int> order_ranks(const Structure& s)
{
    std::vector<int> rank(s.size(), 0);
    if (s.order)
        for (int k = 0; k < s.size(); ++k)
            rank[(*s.order)[k]] = k;
    return rank;
}

unsigned long long checked_mul(unsigned long long a, unsigned long long b, const char* what)
{
    const unsigned long long cap = 1ull << 62;
    if (b != 0 && a > cap / b)
        fail(errc::search_budget_exhausted, std::string(what) + " exceeds desk scale");
    return a * b;
}

unsigned long long binomial(long long n, long long k, const char* what)
{
    if (k < 0 || k > n)
        return 0;
    unsigned long long out = 1;
    for (long long i = 1; i <= k; ++i)
        out = checked_mul(out, static_cast<unsigned long long>(n - k + i), what) / i;
    return out;
}

} // namespace

C0Result build_c0(const Structure& p, const Structure& b, const ExpandedContext& ctx, int bound)
{
    if (!(*p.sig == *ctx.sigma_ordered()))
        fail(errc::signature_mismatch, "the indexing structure must be an ordered σ-structure");
    if (!(*b.sig == *ctx.expanded_ordered()))
        fail(errc::signature_mismatch, "B must be an ordered structure over the expanded signature");
    MembershipVerdict vb = is_in_ordered_class(b, ctx, bound);
    if (vb.status != membership::in_c)
        fail(errc::not_in_class, "B is not a verified member of the ordered class",
             {{"status", membership_name(vb.status)}});

    Structure b_star = base_reduct(b, true);
    std::vector<Morphism> copies = enumerate_embeddings(b_star, p);

    const int nb = b.size();
    std::vector<std::string> domain;
    std::vector<int> part;
    for (size_t i = 0; i < copies.size(); ++i)
        for (int x = 0; x < nb; ++x) {
            domain.push_back(std::to_string(i) + ":" + b.domain[x]);
            part.push_back(copies[i].map[x]);
        }

    std::vector<std::vector<Tuple>> rels(b.sig->size());
    for (int sym = 0; sym < b.sig->size(); ++sym)
        for (size_t i = 0; i < copies.size(); ++i)
            for (const Tuple& t : b.relations[sym]) {
                Tuple shifted(t.size());
                for (size_t j = 0; j < t.size(); ++j)
                    shifted[j] = static_cast<int>(i) * nb + t[j];
                rels[sym].push_back(std::move(shifted));
            }

    std::vector<int> prank = order_ranks(p), brank = order_ranks(b);
    std::vector<int> order(domain.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int u, int v) {
        int cu = u / nb, xu = u % nb, cv = v / nb, xv = v % nb;
        return std::tuple(prank[part[u]], cu, brank[xu]) <
               std::tuple(prank[part[v]], cv, brank[xv]);
    });

    Structure carrier = make_structure(b.sig, std::move(domain), std::move(rels), order);
    C0Result out;
    out.c0 = PartiteStructure{std::move(carrier), p, std::move(part), partite_mode::p_partite};
    check_p_partite(out.c0);
    out.p_copies_of_b = std::move(copies);
    for (size_t i = 0; i < out.p_copies_of_b.size(); ++i) {
        Morphism c_f{std::vector<int>(nb), morphism_kind::embedding};
        for (int x = 0; x < nb; ++x)
            c_f.map[x] = static_cast<int>(i) * nb + x;
        out.distinguished.push_back(std::move(c_f));
    }
    return out;
}

PartiteStep partite_step(const PartiteStructure& c_prev, const Morphism& e_k, int k,
                         const Structure& a, const ExpandedContext& ctx,
                         const ConstructionOptions& opt)
{
    int bound = opt.bound > 0 ? opt.bound : default_bound(ctx);
    PartiteStep step;
    step.k = k;
    step.e_k = e_k;

    PartiteStructure a_partite{a, c_prev.index, e_k.map, partite_mode::transversal};
    if (!partite_embedding_exists(a_partite, c_prev)) {
        step.trivial = true;
        step.c = c_prev;
        return step;
    }
    step.trivial = false;

    auto art = std::make_shared<StepArtifacts>();
    art->d = rectify(c_prev, ctx, bound, opt.verify_steps);
    art->b_k = rectified_substructure(art->d, a_partite);

    art->b_k_selection.resize(art->b_k.carrier.size());
    for (int i = 0; i < art->b_k.carrier.size(); ++i)
        art->b_k_selection[i] = art->d.carrier.element_index(art->b_k.carrier.domain[i]);

    PartiteLemmaResult lemma = partite_lemma(a, art->b_k, opt.r, ctx, bound);
    art->e_k = std::move(lemma.e);
    art->lemma_levels = std::move(lemma.levels);

    // up-front size report before the gluing is materialized
    std::map<std::string, long long> b_sizes;
    for (int i = 0; i < a.size(); ++i)
        b_sizes[a.domain[i]] = 0;
    for (int p : art->b_k.part)
        ++b_sizes[a.domain[p]];
    unsigned long long copy_count = 1;
    for (const auto& [name, e_size] : lemma.e_sizes)
        copy_count = checked_mul(copy_count,
                                 binomial(e_size, b_sizes[name], "copy count"), "copy count");
    unsigned long long predicted =
        art->e_k.carrier.size() +
        checked_mul(copy_count,
                    static_cast<unsigned long long>(art->d.carrier.size() - art->b_k.carrier.size()),
                    "glued size");
    if (predicted > static_cast<unsigned long long>(opt.max_size))
        fail(errc::search_budget_exhausted, "construction step exceeds the size budget",
             {{"step", k}, {"predicted_size", predicted}, {"max_size", opt.max_size},
              {"copies", copy_count}});

    art->copies = partite_embeddings(art->b_k, art->e_k);

    const Structure& dc = art->d.carrier;
    const Structure& ec = art->e_k.carrier;
    const int nd = dc.size(), ne = ec.size();

    std::vector<int> sel_index(nd, -1); // d element -> b_k element
    for (int i = 0; i < art->b_k.carrier.size(); ++i)
        sel_index[art->b_k_selection[i]] = i;

    std::vector<std::string> domain;
    std::vector<int> part;
    for (int y = 0; y < ne; ++y) {
        domain.push_back(ec.domain[y]);
        part.push_back(e_k.map[art->e_k.part[y]]);
    }
    art->e_inclusion.resize(ne);
    for (int y = 0; y < ne; ++y)
        art->e_inclusion[y] = y;

    art->lambda.assign(art->copies.size(), std::vector<int>(nd, -1));
    for (size_t g = 0; g < art->copies.size(); ++g) {
        for (int x = 0; x < nd; ++x) {
            if (sel_index[x] >= 0) {
                art->lambda[g][x] = art->copies[g].map[sel_index[x]];
            } else {
                art->lambda[g][x] = static_cast<int>(domain.size());
                domain.push_back("g" + std::to_string(g) + ":" + dc.domain[x]);
                part.push_back(art->d.part[x]);
            }
        }
    }

    std::vector<std::vector<Tuple>> rels(dc.sig->size());
    for (int sym = 0; sym < dc.sig->size(); ++sym)
        for (size_t g = 0; g < art->copies.size(); ++g)
            for (const Tuple& t : dc.relations[sym]) {
                Tuple image(t.size());
                for (size_t i = 0; i < t.size(); ++i)
                    image[i] = art->lambda[g][t[i]];
                rels[sym].push_back(std::move(image));
            }

    // ⪯^{C_k}: parts in ⪯^P order; inside one part the E elements keep their
    // order and each fresh element slots in after the image of the last B_k
    // element lying ⪯^D-below it, then by copy tag and ⪯^D position.
    const Structure& p_struct = c_prev.index;
    std::vector<int> prank = order_ranks(p_struct), drank = order_ranks(dc), erank = order_ranks(ec);

    std::vector<int> e_pos_in_part(ne, 0);
    {
        std::map<int, std::vector<int>> e_by_part;
        for (int y = 0; y < ne; ++y)
            e_by_part[part[y]].push_back(y);
        for (auto& [pp, list] : e_by_part) {
            std::sort(list.begin(), list.end(), [&](int u, int v) { return erank[u] < erank[v]; });
            for (size_t i = 0; i < list.size(); ++i)
                e_pos_in_part[list[i]] = static_cast<int>(i) + 1;
        }
    }
    std::map<int, std::vector<int>> b_by_part; // d elements of B_k per part, ⪯^D-sorted
    for (int i = 0; i < art->b_k.carrier.size(); ++i)
        b_by_part[art->d.part[art->b_k_selection[i]]].push_back(art->b_k_selection[i]);
    for (auto& [pp, list] : b_by_part)
        std::sort(list.begin(), list.end(), [&](int u, int v) { return drank[u] < drank[v]; });

    const int total = static_cast<int>(domain.size());
    std::vector<std::tuple<int, int, int, int, int>> key(total);
    for (int y = 0; y < ne; ++y)
        key[y] = {prank[part[y]], e_pos_in_part[y], 0, 0, 0};
    for (size_t g = 0; g < art->copies.size(); ++g)
        for (int x = 0; x < nd; ++x) {
            if (sel_index[x] >= 0)
                continue;
            int z = art->lambda[g][x];
            int below = 0;
            const auto& blist = b_by_part[art->d.part[x]];
            for (int bx : blist)
                if (drank[bx] < drank[x])
                    ++below;
            int slot = 0;
            if (below > 0) {
                int b_elt = blist[below - 1];
                slot = e_pos_in_part[art->lambda[g][b_elt]];
            }
            key[z] = {prank[part[z]], slot, 1, static_cast<int>(g), drank[x]};
        }
    std::vector<int> order(total);
    for (int i = 0; i < total; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](int u, int v) { return key[u] < key[v]; });

    Structure carrier = make_structure(dc.sig, std::move(domain), std::move(rels), order);
    step.c = PartiteStructure{std::move(carrier), p_struct, std::move(part), partite_mode::p_partite};
    step.artifacts = art;

    if (opt.verify_steps) {
        check_p_partite(step.c);
        MembershipVerdict v = is_in_ordered_class(step.c.carrier, ctx, bound);
        if (v.status != membership::in_c)
            fail(errc::membership_failure, "construction step left the class",
                 {{"step", k}, {"status", membership_name(v.status)}});
        for (size_t g = 0; g < art->copies.size(); ++g) {
            const auto& row = art->lambda[g];
            if (!is_embedding_map(dc, step.c.carrier, row))
                fail(errc::membership_failure, "copy map is not an embedding of the rectified host");
            if (!is_homomorphism(c_prev.carrier, step.c.carrier, row))
                fail(errc::membership_failure, "copy map is not a homomorphism of the previous stage");
            for (int x = 0; x < nd; ++x)
                if (step.c.part[row[x]] != art->d.part[x])
                    fail(errc::membership_failure, "copy map does not preserve parts");
        }
    }
    return step;
}

Structure find_partner_p(const Structure& a_star, const Structure& b_star, long long r,
                         const PartnerOptions& opt)
{
    require_same_signature(a_star, b_star);
    if (!a_star.order || !b_star.order)
        fail(errc::invalid_order, "partner search needs ordered structures");
    if (r < 1)
        fail(errc::invalid_partition, "colour count must be positive");

    if (r == 1 || enumerate_embeddings(a_star, b_star).empty())
        return b_star;

    std::vector<int> brank = order_ranks(b_star);
    std::vector<int> b_sorted(b_star.size());
    for (int i = 0; i < b_star.size(); ++i)
        b_sorted[brank[i]] = i; // position -> element... inverted below
    std::vector<int> by_rank(b_star.size());
    for (int x = 0; x < b_star.size(); ++x)
        by_rank[brank[x]] = x;

    for (int s = std::max(1, b_star.size()); s <= opt.max_candidate_size; ++s) {
        // saturated candidate: a copy of B* on every order-preserving injection
        std::vector<std::string> domain;
        for (int i = 0; i < s; ++i)
            domain.push_back("p" + std::to_string(i));
        std::vector<std::vector<Tuple>> rels(a_star.sig->size());

        std::vector<int> comb(b_star.size());
        for (size_t i = 0; i < comb.size(); ++i)
            comb[i] = static_cast<int>(i);
        bool more = !comb.empty() || b_star.size() == 0;
        while (more) {
            std::vector<int> place(b_star.size());
            for (int i = 0; i < b_star.size(); ++i)
                place[by_rank[i]] = comb[i];
            for (int sym = 0; sym < b_star.sig->size(); ++sym)
                for (const Tuple& t : b_star.relations[sym]) {
                    Tuple image(t.size());
                    for (size_t j = 0; j < t.size(); ++j)
                        image[j] = place[t[j]];
                    rels[sym].push_back(std::move(image));
                }
            if (comb.empty())
                break;
            int i = static_cast<int>(comb.size()) - 1;
            while (i >= 0 && comb[i] == s - static_cast<int>(comb.size()) + i)
                --i;
            if (i < 0)
                break;
            ++comb[i];
            for (size_t j = i + 1; j < comb.size(); ++j)
                comb[j] = comb[j - 1] + 1;
        }

        std::vector<int> order(s);
        for (int i = 0; i < s; ++i)
            order[i] = i;
        Structure candidate = make_structure(a_star.sig, std::move(domain), std::move(rels), order);

        ArrowInstance inst{{candidate, std::nullopt}, {b_star, std::nullopt}, {a_star, std::nullopt}, r};
        ArrowVerdict verdict = arrow_check(inst, opt.arrow_budget);
        if (verdict.status == arrow_status::verified)
            return candidate;
        if (verdict.status == arrow_status::infeasible)
            fail(errc::search_budget_exhausted, "partner certification exceeds the colouring budget",
                 {{"size", s}, {"colorings", verdict.colorings_total}});
    }
    fail(errc::search_budget_exhausted, "no partner structure found within the size budget",
         {{"size", opt.max_candidate_size}});
}

ConstructionResult partite_construction(const Structure& a, const Structure& b,
                                        std::optional<Structure> p, const ExpandedContext& ctx,
                                        const ConstructionOptions& opt)
{
    int bound = opt.bound > 0 ? opt.bound : default_bound(ctx);
    if (!(*a.sig == *ctx.expanded_ordered()) || !(*b.sig == *ctx.expanded_ordered()))
        fail(errc::signature_mismatch, "A and B must be ordered structures over the expanded signature");
    for (const Structure* s : {&a, &b}) {
        MembershipVerdict v = is_in_ordered_class(*s, ctx, bound);
        if (v.status != membership::in_c)
            fail(errc::not_in_class, "input is not a verified member of the ordered class",
                 {{"status", membership_name(v.status)}});
    }

    Structure a_star = base_reduct(a, true);
    Structure b_star = base_reduct(b, true);

    ConstructionResult out;
    out.a = a;
    out.b = b;
    if (p) {
        if (!(*p->sig == *ctx.sigma_ordered()))
            fail(errc::signature_mismatch, "P must be an ordered σ-structure");
        ArrowInstance inst{{*p, std::nullopt}, {b_star, std::nullopt}, {a_star, std::nullopt}, opt.r};
        ArrowVerdict verdict = arrow_check(inst, opt.arrow_budget);
        if (verdict.status == arrow_status::refuted)
            fail(errc::partner_search_exhausted, "supplied partner structure fails the arrow property",
                 {{"counterexample_index", verdict.counterexample_index}});
        if (verdict.status == arrow_status::infeasible)
            fail(errc::partner_search_exhausted, "supplied partner structure cannot be certified within budget",
                 {{"colorings", verdict.colorings_total}});
        out.p = *p;
    } else {
        try {
            out.p = find_partner_p(a_star, b_star, opt.r, PartnerOptions{12, opt.arrow_budget});
        } catch (const error& e) {
            if (e.code() == errc::search_budget_exhausted)
                fail(errc::partner_search_exhausted, e.what(), e.detail());
            throw;
        }
    }

    out.c0 = build_c0(out.p, b, ctx, bound);
    out.a_embeddings = enumerate_embeddings(a_star, out.p);

    PartiteStructure current = out.c0.c0;
    for (size_t j = 0; j < out.a_embeddings.size(); ++j) {
        PartiteStep step = partite_step(current, out.a_embeddings[j], static_cast<int>(j) + 1,
                                         a, ctx, opt);
        current = step.c;
        out.steps.push_back(std::move(step));
    }
    out.c = current;

    // default h-chain: first recorded copy in every nontrivial step
    for (const PartiteStep& step : out.steps) {
        if (step.trivial) {
            std::vector<int> id(step.c.carrier.size());
            for (size_t i = 0; i < id.size(); ++i)
                id[i] = static_cast<int>(i);
            out.h_chain.push_back(std::move(id));
        } else {
            out.h_chain.push_back(step.artifacts->lambda.front());
        }
    }

    for (const Morphism& c_f : out.c0.distinguished) {
        std::vector<int> composed = c_f.map;
        for (const auto& h : out.h_chain)
            for (int& v : composed)
                v = h[v];
        if (!is_embedding_map(b, out.c.carrier, composed))
            fail(errc::membership_failure, "distinguished copy failed to re-verify as an embedding");
        out.distinguished_in_c.push_back(Morphism{std::move(composed), morphism_kind::embedding});
    }

    out.c_membership = is_in_ordered_class(out.c.carrier, ctx, bound);
    if (out.c_membership.status != membership::in_c)
        fail(errc::membership_failure, "the constructed structure is not a verified class member",
             {{"status", membership_name(out.c_membership.status)}});
    return out;
}

ReplayResult replay_coloring(const ConstructionResult& cr, const Structure& a,
                             const Structure& b, long long r,
                             const std::function<int(const Morphism&)>& chi)
{
    ReplayResult out;
    const int n_c = cr.c.carrier.size();
    std::vector<int> suffix(n_c);
    for (int i = 0; i < n_c; ++i)
        suffix[i] = i;

    auto compose_with_suffix = [&](const std::vector<int>& q_map,
                                   const std::vector<int>& incl) {
        Morphism m{std::vector<int>(q_map.size()), morphism_kind::embedding};
        for (size_t i = 0; i < q_map.size(); ++i)
            m.map[i] = suffix[incl[q_map[i]]];
        return m;
    };

    for (int k = static_cast<int>(cr.steps.size()) - 1; k >= 0; --k) {
        const PartiteStep& step = cr.steps[k];
        if (step.trivial)
            continue;
        const StepArtifacts& art = *step.artifacts;

        // sections of B_k and of E_k over A under the identity part map
        PartiteStructure a_id{a, a, [&] {
                                  std::vector<int> id(a.size());
                                  for (int i = 0; i < a.size(); ++i)
                                      id[i] = i;
                                  return id;
                              }(),
                              partite_mode::a_rectified};
        std::vector<Morphism> b_sections = partite_embeddings(a_id, art.b_k);

        int chosen = -1;
        for (size_t g = 0; g < art.copies.size() && chosen < 0; ++g) {
            int color = -1;
            bool constant = true;
            for (const Morphism& u : b_sections) {
                std::vector<int> q(a.size());
                for (int i = 0; i < a.size(); ++i)
                    q[i] = art.copies[g].map[u.map[i]];
                int col = chi(compose_with_suffix(q, art.e_inclusion));
                if (color < 0)
                    color = col;
                else if (col != color)
                    constant = false;
            }
            if (constant)
                chosen = static_cast<int>(g);
        }
        if (chosen < 0) {
            out.failure = "no monochromatic copy in step " + std::to_string(step.k);
            return out;
        }
        const std::vector<int>& h_k = art.lambda[chosen];
        std::vector<int> next(h_k.size());
        for (size_t i = 0; i < h_k.size(); ++i)
            next[i] = suffix[h_k[i]];
        suffix = std::move(next);
    }

    // colour of a part-pattern: any section of C_0 with that trace
    std::vector<int> chi0(cr.a_embeddings.size(), 0);
    for (size_t j = 0; j < cr.a_embeddings.size(); ++j) {
        PartiteStructure a_over_p{a, cr.c0.c0.index, cr.a_embeddings[j].map,
                                  partite_mode::transversal};
        std::vector<Morphism> sections = partite_embeddings(a_over_p, cr.c0.c0);
        int color = -1;
        for (const Morphism& d : sections) {
            Morphism composed{std::vector<int>(a.size()), morphism_kind::embedding};
            for (int i = 0; i < a.size(); ++i)
                composed.map[i] = suffix[d.map[i]];
            int col = chi(composed);
            if (color < 0)
                color = col;
            else if (col != color) {
                out.failure = "colour is not constant on a part pattern";
                return out;
            }
        }
        if (color >= 0)
            chi0[j] = color;
    }

    Structure a_star = base_reduct(a, true);
    Structure b_star = base_reduct(b, true);
    std::vector<Morphism> u_star = enumerate_embeddings(a_star, b_star);

    std::map<std::vector<int>, int> e_index;
    for (size_t j = 0; j < cr.a_embeddings.size(); ++j)
        e_index[cr.a_embeddings[j].map] = static_cast<int>(j);

    int f_found = -1, f_color = -1;
    for (size_t fi = 0; fi < cr.c0.p_copies_of_b.size() && f_found < 0; ++fi) {
        int color = -1;
        bool constant = true;
        for (const Morphism& u : u_star) {
            std::vector<int> composed(a.size());
            for (int i = 0; i < a.size(); ++i)
                composed[i] = cr.c0.p_copies_of_b[fi].map[u.map[i]];
            auto it = e_index.find(composed);
            if (it == e_index.end()) {
                constant = false;
                break;
            }
            int col = chi0[it->second];
            if (color < 0)
                color = col;
            else if (col != color)
                constant = false;
        }
        if (constant) {
            f_found = static_cast<int>(fi);
            f_color = color < 0 ? 0 : color;
        }
    }
    if (f_found < 0) {
        out.failure = "no monochromatic copy of B* in P";
        return out;
    }

    std::vector<int> result(b.size());
    for (int x = 0; x < b.size(); ++x)
        result[x] = suffix[cr.c0.distinguished[f_found].map[x]];
    if (!is_embedding_map(b, cr.c.carrier, result)) {
        out.failure = "selected copy is not an embedding";
        return out;
    }
    std::vector<Morphism> a_in_b = enumerate_embeddings(a, b);
    for (const Morphism& v : a_in_b) {
        Morphism composed{std::vector<int>(a.size()), morphism_kind::embedding};
        for (int i = 0; i < a.size(); ++i)
            composed.map[i] = result[v.map[i]];
        if (chi(composed) != f_color) {
            out.failure = "selected copy is not monochromatic";
            return out;
        }
    }
    out.ok = true;
    out.color = f_color;
    out.monochromatic_copy = std::move(result);
    return out;
}

json construction_trace_json(const ConstructionResult& cr)
{
    json steps = json::array();
    for (const PartiteStep& step : cr.steps) {
        json s{{"k", step.k}, {"trivial", step.trivial}};
        json ek = json::object();
        const Structure& p = cr.p;
        for (size_t i = 0; i < step.e_k.map.size(); ++i)
            ek[std::to_string(i)] = p.domain[step.e_k.map[i]];
        s["e_k_image"] = [&] {
            json arr = json::array();
            for (int v : step.e_k.map)
                arr.push_back(p.domain[v]);
            return arr;
        }();
        if (!step.trivial) {
            const StepArtifacts& art = *step.artifacts;
            s["d_size"] = art.d.carrier.size();
            s["b_k_size"] = art.b_k.carrier.size();
            s["e_size"] = art.e_k.carrier.size();
            s["copies"] = art.copies.size();
            s["c_size"] = step.c.carrier.size();
            json levels = json::array();
            for (const auto& lvl : art.lemma_levels)
                levels.push_back({{"element", lvl.element},
                                  {"b_part_size", lvl.b_part_size},
                                  {"k", lvl.extension},
                                  {"colors", lvl.colors}});
            s["lemma_levels"] = levels;
            json lambda = json::array();
            for (const auto& row : art.lambda) {
                json table = json::object();
                for (size_t x = 0; x < row.size(); ++x)
                    table[art.d.carrier.domain[x]] = step.c.carrier.domain[row[x]];
                lambda.push_back(table);
            }
            s["lambda"] = lambda;
        } else {
            s["c_size"] = step.c.carrier.size();
        }
        steps.push_back(std::move(s));
    }

    json distinguished = json::array();
    for (const Morphism& m : cr.distinguished_in_c)
        distinguished.push_back(emit_morphism(cr.b, cr.c.carrier, m));

    json j;
    j["p"] = emit_structure(cr.p);
    j["a_copies_in_p"] = cr.a_embeddings.size();
    j["c0_size"] = cr.c0.c0.carrier.size();
    j["b_copies_in_p"] = cr.c0.p_copies_of_b.size();
    j["steps"] = steps;
    j["distinguished"] = distinguished;
    j["c"] = emit_structure_with_parts(cr.c.carrier, cr.c.part, cr.p);
    j["membership"] = membership_name(cr.c_membership.status);
    return j;
}

} // namespace forbh
