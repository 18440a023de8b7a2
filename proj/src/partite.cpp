#include <forbh/partite.hpp>

#include <forbh/hom.hpp>

#include <algorithm>
#include <set>

namespace forbh {

namespace {

std::vector<int> order_ranks(const Structure& s)
{
    std::vector<int> rank(s.size(), 0);
    if (s.order)
        for (int k = 0; k < s.size(); ++k)
            rank[(*s.order)[k]] = k;
    return rank;
}

// per index element, the carrier elements mapped onto it
std::vector<std::vector<int>> part_members(const PartiteStructure& x)
{
    std::vector<std::vector<int>> members(x.index.size());
    for (int i = 0; i < x.carrier.size(); ++i)
        members[x.part[i]].push_back(i);
    return members;
}

// relations forced by the rectified biconditional: one tuple per choice of a
// carrier element in each part touched by an index tuple
std::vector<std::vector<Tuple>> forced_relations(const SignaturePtr& carrier_sig,
                                                 const Structure& index,
                                                 const std::vector<std::vector<int>>& members)
{
    std::vector<std::vector<Tuple>> rels(carrier_sig->size());
    for (int sym = 0; sym < carrier_sig->size(); ++sym) {
        int isym = index.sig->index_of(carrier_sig->name(sym));
        if (isym < 0)
            continue;
        for (const Tuple& t : index.relations[isym]) {
            std::vector<int> distinct;
            for (int e : t)
                if (std::find(distinct.begin(), distinct.end(), e) == distinct.end())
                    distinct.push_back(e);
            std::vector<int> choice(distinct.size(), 0);
            bool any_empty = false;
            for (int d : distinct)
                any_empty = any_empty || members[d].empty();
            if (any_empty)
                continue;
            for (;;) {
                Tuple out(t.size());
                for (size_t i = 0; i < t.size(); ++i) {
                    int di = static_cast<int>(
                        std::find(distinct.begin(), distinct.end(), t[i]) - distinct.begin());
                    out[i] = members[t[i]][choice[di]];
                }
                rels[sym].push_back(std::move(out));
                int i = static_cast<int>(distinct.size()) - 1;
                while (i >= 0 && choice[i] + 1 == static_cast<int>(members[distinct[i]].size()))
                    choice[i--] = 0;
                if (i < 0)
                    break;
                ++choice[i];
            }
        }
    }
    for (auto& r : rels) {
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
    }
    return rels;
}

std::vector<char> tau_profile(const Structure& s, int x)
{
    std::vector<char> out;
    for (int sym = 0; sym < s.sig->size(); ++sym)
        if (s.sig->is_expansion(sym))
            out.push_back(s.has_tuple(sym, {x}) ? 1 : 0);
    return out;
}

void require_ordered_pair(const PartiteStructure& x, errc code)
{
    if (!x.carrier.order || !x.index.order)
        fail(code, "partite structures must be ordered (carrier and index)");
    if (static_cast<int>(x.part.size()) != x.carrier.size())
        fail(code, "part map must cover the carrier domain");
    for (int p : x.part)
        if (p < 0 || p >= x.index.size())
            fail(code, "part map leaves the index domain");
}

} // namespace

void check_p_partite(const PartiteStructure& x)
{
    require_ordered_pair(x, errc::not_partite);
    const Structure& c = x.carrier;
    const Structure& p = x.index;
    std::vector<int> crank = order_ranks(c), prank = order_ranks(p);

    // ι preserves the order
    for (int i = 0; i < c.size(); ++i)
        for (int j = 0; j < c.size(); ++j)
            if (crank[i] < crank[j] && prank[x.part[i]] > prank[x.part[j]])
                fail(errc::not_partite, "part map does not preserve the order");

    for (int sym = 0; sym < c.sig->size(); ++sym) {
        if (c.sig->is_expansion(sym))
            continue;
        int psym = p.sig->index_of(c.sig->name(sym));
        if (psym < 0)
            fail(errc::not_partite, "index lacks symbol '" + c.sig->name(sym) + "'");
        for (const Tuple& t : c.relations[sym]) {
            Tuple image(t.size());
            for (size_t i = 0; i < t.size(); ++i)
                image[i] = x.part[t[i]];
            if (!p.has_tuple(psym, image))
                fail(errc::not_partite, "part map is not a homomorphism");
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] != t[j] && image[i] == image[j])
                        fail(errc::not_partite, "part map not injective on a tuple");
        }
    }

    // one-element substructures embed into the index: loops match exactly
    for (int i = 0; i < c.size(); ++i) {
        for (int sym = 0; sym < c.sig->size(); ++sym) {
            if (c.sig->is_expansion(sym))
                continue;
            int psym = p.sig->index_of(c.sig->name(sym));
            Tuple loop_c(c.sig->arity(sym), i), loop_p(c.sig->arity(sym), x.part[i]);
            if (c.has_tuple(sym, loop_c) != p.has_tuple(psym, loop_p))
                fail(errc::not_partite, "one-element substructure does not embed into the index");
        }
    }
}

void check_rectified(const PartiteStructure& x)
{
    require_ordered_pair(x, errc::not_rectified);
    const Structure& c = x.carrier;
    const Structure& a = x.index;
    if (!(*c.sig == *a.sig))
        fail(errc::not_rectified, "rectified carrier and index must share a signature");

    std::vector<int> crank = order_ranks(c), arank = order_ranks(a);
    for (int i = 0; i < c.size(); ++i)
        for (int j = 0; j < c.size(); ++j)
            if (crank[i] < crank[j] && arank[x.part[i]] > arank[x.part[j]])
                fail(errc::not_rectified, "part map does not preserve the order");

    auto members = part_members(x);
    auto want = forced_relations(c.sig, a, members);
    for (int sym = 0; sym < c.sig->size(); ++sym)
        if (want[sym] != c.relations[sym])
            fail(errc::not_rectified,
                 "relation '" + c.sig->name(sym) + "' violates the rectified biconditional");
}

bool is_transversal(const PartiteStructure& x)
{
    require_ordered_pair(x, errc::not_partite);
    // ι as a map must be an embedding of the σ∪⪯-reduct into the index
    Structure reduct_c = base_reduct(x.carrier, true);
    Structure idx_base = base_reduct(x.index, true);
    if (!(*reduct_c.sig == *idx_base.sig))
        return false;
    return is_embedding_map(reduct_c, idx_base, x.part);
}

bool satisfies_part_rect(const PartiteStructure& d)
{
    check_p_partite(d);
    auto members_by_profile = [&](int part, const std::vector<char>& prof) {
        std::vector<int> out;
        for (int i = 0; i < d.carrier.size(); ++i)
            if (d.part[i] == part && tau_profile(d.carrier, i) == prof)
                out.push_back(i);
        return out;
    };
    for (int sym = 0; sym < d.carrier.sig->size(); ++sym) {
        if (d.carrier.sig->is_expansion(sym))
            continue;
        for (const Tuple& t : d.carrier.relations[sym]) {
            // every ι-injective tuple with the same trace and τ-profiles must be present
            std::vector<std::vector<int>> cand;
            for (int pos = 0; pos < static_cast<int>(t.size()); ++pos)
                cand.push_back(members_by_profile(d.part[t[pos]], tau_profile(d.carrier, t[pos])));
            std::vector<size_t> choice(t.size(), 0);
            for (;;) {
                Tuple u(t.size());
                for (size_t i = 0; i < t.size(); ++i)
                    u[i] = cand[i][choice[i]];
                bool injective = true;
                for (size_t i = 0; i < u.size() && injective; ++i)
                    for (size_t j = i + 1; j < u.size() && injective; ++j)
                        if (u[i] != u[j] && d.part[u[i]] == d.part[u[j]])
                            injective = false;
                if (injective && !d.carrier.has_tuple(sym, u))
                    return false;
                int i = static_cast<int>(t.size()) - 1;
                while (i >= 0 && choice[i] + 1 == cand[i].size())
                    choice[i--] = 0;
                if (i < 0)
                    break;
                ++choice[i];
            }
        }
    }
    return true;
}

std::vector<Morphism> partite_embeddings(const PartiteStructure& x, const PartiteStructure& y)
{
    if (!(x.index == y.index))
        fail(errc::signature_mismatch, "partite embeddings need a shared index structure");
    SearchConstraint c;
    c.require_injective = true;
    c.reflect_relations = true;
    c.source_part = &x.part;
    c.target_part = &y.part;
    return enumerate_homs(x.carrier, y.carrier, c);
}

bool partite_embedding_exists(const PartiteStructure& x, const PartiteStructure& y)
{
    if (!(x.index == y.index))
        fail(errc::signature_mismatch, "partite embeddings need a shared index structure");
    SearchConstraint c;
    c.require_injective = true;
    c.reflect_relations = true;
    c.source_part = &x.part;
    c.target_part = &y.part;
    return first_hom(x.carrier, y.carrier, c).has_value();
}

PartiteStructure rectified_structure(const Structure& a, const std::map<std::string, int>& part_sizes,
                                     const ExpandedContext& ctx, int bound)
{
    if (!a.order)
        fail(errc::invalid_order, "the pattern structure must be ordered");
    MembershipVerdict v = is_in_ordered_class(a, ctx, bound);
    if (v.status != membership::in_c)
        fail(errc::not_in_class, "pattern structure is not a verified member of the ordered class",
             {{"status", membership_name(v.status)}, {"certificate", v.certificate}});

    std::vector<long long> sizes(a.size(), 1);
    for (const auto& [name, s] : part_sizes) {
        int x = a.element_index(name);
        if (x < 0)
            fail(errc::unknown_element, "unknown part '" + name + "'", {{"element", name}});
        if (s < 0)
            fail(errc::invalid_partition, "part sizes must be non-negative");
        sizes[x] = s;
    }

    // domain listed in (⪯^A-rank, copy) order; the order is the identity
    std::vector<std::string> domain;
    std::vector<int> part;
    std::vector<std::vector<int>> members(a.size());
    for (int k = 0; k < a.size(); ++k) {
        int elt = (*a.order)[k];
        for (long long i = 0; i < sizes[elt]; ++i) {
            members[elt].push_back(static_cast<int>(domain.size()));
            part.push_back(elt);
            domain.push_back(a.domain[elt] + "#" + std::to_string(i));
        }
    }

    auto rels = forced_relations(a.sig, a, members);
    std::vector<int> order(domain.size());
    for (size_t i = 0; i < domain.size(); ++i)
        order[i] = static_cast<int>(i);
    Structure carrier = make_structure(a.sig, std::move(domain), std::move(rels), order);

    PartiteStructure out{std::move(carrier), a, std::move(part), partite_mode::a_rectified};
    check_rectified(out);
    MembershipVerdict vc = is_in_ordered_class(out.carrier, ctx, bound);
    if (vc.status != membership::in_c)
        fail(errc::membership_failure, "rectified structure failed the membership criterion",
             {{"status", membership_name(vc.status)}});
    return out;
}

namespace {

unsigned long long checked_pow(long long base, long long exp)
{
    unsigned long long out = 1;
    const unsigned long long cap = 1ull << 62;
    for (long long i = 0; i < exp; ++i) {
        if (out > cap / static_cast<unsigned long long>(base))
            fail(errc::search_budget_exhausted, "colour count overflows the partite recursion",
                 {{"base", base}, {"exp", exp}});
        out *= static_cast<unsigned long long>(base);
    }
    return out;
}

} // namespace

std::map<std::string, long long> partite_lemma_sizes(const Structure& a,
                                                     const std::map<std::string, long long>& b_sizes,
                                                     long long r,
                                                     std::vector<PartiteLemmaLevel>* levels)
{
    if (!a.order)
        fail(errc::invalid_order, "the pattern structure must be ordered");
    if (r < 1)
        fail(errc::invalid_partition, "colour count must be positive");

    std::map<std::string, long long> out;
    unsigned long long colors = static_cast<unsigned long long>(r);
    for (int k = 0; k < a.size(); ++k) {
        int elt = (*a.order)[k];
        auto it = b_sizes.find(a.domain[elt]);
        long long s = it == b_sizes.end() ? 0 : it->second;
        long long ext;
        if (s == 0) {
            ext = 0;
        } else {
            const unsigned long long cap = 1ull << 62;
            if (colors > (cap - 1) / static_cast<unsigned long long>(s))
                fail(errc::search_budget_exhausted, "extension size overflows");
            ext = static_cast<long long>(colors * (s - 1) + 1);
        }
        if (levels)
            levels->push_back({a.domain[elt], s, ext, colors});
        out[a.domain[elt]] = ext;
        if (k + 1 < a.size())
            colors = checked_pow(static_cast<long long>(colors), ext);
    }
    return out;
}

PartiteLemmaResult partite_lemma(const Structure& a, const PartiteStructure& b, long long r,
                                 const ExpandedContext& ctx, int bound)
{
    if (b.mode != partite_mode::a_rectified || !(b.index == a))
        fail(errc::not_rectified, "the middle structure must be rectified over the pattern");
    check_rectified(b);
    if (r < 1)
        fail(errc::invalid_partition, "colour count must be positive");

    std::map<std::string, long long> b_sizes;
    for (int i = 0; i < a.size(); ++i)
        b_sizes[a.domain[i]] = 0;
    for (int p : b.part)
        ++b_sizes[a.domain[p]];

    PartiteLemmaResult out;
    std::map<std::string, long long> sizes = partite_lemma_sizes(a, b_sizes, r, &out.levels);
    std::map<std::string, int> sz;
    for (auto& [name, s] : sizes) {
        if (s > 1000000)
            fail(errc::search_budget_exhausted, "partite lemma output exceeds desk scale",
                 {{"part", name}, {"size", s}});
        sz[name] = static_cast<int>(s);
    }
    out.e = rectified_structure(a, sz, ctx, bound);
    out.e_sizes = sizes;
    return out;
}

PartiteStructure rectify(const PartiteStructure& c, const ExpandedContext& ctx, int bound,
                         bool verify)
{
    check_p_partite(c);
    const Structure& carrier = c.carrier;

    // candidates per (part, τ-profile)
    std::map<std::pair<int, std::vector<char>>, std::vector<int>> cand;
    for (int i = 0; i < carrier.size(); ++i)
        cand[{c.part[i], tau_profile(carrier, i)}].push_back(i);

    std::vector<std::vector<Tuple>> rels = carrier.relations;
    for (int sym = 0; sym < carrier.sig->size(); ++sym) {
        if (carrier.sig->is_expansion(sym))
            continue;
        std::set<Tuple> out(carrier.relations[sym].begin(), carrier.relations[sym].end());
        for (const Tuple& y : carrier.relations[sym]) {
            std::vector<int> distinct;
            for (int e : y)
                if (std::find(distinct.begin(), distinct.end(), e) == distinct.end())
                    distinct.push_back(e);
            std::vector<const std::vector<int>*> pools;
            for (int d : distinct)
                pools.push_back(&cand[{c.part[d], tau_profile(carrier, d)}]);
            std::vector<size_t> choice(distinct.size(), 0);
            for (;;) {
                Tuple x(y.size());
                for (size_t i = 0; i < y.size(); ++i) {
                    int di = static_cast<int>(
                        std::find(distinct.begin(), distinct.end(), y[i]) - distinct.begin());
                    x[i] = (*pools[di])[choice[di]];
                }
                out.insert(std::move(x));
                int i = static_cast<int>(distinct.size()) - 1;
                while (i >= 0 && choice[i] + 1 == pools[i]->size())
                    choice[i--] = 0;
                if (i < 0)
                    break;
                ++choice[i];
            }
        }
        // distinct elements of y sit in distinct parts (P-partite), so every
        // generated tuple is ι-injective by construction
        rels[sym].assign(out.begin(), out.end());
        if (carrier.sig->arity(sym) == 1 && rels[sym] != carrier.relations[sym])
            fail(errc::not_partite, "unary σ-relation changed under rectification");
    }

    Structure d_carrier = make_structure(carrier.sig, carrier.domain, std::move(rels), carrier.order);
    PartiteStructure d{std::move(d_carrier), c.index, c.part, partite_mode::p_partite};
    if (verify) {
        check_p_partite(d);
        MembershipVerdict v = is_in_ordered_class(d.carrier, ctx, bound);
        if (v.status != membership::in_c)
            fail(errc::membership_failure, "rectification left the class",
                 {{"status", membership_name(v.status)}});
    }
    return d;
}

PartiteStructure rectified_substructure(const PartiteStructure& d, const PartiteStructure& a_transversal)
{
    if (!(d.index == a_transversal.index))
        fail(errc::signature_mismatch, "the transversal must live over the same index");
    if (!is_transversal(a_transversal))
        fail(errc::not_partite, "the pattern side must be transversal");
    if (!satisfies_part_rect(d))
        fail(errc::not_rectified_input, "the host structure does not satisfy the rectified condition");
    if (!partite_embedding_exists(a_transversal, d))
        fail(errc::no_embedding, "no partite embedding of the pattern into the host");

    const Structure& a = a_transversal.carrier;
    std::vector<int> a_elt_of_part(d.index.size(), -1);
    for (int j = 0; j < a.size(); ++j)
        a_elt_of_part[a_transversal.part[j]] = j;

    std::vector<int> selected;
    std::vector<int> part;
    for (int x = 0; x < d.carrier.size(); ++x) {
        int j = a_elt_of_part[d.part[x]];
        if (j < 0)
            continue;
        if (tau_profile(d.carrier, x) != tau_profile(a, j))
            continue;
        selected.push_back(x);
        part.push_back(j);
    }

    Structure carrier = induced_substructure(d.carrier, selected);
    PartiteStructure out{std::move(carrier), a, std::move(part), partite_mode::a_rectified};
    check_rectified(out);
    return out;
}

} // namespace forbh
