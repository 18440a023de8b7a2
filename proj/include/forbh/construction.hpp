#pragma once

#include <forbh/partite.hpp>

namespace forbh {

struct C0Result {
    PartiteStructure c0;
    std::vector<Morphism> p_copies_of_b;     // binom(P, B*), the copy tags
    std::vector<Morphism> distinguished;     // c_f : B -> C0, one per copy
};

/// One tagged copy of B per embedding of B* into P; ι maps (f,x) to f(x).
C0Result build_c0(const Structure& p, const Structure& b, const ExpandedContext& ctx, int bound);

struct StepArtifacts {
    PartiteStructure d;               // rectify(C_{k-1})
    PartiteStructure b_k;             // rectified substructure along e_k
    std::vector<int> b_k_selection;   // B_k element -> D element
    PartiteStructure e_k;             // partite lemma output
    std::vector<PartiteLemmaLevel> lemma_levels;
    std::vector<Morphism> copies;     // binom((E_k,ι),(B_k,ι))
    std::vector<std::vector<int>> lambda; // per copy: dom D -> dom C_k
    std::vector<int> e_inclusion;     // dom E_k -> dom C_k
};

struct PartiteStep {
    int k = 0;
    Morphism e_k;            // A* into P
    bool trivial = true;
    PartiteStructure c;      // C_k
    std::shared_ptr<StepArtifacts> artifacts; // null for trivial steps
};

struct ConstructionOptions {
    long long r = 2;
    int bound = 0;            // 0 = default_bound(ctx)
    long long max_size = 200000;
    unsigned long long arrow_budget = 1ull << 24;
    bool verify_steps = true;
};

/// One step of the partite construction: rectify, cut out B_k along e_k,
/// apply the partite lemma, and glue one copy of D_{k-1} per copy of B_k.
PartiteStep partite_step(const PartiteStructure& c_prev, const Morphism& e_k, int k,
                         const Structure& a, const ExpandedContext& ctx,
                         const ConstructionOptions& opt);

struct ConstructionResult {
    Structure a, b;
    Structure p;
    PartiteStructure c;                     // C_N
    C0Result c0;
    std::vector<Morphism> a_embeddings;     // binom(P, A*)
    std::vector<PartiteStep> steps;
    std::vector<std::vector<int>> h_chain;  // per step: dom C_{k-1} -> dom C_k (first copy)
    std::vector<Morphism> distinguished_in_c; // h ∘ c_f for each distinguished copy
    MembershipVerdict c_membership;
};

/// The full construction: C_0, then one partite step per embedding of A*
/// into P. Records everything needed to replay the monochromatic selection.
ConstructionResult partite_construction(const Structure& a, const Structure& b,
                                        std::optional<Structure> p, const ExpandedContext& ctx,
                                        const ConstructionOptions& opt);

struct PartnerOptions {
    int max_candidate_size = 12;
    unsigned long long arrow_budget = 1ull << 24;
};

/// Oracle-certified search for P with P → (B*)^{A*}_r: iterative deepening
/// over saturated unions of B*-copies, each candidate checked exhaustively.
Structure find_partner_p(const Structure& a_star, const Structure& b_star, long long r,
                         const PartnerOptions& opt = {});

struct ReplayResult {
    bool ok = false;
    std::string failure;
    int color = -1;
    std::vector<int> monochromatic_copy; // h∘c_f as a map dom B -> dom C
};

/// Replays the proof's downward induction for one colouring of binom(C, A):
/// picks a monochromatic g_k in each nontrivial step, then a monochromatic
/// copy of B* in P, and verifies h∘c_f lands on a single colour.
ReplayResult replay_coloring(const ConstructionResult& cr, const Structure& a,
                             const Structure& b, long long r,
                             const std::function<int(const Morphism&)>& chi);

nlohmann::json construction_trace_json(const ConstructionResult& cr);

} // namespace forbh
