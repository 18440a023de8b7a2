#pragma once

#include <forbh/expansion.hpp>

namespace forbh {

struct MembershipVerdict {
    membership status = membership::unknown;
    nlohmann::json certificate;
};

int default_bound(const ExpandedContext& ctx); // 2 · max |dom F|

/// Decides membership of a σ∪τ-structure in the expanded class via the
/// one-element/tuple-trace criterion. One-element and trace patterns are
/// settled by (i) the registry, (ii) the E(F,m) rejection test, (iii) the
/// forced-mark test, (iv) bounded witness search over F-free σ-structures;
/// the search is complete whenever `bound` reaches the pattern's minimal
/// witness size, otherwise Unknown is possible.
MembershipVerdict is_in_C(const Structure& a, const ExpandedContext& ctx, int bound,
                          bool want_certificate = false);

/// Membership of an ordered structure in the ordered expanded class.
MembershipVerdict is_in_ordered_class(const Structure& a, const ExpandedContext& ctx, int bound);

/// Decides one pattern (a one-element structure or a tuple trace).
PatternVerdict decide_pattern(const Structure& pattern, const ExpandedContext& ctx, int bound);

/// One-element substructure of `a` at x, re-expressed over ctx.expanded.
Structure element_pattern(const Structure& a, int x, const ExpandedContext& ctx);

/// The superstructure of Lemma "canonizing": glues a canonical witness onto
/// each element. Requires every one-element substructure to be InC at the
/// given bound. For inputs passing the full membership criterion the result
/// is canonical (it equals the expansion of its own σ-reduct).
Structure canonize(const Structure& a, const ExpandedContext& ctx, int bound);

struct AmalgamResult {
    Structure c;
    Morphism g1, g2;
};

/// Free amalgam of B1 and B2 over A along the embeddings f1, f2: domains and
/// relations are unions over the shared image. Ordered inputs get a linear
/// extension of the union of their orders. The result is verified InC.
AmalgamResult free_amalgam(const Structure& a, const Structure& b1, const Structure& b2,
                           const Morphism& f1, const Morphism& f2, const ExpandedContext& ctx,
                           int bound);

} // namespace forbh
