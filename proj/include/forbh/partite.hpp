#pragma once

#include <map>

#include <forbh/membership.hpp>

namespace forbh {

enum class partite_mode { p_partite, a_rectified, transversal };

/// An ordered σ∪τ carrier together with a part map into an ordered indexing
/// structure: P for the partite construction, or A itself in rectified mode.
struct PartiteStructure {
    Structure carrier;
    Structure index;
    std::vector<int> part; // carrier element -> index element
    partite_mode mode = partite_mode::p_partite;
};

/// ι is a hom of the σ∪⪯-reduct, injective on every σ-tuple, and an
/// embedding on every one-element substructure. Throws NotPartite otherwise.
void check_p_partite(const PartiteStructure& x);

/// The full rectified biconditional: a tuple is present iff ι is injective
/// on it and its ι-image is a tuple of the index. Throws NotRectified.
void check_rectified(const PartiteStructure& x);

/// ι is an embedding of the σ∪⪯-reduct.
bool is_transversal(const PartiteStructure& x);

/// Does D satisfy the rectified condition (rectify would add nothing)?
bool satisfies_part_rect(const PartiteStructure& d);

/// Embeddings of partite structures: carrier embeddings commuting with ι.
std::vector<Morphism> partite_embeddings(const PartiteStructure& x, const PartiteStructure& y);
bool partite_embedding_exists(const PartiteStructure& x, const PartiteStructure& y);

/// The A-rectified structure with the given part sizes (keyed by element
/// name of A); relations forced by the biconditional, parts ordered by ⪯^A,
/// copies by index. Sizes may be 0.
PartiteStructure rectified_structure(const Structure& a, const std::map<std::string, int>& part_sizes,
                                     const ExpandedContext& ctx, int bound);

struct PartiteLemmaLevel {
    std::string element;                // eliminated (⪯-least) element
    long long b_part_size = 0;          // |ι_B^{-1}(element)|
    long long extension = 0;            // k = r·(size−1)+1
    unsigned long long colors = 0;      // colour count fed into the recursion
};

struct PartiteLemmaResult {
    PartiteStructure e;
    std::vector<PartiteLemmaLevel> levels;
    std::map<std::string, long long> e_sizes;
};

/// Pigeonhole induction: E with part sizes from the recursion
/// k = r·(|part|−1)+1 and r^k colours on the ⪯-suffix, so that
/// E → (B)^{(A,id)}_r with respect to rectified embeddings.
PartiteLemmaResult partite_lemma(const Structure& a, const PartiteStructure& b, long long r,
                                 const ExpandedContext& ctx, int bound);

/// Size computation only (no structure built) — for up-front reporting.
std::map<std::string, long long> partite_lemma_sizes(const Structure& a,
                                                     const std::map<std::string, long long>& b_sizes,
                                                     long long r,
                                                     std::vector<PartiteLemmaLevel>* levels = nullptr);

/// Rectification: adds to each σ-relation every ι-injective tuple whose
/// trace and per-position τ-profiles match an existing tuple. Domain, ι, τ,
/// and order are unchanged; unary σ-relations come out equal.
PartiteStructure rectify(const PartiteStructure& c, const ExpandedContext& ctx, int bound,
                         bool verify = true);

/// Lemma "rectified substructures": selects the elements of D whose trace
/// lies in the trace of the transversal A and whose τ-profile matches the
/// corresponding A element; the induced substructure is A-rectified.
PartiteStructure rectified_substructure(const PartiteStructure& d, const PartiteStructure& a_transversal);

} // namespace forbh
