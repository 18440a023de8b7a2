#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include <forbh/canonical.hpp>
#include <forbh/ops.hpp>
#include <forbh/structure.hpp>

namespace forbh {

/// A piece (M, m) of a forbidden tree: one Gaifman component of the tree
/// minus a cut, plus the cut itself, rooted at the cut.
struct Piece {
    RootedStructure rooted;
    int tree_index = -1;
    int cut = -1; // element index in the origin tree
};

struct PieceClass {
    std::string id; // τ symbol name
    std::vector<Piece> representatives;
    std::vector<RootedStructure> distinct_representatives; // deduped up to rooted iso
    std::vector<std::string> incompatibility_key;          // sorted rooted canonical forms
    std::vector<RootedStructure> incompatibility_set;      // one witness per key entry
};

enum class membership { in_c, not_in_c, unknown };

const char* membership_name(membership m);

struct PatternVerdict {
    membership status = membership::unknown;
    nlohmann::json certificate; // re-verifiable evidence
    std::optional<Structure> witness; // F-free σ-structure realizing the pattern (InC)
    std::vector<int> witness_image;   // where the pattern sits inside the witness expansion
};

/// The forbidden set together with everything derived from it: the piece
/// classes, the τ signature, and the membership registry/memo.
class ExpandedContext {
public:
    SignaturePtr sigma;    // base signature, unordered
    SignaturePtr expanded; // σ∪τ, unordered
    std::vector<Structure> forbidden; // validated σ-trees
    std::vector<PieceClass> classes;

    SignaturePtr sigma_ordered() const { return with_order(sigma, true); }
    SignaturePtr expanded_ordered() const { return with_order(expanded, true); }

    int tau_symbol(int class_index) const; // symbol index in `expanded`
    int class_of_symbol(int sym) const;    // inverse, -1 for σ symbols
    int max_piece_size() const { return max_piece_size_; }

    // membership memo; keyed by canonical pattern form. Thread-safe,
    // positives are never retracted (append-only registry semantics).
    void registry_store(const std::string& key, const PatternVerdict& v) const;
    std::optional<PatternVerdict> registry_lookup(const std::string& key) const;
    std::vector<std::pair<std::string, PatternVerdict>> registry_snapshot() const;

    // iso-reduced F-free σ-structures of exactly n elements with their
    // canonical expansions; computed lazily and cached.
    const std::vector<std::pair<Structure, Structure>>& f_free_pool(int n) const;

    friend ExpandedContext piece_classes(SignaturePtr sigma, std::vector<Structure> forbidden);

private:
    // shared so contexts stay copyable; both stores are append-only
    struct Cache {
        std::mutex mutex;
        std::map<std::string, PatternVerdict> registry;
        std::map<int, std::vector<std::pair<Structure, Structure>>> pools;
    };

    int max_piece_size_ = 0;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

using ContextPtr = std::shared_ptr<const ExpandedContext>;

/// Elements of a tree lying in more than one tuple.
std::vector<int> cuts(const Structure& f);

/// The pieces of `f` at the cut `m`, one per Gaifman component of f minus m.
std::vector<Piece> pieces(const Structure& f, int m, int tree_index = -1);

/// All rooted structures whose join with `p` is isomorphic to a member of
/// `forbidden`, deduped up to rooted isomorphism, sorted by canonical form.
std::vector<RootedStructure> incompatibility_set(const RootedStructure& p,
                                                 const std::vector<Structure>& forbidden);

/// Groups the pieces of all trees by equality of incompatibility sets and
/// derives the τ signature (one unary symbol per class).
ExpandedContext piece_classes(SignaturePtr sigma, std::vector<Structure> forbidden);
ContextPtr make_context(SignaturePtr sigma, std::vector<Structure> forbidden);

/// The canonical expansion of an F-free σ-structure: x ∈ S_c iff some piece
/// of class c admits a rooted homomorphism into `a` at x. Registers the
/// realized one-element types.
Structure canonical_expansion(const Structure& a, const ExpandedContext& ctx);

/// Unfolds one tuple into a structure on positions {1..k} carrying the
/// single tuple plus the per-position unary σ- and τ-memberships.
Structure tuple_trace(const Structure& a, const std::string& symbol, const Tuple& t);

/// E(F, m): the one-element structure marked with the classes of the pieces
/// of `f` at the cut `m`, σ-relations empty.
Structure forbidden_singleton(const Structure& f, int m, const ExpandedContext& ctx);

} // namespace forbh
