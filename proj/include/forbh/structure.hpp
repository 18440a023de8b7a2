#pragma once

#include <optional>
#include <string>
#include <vector>

#include <forbh/signature.hpp>

namespace forbh {

using Tuple = std::vector<int>; // element indices into the domain

/// A finite relational structure. The domain is an ordered list of distinct
/// element names; relations hold tuples of domain indices, one sorted
/// duplicate-free set per signature symbol; `order` (present iff the
/// signature has one) lists domain indices from least to greatest.
///
/// Structures are immutable after construction/validation: every operation
/// returns a fresh value, so sharing across threads is safe.
struct Structure {
    SignaturePtr sig;
    std::vector<std::string> domain;
    std::vector<std::vector<Tuple>> relations; // indexed like sig->symbols()
    std::optional<std::vector<int>> order;     // order[k] = element at rank k

    int size() const { return static_cast<int>(domain.size()); }

    int element_index(const std::string& name) const; // -1 if absent
    bool has_tuple(int sym, const Tuple& t) const;

    /// rank in the linear order; requires order to be present
    int rank(int element) const;
    bool leq(int x, int y) const { return rank(x) <= rank(y); }

    bool operator==(const Structure& other) const;
};

struct RootedStructure {
    Structure structure;
    int root = 0;

    bool operator==(const RootedStructure&) const = default;
};

struct Partition {
    std::vector<std::vector<int>> blocks; // each sorted; blocks sorted by least member
};

enum class morphism_kind { homomorphism, embedding, isomorphism };

/// A map between the domains of two structures (kept externally); `map[i]`
/// is the target index of source element i.
struct Morphism {
    std::vector<int> map;
    morphism_kind kind = morphism_kind::homomorphism;

    bool operator==(const Morphism&) const = default;
};

// -- construction & checking ------------------------------------------------

/// Builds a Structure from parts, normalizing tuple sets (sorted, deduped)
/// and checking every type invariant. Throws on arity mismatches, unknown
/// elements/symbols, duplicate domain names, or an order that is not a
/// permutation of the domain.
Structure make_structure(SignaturePtr sig,
                         std::vector<std::string> domain,
                         std::vector<std::vector<Tuple>> relations,
                         std::optional<std::vector<int>> order = std::nullopt);

/// Name-based convenience used by validation and tests.
Structure make_structure_named(SignaturePtr sig,
                               std::vector<std::string> domain,
                               const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>& relations,
                               const std::optional<std::vector<std::string>>& order = std::nullopt);

bool is_homomorphism(const Structure& a, const Structure& b, const std::vector<int>& map,
                     bool respect_order = true);
bool is_embedding_map(const Structure& a, const Structure& b, const std::vector<int>& map,
                      bool respect_order = true);

void require_same_signature(const Structure& a, const Structure& b);

} // namespace forbh
