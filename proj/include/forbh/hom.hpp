#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <forbh/structure.hpp>

namespace forbh {

/// Knobs for the backtracking search. Pins fix part of the map up front;
/// embedding mode (reflect_relations) implies injectivity. The optional part
/// maps restrict to partite morphisms: map[i]'s part must equal part of i.
struct SearchConstraint {
    std::map<int, int> pins;
    bool require_injective = false;
    bool reflect_relations = false;
    bool respect_order = true;
    const std::vector<int>* source_part = nullptr;
    const std::vector<int>* target_part = nullptr;
};

/// Visits every map dom a -> dom b satisfying the homomorphism (or, in
/// embedding mode, embedding) conditions and the constraint, in a
/// deterministic order. Return false from the visitor to stop early.
void for_each_hom(const Structure& a, const Structure& b, const SearchConstraint& c,
                  const std::function<bool(const std::vector<int>&)>& visit);

std::vector<Morphism> enumerate_homs(const Structure& a, const Structure& b,
                                     const SearchConstraint& c = {});

/// binom(b, a): all embeddings of a into b.
std::vector<Morphism> enumerate_embeddings(const Structure& a, const Structure& b);

std::optional<Morphism> first_hom(const Structure& a, const Structure& b,
                                  const SearchConstraint& c = {});

/// Is there a homomorphism of m.structure into `a` pinning root -> x?
bool exists_rooted_hom(const RootedStructure& m, const Structure& a, int x);

struct FFreeResult {
    bool f_free = true;
    int forbidden_index = -1;    // witness tree when not free
    std::vector<int> witness;    // hom map of that tree into the structure
};

/// Checks that no member of `forbidden` (structures over a's signature)
/// admits a homomorphism into `a`; returns the first witness otherwise.
FFreeResult is_f_free(const Structure& a, const std::vector<Structure>& forbidden);

} // namespace forbh
