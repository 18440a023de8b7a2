#pragma once

#include <functional>
#include <vector>

#include <forbh/structure.hpp>

namespace forbh {

/// Visits every structure over `sig` on `n` unordered elements ("e0".."e<n-1>"),
/// growing one tuple at a time along a fixed tuple numbering (so each tuple
/// set is reached exactly once). `keep` is consulted after each addition;
/// returning false prunes the whole subtree — sound for conditions that are
/// inherited downward under tuple removal (F-freeness, acyclicity).
/// max_tuples < 0 means unlimited.
void for_each_structure(SignaturePtr sig, int n, int max_tuples,
                        const std::function<bool(const Structure&)>& keep,
                        const std::function<bool(const Structure&)>& visit);

/// All structures over `sig` with exactly n elements, up to isomorphism.
std::vector<Structure> all_structures_up_to_iso(SignaturePtr sig, int n,
                                                const std::function<bool(const Structure&)>& filter = nullptr);

/// All σ-trees with 1..max_n elements, up to isomorphism.
std::vector<Structure> all_trees(SignaturePtr sig, int max_n);

} // namespace forbh
