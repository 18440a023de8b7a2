#pragma once

#include <forbh/structure.hpp>

namespace forbh {

/// Substructure induced by the element set `m` (indices into a.domain).
/// Relations are restricted to tuples lying inside `m`; the order, if any,
/// is restricted.
Structure induced_substructure(const Structure& a, const std::vector<int>& m);
Structure induced_substructure_named(const Structure& a, const std::vector<std::string>& names);

/// Tagged disjoint union; element (i, x) of part i is named "<i>:<x>".
/// An empty list yields the empty structure over `sig`.
Structure sum(const std::vector<Structure>& parts, SignaturePtr sig_if_empty = nullptr);

/// Factor by a partition: one element per block, named by the block's least
/// member; a tuple of blocks is present iff some member-wise representative
/// tuple is. Orders do not survive factoring (the quotient of a linear order
/// need not be one), so the result is unordered.
Structure factor(const Structure& a, const Partition& p);

/// Join of rooted structures: sum factored by root identification. The
/// result is rooted at the merged root block.
RootedStructure join(const std::vector<RootedStructure>& parts);

/// Keep only the named symbols (which must exist); order kept iff keep_order.
Structure reduct(const Structure& a, const std::vector<std::string>& keep, bool keep_order);

/// σ∪⪯-reduct and σ∪τ-reduct helpers.
Structure base_reduct(const Structure& a, bool keep_order);
Structure drop_order(const Structure& a);

/// Explicit renaming step (sum/factor element names are structured tags).
Structure rename_elements(const Structure& a, const std::vector<std::string>& fresh_names);

} // namespace forbh
