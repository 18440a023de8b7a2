#pragma once

#include <optional>
#include <string>

#include <forbh/structure.hpp>

namespace forbh {

/// Canonical label: equal on two structures iff they are isomorphic.
/// Ordered structures are labeled directly through their order; unordered
/// ones go through color refinement with backtracking individualization.
std::string canonical_form(const Structure& a);

/// Canonical label with a distinguished element; equal iff rooted-isomorphic.
std::string canonical_form_rooted(const Structure& a, int root);
inline std::string canonical_form_rooted(const RootedStructure& r)
{
    return canonical_form_rooted(r.structure, r.root);
}

/// Full isomorphism test; returns a verified isomorphism when one exists.
std::optional<Morphism> isomorphic(const Structure& a, const Structure& b);
std::optional<Morphism> isomorphic_rooted(const RootedStructure& a, const RootedStructure& b);

} // namespace forbh
