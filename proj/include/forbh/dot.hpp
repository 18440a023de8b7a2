#pragma once

#include <string>

#include <forbh/structure.hpp>

namespace forbh {

enum class dot_kind { incidence, gaifman, partite };

/// DOT export. Incidence mode renders element nodes as circles and tuple
/// nodes as boxes labelled "R#i"; partite mode clusters elements by part in
/// index order (part: carrier element -> index element, with the index's
/// element names in `part_names`).
std::string emit_dot(const Structure& a, dot_kind kind,
                     const std::vector<int>* part = nullptr,
                     const std::vector<std::string>* part_names = nullptr);

} // namespace forbh
