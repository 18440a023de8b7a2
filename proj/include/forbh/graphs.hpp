#pragma once

#include <string>
#include <vector>

#include <forbh/structure.hpp>

namespace forbh {

/// Bipartite undirected multigraph with element vertices on one side and one
/// vertex per (symbol, tuple) on the other; one edge per tuple coordinate.
struct IncidenceGraph {
    struct TupleVertex {
        int symbol;
        int tuple_index; // index into relations[symbol]
    };
    int element_count = 0;
    std::vector<TupleVertex> tuple_vertices;
    std::vector<std::pair<int, int>> edges; // (element, tuple-vertex index), one per coordinate
};

struct SimpleGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges; // i < j, sorted, unique
};

IncidenceGraph incidence_graph(const Structure& a);
SimpleGraph gaifman_graph(const Structure& a);

/// Connectivity of the incidence graph; the empty structure counts as
/// connected (the sum-decomposition clause is vacuous).
bool is_connected(const Structure& a);
bool gaifman_connected(const Structure& a);

/// True iff the incidence graph is a (connected, acyclic) tree; false as
/// soon as a tuple repeats an element.
bool is_tree(const Structure& a);

/// Gaifman components of `a` with the elements `removed` deleted.
std::vector<std::vector<int>> gaifman_components_without(const Structure& a, int removed);

} // namespace forbh
