#include <forbh/dot.hpp>

#include <forbh/graphs.hpp>

#include <map>
#include <sstream>

namespace forbh {

namespace {

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string emit_dot(const Structure& a, dot_kind kind,
                     const std::vector<int>* part, const std::vector<std::string>* part_names)
{
    std::ostringstream out;
    if (kind == dot_kind::incidence) {
        IncidenceGraph g = incidence_graph(a);
        out << "graph incidence {\n";
        for (int x = 0; x < a.size(); ++x)
            out << "  " << quote("e:" + a.domain[x]) << " [shape=circle, label="
                << quote(a.domain[x]) << "];\n";
        for (size_t tv = 0; tv < g.tuple_vertices.size(); ++tv) {
            const auto& t = g.tuple_vertices[tv];
            out << "  " << quote("t:" + std::to_string(tv)) << " [shape=box, label="
                << quote(a.sig->name(t.symbol) + "#" + std::to_string(t.tuple_index)) << "];\n";
        }
        for (auto [e, tv] : g.edges)
            out << "  " << quote("e:" + a.domain[e]) << " -- " << quote("t:" + std::to_string(tv))
                << ";\n";
        out << "}\n";
        return out.str();
    }
    if (kind == dot_kind::gaifman) {
        SimpleGraph g = gaifman_graph(a);
        out << "graph gaifman {\n";
        for (int x = 0; x < a.size(); ++x)
            out << "  " << quote(a.domain[x]) << ";\n";
        for (auto [x, y] : g.edges)
            out << "  " << quote(a.domain[x]) << " -- " << quote(a.domain[y]) << ";\n";
        out << "}\n";
        return out.str();
    }

    if (!part || !part_names)
        fail(errc::missing_parts, "partite rendering needs a parts map");
    out << "digraph partite {\n";
    std::map<int, std::vector<int>> by_part;
    for (int x = 0; x < a.size(); ++x)
        by_part[(*part)[x]].push_back(x);
    for (auto& [p, elems] : by_part) {
        out << "  subgraph " << quote("cluster_" + std::to_string(p)) << " {\n";
        out << "    label=" << quote((*part_names)[p]) << ";\n";
        for (int x : elems)
            out << "    " << quote(a.domain[x]) << ";\n";
        out << "  }\n";
    }
    for (int sym = 0; sym < a.sig->size(); ++sym) {
        if (a.sig->arity(sym) < 2)
            continue;
        for (const Tuple& t : a.relations[sym])
            for (size_t i = 0; i + 1 < t.size(); ++i)
                out << "  " << quote(a.domain[t[i]]) << " -> " << quote(a.domain[t[i + 1]])
                    << " [label=" << quote(a.sig->name(sym)) << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace forbh
