#pragma once

/*
 * Graphviz exports. Pants decompositions render with one node per pants
 * and one edge per curve (self-loops for one-vertex curves, labeled by
 * curve id). Model complexes render their face-block incidence: one node
 * per face and per block, an edge for every covered face side. Output is
 * deterministic: entities appear in id order.
 */

#include <string>

#include "layered/model_complex.hpp"
#include "layered/pants_graph.hpp"

namespace layered {

inline std::string graph_dot(const PantsGraph& g, const std::string& name = "pants") {
    std::string out = "graph " + name + " {\n";
    for (int v = 0; v < g.vertices(); ++v) out += "  v" + std::to_string(v) + ";\n";
    std::vector<CurveId> seen;
    for (int v = 0; v < g.vertices(); ++v)
        for (int s = 0; s < 3; ++s) {
            CurveId c = g.curve_at(Leg{v, s});
            bool first = true;
            for (CurveId k : seen) first = first && k != c;
            if (!first) continue;
            seen.push_back(c);
            Leg p = g.partner(Leg{v, s});
            out += "  v" + std::to_string(v) + " -- v" + std::to_string(p.vertex) + " [label=\"" +
                   std::to_string(c) + "\"];\n";
        }
    return out + "}\n";
}

inline std::string complex_dot(const ModelComplex& m, const std::string& name = "complex") {
    std::string out = "graph " + name + " {\n";
    for (const FaceRec& f : m.faces()) out += "  f" + std::to_string(f.id) + " [shape=box];\n";
    for (const BlockRec& b : m.blocks())
        out += "  b" + std::to_string(b.id) + " [label=\"" +
               std::string(b.kind == MoveKind::S ? "S" : "A") + std::to_string(b.id) + "\"];\n";
    for (const BlockRec& b : m.blocks()) {
        for (const FaceSideRef& r : b.bottom)
            out += "  b" + std::to_string(b.id) + " -- f" + std::to_string(r.face) +
                   " [label=\"bottom\"];\n";
        for (const FaceSideRef& r : b.top)
            out += "  b" + std::to_string(b.id) + " -- f" + std::to_string(r.face) + " [label=\"top\"];\n";
    }
    return out + "}\n";
}

}  // namespace layered
