#pragma once

/// @file graph_export.hpp
/// @brief Snapshot export: DOT, edge list, node attributes and pressure edges.

#include <ostream>

#include "sotea/analysis.hpp"
#include "sotea/csv.hpp"
#include "sotea/engine.hpp"
#include "sotea/population_graph.hpp"

namespace sotea {

/// Undirected DOT graph; each edge is written once with the lower id first.
inline void write_dot(std::ostream& out, const PopulationGraph& g, const char* name = "population") {
    out << "graph " << name << " {\n";
    for (NodeId id : g.nodes()) {
        out << "  " << to_index(id) << ";\n";
    }
    for (NodeId id : g.nodes()) {
        for (NodeId x : g.neighbors(id)) {
            if (id < x) {
                out << "  " << to_index(id) << " -- " << to_index(x) << ";\n";
            }
        }
    }
    out << "}\n";
}

inline void write_edge_list(std::ostream& out, const PopulationGraph& g) {
    out << csv::kFormatLine << "\nsource,target\n";
    for (NodeId id : g.nodes()) {
        for (NodeId x : g.neighbors(id)) {
            if (id < x) {
                out << to_index(id) << ',' << to_index(x) << '\n';
            }
        }
    }
}

inline void write_node_attributes(std::ostream& out, const EaState& state) {
    out << csv::kFormatLine << "\nid,degree,objective,epistatic_fitness,birth_generation\n";
    for (NodeId id : state.graph->nodes()) {
        const auto& ind = state.population.at(id);
        out << to_index(id) << ',' << state.graph->degree(id) << ',' << csv::format(ind.objective)
            << ',' << csv::format(epistatic_fitness(state, id)) << ',' << ind.birth_generation
            << '\n';
    }
}

inline void write_pressure_edges(std::ostream& out, const std::vector<PressureEdge>& edges) {
    out << csv::kFormatLine << "\nsource,target,source_fitness,target_fitness\n";
    for (const auto& e : edges) {
        out << to_index(e.source) << ',' << to_index(e.target) << ','
            << csv::format(e.source_fitness) << ',' << csv::format(e.target_fitness) << '\n';
    }
}

} // namespace sotea
