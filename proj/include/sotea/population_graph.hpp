#pragma once

/// @file population_graph.hpp
/// @brief Undirected simple graph over living individuals.
///
/// Neighbor lists are kept sorted, so every traversal order depends only on
/// the node identifiers and never on insertion history.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sotea {

/// Identity of an individual. Allocated monotonically within a run, never reused.
enum class NodeId : std::uint64_t {};

constexpr std::uint64_t to_index(NodeId id) noexcept { return static_cast<std::uint64_t>(id); }

inline std::string to_string(NodeId id) { return std::to_string(to_index(id)); }

class PopulationGraph {
public:
    PopulationGraph() = default;

    /// Cycle on nodes 0..m-1 with edges (i, i+1 mod m).
    static PopulationGraph new_ring(std::size_t m) {
        if (m < 3) {
            throw std::invalid_argument("new_ring: a simple cycle needs at least 3 nodes");
        }
        PopulationGraph g;
        for (std::size_t i = 0; i < m; ++i) {
            g.add_node(NodeId{i});
        }
        for (std::size_t i = 0; i < m; ++i) {
            g.add_edge(NodeId{i}, NodeId{(i + 1) % m});
        }
        return g;
    }

    void add_node(NodeId id) {
        if (!adjacency_.try_emplace(id).second) {
            throw std::invalid_argument("add_node: node " + to_string(id) + " already exists");
        }
    }

    /// Removes the node and all incident edges.
    void remove_node(NodeId id) {
        auto it = find(id);
        for (NodeId x : it->second) {
            erase_sorted(adjacency_.at(x), id);
        }
        edge_count_ -= it->second.size();
        adjacency_.erase(it);
    }

    /// Returns false (and changes nothing) for self-loops and existing edges.
    bool add_edge(NodeId a, NodeId b) {
        auto& na = find(a)->second;
        auto& nb = find(b)->second;
        if (a == b) {
            return false;
        }
        auto pos = std::lower_bound(na.begin(), na.end(), b);
        if (pos != na.end() && *pos == b) {
            return false;
        }
        na.insert(pos, b);
        nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
        ++edge_count_;
        return true;
    }

    bool remove_edge(NodeId a, NodeId b) {
        auto& na = find(a)->second;
        auto& nb = find(b)->second;
        if (!erase_sorted(na, b)) {
            return false;
        }
        erase_sorted(nb, a);
        --edge_count_;
        return true;
    }

    /// The winner takes over every neighbor of the loser it did not already
    /// have; the loser is then removed.
    void transfer_links(NodeId winner, NodeId loser) {
        if (winner == loser) {
            throw std::invalid_argument("transfer_links: winner and loser must differ");
        }
        find(winner);
        const std::vector<NodeId> inherited = find(loser)->second;
        for (NodeId x : inherited) {
            if (x != winner) {
                add_edge(winner, x);
            }
        }
        remove_node(loser);
    }

    [[nodiscard]] bool contains(NodeId id) const { return adjacency_.contains(id); }

    [[nodiscard]] bool has_edge(NodeId a, NodeId b) const {
        const auto& na = find(a)->second;
        return std::binary_search(na.begin(), na.end(), b);
    }

    /// Sorted ascending by id.
    [[nodiscard]] std::span<const NodeId> neighbors(NodeId id) const { return find(id)->second; }

    [[nodiscard]] std::size_t degree(NodeId id) const { return find(id)->second.size(); }

    [[nodiscard]] std::size_t node_count() const noexcept { return adjacency_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }

    /// Node ids in ascending order.
    [[nodiscard]] std::vector<NodeId> nodes() const {
        std::vector<NodeId> out;
        out.reserve(adjacency_.size());
        for (const auto& [id, _] : adjacency_) {
            out.push_back(id);
        }
        return out;
    }

    /// Full consistency check: simplicity, symmetry, sortedness and the cached
    /// edge count. Returns a description of the first violation found.
    [[nodiscard]] std::optional<std::string> audit() const {
        std::size_t endpoint_total = 0;
        for (const auto& [id, nbrs] : adjacency_) {
            endpoint_total += nbrs.size();
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                const NodeId x = nbrs[i];
                if (x == id) {
                    return "self-loop at " + to_string(id);
                }
                if (i > 0 && !(nbrs[i - 1] < x)) {
                    return "unsorted or parallel edge at " + to_string(id);
                }
                auto other = adjacency_.find(x);
                if (other == adjacency_.end()) {
                    return "edge " + to_string(id) + "-" + to_string(x) + " to missing node";
                }
                if (!std::binary_search(other->second.begin(), other->second.end(), id)) {
                    return "asymmetric edge " + to_string(id) + "-" + to_string(x);
                }
            }
        }
        if (endpoint_total != 2 * edge_count_) {
            return "edge count out of sync";
        }
        return std::nullopt;
    }

private:
    using Map = std::map<NodeId, std::vector<NodeId>>;

    Map::iterator find(NodeId id) {
        auto it = adjacency_.find(id);
        if (it == adjacency_.end()) {
            throw std::out_of_range("unknown node " + to_string(id));
        }
        return it;
    }

    [[nodiscard]] Map::const_iterator find(NodeId id) const {
        auto it = adjacency_.find(id);
        if (it == adjacency_.end()) {
            throw std::out_of_range("unknown node " + to_string(id));
        }
        return it;
    }

    static bool erase_sorted(std::vector<NodeId>& v, NodeId x) {
        auto pos = std::lower_bound(v.begin(), v.end(), x);
        if (pos == v.end() || *pos != x) {
            return false;
        }
        v.erase(pos);
        return true;
    }

    Map adjacency_;
    std::size_t edge_count_ = 0;
};

} // namespace sotea
