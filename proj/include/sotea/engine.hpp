#pragma once

/// @file engine.hpp
/// @brief Generational dynamics of the panmictic, cellular and self-organizing
/// topology EAs.
///
/// A generation is M reproduction events (parents drawn with replacement from
/// the M individuals alive at generation start) followed by competition events
/// until M individuals remain. Structured variants edit the interaction graph
/// in both phases: offspring attach to their parent and may take over some of
/// its links; a competition loser's links pass to the winner.
///
/// Epistatic fitness is the fraction of an individual's k neighbors whose
/// objective it strictly beats: Rank = 1 + (neighbors not strictly worse),
/// fitness = (k - Rank + 1) / k. A neighbor with an equal objective counts
/// against the rank. An isolated node has fitness 1.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sotea/genome.hpp"
#include "sotea/nk_landscape.hpp"
#include "sotea/population_graph.hpp"
#include "sotea/rng.hpp"

namespace sotea {

enum class Variant { panmictic, cellular, sotea };
enum class FitnessMode { epistatic, raw };

inline std::string_view to_string(Variant v) {
    switch (v) {
    case Variant::panmictic: return "panmictic";
    case Variant::cellular: return "cellular";
    case Variant::sotea: return "sotea";
    }
    return "?";
}

inline std::string_view to_string(FitnessMode f) {
    return f == FitnessMode::epistatic ? "epistatic" : "raw";
}

inline Variant parse_variant(std::string_view s) {
    if (s == "panmictic") return Variant::panmictic;
    if (s == "cellular") return Variant::cellular;
    if (s == "sotea") return Variant::sotea;
    throw std::invalid_argument("unknown variant '" + std::string(s) + "'");
}

inline FitnessMode parse_fitness_mode(std::string_view s) {
    if (s == "epistatic") return FitnessMode::epistatic;
    if (s == "raw") return FitnessMode::raw;
    throw std::invalid_argument("unknown fitness mode '" + std::string(s) + "'");
}

struct EaConfig {
    Variant variant = Variant::sotea;
    FitnessMode fitness_mode = FitnessMode::epistatic;
    std::size_t m = 100;
    std::size_t generations = 1000;
    std::size_t n = 30;
    std::size_t k_nk = 14;
    /// Per-bit flip probability; 1/n when unset.
    std::optional<double> mutation_rate;
    double p_add = 0.10;
    double p_remove = 0.10;
    std::uint64_t seed = 1;

    [[nodiscard]] double effective_mutation_rate() const {
        return mutation_rate.value_or(1.0 / static_cast<double>(n));
    }

    void validate() const {
        if (m < 3) {
            throw std::invalid_argument("EaConfig: m must be at least 3");
        }
        if (n == 0) {
            throw std::invalid_argument("EaConfig: n must be at least 1");
        }
        if (k_nk > n - 1) {
            throw std::invalid_argument("EaConfig: k must not exceed n - 1");
        }
        auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (!in_unit(effective_mutation_rate()) || !in_unit(p_add) || !in_unit(p_remove)) {
            throw std::invalid_argument("EaConfig: probabilities must lie in [0,1]");
        }
    }
};

struct Individual {
    NodeId id{};
    Genome genome;
    double objective = 0.0;
    std::size_t birth_generation = 0;
};

/// Living individuals with O(1) lookup by id and O(1) uniform sampling by slot.
/// Removal swaps the last slot into the hole, so slot order is a deterministic
/// function of the event history.
class Population {
public:
    void add(Individual ind) {
        const NodeId id = ind.id;
        if (!slot_.emplace(id, members_.size()).second) {
            throw std::invalid_argument("Population: duplicate id " + to_string(id));
        }
        members_.push_back(std::move(ind));
    }

    void remove(NodeId id) {
        const std::size_t s = slot_of(id);
        if (s + 1 != members_.size()) {
            members_[s] = std::move(members_.back());
            slot_[members_[s].id] = s;
        }
        members_.pop_back();
        slot_.erase(id);
    }

    [[nodiscard]] bool contains(NodeId id) const { return slot_.contains(id); }
    [[nodiscard]] const Individual& at(NodeId id) const { return members_[slot_of(id)]; }
    [[nodiscard]] const Individual& operator[](std::size_t slot) const { return members_[slot]; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] const std::vector<Individual>& members() const noexcept { return members_; }

    [[nodiscard]] std::size_t slot_of(NodeId id) const {
        auto it = slot_.find(id);
        if (it == slot_.end()) {
            throw std::out_of_range("unknown individual " + to_string(id));
        }
        return it->second;
    }

private:
    std::vector<Individual> members_;
    std::unordered_map<NodeId, std::size_t> slot_;
};

enum class EventKind { birth, death, isolated_selection };

/// Optional debugging record of one atomic event.
struct TraceEvent {
    EventKind kind;
    std::size_t generation;
    NodeId actor;          // parent (birth), winner (death), selected node
    NodeId other;          // offspring (birth), loser (death)
    double actor_fitness;  // effective fitness at decision time (deaths only)
    double other_fitness;
};

struct EaState {
    EaConfig config;
    std::shared_ptr<const NkLandscape> landscape;
    Population population;
    /// Present for cellular and sotea; the panmictic graph is implicitly complete.
    std::optional<PopulationGraph> graph;
    std::size_t generation = 0;
    Rng rng;
    std::uint64_t next_id = 0;
    /// Competition selections that hit a node without neighbors.
    std::size_t isolated_selections = 0;
    std::function<void(const TraceEvent&)> trace;

    [[nodiscard]] bool structured() const noexcept { return graph.has_value(); }

    void emit(const TraceEvent& e) const {
        if (trace) {
            trace(e);
        }
    }
};

/// Each bit flips independently with probability `rate`.
inline Genome mutate(const Genome& genome, double rate, Rng& rng) {
    Genome child = genome;
    for (std::size_t i = 0; i < child.size(); ++i) {
        if (bernoulli(rng, rate)) {
            child.flip(i);
        }
    }
    return child;
}

inline Genome random_genome(std::size_t n, Rng& rng) {
    Genome g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.set(i, (rng() >> 63) != 0);
    }
    return g;
}

/// Fresh state: M uniform-random genomes drawn from the init sub-stream, and a
/// ring in creation order for the structured variants.
inline EaState init(const EaConfig& config, std::shared_ptr<const NkLandscape> landscape) {
    config.validate();
    if (!landscape || landscape->n() != config.n) {
        throw std::invalid_argument("init: landscape does not match config.n");
    }
    EaState state;
    state.config = config;
    state.landscape = std::move(landscape);
    state.rng = make_rng(config.seed, Stream::init);
    for (std::size_t i = 0; i < config.m; ++i) {
        Individual ind;
        ind.id = NodeId{state.next_id++};
        ind.genome = random_genome(config.n, state.rng);
        ind.objective = state.landscape->evaluate(ind.genome);
        state.population.add(std::move(ind));
    }
    if (config.variant != Variant::panmictic) {
        state.graph = PopulationGraph::new_ring(config.m);
    }
    return state;
}

inline double epistatic_fitness(const EaState& state, NodeId id) {
    const double own = state.population.at(id).objective;
    std::size_t k = 0;
    std::size_t beaten = 0;
    if (state.graph) {
        for (NodeId x : state.graph->neighbors(id)) {
            ++k;
            if (state.population.at(x).objective < own) {
                ++beaten;
            }
        }
    } else {
        k = state.population.size() - 1;
        for (const auto& other : state.population.members()) {
            if (other.objective < own) {
                ++beaten;
            }
        }
    }
    if (k == 0) {
        return 1.0;
    }
    return static_cast<double>(beaten) / static_cast<double>(k);
}

inline double effective_fitness(const EaState& state, NodeId id, FitnessMode mode) {
    return mode == FitnessMode::raw ? state.population.at(id).objective
                                    : epistatic_fitness(state, id);
}

namespace detail {

inline NodeId add_offspring(EaState& state, const Individual& parent) {
    Individual child;
    child.id = NodeId{state.next_id++};
    child.genome = mutate(parent.genome, state.config.effective_mutation_rate(), state.rng);
    child.objective = state.landscape->evaluate(child.genome);
    child.birth_generation = state.generation + 1;
    const NodeId id = child.id;
    state.population.add(std::move(child));
    return id;
}

inline PopulationGraph& require_graph(EaState& state) {
    if (!state.graph) {
        throw std::logic_error("structured operation on a panmictic state");
    }
    return *state.graph;
}

} // namespace detail

inline NodeId reproduce_panmictic(EaState& state, NodeId parent_id) {
    const Individual parent = state.population.at(parent_id);
    const NodeId child = detail::add_offspring(state, parent);
    state.emit({EventKind::birth, state.generation, parent_id, child, 0.0, 0.0});
    return child;
}

/// Offspring links to its parent, then inherits each pre-existing parent link
/// with probability p_add; each inherited link is dropped by the parent with
/// probability p_remove.
inline NodeId reproduce_sotea(EaState& state, NodeId parent_id) {
    auto& g = detail::require_graph(state);
    const Individual parent = state.population.at(parent_id);
    const auto snapshot = g.neighbors(parent_id);
    const std::vector<NodeId> parent_links(snapshot.begin(), snapshot.end());
    const NodeId child = detail::add_offspring(state, parent);
    g.add_node(child);
    g.add_edge(child, parent_id);
    for (NodeId x : parent_links) {
        if (bernoulli(state.rng, state.config.p_add)) {
            g.add_edge(child, x);
            if (bernoulli(state.rng, state.config.p_remove)) {
                g.remove_edge(parent_id, x);
            }
        }
    }
    state.emit({EventKind::birth, state.generation, parent_id, child, 0.0, 0.0});
    return child;
}

/// One uniformly chosen parent link (parent, x) becomes (offspring, x) and the
/// offspring links to the parent, so a cycle stays a cycle.
inline NodeId reproduce_cellular(EaState& state, NodeId parent_id) {
    auto& g = detail::require_graph(state);
    const Individual parent = state.population.at(parent_id);
    const auto links = g.neighbors(parent_id);
    if (links.empty()) {
        throw std::logic_error("reproduce_cellular: parent " + to_string(parent_id) +
                               " has no links to hand over");
    }
    const NodeId x = links[uniform_index(state.rng, links.size())];
    const NodeId child = detail::add_offspring(state, parent);
    g.remove_edge(parent_id, x);
    g.add_node(child);
    g.add_edge(child, x);
    g.add_edge(child, parent_id);
    state.emit({EventKind::birth, state.generation, parent_id, child, 0.0, 0.0});
    return child;
}

inline NodeId reproduce(EaState& state, NodeId parent_id) {
    switch (state.config.variant) {
    case Variant::panmictic: return reproduce_panmictic(state, parent_id);
    case Variant::cellular: return reproduce_cellular(state, parent_id);
    case Variant::sotea: return reproduce_sotea(state, parent_id);
    }
    throw std::logic_error("unreachable variant");
}

namespace detail {

/// Decides between a and b; the lower fitness dies, ties by a fair coin.
inline NodeId eliminate_worse(EaState& state, NodeId a, double fa, NodeId b, double fb) {
    bool a_loses = fa < fb;
    if (fa == fb) {
        a_loses = bernoulli(state.rng, 0.5);
    }
    const NodeId winner = a_loses ? b : a;
    const NodeId loser = a_loses ? a : b;
    if (state.graph) {
        state.graph->transfer_links(winner, loser);
    }
    state.population.remove(loser);
    state.emit({EventKind::death, state.generation, winner, loser, a_loses ? fb : fa,
                a_loses ? fa : fb});
    return winner;
}

} // namespace detail

/// The selected node fights its least fit neighbor (ties uniform); fitness is
/// evaluated on the graph as it stands now. Isolated nodes are left alone.
inline NodeId compete_structured(EaState& state, NodeId id, FitnessMode mode) {
    const auto& g = detail::require_graph(state);
    const auto nbrs = g.neighbors(id);
    if (nbrs.empty()) {
        ++state.isolated_selections;
        state.emit({EventKind::isolated_selection, state.generation, id, id, 1.0, 1.0});
        return id;
    }
    std::vector<NodeId> worst;
    double worst_fitness = 0.0;
    for (NodeId x : nbrs) {
        const double f = effective_fitness(state, x, mode);
        if (worst.empty() || f < worst_fitness) {
            worst.assign(1, x);
            worst_fitness = f;
        } else if (f == worst_fitness) {
            worst.push_back(x);
        }
    }
    const NodeId challenger =
        worst.size() == 1 ? worst.front() : worst[uniform_index(state.rng, worst.size())];
    const double own = effective_fitness(state, id, mode);
    return detail::eliminate_worse(state, id, own, challenger, worst_fitness);
}

/// Binary tournament: a uniformly drawn other individual, the worse one dies.
inline NodeId compete_panmictic(EaState& state, NodeId id, FitnessMode mode) {
    const std::size_t size = state.population.size();
    if (size < 2) {
        throw std::logic_error("compete_panmictic: need at least two individuals");
    }
    const auto& members = state.population.members();
    const std::size_t self_slot = state.population.slot_of(id);
    std::size_t slot = uniform_index(state.rng, size - 1);
    if (slot >= self_slot) {
        ++slot;
    }
    const NodeId opponent = members[slot].id;
    const double fa = effective_fitness(state, id, mode);
    const double fb = effective_fitness(state, opponent, mode);
    return detail::eliminate_worse(state, id, fa, opponent, fb);
}

inline NodeId compete(EaState& state, NodeId id) {
    if (state.config.variant == Variant::panmictic) {
        return compete_panmictic(state, id, state.config.fitness_mode);
    }
    return compete_structured(state, id, state.config.fitness_mode);
}

/// One pseudo steady-state generation. Each phase draws from its own sub-stream
/// keyed by (seed, generation), so a run's first G generations do not depend on
/// how many generations follow.
inline void run_generation(EaState& state) {
    const std::size_t m = state.config.m;
    if (state.population.size() != m) {
        throw std::logic_error("run_generation: population size differs from M");
    }
    state.rng = make_rng(state.config.seed, Stream::reproduction, state.generation);
    std::vector<NodeId> parents;
    parents.reserve(m);
    for (const auto& ind : state.population.members()) {
        parents.push_back(ind.id);
    }
    for (std::size_t i = 0; i < m; ++i) {
        reproduce(state, parents[uniform_index(state.rng, m)]);
    }

    state.rng = make_rng(state.config.seed, Stream::competition, state.generation);
    // Deaths, not selections, are counted: an isolated node's selection is a
    // no-op. A graph that is connected before the phase stays connected, so
    // isolation only arises from hand-built states.
    const std::size_t isolated_before = state.isolated_selections;
    while (state.population.size() > m) {
        const auto slot = uniform_index(state.rng, state.population.size());
        compete(state, state.population[slot].id);
        if (state.isolated_selections - isolated_before > 1000 * m) {
            throw std::runtime_error("run_generation: competition phase stalled on isolated nodes");
        }
    }
    ++state.generation;
}

} // namespace sotea
