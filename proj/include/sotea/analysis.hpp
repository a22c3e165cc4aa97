#pragma once

/// @file analysis.hpp
/// @brief Genotype diversity, top-fraction filtering, selection-pressure edges
/// and replication aggregates.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sotea/engine.hpp"
#include "sotea/genome.hpp"
#include "sotea/network_stats.hpp"

namespace sotea {

inline std::size_t hamming(const Genome& a, const Genome& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("hamming: length mismatch");
    }
    std::size_t d = 0;
    const auto& wa = a.words();
    const auto& wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i) {
        d += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
    }
    return d;
}

/// Mean pairwise Hamming distance normalized by N/2, the expected distance of
/// two random genomes. Unordered pairs are summed and doubled to get the
/// ordered-pair total; per-bit counts give the unordered sum as
/// sum_i c_i (M - c_i) without visiting pairs.
inline double diversity(const std::vector<Genome>& genomes) {
    const std::size_t m = genomes.size();
    if (m < 2) {
        throw std::invalid_argument("diversity: need at least 2 genomes");
    }
    const std::size_t n = genomes.front().size();
    std::vector<std::size_t> ones(n, 0);
    for (const auto& g : genomes) {
        if (g.size() != n) {
            throw std::invalid_argument("diversity: length mismatch");
        }
        for (std::size_t i = 0; i < n; ++i) {
            ones[i] += g[i] ? 1 : 0;
        }
    }
    double unordered = 0.0;
    for (std::size_t c : ones) {
        unordered += static_cast<double>(c) * static_cast<double>(m - c);
    }
    const double md = static_cast<double>(m);
    return 2.0 * unordered / (md * (md - 1.0) * (static_cast<double>(n) / 2.0));
}

namespace detail {

inline std::size_t top_count(std::size_t m, double fraction) {
    const auto keep =
        static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(m) - 1e-9));
    return std::clamp<std::size_t>(keep, 1, m);
}

} // namespace detail

/// Genomes of the ceil(fraction * M) individuals with the highest objective;
/// ties at the cutoff go to the lower id.
inline std::vector<Genome> top_fraction(const std::vector<Individual>& population,
                                        double fraction) {
    if (population.empty()) {
        throw std::invalid_argument("top_fraction: empty population");
    }
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("top_fraction: fraction must lie in (0,1]");
    }
    const auto m = population.size();
    const auto keep = detail::top_count(m, fraction);
    std::vector<const Individual*> order;
    order.reserve(m);
    for (const auto& ind : population) {
        order.push_back(&ind);
    }
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      [](const Individual* a, const Individual* b) {
                          if (a->objective != b->objective) {
                              return a->objective > b->objective;
                          }
                          return a->id < b->id;
                      });
    std::vector<Genome> out;
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        out.push_back(order[i]->genome);
    }
    return out;
}

/// Genomes of the ceil(fraction * M) individuals ranked best by effective
/// fitness under `mode`; ties fall back to the higher objective, then the
/// lower id.
inline std::vector<Genome> top_fraction_by_fitness(const EaState& state, double fraction,
                                                   FitnessMode mode) {
    const auto& members = state.population.members();
    if (members.empty()) {
        throw std::invalid_argument("top_fraction_by_fitness: empty population");
    }
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("top_fraction_by_fitness: fraction must lie in (0,1]");
    }
    struct Ranked {
        double fitness;
        const Individual* ind;
    };
    std::vector<Ranked> order;
    order.reserve(members.size());
    for (const auto& ind : members) {
        order.push_back({effective_fitness(state, ind.id, mode), &ind});
    }
    const auto keep = detail::top_count(members.size(), fraction);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      [](const Ranked& a, const Ranked& b) {
                          if (a.fitness != b.fitness) {
                              return a.fitness > b.fitness;
                          }
                          if (a.ind->objective != b.ind->objective) {
                              return a.ind->objective > b.ind->objective;
                          }
                          return a.ind->id < b.ind->id;
                      });
    std::vector<Genome> out;
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        out.push_back(order[i].ind->genome);
    }
    return out;
}

struct PressureEdge {
    NodeId source{};
    NodeId target{};
    double source_fitness = 0.0;
    double target_fitness = 0.0;
};

/// Mock competition trial for every node: an arrow from the node to its least
/// fit neighbor (lowest id on ties). Nothing dies.
inline std::vector<PressureEdge> selection_pressure_edges(const EaState& state, FitnessMode mode) {
    if (!state.graph) {
        throw std::invalid_argument("selection_pressure_edges: needs a structured variant");
    }
    std::vector<PressureEdge> edges;
    for (NodeId id : state.graph->nodes()) {
        const auto nbrs = state.graph->neighbors(id);
        if (nbrs.empty()) {
            continue;
        }
        // Neighbors are sorted by id, so strict < keeps the lowest id on ties.
        PressureEdge e{id, nbrs.front(), effective_fitness(state, id, mode),
                       effective_fitness(state, nbrs.front(), mode)};
        for (std::size_t i = 1; i < nbrs.size(); ++i) {
            const double f = effective_fitness(state, nbrs[i], mode);
            if (f < e.target_fitness) {
                e.target = nbrs[i];
                e.target_fitness = f;
            }
        }
        edges.push_back(e);
    }
    return edges;
}

/// One sampled generation of a run.
struct RunRow {
    std::size_t generation = 0;
    double best_objective = 0.0;
    double mean_objective = 0.0;
    double diversity_full = 0.0;
    double diversity_top20 = 0.0;
    /// Structured variants only, at the network stride.
    std::optional<double> char_path_length;
    std::optional<double> degree_average;
    std::optional<double> component_count;
};

struct HistogramSnapshot {
    std::size_t generation = 0;
    DegreeHistogram histogram;
};

struct RunRecord {
    EaConfig config;
    std::vector<RunRow> rows;
    std::vector<HistogramSnapshot> histograms;
    std::size_t isolated_selections = 0;

    /// Row for generation g; throws if g was not sampled.
    [[nodiscard]] const RunRow& at_generation(std::size_t g) const {
        for (const auto& r : rows) {
            if (r.generation == g) {
                return r;
            }
        }
        throw std::out_of_range("RunRecord: generation " + std::to_string(g) + " not recorded");
    }
};

inline constexpr double kTopFraction = 0.2;

inline RunRow measure(const EaState& state, bool with_network) {
    const auto& members = state.population.members();
    RunRow row;
    row.generation = state.generation;
    std::vector<Genome> genomes;
    genomes.reserve(members.size());
    double sum = 0.0;
    row.best_objective = members.front().objective;
    for (const auto& ind : members) {
        row.best_objective = std::max(row.best_objective, ind.objective);
        sum += ind.objective;
        genomes.push_back(ind.genome);
    }
    row.mean_objective = sum / static_cast<double>(members.size());
    row.diversity_full = diversity(genomes);
    row.diversity_top20 =
        diversity(top_fraction_by_fitness(state, kTopFraction, state.config.fitness_mode));
    if (with_network && state.graph) {
        const auto stats = network_stats(*state.graph);
        row.char_path_length = stats.char_path_length;
        row.degree_average = stats.degree_average;
        row.component_count = static_cast<double>(stats.component_count);
    }
    return row;
}

/// Column-wise mean and sample standard deviation across replications.
struct AggregateColumn {
    std::string name;
    std::vector<double> mean;
    std::vector<double> stddev;
};

struct Aggregate {
    std::vector<std::size_t> generations;
    std::vector<AggregateColumn> columns;

    [[nodiscard]] const AggregateColumn& column(const std::string& name) const {
        for (const auto& c : columns) {
            if (c.name == name) {
                return c;
            }
        }
        throw std::out_of_range("Aggregate: no column " + name);
    }

    /// Index of generation g in `generations`.
    [[nodiscard]] std::size_t row_of(std::size_t g) const {
        auto it = std::find(generations.begin(), generations.end(), g);
        if (it == generations.end()) {
            throw std::out_of_range("Aggregate: generation " + std::to_string(g) + " not present");
        }
        return static_cast<std::size_t>(it - generations.begin());
    }
};

inline Aggregate aggregate(const std::vector<RunRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("aggregate: no records");
    }
    const auto& first = records.front().rows;
    for (const auto& rec : records) {
        if (rec.rows.size() != first.size()) {
            throw std::invalid_argument("aggregate: records differ in row count");
        }
        for (std::size_t i = 0; i < first.size(); ++i) {
            if (rec.rows[i].generation != first[i].generation) {
                throw std::invalid_argument("aggregate: records sample different generations");
            }
        }
    }

    using Getter = std::optional<double> (*)(const RunRow&);
    struct Spec {
        const char* name;
        Getter get;
    };
    static constexpr Spec specs[] = {
        {"best_objective", [](const RunRow& r) -> std::optional<double> { return r.best_objective; }},
        {"mean_objective", [](const RunRow& r) -> std::optional<double> { return r.mean_objective; }},
        {"diversity_full", [](const RunRow& r) -> std::optional<double> { return r.diversity_full; }},
        {"diversity_top20", [](const RunRow& r) -> std::optional<double> { return r.diversity_top20; }},
        {"L", [](const RunRow& r) { return r.char_path_length; }},
        {"k_ave", [](const RunRow& r) { return r.degree_average; }},
        {"components", [](const RunRow& r) { return r.component_count; }},
    };

    Aggregate out;
    for (const auto& r : first) {
        out.generations.push_back(r.generation);
    }
    const double count = static_cast<double>(records.size());
    for (const auto& spec : specs) {
        AggregateColumn col{spec.name, {}, {}};
        for (std::size_t i = 0; i < first.size(); ++i) {
            double sum = 0.0;
            bool present = true;
            for (const auto& rec : records) {
                const auto v = spec.get(rec.rows[i]);
                if (!v) {
                    present = false;
                    break;
                }
                sum += *v;
            }
            if (!present) {
                col.mean.push_back(std::nan(""));
                col.stddev.push_back(std::nan(""));
                continue;
            }
            const double mean = sum / count;
            double ss = 0.0;
            for (const auto& rec : records) {
                const double d = *spec.get(rec.rows[i]) - mean;
                ss += d * d;
            }
            col.mean.push_back(mean);
            col.stddev.push_back(records.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0);
        }
        out.columns.push_back(std::move(col));
    }
    return out;
}

} // namespace sotea
