#pragma once

/// @file verify.hpp
/// @brief Fast oracle checks: each pits a library routine against an
/// independent brute-force computation. The routine under test is a parameter
/// so that deliberately corrupted versions can be checked as well.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "sotea/analysis.hpp"
#include "sotea/engine.hpp"
#include "sotea/network_stats.hpp"
#include "sotea/nk_landscape.hpp"
#include "sotea/population_graph.hpp"
#include "sotea/rng.hpp"
#include "sotea/run.hpp"

namespace sotea::verify {

struct OracleResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

using EvaluateFn = std::function<double(const NkLandscape&, const Genome&)>;
using DiversityFn = std::function<double(const std::vector<Genome>&)>;
using PathLengthFn = std::function<double(const PopulationGraph&)>;
using FitnessFn = std::function<double(const EaState&, NodeId)>;

// ------------------------------------------------------------------ oracles

/// Objective by rebuilding each bit's pattern as a '0'/'1' string and parsing
/// it as a binary number.
inline double nk_oracle(const NkLandscape& l, const Genome& g) {
    double sum = 0.0;
    for (std::size_t i = 0; i < l.n(); ++i) {
        std::string bits(1, g[i] ? '1' : '0');
        for (auto z : l.wiring(i)) {
            bits += g[z] ? '1' : '0';
        }
        sum += l.table(i)[std::stoull(bits, nullptr, 2)];
    }
    return sum / static_cast<double>(l.n());
}

/// Double loop over ordered pairs, comparing characters.
inline double diversity_oracle(const std::vector<Genome>& genomes) {
    const std::size_t m = genomes.size();
    const std::size_t n = genomes.front().size();
    std::vector<std::string> s;
    for (const auto& g : genomes) {
        s.push_back(g.to_string());
    }
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) {
                continue;
            }
            for (std::size_t b = 0; b < n; ++b) {
                total += s[i][b] != s[j][b] ? 1 : 0;
            }
        }
    }
    const double pairs = static_cast<double>(m) * static_cast<double>(m - 1);
    return static_cast<double>(total) / (pairs * (static_cast<double>(n) / 2.0));
}

/// Floyd-Warshall over the whole graph; mean over connected ordered pairs.
inline double path_length_oracle(const PopulationGraph& g) {
    const auto ids = g.nodes();
    const std::size_t n = ids.size();
    constexpr auto inf = std::numeric_limits<std::uint64_t>::max() / 4;
    std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, inf));
    for (std::size_t i = 0; i < n; ++i) {
        d[i][i] = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && g.has_edge(ids[i], ids[j])) {
                d[i][j] = 1;
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i][k] + d[k][j] < d[i][j]) {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    std::uint64_t sum = 0;
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && d[i][j] < inf) {
                sum += d[i][j];
                ++pairs;
            }
        }
    }
    return pairs == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(pairs);
}

/// The lookup table drawn in the NK illustration, rows in (z1, x, z2) order,
/// re-packed into the library's (x, z1, z2) convention.
inline std::vector<double> illustrated_table() {
    const double display[8] = {0.94, 0.36, 0.83, 0.20, 0.67, 0.14, 0.71, 0.44};
    std::vector<double> table(8);
    for (unsigned z1 = 0; z1 < 2; ++z1) {
        for (unsigned x = 0; x < 2; ++x) {
            for (unsigned z2 = 0; z2 < 2; ++z2) {
                table[x * 4 + z1 * 2 + z2] = display[z1 * 4 + x * 2 + z2];
            }
        }
    }
    return table;
}

/// n = 8, k = 2; bit 2 (0-based) is wired to bits 1 and 3 and carries the
/// illustrated table. Other bits get neighbors (i+1, i+2) and constant tables.
inline NkLandscape illustrated_landscape() {
    std::vector<std::vector<std::size_t>> wiring(8);
    std::vector<std::vector<double>> tables(8, std::vector<double>(8, 0.5));
    for (std::size_t i = 0; i < 8; ++i) {
        wiring[i] = {(i + 1) % 8, (i + 2) % 8};
    }
    wiring[2] = {1, 3};
    tables[2] = illustrated_table();
    return NkLandscape(8, 2, std::move(wiring), std::move(tables));
}

// ------------------------------------------------------------------- checks

inline OracleResult check_nk_evaluation(const EvaluateFn& evaluate = [](const NkLandscape& l,
                                                                        const Genome& g) {
    return l.evaluate(g);
}) {
    OracleResult res{"nk-evaluation", true, ""};
    std::size_t cases = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        for (std::size_t n = 1; n <= 12; ++n) {
            for (std::size_t k = 0; k <= std::min<std::size_t>(4, n - 1); ++k) {
                const auto l = NkLandscape::generate(n, k, derive_seed(seed, Stream::landscape, n * 8 + k));
                Genome g(n);
                for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
                    for (std::size_t i = 0; i < n; ++i) {
                        g.set(i, (bits >> i) & 1U);
                    }
                    ++cases;
                    if (evaluate(l, g) != nk_oracle(l, g)) {
                        res.passed = false;
                        res.detail = "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                     " seed=" + std::to_string(seed) + " genome " + g.to_string();
                        return res;
                    }
                }
            }
        }
    }
    // Illustrated rows: 000 -> 0.94 and (z1, x, z2) = 100 -> 0.67.
    const auto fig = illustrated_landscape();
    const auto zeros = Genome::from_string("00000000");
    const auto sample = Genome::from_string("01001100");
    const double c0 = fig.fitness_contribution(2, zeros);
    const double c1 = fig.fitness_contribution(2, sample);
    if (c0 != 0.94 || c1 != 0.67) {
        res.passed = false;
        res.detail = "illustrated table rows not reproduced";
        return res;
    }
    res.detail = std::to_string(cases) + " genomes matched";
    return res;
}

inline OracleResult check_diversity(const DiversityFn& div = [](const std::vector<Genome>& g) {
    return diversity(g);
}) {
    OracleResult res{"diversity", true, ""};
    Rng rng{20080601};
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = 2 + uniform_index(rng, 19);
        const auto n = 1 + uniform_index(rng, 70);
        std::vector<Genome> pop;
        for (std::size_t i = 0; i < m; ++i) {
            pop.push_back(random_genome(n, rng));
        }
        if (div(pop) != diversity_oracle(pop)) {
            res.passed = false;
            res.detail = "mismatch on random population " + std::to_string(trial);
            return res;
        }
    }
    const std::vector<Genome> same(5, Genome::from_string("0110101"));
    if (div(same) != 0.0) {
        res.passed = false;
        res.detail = "identical genomes do not give 0";
        return res;
    }
    const std::vector<Genome> complement{Genome::from_string("0110101"),
                                         Genome::from_string("1001010")};
    if (div(complement) != 2.0) {
        res.passed = false;
        res.detail = "complementary pair does not give 2";
        return res;
    }
    res.detail = "50 random populations, identical and complementary cases";
    return res;
}

inline OracleResult check_ring_path_length(const PathLengthFn& path_length =
                                               [](const PopulationGraph& g) {
                                                   return network_stats(g).char_path_length;
                                               }) {
    OracleResult res{"ring-path-length", true, ""};
    for (std::size_t m = 3; m <= 40; ++m) {
        const auto ring = PopulationGraph::new_ring(m);
        const double l = path_length(ring);
        if (l != path_length_oracle(ring)) {
            res.passed = false;
            res.detail = "Floyd-Warshall mismatch at M=" + std::to_string(m);
            return res;
        }
        if (m % 2 == 0) {
            const double closed = static_cast<double>(m * m) / static_cast<double>(4 * (m - 1));
            if (l != closed) {
                res.passed = false;
                res.detail = "M^2/(4(M-1)) mismatch at M=" + std::to_string(m);
                return res;
            }
        }
    }
    res.detail = "M = 3..40";
    return res;
}

struct EliminationLog {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> deaths; // (winner, loser)
};

/// Panmictic runs in epistatic and raw mode from the same seed must eliminate
/// the same individuals in the same order, and at every generation boundary
/// `fitness` must order every pair of individuals exactly as the objective does.
inline OracleResult check_panmictic_equivalence(
    const FitnessFn& fitness = [](const EaState& s, NodeId id) { return epistatic_fitness(s, id); },
    std::size_t m = 50, std::size_t generations = 200, std::uint64_t seed = 11) {
    OracleResult res{"panmictic-equivalence", true, ""};
    EaConfig c;
    c.variant = Variant::panmictic;
    c.m = m;
    c.generations = generations;
    c.seed = seed;

    auto logged = [&](FitnessMode mode, EliminationLog& log, bool check_order) {
        c.fitness_mode = mode;
        return evolve(
            c,
            [&](const EaState& s) {
                if (!check_order || !res.passed) {
                    return;
                }
                const auto& members = s.population.members();
                std::vector<double> f;
                for (const auto& ind : members) {
                    f.push_back(fitness(s, ind.id));
                }
                for (std::size_t i = 0; i < members.size(); ++i) {
                    for (std::size_t j = i + 1; j < members.size(); ++j) {
                        const double dobj = members[i].objective - members[j].objective;
                        const double dfit = f[i] - f[j];
                        if ((dobj > 0) != (dfit > 0) || (dobj < 0) != (dfit < 0)) {
                            res.passed = false;
                            res.detail = "fitness order differs from objective order at generation " +
                                         std::to_string(s.generation);
                            return;
                        }
                    }
                }
            },
            [&](const TraceEvent& e) {
                if (e.kind == EventKind::death) {
                    log.deaths.emplace_back(to_index(e.actor), to_index(e.other));
                }
            });
    };
    EliminationLog epi;
    EliminationLog raw;
    const auto s_epi = logged(FitnessMode::epistatic, epi, true);
    const auto s_raw = logged(FitnessMode::raw, raw, false);
    if (!res.passed) {
        return res;
    }
    if (epi.deaths != raw.deaths) {
        res.passed = false;
        res.detail = "elimination sequences differ";
        return res;
    }
    const auto& a = s_epi.population.members();
    const auto& b = s_raw.population.members();
    if (a.size() != b.size()) {
        res.passed = false;
        res.detail = "final population sizes differ";
        return res;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].id != b[i].id || a[i].genome != b[i].genome) {
            res.passed = false;
            res.detail = "final populations differ";
            return res;
        }
    }
    res.detail = std::to_string(epi.deaths.size()) + " identical eliminations";
    return res;
}

/// True iff g is one cycle through all of its nodes.
inline bool is_single_cycle(const PopulationGraph& g) {
    const auto ids = g.nodes();
    if (ids.size() < 3 || g.edge_count() != ids.size()) {
        return false;
    }
    for (NodeId id : ids) {
        if (g.degree(id) != 2) {
            return false;
        }
    }
    // Walk the cycle from the first node.
    NodeId prev = ids.front();
    NodeId cur = g.neighbors(prev)[0];
    std::size_t steps = 1;
    while (cur != ids.front()) {
        const auto nb = g.neighbors(cur);
        const NodeId next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
        if (++steps > ids.size()) {
            return false;
        }
    }
    return steps == ids.size();
}

inline OracleResult check_cellular_ring(std::size_t m = 50, std::size_t generations = 200,
                                        std::uint64_t seed = 12) {
    OracleResult res{"cellular-ring", true, ""};
    EaConfig c;
    c.variant = Variant::cellular;
    c.m = m;
    c.generations = generations;
    c.seed = seed;
    evolve(c, [&](const EaState& s) {
        if (res.passed && (s.population.size() != m || !is_single_cycle(*s.graph))) {
            res.passed = false;
            res.detail = "not a single M-cycle at generation " + std::to_string(s.generation);
        }
    });
    if (res.passed) {
        res.detail = std::to_string(generations + 1) + " boundaries checked";
    }
    return res;
}

inline std::vector<OracleResult> run_all() {
    return {check_nk_evaluation(), check_diversity(), check_ring_path_length(),
            check_panmictic_equivalence(), check_cellular_ring()};
}

} // namespace sotea::verify
