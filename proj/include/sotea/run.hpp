#pragma once

/// @file run.hpp
/// @brief One complete run from a config: landscape, init, generations, metrics.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "sotea/analysis.hpp"
#include "sotea/engine.hpp"
#include "sotea/nk_landscape.hpp"
#include "sotea/rng.hpp"

namespace sotea {

struct RecordOptions {
    /// Metrics row every `metric_stride` generations, plus generation 0 and the
    /// last generation. 0 records only those two.
    std::size_t metric_stride = 1;
    /// Network statistics on rows whose generation is a multiple of this;
    /// 0 disables them.
    std::size_t network_stride = 0;
    /// Generations at which the degree histogram is stored.
    std::vector<std::size_t> histogram_generations;
    std::function<void(const TraceEvent&)> trace;
};

inline NkLandscape landscape_for(const EaConfig& config) {
    return NkLandscape::generate(config.n, config.k_nk,
                                 derive_seed(config.seed, Stream::landscape));
}

namespace detail {

inline bool on_stride(std::size_t g, std::size_t stride) { return stride != 0 && g % stride == 0; }

inline void record(const EaState& state, const RecordOptions& options, RunRecord& out) {
    const std::size_t g = state.generation;
    const bool last = g == state.config.generations;
    if (g == 0 || last || on_stride(g, options.metric_stride)) {
        out.rows.push_back(measure(state, on_stride(g, options.network_stride) ||
                                              (last && options.network_stride != 0)));
    }
    if (state.graph && std::find(options.histogram_generations.begin(),
                                 options.histogram_generations.end(),
                                 g) != options.histogram_generations.end()) {
        out.histograms.push_back({g, degree_histogram(*state.graph)});
    }
}

} // namespace detail

/// Runs to config.generations and returns the final state. `observe` is called
/// at every generation boundary, including generation 0.
inline EaState evolve(const EaConfig& config,
                      const std::function<void(const EaState&)>& observe = {},
                      std::function<void(const TraceEvent&)> trace = {}) {
    auto landscape = std::make_shared<const NkLandscape>(landscape_for(config));
    EaState state = init(config, std::move(landscape));
    state.trace = std::move(trace);
    if (observe) {
        observe(state);
    }
    while (state.generation < config.generations) {
        run_generation(state);
        if (observe) {
            observe(state);
        }
    }
    return state;
}

inline RunRecord run(const EaConfig& config, const RecordOptions& options = {}) {
    RunRecord rec;
    rec.config = config;
    const auto final_state = evolve(
        config, [&](const EaState& s) { detail::record(s, options, rec); }, options.trace);
    rec.isolated_selections = final_state.isolated_selections;
    return rec;
}

} // namespace sotea
