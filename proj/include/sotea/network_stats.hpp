#pragma once

/// @file network_stats.hpp
/// @brief Topology statistics of an interaction network and the least-squares
/// fits used to summarize how they scale with population size.

#include <cmath>
#include <cstddef>
#include <map>
#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sotea/population_graph.hpp"

namespace sotea {

using DegreeHistogram = std::map<std::size_t, std::size_t>;

struct NetworkStats {
    /// Mean shortest-path length over connected ordered pairs; 0 without edges.
    double char_path_length = 0.0;
    double degree_average = 0.0;
    DegreeHistogram degree_histogram;
    std::size_t component_count = 0;
};

inline DegreeHistogram degree_histogram(const PopulationGraph& g) {
    DegreeHistogram h;
    for (NodeId id : g.nodes()) {
        ++h[g.degree(id)];
    }
    return h;
}

/// BFS from every node. Unreachable pairs are excluded from L and show up in
/// component_count instead.
inline NetworkStats network_stats(const PopulationGraph& g) {
    const auto ids = g.nodes();
    const std::size_t n = ids.size();
    if (n == 0) {
        throw std::invalid_argument("network_stats: empty graph");
    }
    std::unordered_map<NodeId, std::size_t> index;
    index.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        index.emplace(ids[i], i);
    }
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (NodeId x : g.neighbors(ids[i])) {
            adj[i].push_back(index.at(x));
        }
    }

    NetworkStats stats;
    std::vector<std::size_t> dist(n);
    std::vector<std::size_t> component(n, n);
    std::vector<std::size_t> queue;
    queue.reserve(n);
    unsigned long long distance_sum = 0;
    unsigned long long pair_count = 0;
    constexpr auto unseen = static_cast<std::size_t>(-1);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), unseen);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        if (component[s] == n) {
            component[s] = stats.component_count++;
        }
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t u = queue[head];
            for (std::size_t v : adj[u]) {
                if (dist[v] == unseen) {
                    dist[v] = dist[u] + 1;
                    component[v] = component[s];
                    distance_sum += dist[v];
                    ++pair_count;
                    queue.push_back(v);
                }
            }
        }
    }
    if (pair_count > 0) {
        stats.char_path_length =
            static_cast<double>(distance_sum) / static_cast<double>(pair_count);
    }
    stats.degree_average = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);
    stats.degree_histogram = degree_histogram(g);
    return stats;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};

/// Ordinary least squares of y on x. R^2 = 1 - SSres/SStot, taken as 1 when
/// SStot is zero.
inline LinearFit fit_linear(const std::vector<std::pair<double, double>>& xy) {
    if (xy.size() < 2) {
        throw std::invalid_argument("fit_linear: need at least 2 points");
    }
    const double count = static_cast<double>(xy.size());
    double mx = 0.0;
    double my = 0.0;
    for (auto [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (auto [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_linear: all x values are equal");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (auto [x, y] : xy) {
        const double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
    }
    fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

/// value ~ slope * ln(m) + intercept.
inline LinearFit fit_log_linear(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) {
        throw std::invalid_argument("fit_log_linear: need at least 3 points");
    }
    std::vector<std::pair<double, double>> xy;
    xy.reserve(points.size());
    for (auto [m, v] : points) {
        if (!(m > 0.0)) {
            throw std::invalid_argument("fit_log_linear: m must be positive");
        }
        xy.emplace_back(std::log(m), v);
    }
    return fit_linear(xy);
}

struct ExponentialFit {
    /// count ~ exp(log_amplitude - rate * degree)
    double rate = 0.0;
    double log_amplitude = 0.0;
    /// Coefficient of determination in log space.
    double r_squared = 1.0;
};

/// Least squares of ln(count) against degree over bins with count > 0.
inline ExponentialFit fit_exponential(const DegreeHistogram& histogram) {
    std::vector<std::pair<double, double>> xy;
    for (auto [degree, count] : histogram) {
        if (count > 0) {
            xy.emplace_back(static_cast<double>(degree), std::log(static_cast<double>(count)));
        }
    }
    if (xy.size() < 3) {
        throw std::invalid_argument("fit_exponential: need at least 3 non-empty bins");
    }
    const auto line = fit_linear(xy);
    return {-line.slope, line.intercept, line.r_squared};
}

} // namespace sotea
