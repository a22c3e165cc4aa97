#pragma once

/// @file experiment.hpp
/// @brief Experiment specs, sweep expansion, parallel replications and the
/// files written for each kind of experiment.
///
/// Spec files are JSON with comments allowed. Replication r of every sweep
/// point uses the run seed derive_seed(master, replication, r), so variants
/// compared at the same r share their landscape and initial population.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "sotea/analysis.hpp"
#include "sotea/csv.hpp"
#include "sotea/engine.hpp"
#include "sotea/graph_export.hpp"
#include "sotea/network_stats.hpp"
#include "sotea/run.hpp"

namespace sotea {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Invalid or unreadable experiment spec.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failure writing outputs.
struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sweep size times replications exceeds the configured limit.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::size_t metric_stride = 1;
    std::size_t network_stride = 0;
    std::vector<std::size_t> histogram_generations;
};

struct ExperimentSpec {
    std::string name = "experiment";
    EaConfig base;
    std::vector<Variant> variants;
    std::vector<FitnessMode> fitness_modes;
    std::vector<std::size_t> ks;
    std::vector<std::size_t> ms;
    std::size_t replications = 10;
    OutputOptions outputs;
    /// Generation at which `netstats` measures the network.
    std::size_t measure_generation = 1000;
    std::size_t max_runs = 2000;
};

namespace detail {

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

inline void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> known,
                                const std::string& where) {
    for (const auto& [key, _] : j.items()) {
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
            throw SpecError("unknown key '" + key + "' in " + where);
        }
    }
}

} // namespace detail

inline ExperimentSpec parse_spec(const nlohmann::json& j) {
    try {
        if (!j.is_object()) {
            throw SpecError("spec must be a JSON object");
        }
        detail::reject_unknown_keys(j, {"name", "base", "sweep", "replications", "seed", "outputs",
                                        "netstats", "budget"},
                                    "spec");
        ExperimentSpec spec;
        spec.name = detail::get_or<std::string>(j, "name", spec.name);
        if (j.contains("base")) {
            const auto& b = j.at("base");
            detail::reject_unknown_keys(b, {"variant", "fitness_mode", "m", "generations", "n", "k",
                                            "mutation_rate", "p_add", "p_remove"},
                                        "base");
            auto& c = spec.base;
            c.variant = parse_variant(detail::get_or<std::string>(b, "variant", "sotea"));
            c.fitness_mode =
                parse_fitness_mode(detail::get_or<std::string>(b, "fitness_mode", "epistatic"));
            c.m = detail::get_or<std::size_t>(b, "m", c.m);
            c.generations = detail::get_or<std::size_t>(b, "generations", c.generations);
            c.n = detail::get_or<std::size_t>(b, "n", c.n);
            c.k_nk = detail::get_or<std::size_t>(b, "k", c.k_nk);
            if (b.contains("mutation_rate") && !b.at("mutation_rate").is_null()) {
                c.mutation_rate = b.at("mutation_rate").get<double>();
            }
            c.p_add = detail::get_or<double>(b, "p_add", c.p_add);
            c.p_remove = detail::get_or<double>(b, "p_remove", c.p_remove);
        }
        spec.base.seed = detail::get_or<std::uint64_t>(j, "seed", spec.base.seed);
        if (j.contains("sweep")) {
            const auto& s = j.at("sweep");
            detail::reject_unknown_keys(s, {"variant", "fitness_mode", "k", "m"}, "sweep");
            for (const auto& v : detail::get_or<std::vector<std::string>>(s, "variant", {})) {
                spec.variants.push_back(parse_variant(v));
            }
            for (const auto& f : detail::get_or<std::vector<std::string>>(s, "fitness_mode", {})) {
                spec.fitness_modes.push_back(parse_fitness_mode(f));
            }
            spec.ks = detail::get_or<std::vector<std::size_t>>(s, "k", {});
            spec.ms = detail::get_or<std::vector<std::size_t>>(s, "m", {});
        }
        spec.replications = detail::get_or<std::size_t>(j, "replications", spec.replications);
        if (j.contains("outputs")) {
            const auto& o = j.at("outputs");
            detail::reject_unknown_keys(
                o, {"metric_stride", "network_stride", "histogram_generations"}, "outputs");
            spec.outputs.metric_stride =
                detail::get_or<std::size_t>(o, "metric_stride", spec.outputs.metric_stride);
            spec.outputs.network_stride =
                detail::get_or<std::size_t>(o, "network_stride", spec.outputs.network_stride);
            spec.outputs.histogram_generations =
                detail::get_or<std::vector<std::size_t>>(o, "histogram_generations", {});
        }
        if (j.contains("netstats")) {
            detail::reject_unknown_keys(j.at("netstats"), {"measure_generation"}, "netstats");
            spec.measure_generation = detail::get_or<std::size_t>(
                j.at("netstats"), "measure_generation", spec.measure_generation);
        }
        if (j.contains("budget")) {
            detail::reject_unknown_keys(j.at("budget"), {"max_runs"}, "budget");
            spec.max_runs = detail::get_or<std::size_t>(j.at("budget"), "max_runs", spec.max_runs);
        }
        if (spec.replications == 0) {
            throw SpecError("replications must be at least 1");
        }
        if (spec.name.empty() ||
            spec.name.find_first_of("/\\") != std::string::npos) {
            throw SpecError("name must be a non-empty plain file name");
        }
        return spec;
    } catch (const SpecError&) {
        throw;
    } catch (const std::exception& e) {
        throw SpecError(e.what());
    }
}

inline ExperimentSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw SpecError("cannot read spec file " + path.string());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(path.string() + ": " + e.what());
    }
    return parse_spec(j);
}

/// Fully resolved spec, every default written out.
inline nlohmann::json to_json(const ExperimentSpec& spec) {
    auto names = [](const auto& values) {
        std::vector<std::string> out;
        for (auto v : values) {
            out.emplace_back(to_string(v));
        }
        return out;
    };
    const auto& c = spec.base;
    return {
        {"name", spec.name},
        {"base",
         {{"variant", to_string(c.variant)},
          {"fitness_mode", to_string(c.fitness_mode)},
          {"m", c.m},
          {"generations", c.generations},
          {"n", c.n},
          {"k", c.k_nk},
          {"mutation_rate", c.effective_mutation_rate()},
          {"p_add", c.p_add},
          {"p_remove", c.p_remove}}},
        {"sweep",
         {{"variant", names(spec.variants)},
          {"fitness_mode", names(spec.fitness_modes)},
          {"k", spec.ks},
          {"m", spec.ms}}},
        {"replications", spec.replications},
        {"seed", c.seed},
        {"outputs",
         {{"metric_stride", spec.outputs.metric_stride},
          {"network_stride", spec.outputs.network_stride},
          {"histogram_generations", spec.outputs.histogram_generations}}},
        {"netstats", {{"measure_generation", spec.measure_generation}}},
        {"budget", {{"max_runs", spec.max_runs}}},
    };
}

struct SweepPoint {
    std::string label;
    EaConfig config;
};

/// Cross product variant x fitness_mode x k x m; an empty axis means the base value.
inline std::vector<SweepPoint> expand(const ExperimentSpec& spec) {
    const auto& b = spec.base;
    const auto variants = spec.variants.empty() ? std::vector{b.variant} : spec.variants;
    const auto modes = spec.fitness_modes.empty() ? std::vector{b.fitness_mode} : spec.fitness_modes;
    const auto ks = spec.ks.empty() ? std::vector{b.k_nk} : spec.ks;
    const auto ms = spec.ms.empty() ? std::vector{b.m} : spec.ms;
    std::vector<SweepPoint> points;
    for (auto v : variants) {
        for (auto f : modes) {
            for (auto k : ks) {
                for (auto m : ms) {
                    EaConfig c = b;
                    c.variant = v;
                    c.fitness_mode = f;
                    c.k_nk = k;
                    c.m = m;
                    c.validate();
                    std::string label = std::string(to_string(v)) + "_" + std::string(to_string(f)) +
                                        "_k" + std::to_string(k) + "_m" + std::to_string(m);
                    points.push_back({std::move(label), c});
                }
            }
        }
    }
    return points;
}

inline std::uint64_t replication_seed(std::uint64_t master, std::size_t r) {
    return derive_seed(master, Stream::replication, r);
}

/// Validates the spec and the run budget; throws SpecError or BudgetError.
inline std::vector<SweepPoint> plan(const ExperimentSpec& spec) {
    std::vector<SweepPoint> points;
    try {
        points = expand(spec);
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
    }
    const auto total = points.size() * spec.replications;
    if (total > spec.max_runs) {
        throw BudgetError(std::to_string(total) + " runs exceed the budget of " +
                          std::to_string(spec.max_runs));
    }
    return points;
}

/// Calls job(i) for i in [0, count) on up to `workers` threads. Each job owns
/// its results slot; the first exception is rethrown after all threads join.
template <class Job>
void parallel_for(std::size_t count, std::size_t workers, Job job) {
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

/// records[point][replication]
using RecordGrid = std::vector<std::vector<RunRecord>>;

inline RecordGrid execute(const std::vector<SweepPoint>& points, std::size_t replications,
                          const RecordOptions& options, std::size_t workers) {
    RecordGrid grid(points.size(), std::vector<RunRecord>(replications));
    parallel_for(points.size() * replications, workers, [&](std::size_t job) {
        const auto p = job / replications;
        const auto r = job % replications;
        EaConfig c = points[p].config;
        c.seed = replication_seed(points[p].config.seed, r);
        grid[p][r] = run(c, options);
    });
    return grid;
}

inline RecordOptions record_options(const OutputOptions& o) {
    RecordOptions r;
    r.metric_stride = o.metric_stride;
    r.network_stride = o.network_stride;
    r.histogram_generations = o.histogram_generations;
    return r;
}

// ---------------------------------------------------------------- writers

inline void write_run_csv(std::ostream& out, const RunRecord& rec) {
    out << csv::kFormatLine
        << "\ngeneration,best_objective,mean_objective,diversity_full,diversity_top20,L,k_ave,"
           "components\n";
    for (const auto& r : rec.rows) {
        out << r.generation << ',' << csv::format(r.best_objective) << ','
            << csv::format(r.mean_objective) << ',' << csv::format(r.diversity_full) << ','
            << csv::format(r.diversity_top20) << ',' << csv::format(r.char_path_length) << ','
            << csv::format(r.degree_average) << ',' << csv::format(r.component_count) << '\n';
    }
}

inline void write_aggregate_csv(std::ostream& out, const Aggregate& agg) {
    out << csv::kFormatLine << "\ngeneration";
    for (const auto& c : agg.columns) {
        out << ',' << c.name << "_mean," << c.name << "_std";
    }
    out << '\n';
    for (std::size_t i = 0; i < agg.generations.size(); ++i) {
        out << agg.generations[i];
        for (const auto& c : agg.columns) {
            out << ',' << csv::format(c.mean[i]) << ',' << csv::format(c.stddev[i]);
        }
        out << '\n';
    }
}

inline void write_histogram_csv(std::ostream& out, const DegreeHistogram& h) {
    out << csv::kFormatLine << "\ndegree,count\n";
    for (auto [d, n] : h) {
        out << d << ',' << n << '\n';
    }
}

namespace detail {

inline void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw OutputError("cannot create " + dir.string() + ": " + ec.message());
    }
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    ensure_dir(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw OutputError("cannot open " + path.string() + " for writing");
    }
    writer(out);
    out.flush();
    if (!out) {
        throw OutputError("write failed for " + path.string());
    }
}

inline nlohmann::json manifest(const ExperimentSpec& spec, const std::string& command,
                               const std::vector<SweepPoint>& points) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& p : points) {
        for (std::size_t r = 0; r < spec.replications; ++r) {
            const auto seed = replication_seed(p.config.seed, r);
            runs.push_back({{"point", p.label},
                            {"replication", r},
                            {"seed", seed},
                            {"landscape_seed", derive_seed(seed, Stream::landscape)}});
        }
    }
    return {{"artifact", "sotea"},
            {"version", kArtifactVersion},
            {"command", command},
            {"spec", to_json(spec)},
            {"runs", std::move(runs)}};
}

} // namespace detail

/// `run`: every sweep point x replication, per-run CSVs, per-point aggregates
/// and a manifest.
inline RecordGrid run_experiment(const ExperimentSpec& spec, const std::filesystem::path& out_dir,
                                 std::size_t workers) {
    const auto points = plan(spec);
    auto grid = execute(points, spec.replications, record_options(spec.outputs), workers);
    for (std::size_t p = 0; p < points.size(); ++p) {
        const auto& label = points[p].label;
        for (std::size_t r = 0; r < spec.replications; ++r) {
            const auto& rec = grid[p][r];
            const auto stem = "rep" + std::to_string(r) + ".csv";
            detail::write_file(out_dir / "runs" / label / stem,
                               [&](std::ostream& o) { write_run_csv(o, rec); });
            for (const auto& h : rec.histograms) {
                detail::write_file(out_dir / "histograms" / label /
                                       ("rep" + std::to_string(r) + "_g" +
                                        std::to_string(h.generation) + ".csv"),
                                   [&](std::ostream& o) { write_histogram_csv(o, h.histogram); });
            }
        }
        const auto agg = aggregate(grid[p]);
        detail::write_file(out_dir / "aggregate" / (label + ".csv"),
                           [&](std::ostream& o) { write_aggregate_csv(o, agg); });
    }
    detail::write_file(out_dir / "manifest.json", [&](std::ostream& o) {
        o << detail::manifest(spec, "run", points).dump(2) << '\n';
    });
    return grid;
}

// ---------------------------------------------------------------- netstats

struct NetstatsRow {
    std::size_t m = 0;
    double l_mean = 0.0;
    double l_std = 0.0;
    double k_ave_mean = 0.0;
    double k_ave_std = 0.0;
    double components_mean = 1.0;
    DegreeHistogram pooled_histogram;
    bool analytic = false;
};

struct NetstatsFit {
    std::string quantity;
    std::string model;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

struct NetstatsResult {
    Variant variant = Variant::sotea;
    std::vector<NetstatsRow> rows;
    DegreeHistogram pooled_histogram;
    std::vector<NetstatsFit> fits;

    [[nodiscard]] const NetstatsFit& fit(const std::string& quantity,
                                         const std::string& model) const {
        for (const auto& f : fits) {
            if (f.quantity == quantity && f.model == model) {
                return f;
            }
        }
        throw std::out_of_range("no fit " + quantity + "/" + model);
    }
};

inline constexpr std::size_t kDefaultNetstatsSizes[] = {50, 100, 200, 400};

/// Network statistics at the measurement generation for every M, averaged over
/// replications. The panmictic network is complete, so its row is analytic.
inline NetstatsResult compute_netstats(const ExperimentSpec& spec, std::size_t workers) {
    if (!spec.variants.empty() && spec.variants.size() != 1) {
        throw SpecError("netstats takes a single variant");
    }
    ExperimentSpec s = spec;
    if (s.ms.empty()) {
        s.ms.assign(std::begin(kDefaultNetstatsSizes), std::end(kDefaultNetstatsSizes));
    }
    s.base.generations = s.measure_generation;
    const auto points = plan(s);
    for (const auto& p : points) {
        if (p.config.variant != points.front().config.variant) {
            throw SpecError("netstats takes a single variant");
        }
    }
    if (points.size() != s.ms.size()) {
        throw SpecError("netstats sweeps only over m");
    }

    NetstatsResult result;
    result.variant = points.front().config.variant;
    if (result.variant == Variant::panmictic) {
        for (auto m : s.ms) {
            NetstatsRow row;
            row.m = m;
            row.l_mean = 1.0;
            row.k_ave_mean = static_cast<double>(m - 1);
            row.pooled_histogram[m - 1] = m * s.replications;
            row.analytic = true;
            result.rows.push_back(row);
        }
        return result;
    }

    RecordOptions options;
    options.metric_stride = 0;
    options.network_stride = std::max<std::size_t>(s.measure_generation, 1);
    options.histogram_generations = {s.measure_generation};
    const auto grid = execute(points, s.replications, options, workers);
    std::vector<std::pair<double, double>> l_points;
    std::vector<std::pair<double, double>> k_points;
    for (std::size_t p = 0; p < points.size(); ++p) {
        NetstatsRow row;
        row.m = points[p].config.m;
        std::vector<double> ls;
        std::vector<double> ks;
        double comps = 0.0;
        for (const auto& rec : grid[p]) {
            const auto& last = rec.rows.back();
            ls.push_back(last.char_path_length.value_or(0.0));
            ks.push_back(last.degree_average.value_or(0.0));
            comps += last.component_count.value_or(0.0);
            for (auto [d, n] : rec.histograms.back().histogram) {
                row.pooled_histogram[d] += n;
                result.pooled_histogram[d] += n;
            }
        }
        auto mean_std = [](const std::vector<double>& v) {
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= static_cast<double>(v.size());
            double ss = 0.0;
            for (double x : v) ss += (x - mean) * (x - mean);
            const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
            return std::pair{mean, sd};
        };
        std::tie(row.l_mean, row.l_std) = mean_std(ls);
        std::tie(row.k_ave_mean, row.k_ave_std) = mean_std(ks);
        row.components_mean = comps / static_cast<double>(grid[p].size());
        l_points.emplace_back(static_cast<double>(row.m), row.l_mean);
        k_points.emplace_back(static_cast<double>(row.m), row.k_ave_mean);
        result.rows.push_back(std::move(row));
    }
    if (l_points.size() >= 3) {
        const auto lf = fit_log_linear(l_points);
        const auto kf = fit_log_linear(k_points);
        result.fits.push_back({"L", "log", lf.slope, lf.intercept, lf.r_squared});
        result.fits.push_back({"k_ave", "log", kf.slope, kf.intercept, kf.r_squared});
        const auto ll = fit_linear(l_points);
        result.fits.push_back({"L", "linear", ll.slope, ll.intercept, ll.r_squared});
    }
    auto add_exp = [&](const std::string& quantity, const DegreeHistogram& h) {
        std::size_t bins = 0;
        for (auto [d, n] : h) {
            bins += n > 0 ? 1 : 0;
        }
        if (bins >= 3) {
            const auto ef = fit_exponential(h);
            result.fits.push_back({quantity, "exponential", -ef.rate, ef.log_amplitude, ef.r_squared});
        }
    };
    add_exp("degree_pooled", result.pooled_histogram);
    for (const auto& row : result.rows) {
        add_exp("degree_m" + std::to_string(row.m), row.pooled_histogram);
    }
    return result;
}

inline void write_netstats(const std::filesystem::path& out_dir, const NetstatsResult& result) {
    detail::write_file(out_dir / "netstats.csv", [&](std::ostream& o) {
        o << csv::kFormatLine
          << "\nvariant,M,L_mean,L_std,k_ave_mean,k_ave_std,components_mean,L_over_M,k_ave_over_M,"
             "analytic\n";
        for (const auto& r : result.rows) {
            const double m = static_cast<double>(r.m);
            o << to_string(result.variant) << ',' << r.m << ',' << csv::format(r.l_mean) << ','
              << csv::format(r.l_std) << ',' << csv::format(r.k_ave_mean) << ','
              << csv::format(r.k_ave_std) << ',' << csv::format(r.components_mean) << ','
              << csv::format(r.l_mean / m) << ',' << csv::format(r.k_ave_mean / m) << ','
              << (r.analytic ? 1 : 0) << '\n';
        }
    });
    detail::write_file(out_dir / "netstats_fits.csv", [&](std::ostream& o) {
        o << csv::kFormatLine << "\nquantity,model,slope,intercept,r_squared\n";
        for (const auto& f : result.fits) {
            o << f.quantity << ',' << f.model << ',' << csv::format(f.slope) << ','
              << csv::format(f.intercept) << ',' << csv::format(f.r_squared) << '\n';
        }
    });
    detail::write_file(out_dir / "degree_histogram_pooled.csv",
                       [&](std::ostream& o) { write_histogram_csv(o, result.pooled_histogram); });
    for (const auto& r : result.rows) {
        detail::write_file(out_dir / ("degree_histogram_m" + std::to_string(r.m) + ".csv"),
                           [&](std::ostream& o) { write_histogram_csv(o, r.pooled_histogram); });
    }
}

inline NetstatsResult run_netstats(const ExperimentSpec& spec, const std::filesystem::path& out_dir,
                                   std::size_t workers) {
    auto result = compute_netstats(spec, workers);
    write_netstats(out_dir, result);
    ExperimentSpec resolved = spec;
    if (resolved.ms.empty()) {
        resolved.ms.assign(std::begin(kDefaultNetstatsSizes), std::end(kDefaultNetstatsSizes));
    }
    resolved.base.generations = resolved.measure_generation;
    std::vector<SweepPoint> points;
    if (result.variant != Variant::panmictic) {
        points = plan(resolved);
    }
    detail::write_file(out_dir / "manifest.json", [&](std::ostream& o) {
        o << detail::manifest(resolved, "netstats", points).dump(2) << '\n';
    });
    return result;
}

// ---------------------------------------------------------------- snapshot

/// State of replication 0 of the spec's first sweep point at `generation`.
inline EaState snapshot_state(const ExperimentSpec& spec, std::size_t generation) {
    const auto points = plan(spec);
    EaConfig c = points.front().config;
    if (c.variant == Variant::panmictic) {
        throw SpecError("snapshot needs a structured variant (cellular or sotea)");
    }
    c.seed = replication_seed(c.seed, 0);
    c.generations = generation;
    return evolve(c);
}

inline void write_snapshot(const std::filesystem::path& dir, const EaState& state) {
    detail::write_file(dir / "graph.dot", [&](std::ostream& o) { write_dot(o, *state.graph); });
    detail::write_file(dir / "edges.csv", [&](std::ostream& o) { write_edge_list(o, *state.graph); });
    detail::write_file(dir / "nodes.csv",
                       [&](std::ostream& o) { write_node_attributes(o, state); });
    detail::write_file(dir / "pressure_epistatic.csv", [&](std::ostream& o) {
        write_pressure_edges(o, selection_pressure_edges(state, FitnessMode::epistatic));
    });
    detail::write_file(dir / "pressure_raw.csv", [&](std::ostream& o) {
        write_pressure_edges(o, selection_pressure_edges(state, FitnessMode::raw));
    });
}

inline EaState run_snapshot(const ExperimentSpec& spec, std::size_t generation,
                            const std::filesystem::path& out_dir) {
    auto state = snapshot_state(spec, generation);
    const auto dir = out_dir / ("snapshot_g" + std::to_string(generation));
    write_snapshot(dir, state);
    ExperimentSpec resolved = spec;
    resolved.replications = 1;
    resolved.base.generations = generation;
    auto points = plan(resolved);
    points.resize(1);
    detail::write_file(dir / "manifest.json", [&](std::ostream& o) {
        o << detail::manifest(resolved, "snapshot", points).dump(2) << '\n';
    });
    return state;
}

} // namespace sotea
