// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// The statistical criteria run the bundled presets at full size.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>

#include "sotea/experiment.hpp"
#include "sotea/verify.hpp"

using namespace sotea;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::size_t workers() { return std::max(1U, std::thread::hardware_concurrency()); }

ExperimentSpec preset(const std::string& name) {
    return load_spec(fs::path(SOTEA_PRESET_DIR) / (name + ".json"));
}

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "sotea_acceptance";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct Stat {
    double mean = 0.0;
    double sd = 0.0;
    std::size_t n = 0;
};

Stat stat_at(const std::vector<RunRecord>& reps, std::size_t generation,
             double RunRow::*column) {
    Stat s;
    s.n = reps.size();
    for (const auto& r : reps) s.mean += r.at_generation(generation).*column;
    s.mean /= static_cast<double>(s.n);
    double ss = 0.0;
    for (const auto& r : reps) {
        const double d = r.at_generation(generation).*column - s.mean;
        ss += d * d;
    }
    s.sd = s.n > 1 ? std::sqrt(ss / static_cast<double>(s.n - 1)) : 0.0;
    return s;
}

/// Records of a preset's run keyed by variant name; the run's files land in
/// the scratch directory.
std::map<std::string, std::vector<RunRecord>> run_preset(const std::string& name,
                                                         const std::string& subdir) {
    const auto spec = preset(name);
    const auto points = plan(spec);
    const auto grid = run_experiment(spec, scratch() / subdir, workers());
    std::map<std::string, std::vector<RunRecord>> out;
    for (std::size_t p = 0; p < points.size(); ++p) {
        out[points[p].label] = grid[p];
    }
    return out;
}

std::string label(const char* variant, const char* mode, int k = 14, int m = 100) {
    return std::string(variant) + "_" + mode + "_k" + std::to_string(k) + "_m" + std::to_string(m);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome oracle(const verify::OracleResult& r) { return {r.passed, r.name + ": " + r.detail}; }

// Shared across criteria: epistatic runs to 5000 and 4000 generations, raw
// runs to 4000.
std::map<std::string, std::vector<RunRecord>> g_performance;
std::map<std::string, std::vector<RunRecord>> g_diversity_epi;
std::map<std::string, std::vector<RunRecord>> g_diversity_raw;

Outcome determinism() {
    g_performance = run_preset("performance", "performance_a");
    const auto second = run_preset("performance", "performance_b");
    std::size_t files = 0;
    for (const auto& entry : fs::recursive_directory_iterator(scratch() / "performance_a")) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), scratch() / "performance_a");
        if (slurp(entry.path()) != slurp(scratch() / "performance_b" / rel)) {
            return {false, "performance rerun differs in " + rel.string()};
        }
        ++files;
    }
    return {files > 0, "performance preset run twice, " + std::to_string(files) + " files byte-identical"};
}

Outcome diversity_ordering() {
    g_diversity_epi = run_preset("diversity_epistatic", "diversity_epistatic");
    const auto top = &RunRow::diversity_top20;
    const auto p = stat_at(g_diversity_epi[label("panmictic", "epistatic")], 4000, top);
    const auto c = stat_at(g_diversity_epi[label("cellular", "epistatic")], 4000, top);
    const auto s = stat_at(g_diversity_epi[label("sotea", "epistatic")], 4000, top);
    const bool ok = s.mean > c.mean && c.mean > p.mean && p.mean < 0.1 && s.mean >= 0.6;
    return {ok, "top-20% diversity at g4000: SOTEA " + fmt(s.mean) + " > Cellular " + fmt(c.mean) +
                    " > Panmictic " + fmt(p.mean) + "; need Panmictic < 0.1, SOTEA >= 0.6"};
}

Outcome raw_collapse() {
    g_diversity_raw = run_preset("diversity_raw", "diversity_raw");
    const auto top = &RunRow::diversity_top20;
    bool ok = true;
    std::string detail = "raw-mode top-20% diversity at g4000:";
    for (const char* v : {"panmictic", "cellular", "sotea"}) {
        const auto r = stat_at(g_diversity_raw[label(v, "raw")], 4000, top);
        ok = ok && r.mean < 0.2;
        detail += std::string(" ") + v + " " + fmt(r.mean);
    }
    const double raw_s = stat_at(g_diversity_raw[label("sotea", "raw")], 4000, top).mean;
    const double epi_s = stat_at(g_diversity_epi[label("sotea", "epistatic")], 4000, top).mean;
    const double drop = epi_s > 0.0 ? 1.0 - raw_s / epi_s : 0.0;
    ok = ok && drop >= 0.5;
    detail += "; need all < 0.2; SOTEA drop vs epistatic " + fmt(100.0 * drop, 1) + "% (need >= 50%)";
    return {ok, detail};
}

Outcome performance_trend() {
    if (g_performance.empty()) {
        g_performance = run_preset("performance", "performance_a");
    }
    const auto best = &RunRow::best_objective;
    const auto p = stat_at(g_performance[label("panmictic", "epistatic")], 5000, best);
    const auto c = stat_at(g_performance[label("cellular", "epistatic")], 5000, best);
    const auto s = stat_at(g_performance[label("sotea", "epistatic")], 5000, best);
    const double se = std::sqrt(s.sd * s.sd / static_cast<double>(s.n) +
                                p.sd * p.sd / static_cast<double>(p.n));
    const bool ok = s.mean >= c.mean && c.mean >= p.mean && s.mean - p.mean >= se;
    return {ok, "best objective at g5000: SOTEA " + fmt(s.mean) + " >= Cellular " + fmt(c.mean) +
                    " >= Panmictic " + fmt(p.mean) + "; SOTEA - Panmictic " + fmt(s.mean - p.mean) +
                    " vs pooled SE " + fmt(se)};
}

Outcome ruggedness_endpoints() {
    const auto runs = run_preset("ruggedness", "ruggedness");
    auto time_avg = [&](const char* v, int k) {
        const auto& reps = runs.at(label(v, "epistatic", k));
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& rec : reps) {
            for (const auto& row : rec.rows) {
                sum += row.diversity_top20;
                ++count;
            }
        }
        return sum / static_cast<double>(count);
    };
    bool ok = true;
    std::string detail = "time-averaged top-20% diversity, K=0:";
    for (const char* v : {"panmictic", "cellular", "sotea"}) {
        const double d = time_avg(v, 0);
        ok = ok && d < 0.05;
        detail += std::string(" ") + v + " " + fmt(d);
    }
    const double s14 = time_avg("sotea", 14);
    const double c14 = time_avg("cellular", 14);
    ok = ok && s14 > c14;
    detail += " (need all < 0.05); K=14: SOTEA " + fmt(s14) + " vs Cellular " + fmt(c14);
    return {ok, detail};
}

Outcome topology_scaling() {
    const auto spec = preset("topology_sotea");
    const auto r = run_netstats(spec, scratch() / "topology_sotea", workers());
    const double rl = r.fit("L", "log").r_squared;
    const double rk = r.fit("k_ave", "log").r_squared;
    const double rd = r.fit("degree_pooled", "exponential").r_squared;
    const auto& last = r.rows.back();
    const double ratio = last.k_ave_mean / static_cast<double>(last.m);
    const bool ok = rl >= 0.9 && rk >= 0.9 && rd >= 0.9 && last.m == 400 && ratio < 0.2;
    return {ok, "R^2 L~lnM " + fmt(rl) + ", k_ave~lnM " + fmt(rk) + ", pooled degree exponential " +
                    fmt(rd) + " (need >= 0.9); k_ave/M at M=400 " + fmt(ratio) + " (need < 0.2)"};
}

Outcome pressure_coupling() {
    auto spec = preset("pressure_snapshot");
    const auto base_seed = spec.base.seed;
    int successes = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        spec.base.seed = base_seed + s;
        const auto state = snapshot_state(spec, 100);
        const auto epi = selection_pressure_edges(state, FitnessMode::epistatic);
        const auto raw = selection_pressure_edges(state, FitnessMode::raw);
        bool differs = false;
        for (std::size_t i = 0; i < epi.size() && !differs; ++i) {
            differs = epi[i].target != raw[i].target;
        }
        successes += differs ? 1 : 0;
    }
    return {successes >= 9, std::to_string(successes) +
                                "/10 SOTEA snapshots at g100 have a node whose epistatic and raw "
                                "pressure targets differ (need >= 9)"};
}

} // namespace

int main() {
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, [] { return oracle(verify::check_nk_evaluation()); }},
        {2, [] { return oracle(verify::check_diversity()); }},
        {3, [] { return oracle(verify::check_ring_path_length()); }},
        {4, [] { return oracle(verify::check_panmictic_equivalence()); }},
        {5, [] { return oracle(verify::check_cellular_ring()); }},
        {6, determinism},
        {7, diversity_ordering},
        {8, raw_collapse},
        {9, performance_trend},
        {10, ruggedness_endpoints},
        {11, topology_scaling},
        {12, pressure_coupling},
    };
    int failed = 0;
    for (const auto& [number, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << "criterion " << number << ": " << (o.passed ? "PASS" : "FAIL") << " - "
                  << o.detail << " [" << fmt(secs, 1) << "s]" << std::endl;
        failed += o.passed ? 0 : 1;
    }
    std::cout << (12 - failed) << "/12 criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
