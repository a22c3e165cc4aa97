#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "sotea/experiment.hpp"
#include "sotea/verify.hpp"

using namespace sotea;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("sotea_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli(const std::string& args) {
    const std::string cmd = std::string("\"") + SOTEA_CLI + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

ExperimentSpec small_spec() {
    return parse_spec(nlohmann::json::parse(R"({
        "name": "small",
        "base": {"m": 20, "n": 12, "k": 3, "generations": 15},
        "sweep": {"variant": ["panmictic", "cellular", "sotea"]},
        "replications": 2,
        "seed": 5,
        "outputs": {"metric_stride": 5, "network_stride": 5, "histogram_generations": [15]}
    })"));
}

} // namespace

TEST(Spec, ParsesDefaultsAndOverrides) {
    const auto spec = small_spec();
    EXPECT_EQ(spec.base.m, 20U);
    EXPECT_EQ(spec.base.seed, 5U);
    EXPECT_EQ(spec.base.p_add, 0.1);
    EXPECT_EQ(spec.variants.size(), 3U);
    const auto points = expand(spec);
    ASSERT_EQ(points.size(), 3U);
    EXPECT_EQ(points[1].label, "cellular_epistatic_k3_m20");
    // The resolved form parses back to the same expansion.
    const auto again = parse_spec(to_json(spec));
    EXPECT_EQ(expand(again)[2].label, points[2].label);
    EXPECT_EQ(again.outputs.histogram_generations, spec.outputs.histogram_generations);
}

TEST(Spec, RejectsMalformedInput) {
    EXPECT_THROW(parse_spec(nlohmann::json::parse(R"({"bogus": 1})")), SpecError);
    EXPECT_THROW(parse_spec(nlohmann::json::parse(R"({"base": {"variant": "island"}})")), SpecError);
    EXPECT_THROW(parse_spec(nlohmann::json::parse(R"({"base": {"m": "many"}})")), SpecError);
    EXPECT_THROW(parse_spec(nlohmann::json::parse(R"({"replications": 0})")), SpecError);
    EXPECT_THROW(parse_spec(nlohmann::json::parse(R"({"name": "../x"})")), SpecError);
    EXPECT_THROW(plan(parse_spec(nlohmann::json::parse(R"({"base": {"n": 5, "k": 9}})"))), SpecError);
    EXPECT_THROW(plan(parse_spec(nlohmann::json::parse(
                     R"({"sweep": {"k": [1, 2, 3]}, "replications": 10, "budget": {"max_runs": 20}})"))),
                 BudgetError);
}

TEST(Spec, EveryPresetLoads) {
    std::size_t count = 0;
    for (const auto& entry : fs::directory_iterator(SOTEA_PRESET_DIR)) {
        const auto spec = load_spec(entry.path());
        EXPECT_NO_THROW(plan(spec)) << entry.path();
        ++count;
    }
    EXPECT_GE(count, 9U);
}

TEST(Experiment, ReplicationsShareSeedsAcrossPoints) {
    EXPECT_NE(replication_seed(5, 0), replication_seed(5, 1));
    const auto grid = execute(plan(small_spec()), 2, {}, 2);
    // same landscape and initial population for every variant at replication r
    EXPECT_EQ(grid[0][1].rows.front().mean_objective, grid[2][1].rows.front().mean_objective);
    EXPECT_NE(grid[0][0].rows.front().mean_objective, grid[0][1].rows.front().mean_objective);
}

TEST(Experiment, WritesFilesAndRerunsAreByteIdentical) {
    const auto dir = scratch("rerun");
    const auto spec = small_spec();
    run_experiment(spec, dir / "a", 2);
    run_experiment(spec, dir / "b", 1);
    const auto run_csv = fs::path("runs") / "sotea_epistatic_k3_m20" / "rep1.csv";
    ASSERT_TRUE(fs::exists(dir / "a" / run_csv));
    ASSERT_TRUE(fs::exists(dir / "a" / "aggregate" / "cellular_epistatic_k3_m20.csv"));
    ASSERT_TRUE(fs::exists(dir / "a" / "histograms" / "sotea_epistatic_k3_m20" / "rep0_g15.csv"));
    ASSERT_TRUE(fs::exists(dir / "a" / "manifest.json"));
    for (const auto& entry : fs::recursive_directory_iterator(dir / "a")) {
        if (entry.is_regular_file()) {
            const auto rel = fs::relative(entry.path(), dir / "a");
            EXPECT_EQ(slurp(entry.path()), slurp(dir / "b" / rel)) << rel;
        }
    }
    const auto text = slurp(dir / "a" / run_csv);
    EXPECT_EQ(text.rfind(csv::kFormatLine, 0), 0U);
    EXPECT_NE(text.find("\n15,"), std::string::npos);
    EXPECT_NE(text.find("\n5,"), std::string::npos);
    EXPECT_EQ(text.find("\n6,"), std::string::npos);
}

TEST(Netstats, PanmicticIsAnalytic) {
    auto spec = parse_spec(nlohmann::json::parse(
        R"({"base": {"variant": "panmictic"}, "sweep": {"m": [50, 100]}, "replications": 3})"));
    const auto r = compute_netstats(spec, 1);
    ASSERT_EQ(r.rows.size(), 2U);
    EXPECT_EQ(r.rows[1].l_mean, 1.0);
    EXPECT_EQ(r.rows[1].k_ave_mean, 99.0);
    EXPECT_TRUE(r.rows[0].analytic);
}

TEST(Netstats, CellularKeepsDegreeTwo) {
    auto spec = parse_spec(nlohmann::json::parse(R"({
        "base": {"variant": "cellular", "n": 12, "k": 3},
        "sweep": {"m": [10, 20, 40]}, "replications": 2,
        "netstats": {"measure_generation": 20}})"));
    const auto r = compute_netstats(spec, 1);
    ASSERT_EQ(r.rows.size(), 3U);
    for (const auto& row : r.rows) {
        EXPECT_EQ(row.k_ave_mean, 2.0);
        EXPECT_EQ(row.components_mean, 1.0);
    }
    EXPECT_GT(r.fit("L", "linear").r_squared, 0.99);
    EXPECT_THROW((void)r.fit("degree_pooled", "exponential"), std::out_of_range);
}

TEST(Snapshot, WritesGraphFilesAndGenerationZeroIsTheRing) {
    const auto dir = scratch("snapshot");
    auto spec = parse_spec(nlohmann::json::parse(R"({"base": {"m": 12, "n": 10, "k": 2}})"));
    const auto s0 = run_snapshot(spec, 0, dir);
    for (const char* f : {"graph.dot", "edges.csv", "nodes.csv", "pressure_epistatic.csv",
                          "pressure_raw.csv", "manifest.json"}) {
        EXPECT_TRUE(fs::exists(dir / "snapshot_g0" / f)) << f;
    }
    for (const auto& e : selection_pressure_edges(s0, FitnessMode::epistatic)) {
        EXPECT_TRUE(s0.graph->has_edge(e.source, e.target));
    }
    EXPECT_EQ(s0.graph->edge_count(), 12U);

    spec.base.variant = Variant::cellular;
    EXPECT_TRUE(verify::is_single_cycle(*snapshot_state(spec, 30).graph));
    spec.base.variant = Variant::panmictic;
    EXPECT_THROW(snapshot_state(spec, 5), SpecError);
}

TEST(Cli, ExitCodes) {
    const auto dir = scratch("cli");
    write_text(dir / "bad.json", R"({"name": "bad", "base": {"m": 2}})");
    EXPECT_EQ(cli("--out " + (dir / "out").string() + " run " + (dir / "bad.json").string()), 2);
    EXPECT_FALSE(fs::exists(dir / "out"));
    write_text(dir / "broken.json", "{ not json");
    EXPECT_EQ(cli("--out " + (dir / "out").string() + " run " + (dir / "broken.json").string()), 2);
    EXPECT_EQ(cli("--out " + (dir / "out").string() + " run " + (dir / "missing.json").string()), 2);
    EXPECT_FALSE(fs::exists(dir / "out"));
    write_text(dir / "big.json",
               R"({"name": "big", "sweep": {"k": [1, 2, 3]}, "budget": {"max_runs": 5}})");
    EXPECT_EQ(cli("--out " + (dir / "out").string() + " run " + (dir / "big.json").string()), 4);
    EXPECT_FALSE(fs::exists(dir / "out"));

    write_text(dir / "tiny.json",
               R"({"name": "tiny", "base": {"m": 10, "n": 8, "k": 2, "generations": 3},
                   "replications": 1})");
    EXPECT_EQ(cli("--out " + (dir / "out").string() + " --seed 9 run " + (dir / "tiny.json").string()),
              0);
    EXPECT_TRUE(fs::exists(dir / "out" / "tiny" / "runs" / "sotea_epistatic_k2_m10" / "rep0.csv"));
    EXPECT_EQ(cli("--out " + (dir / "out").string() + " snapshot " + (dir / "tiny.json").string() +
                  " --generation 2"),
              0);
    EXPECT_TRUE(fs::exists(dir / "out" / "tiny" / "snapshot_g2" / "graph.dot"));
    // Output path that is a file, not a directory.
    write_text(dir / "blocker", "x");
    EXPECT_EQ(cli("--out " + (dir / "blocker").string() + " run " + (dir / "tiny.json").string()), 3);
}
