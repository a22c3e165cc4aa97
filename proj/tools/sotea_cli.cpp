// Command-line front end: run, netstats, snapshot and verify.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "sotea/experiment.hpp"
#include "sotea/verify.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kFailed = 1, kBadSpec = 2, kIoError = 3, kOverBudget = 4 };

/// A path to a spec file, or the name of a bundled preset.
fs::path resolve_spec(const std::string& arg) {
    if (fs::exists(arg)) {
        return arg;
    }
#ifdef SOTEA_PRESET_DIR
    const fs::path preset = fs::path(SOTEA_PRESET_DIR) / (arg + ".json");
    if (fs::exists(preset)) {
        return preset;
    }
#endif
    return arg;
}

fs::path output_root(const std::optional<std::string>& flag) {
    if (flag) {
        return *flag;
    }
    if (const char* env = std::getenv("SOTEA_OUT"); env != nullptr && *env != '\0') {
        return env;
    }
    return "sotea_out";
}

template <class Body>
int guarded(Body&& body) {
    try {
        return body();
    } catch (const sotea::SpecError& e) {
        std::cerr << "invalid spec: " << e.what() << '\n';
        return kBadSpec;
    } catch (const sotea::BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kOverBudget;
    } catch (const sotea::OutputError& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return kIoError;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolutionary algorithms on self-organizing interaction networks"};
    app.require_subcommand(1);

    std::optional<std::string> out_flag;
    std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
    std::optional<std::uint64_t> seed_flag;
    app.add_option("--out", out_flag, "Output directory (default $SOTEA_OUT or ./sotea_out)");
    app.add_option("--workers", workers, "Parallel runs")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed_flag, "Master seed, overrides the spec");

    std::string spec_arg;
    std::size_t generation = 100;
    auto* run_cmd = app.add_subcommand("run", "Run every sweep point and replication");
    run_cmd->add_option("spec", spec_arg, "Spec file or preset name")->required();
    auto* net_cmd = app.add_subcommand("netstats", "Network topology statistics versus M");
    net_cmd->add_option("spec", spec_arg, "Spec file or preset name")->required();
    auto* snap_cmd = app.add_subcommand("snapshot", "Export one network snapshot");
    snap_cmd->add_option("spec", spec_arg, "Spec file or preset name")->required();
    snap_cmd->add_option("--generation,-g", generation, "Generation to snapshot")->required();
    auto* verify_cmd = app.add_subcommand("verify", "Run the oracle checks");

    CLI11_PARSE(app, argc, argv);

    if (verify_cmd->parsed()) {
        bool ok = true;
        for (const auto& r : sotea::verify::run_all()) {
            std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
            ok = ok && r.passed;
        }
        return ok ? kOk : kFailed;
    }

    return guarded([&] {
        auto spec = sotea::load_spec(resolve_spec(spec_arg));
        if (seed_flag) {
            spec.base.seed = *seed_flag;
        }
        const fs::path out = output_root(out_flag) / spec.name;
        if (run_cmd->parsed()) {
            sotea::plan(spec);
            const auto grid = sotea::run_experiment(spec, out, workers);
            std::cout << "wrote " << grid.size() * spec.replications << " runs to " << out.string()
                      << '\n';
        } else if (net_cmd->parsed()) {
            const auto result = sotea::run_netstats(spec, out, workers);
            std::cout << "M,L_mean,k_ave_mean\n";
            for (const auto& r : result.rows) {
                std::cout << r.m << ',' << r.l_mean << ',' << r.k_ave_mean << '\n';
            }
            for (const auto& f : result.fits) {
                std::cout << f.quantity << " (" << f.model << "): R^2 = " << f.r_squared << '\n';
            }
        } else if (snap_cmd->parsed()) {
            sotea::run_snapshot(spec, generation, out);
            std::cout << "wrote snapshot to "
                      << (out / ("snapshot_g" + std::to_string(generation))).string() << '\n';
        }
        return int{kOk};
    });
}
