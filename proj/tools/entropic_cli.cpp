#include "entropic/scenarios.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Entropic uncertainty scenario runner"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a scenario and emit a report");
    std::string scenario;
    std::optional<long long> dim, trials;
    entropic::RunConfig config;
    std::string out_path, format = "json";

    std::string names;
    for (const auto& n : entropic::scenario_names()) names += (names.empty() ? "" : ", ") + n;
    run->add_option("scenario", scenario, "One of: " + names)->required();
    run->add_option("--dim", dim, "Dimension (meaning depends on scenario)");
    run->add_option("--trials", trials, "Number of random instances");
    run->add_option("--seed", config.seed, "Master seed")->capture_default_str();
    run->add_option("--tolerance", config.tolerance, "Pass threshold on the deficit")->capture_default_str();
    run->add_option("--B", config.b, "Magnetic field strength");
    run->add_option("--t", config.t, "Inverse temperature for the Hermite scenario");
    run->add_option("--nbar-grid", config.nbar_grid, "Landau mean-level grid lo:hi[:count]");
    run->add_option("--workers", config.workers, "Worker threads (0 = all cores)");
    run->add_option("--out", out_path, "Output file (default stdout)");
    run->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (dim) {
            if (*dim < 0) throw std::invalid_argument("--dim must be nonnegative");
            config.dim = static_cast<int>(*dim);
        }
        if (trials) {
            if (*trials <= 0) throw std::invalid_argument("--trials must be positive");
            config.trials = static_cast<std::size_t>(*trials);
        }
        const entropic::Report report = entropic::run_scenario(scenario, config);
        const std::string text = format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path);
            if (!f) throw std::runtime_error("cannot open '" + out_path + "' for writing");
            f << text;
        }
        std::cerr << report.scenario << ": " << report.aggregate.passed << "/" << report.aggregate.count
                  << " passed, min deficit " << report.aggregate.min_deficit << "\n";
        return report.all_passed() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
