// ovlc: outage / capacity sweeps for a dual-LED AF relay over Gamma-Gamma turbulence.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "ovlc/report.hpp"
#include "ovlc/scenario.hpp"
#include "ovlc/sweep.hpp"

namespace {

unsigned worker_count() {
    if (const char* env = std::getenv("OVLC_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<unsigned>(v);
        }
        std::cerr << "ovlc: ignoring invalid OVLC_WORKERS=" << env << '\n';
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace ovlc::cli;

    CLI::App app{"ovlc - outdoor VLC relay outage and capacity sweeps"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a scenario sweep and write reports");
    std::string run_file;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::optional<std::string> mode;
    run->add_option("file", run_file, "scenario file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--seed", seed, "master seed");
    run->add_option("--samples", samples, "Monte Carlo samples per point")
        ->check(CLI::PositiveNumber);
    run->add_option("--mode", mode, "end-to-end SNR: exact, min or harmonic")
        ->check(CLI::IsMember({"exact", "min", "harmonic"}));

    auto* presets = app.add_subcommand("presets", "list turbulence regime presets");

    auto* validate = app.add_subcommand("validate", "check a scenario file without running");
    std::string validate_file;
    validate->add_option("file", validate_file, "scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*presets) {
            std::cout << "name,alpha,beta\n";
            for (const auto& p : regime_presets()) {
                std::cout << p.name << ',' << p.alpha << ',' << p.beta << '\n';
            }
            return 0;
        }
        if (*validate) {
            const Scenario scen = load_scenario(validate_file);
            std::cout << validate_file << ": ok (" << scen.grid.size() << " points, axis "
                      << to_string(scen.axis) << ", regime " << scen.regime << ")\n";
            return 0;
        }

        Scenario scen = load_scenario(run_file);
        if (out_dir) scen.out_dir = *out_dir;
        if (format) scen.format = *format == "json" ? ReportFormat::json : ReportFormat::csv;
        if (seed) scen.seed = *seed;
        if (samples) scen.samples = *samples;
        if (mode) scen.mode = ovlc::analytic::parse_bound_mode(mode->c_str());

        const unsigned workers = worker_count();
        const ResultTable table = run_sweep(scen, workers);
        std::optional<std::vector<DiscrepancyRow>> disc;
        if (scen.discrepancy) {
            disc = discrepancy_report(workers);
        }
        const auto written =
            emit_report(table, disc ? &*disc : nullptr, scen.out_dir, scen.format);
        for (const auto& p : written) {
            std::cout << p.string() << '\n';
        }
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "ovlc: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ovlc: " << e.what() << '\n';
        return 1;
    }
}
