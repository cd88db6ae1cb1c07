#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "pdd/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polynomial dimensional decomposition: moments, reliability and "
                 "perforation sensitivities from a declarative problem config"};
    app.require_subcommand(1);

    std::string config_path, benchmark, out_override;

    auto* run_cmd = app.add_subcommand("run", "build paired surrogates and analyze one "
                                              "(order, degree) truncation");
    run_cmd->add_option("config", config_path, "problem config JSON file")->required();
    run_cmd->add_option("--out", out_override, "output directory override");

    auto* sweep_cmd =
        app.add_subcommand("sweep", "run every cell of the config's truncation grid");
    sweep_cmd->add_option("config", config_path, "problem config JSON file")->required();
    sweep_cmd->add_option("--out", out_override, "output directory override");

    auto* ref_cmd =
        app.add_subcommand("reference", "print closed-form reference values for a benchmark");
    ref_cmd->add_option("benchmark", benchmark, "disk_uniform or disk_trig")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            auto config = pdd::cli::ProblemConfig::from_json(read_file(config_path));
            if (!out_override.empty()) config.out_dir = out_override;
            const auto report = pdd::cli::run(config);
            pdd::cli::write_outputs(report, config.out_dir);
            std::cout << report.to_json() << "\n";
        } else if (sweep_cmd->parsed()) {
            pdd::cli::SweepGrid grid;
            auto config = pdd::cli::ProblemConfig::from_json(read_file(config_path), &grid);
            if (!out_override.empty()) config.out_dir = out_override;
            const auto reports = pdd::cli::sweep(config, grid);
            pdd::cli::write_sweep_outputs(reports, config.out_dir);
            std::cout << "wrote " << reports.size() << " sweep rows under " << config.out_dir
                      << "\n";
        } else {
            std::cout << pdd::cli::reference_text(benchmark);
        }
    } catch (const std::exception& e) {
        const nlohmann::json err = {{"error", e.what()}};
        std::cout << err.dump() << "\n";
        return 1;
    }
    return 0;
}
