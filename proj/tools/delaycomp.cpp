#include "delaycomp/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"delaycomp: predictor feedback and delayed-output observer benchmarks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    int grid_steps_override = -1;
    double horizon_override = -1.0;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", config_path, "scenario config file (JSON)");
        if (needs_config) c->required();
        sub->add_option("--out-dir", out_dir, "output directory for CSV files");
        sub->add_option("--grid-steps", grid_steps_override, "override delay-line grid steps");
        sub->add_option("--horizon", horizon_override, "override simulation horizon");
    };

    auto* sim_in = app.add_subcommand("simulate-input-delay",
                                      "closed-loop predictor feedback simulation");
    auto* sim_out = app.add_subcommand("simulate-output-delay",
                                       "plant + delayed-output observer simulation");
    auto* verify_syl = app.add_subcommand("verify-sylvester",
                                          "Sylvester and gain identity residual tables");
    auto* wave = app.add_subcommand("wave-demo", "wave-equation closed-loop benchmark");
    auto* verify_all = app.add_subcommand("verify-all", "run the full acceptance suite");
    add_common(sim_in, true);
    add_common(sim_out, true);
    add_common(wave, true);
    add_common(verify_syl, false);
    add_common(verify_all, false);

    CLI11_PARSE(app, argc, argv);

    try {
        auto load = [&]() {
            delaycomp::ScenarioConfig cfg = delaycomp::parse_config(config_path);
            if (grid_steps_override > 0) cfg.grid_steps = grid_steps_override;
            if (horizon_override >= 0.0) cfg.horizon = horizon_override;
            return cfg;
        };
        if (sim_in->parsed()) return delaycomp::run_simulate_input_delay(load(), out_dir);
        if (sim_out->parsed()) return delaycomp::run_simulate_output_delay(load(), out_dir);
        if (verify_syl->parsed()) return delaycomp::run_verify_sylvester(out_dir);
        if (wave->parsed()) return delaycomp::run_wave_demo(load(), out_dir);
        if (verify_all->parsed()) return delaycomp::run_verify_all(out_dir);
    } catch (const delaycomp::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return delaycomp::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return delaycomp::kExitConfigError;
    }
    return delaycomp::kExitOk;
}
