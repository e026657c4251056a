#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "crlhsim/runner.hpp"

namespace {

// Exit codes: 0 success, 2 configuration error, 3 numerical/solver error.
constexpr int exit_config_error = 2;
constexpr int exit_numerical_error = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-domain simulator for temporally modulated coupled "
                 "CRLH-line isolators and circulators"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    double fmin = 0.0, fmax = 0.0;
    int points = 0;

    for (const auto& name : crlhsim::runner::subcommands()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--set", overrides,
                        "dotted-path override, e.g. device.f_op_hz=6.1e9");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--fmin", fmin, "sweep start (Hz)");
        sub->add_option("--fmax", fmax, "sweep end (Hz)");
        sub->add_option("--points", points, "sweep point count");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string subcommand = app.get_subcommands().front()->get_name();

    try {
        crlhsim::config::SimulationConfig cfg;
        if (!config_path.empty()) cfg = crlhsim::config::load_config(config_path);
        for (const auto& o : overrides) cfg.apply_override(o);
        if (!out_dir.empty()) cfg.output.directory = out_dir;
        if (fmin > 0.0) cfg.sweep.f_min_hz = fmin;
        if (fmax > 0.0) cfg.sweep.f_max_hz = fmax;
        if (points > 0) cfg.sweep.points = points;

        const auto result = crlhsim::runner::run(subcommand, cfg);
        if (!result.summary_text.empty()) std::cout << result.summary_text << '\n';
        return 0;
    } catch (const crlhsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const crlhsim::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numerical_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numerical_error;
    }
}
