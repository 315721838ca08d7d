#pragma once

#include "delaycomp/numkit.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace delaycomp {

// exit-code contract: 0 ok, 1 verification failure, 2 config error, 3 blow-up
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalBlowup = 3;

inline constexpr double kBlowupNorm = 1e12;

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::vector<std::string>& problems);
    std::vector<std::string> problems;
};

struct MatrixSystem {
    Matrix A;
    std::optional<Matrix> B, C, K, F;
};

struct WaveSystem {
    double k1 = 0.5;
    double k2 = 1.0;
    int N = 32;
    double m_lo = 0.3; // support of the bump shaping function
    double m_hi = 0.8;
};

struct ScenarioConfig {
    std::variant<MatrixSystem, WaveSystem> system;
    double tau = 0.0;
    double mu = 0.0;
    int grid_steps = 1000;
    double horizon = 10.0;
    std::vector<std::string> outputs;
    unsigned seed = 0;
    std::optional<Vector> z0;
    std::optional<Vector> z0_hat;

    bool is_wave() const { return std::holds_alternative<WaveSystem>(system); }
};

/// Loads and fully validates a scenario file (JSON). Throws ConfigError with
/// every problem found, not just the first.
ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text);

/// Subcommand runners; each writes its CSV files into out_dir and returns an
/// exit code per the contract above.
int run_simulate_input_delay(const ScenarioConfig& cfg, const std::string& out_dir);
int run_simulate_output_delay(const ScenarioConfig& cfg, const std::string& out_dir);
int run_verify_sylvester(const std::string& out_dir);
int run_wave_demo(const ScenarioConfig& cfg, const std::string& out_dir);
int run_verify_all(const std::string& out_dir);

} // namespace delaycomp
