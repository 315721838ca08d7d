#include "delaycomp/scenario.hpp"

#include "delaycomp/observer.hpp"
#include "delaycomp/predictor.hpp"
#include "delaycomp/verify.hpp"
#include "delaycomp/wave_sim.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace delaycomp {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += "; ";
        s += v[i];
    }
    return s;
}

Matrix parse_matrix(const json& j, const std::string& name,
                    std::vector<std::string>& problems) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        problems.push_back(name + ": expected a list of rows");
        return Matrix();
    }
    const size_t cols = j[0].size();
    Matrix m(j.size(), cols);
    for (size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            problems.push_back(name + ": ragged rows");
            return Matrix();
        }
        for (size_t c = 0; c < cols; ++c) {
            if (!j[r][c].is_number()) {
                problems.push_back(name + ": non-numeric entry");
                return Matrix();
            }
            m(r, c) = j[r][c].get<double>();
        }
    }
    if (!m.allFinite()) problems.push_back(name + ": non-finite entry");
    return m;
}

Vector parse_vector(const json& j, const std::string& name,
                    std::vector<std::string>& problems) {
    if (!j.is_array()) {
        problems.push_back(name + ": expected a list of numbers");
        return Vector();
    }
    Vector v(j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) {
            problems.push_back(name + ": non-numeric entry");
            return Vector();
        }
        v(i) = j[i].get<double>();
    }
    return v;
}

// fixed formatting so identical runs are byte-identical
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::string& out_dir, const std::string& name,
              const std::vector<std::string>& header) {
        std::filesystem::create_directories(out_dir);
        path_ = out_dir + "/" + name;
        os_.open(path_);
        if (!os_) throw std::runtime_error("cannot open " + path_);
        for (size_t i = 0; i < header.size(); ++i) {
            if (i) os_ << ",";
            os_ << header[i];
        }
        os_ << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ",";
            os_ << cells[i];
        }
        os_ << "\n";
    }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream os_;
};

const MatrixSystem& require_matrix(const ScenarioConfig& cfg) {
    if (cfg.is_wave()) {
        throw ConfigError({"subcommand requires a matrix system"});
    }
    return std::get<MatrixSystem>(cfg.system);
}

} // namespace

ConfigError::ConfigError(const std::vector<std::string>& p)
    : std::runtime_error("config error: " + join(p)), problems(p) {}

ScenarioConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("parse error: ") + e.what()});
    }

    std::vector<std::string> problems;
    ScenarioConfig cfg;

    if (!j.contains("system") || !j["system"].is_object()) {
        throw ConfigError({"missing 'system' section"});
    }
    const json& sys = j["system"];
    const std::string type = sys.value("type", "matrix");

    if (type == "matrix") {
        MatrixSystem ms;
        if (!sys.contains("A")) {
            problems.push_back("system.A: required");
        } else {
            ms.A = parse_matrix(sys["A"], "system.A", problems);
            if (ms.A.size() > 0 && ms.A.rows() != ms.A.cols()) {
                problems.push_back("system.A: must be square");
            }
        }
        const long n = ms.A.rows();
        auto opt = [&](const char* key) -> std::optional<Matrix> {
            if (!sys.contains(key)) return std::nullopt;
            return parse_matrix(sys[key], std::string("system.") + key, problems);
        };
        ms.B = opt("B");
        ms.C = opt("C");
        ms.K = opt("K");
        ms.F = opt("F");
        if (ms.B && ms.B->size() > 0 && ms.B->rows() != n) {
            problems.push_back("system.B: row count must match A");
        }
        if (ms.C && ms.C->size() > 0 && ms.C->cols() != n) {
            problems.push_back("system.C: column count must match A");
        }
        if (ms.K && ms.B && ms.K->size() > 0 && ms.B->size() > 0 &&
            (ms.K->cols() != n || ms.K->rows() != ms.B->cols())) {
            problems.push_back("system.K: must be (input dim) x (state dim)");
        }
        if (ms.F && ms.C && ms.F->size() > 0 && ms.C->size() > 0 &&
            (ms.F->rows() != n || ms.F->cols() != ms.C->rows())) {
            problems.push_back("system.F: must be (state dim) x (output dim)");
        }
        cfg.system = std::move(ms);
    } else if (type == "wave") {
        WaveSystem ws;
        ws.k1 = sys.value("k1", 0.5);
        ws.k2 = sys.value("k2", 1.0);
        ws.N = sys.value("N", 32);
        if (sys.contains("m")) {
            ws.m_lo = sys["m"].value("lo", 0.3);
            ws.m_hi = sys["m"].value("hi", 0.8);
        }
        if (ws.N < 1) problems.push_back("system.N: must be >= 1");
        if (!(ws.k1 > 0.0)) problems.push_back("system.k1: must be positive");
        if (!(ws.k2 > 0.0)) problems.push_back("system.k2: must be positive");
        if (!(0.0 <= ws.m_lo && ws.m_lo < ws.m_hi && ws.m_hi <= 1.0)) {
            problems.push_back("system.m: need 0 <= lo < hi <= 1");
        }
        cfg.system = ws;
    } else {
        problems.push_back("system.type: must be 'matrix' or 'wave'");
    }

    cfg.tau = j.value("tau", 0.0);
    cfg.mu = j.value("mu", 0.0);
    cfg.grid_steps = j.value("grid_steps", 1000);
    cfg.horizon = j.value("horizon", 10.0);
    cfg.seed = j.value("seed", 0u);
    if (j.contains("outputs")) {
        for (const auto& o : j["outputs"]) cfg.outputs.push_back(o.get<std::string>());
    }
    if (j.contains("z0")) cfg.z0 = parse_vector(j["z0"], "z0", problems);
    if (j.contains("z0_hat")) cfg.z0_hat = parse_vector(j["z0_hat"], "z0_hat", problems);

    if (cfg.tau < 0.0) problems.push_back("tau: must be >= 0");
    if (cfg.mu < 0.0) problems.push_back("mu: must be >= 0");
    if (cfg.grid_steps < 1) problems.push_back("grid_steps: must be >= 1");
    if (cfg.horizon < 0.0) problems.push_back("horizon: must be >= 0");

    if (!problems.empty()) throw ConfigError(problems);
    return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError({"cannot open config file: " + path});
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

int run_simulate_input_delay(const ScenarioConfig& cfg, const std::string& out_dir) {
    const MatrixSystem& ms = require_matrix(cfg);
    if (!ms.B || !ms.K) throw ConfigError({"simulate-input-delay needs system.B and system.K"});
    if (!(cfg.tau > 0.0)) throw ConfigError({"simulate-input-delay needs tau > 0"});

    PredictorConfig pc(ms.A, *ms.B, *ms.K, cfg.tau, cfg.grid_steps);
    Vector z0 = cfg.z0.value_or(Vector::Ones(ms.A.rows()));
    if (z0.size() != ms.A.rows()) throw ConfigError({"z0: dimension must match A"});
    ClosedLoopState state{z0, DelayLine(Grid(cfg.tau, cfg.grid_steps),
                                        static_cast<int>(ms.B->cols())),
                          0.0};
    Trajectory traj = simulate(pc, std::move(state), cfg.horizon);

    for (double nz : traj.norm_z) {
        if (!(nz < kBlowupNorm)) {
            std::cerr << "numerical blow-up: |z| exceeded " << kBlowupNorm << "\n";
            return kExitNumericalBlowup;
        }
    }

    std::vector<std::string> header{"t", "norm_z", "norm_phi"};
    for (long i = 0; i < ms.B->cols(); ++i) header.push_back("u_" + std::to_string(i));
    CsvWriter csv(out_dir, "input_delay_trajectory.csv", header);
    for (size_t i = 0; i < traj.t.size(); ++i) {
        std::vector<std::string> row{num(traj.t[i]), num(traj.norm_z[i]),
                                     num(traj.norm_phi[i])};
        for (long k = 0; k < traj.u[i].size(); ++k) row.push_back(num(traj.u[i](k)));
        csv.row(row);
    }
    std::cout << "wrote " << csv.path() << "\n";
    return kExitOk;
}

int run_simulate_output_delay(const ScenarioConfig& cfg, const std::string& out_dir) {
    const MatrixSystem& ms = require_matrix(cfg);
    if (!ms.B || !ms.C || !ms.F) {
        throw ConfigError({"simulate-output-delay needs system.B, system.C and system.F"});
    }
    if (!(cfg.mu > 0.0)) throw ConfigError({"simulate-output-delay needs mu > 0"});

    ObserverGains gains;
    try {
        gains = precompute_gains(ms.A, *ms.B, *ms.C, *ms.F, cfg.mu, cfg.grid_steps);
    } catch (const std::domain_error& e) {
        throw ConfigError({e.what()});
    }
    Vector z0 = cfg.z0.value_or(Vector::Ones(ms.A.rows()));
    Vector z0_hat = cfg.z0_hat.value_or(Vector::Zero(ms.A.rows()));
    if (z0.size() != ms.A.rows() || z0_hat.size() != ms.A.rows()) {
        throw ConfigError({"z0 / z0_hat: dimension must match A"});
    }
    DelayedOutputPlant plant(ms.A, *ms.B, *ms.C, z0, cfg.mu, cfg.grid_steps);
    ObserverState obs{z0_hat,
                      DelayLine(Grid(cfg.mu, cfg.grid_steps), static_cast<int>(ms.C->rows())),
                      0.0};
    ErrorTrajectory traj = simulate_with_plant(gains, plant, obs, cfg.horizon);

    for (double e : traj.err_state_norm) {
        if (!(e < kBlowupNorm)) {
            std::cerr << "numerical blow-up: |z - zhat| exceeded " << kBlowupNorm << "\n";
            return kExitNumericalBlowup;
        }
    }

    CsvWriter csv(out_dir, "output_delay_errors.csv",
                  {"t", "err_state_norm", "err_line_norm", "innovation_norm"});
    for (size_t i = 0; i < traj.t.size(); ++i) {
        csv.row({num(traj.t[i]), num(traj.err_state_norm[i]), num(traj.err_line_norm[i]),
                 num(traj.innovation_norm[i])});
    }
    std::cout << "wrote " << csv.path() << "\n";
    return kExitOk;
}

int run_verify_sylvester(const std::string& out_dir) {
    const auto rows = sylvester_convergence_table();
    CsvWriter csv(out_dir, "sylvester_residuals.csv", {"check_name", "grid_steps", "residual"});
    bool ok = true;
    std::cout << "check_name             M      residual\n";
    for (const auto& r : rows) {
        csv.row({r.check_name, std::to_string(r.grid_steps), num(r.residual)});
        std::printf("%-22s %-6d %.6e\n", r.check_name.c_str(), r.grid_steps, r.residual);
        if (r.check_name.starts_with("smoothing") && r.residual >= 1e-6) ok = false;
    }
    // observed convergence orders between successive grids
    for (const std::string name :
         {"sylvester_input_linear", "sylvester_input_sine", "sylvester_output_rotation"}) {
        std::vector<double> res;
        for (const auto& r : rows) {
            if (r.check_name == name) res.push_back(r.residual);
        }
        for (size_t i = 0; i + 1 < res.size(); ++i) {
            const double order = std::log2(res[i] / res[i + 1]);
            std::printf("%-22s order %.2f\n", name.c_str(), order);
            if (order < 1.0) ok = false;
        }
    }
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kExitOk : kExitVerificationFailure;
}

int run_wave_demo(const ScenarioConfig& cfg, const std::string& out_dir) {
    if (!cfg.is_wave()) throw ConfigError({"wave-demo needs a wave system"});
    const WaveSystem& ws = std::get<WaveSystem>(cfg.system);
    if (!(cfg.tau > 0.0)) throw ConfigError({"wave-demo needs tau > 0"});

    WaveModal init = modal_from_profiles([](double s) { return s * s; },
                                         [](double) { return 0.0; }, ws.N);
    WaveTrajectory traj =
        simulate_wave_closed_loop(std::move(init), ws.k1, cfg.tau, cfg.grid_steps, cfg.horizon);

    for (double e : traj.energy) {
        if (!(e < kBlowupNorm)) {
            std::cerr << "numerical blow-up: energy exceeded " << kBlowupNorm << "\n";
            return kExitNumericalBlowup;
        }
    }

    CsvWriter csv(out_dir, "wave_closed_loop.csv", {"t", "energy", "u"});
    for (size_t i = 0; i < traj.t.size(); ++i) {
        csv.row({num(traj.t[i]), num(traj.energy[i]), num(traj.u[i])});
    }
    std::cout << "wrote " << csv.path() << "\n";
    return kExitOk;
}

int run_verify_all(const std::string& out_dir) {
    const auto results = run_acceptance_criteria();
    CsvWriter csv(out_dir, "verify_all.csv", {"criterion", "pass", "detail"});
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail << "\n";
        csv.row({r.name, r.pass ? "1" : "0", "\"" + r.detail + "\""});
        all = all && r.pass;
    }
    std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
    return all ? kExitOk : kExitVerificationFailure;
}

} // namespace delaycomp
