// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "spinvqe/manifest.hpp"
#include "spinvqe/runner.hpp"
#include "spinvqe/version.hpp"

namespace fs = std::filesystem;
using namespace spinvqe;

#ifndef SPINVQE_DEFAULTS_PATH
#define SPINVQE_DEFAULTS_PATH "config/reproduce_defaults.json"
#endif

namespace {

fs::path default_out_root() {
    if (const char* env = std::getenv("SPINVQE_OUT_ROOT")) {
        return fs::path(env);
    }
    return fs::path("out");
}

nlohmann::json load_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return nlohmann::json::parse(in);
}

struct ConfigFlags {
    std::string config_path;
    std::size_t sites = 2;
    double coupling = 1.0;
    std::string ansatz = "exchange";
    std::size_t layers = 1;
    std::string execution = "exact";
    std::size_t shots = 1500;
    std::uint64_t seed = 1234;
    std::string noise = "off";
    std::string noise_config;
    std::string grid = "0:3.141592653589793:50";
    std::size_t max_evals = 2000000;
    std::size_t restarts = 8;
    double tolerance = 1e-10;
    std::size_t threads = 0;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
    cmd->add_option("--config", f.config_path, "experiment config JSON; flags override its fields");
    cmd->add_option("-N,--sites", f.sites, "chain length");
    cmd->add_option("-J,--coupling", f.coupling, "antiferromagnetic coupling J > 0");
    cmd->add_option("--ansatz", f.ansatz, "hea | exchange | expressive")
        ->check(CLI::IsMember({"hea", "exchange", "expressive"}));
    cmd->add_option("--layers", f.layers, "ansatz layer count");
    cmd->add_option("--execution", f.execution, "exact | sampled | noisy")
        ->check(CLI::IsMember({"exact", "sampled", "noisy"}));
    cmd->add_option("--shots", f.shots, "shots per measured circuit (0 = infinite-shot)");
    cmd->add_option("--seed", f.seed, "master RNG seed");
    cmd->add_option("--noise", f.noise, "off | garnet | custom")
        ->check(CLI::IsMember({"off", "garnet", "custom"}));
    cmd->add_option("--noise-config", f.noise_config, "noise model JSON (with --noise custom)");
    cmd->add_option("--grid", f.grid, "sweep grid start:end:points");
    cmd->add_option("--max-evals", f.max_evals, "optimizer evaluation budget");
    cmd->add_option("--restarts", f.restarts, "optimizer random restarts");
    cmd->add_option("--tolerance", f.tolerance, "optimizer convergence tolerance");
    cmd->add_option("--threads", f.threads, "worker threads (0 = hardware)");
}

GridSpec parse_grid(const std::string& text) {
    GridSpec grid;
    std::istringstream in(text);
    std::string part;
    if (!std::getline(in, part, ':')) throw CLI::ValidationError("--grid", "expected start:end:points");
    grid.start = std::stod(part);
    if (!std::getline(in, part, ':')) throw CLI::ValidationError("--grid", "expected start:end:points");
    grid.end = std::stod(part);
    if (!std::getline(in, part, ':')) throw CLI::ValidationError("--grid", "expected start:end:points");
    grid.points = static_cast<std::size_t>(std::stoul(part));
    return grid;
}

NoiseModel resolve_noise(const ConfigFlags& f) {
    if (f.noise == "garnet") {
        return garnet_noise_model();
    }
    if (f.noise == "custom") {
        if (f.noise_config.empty()) {
            throw CLI::ValidationError("--noise", "custom noise requires --noise-config");
        }
        const nlohmann::json j = load_json_file(f.noise_config);
        NoiseModel nm;
        nm.readout_flip_prob = j.value("readout_flip_prob", 0.0);
        nm.single_qubit_depol = j.value("single_qubit_depol", 0.0);
        nm.two_qubit_depol = j.value("two_qubit_depol", 0.0);
        nm.t1_us = j.value("t1_us", 0.0);
        nm.t2_us = j.value("t2_us", 0.0);
        nm.gate_time_1q_ns = j.value("gate_time_1q_ns", 0.0);
        nm.gate_time_2q_ns = j.value("gate_time_2q_ns", 0.0);
        nm.validate();
        return nm;
    }
    return NoiseModel::off();
}

ExperimentConfig build_config(const CLI::App* cmd, const ConfigFlags& f, bool optimizer_mode) {
    ExperimentConfig config;
    if (!f.config_path.empty()) {
        config = config_from_json(load_json_file(f.config_path));
    } else {
        config.chain = HeisenbergChain(f.sites, f.coupling);
        config.ansatz.sites = f.sites;
    }
    auto passed = [&](const char* name) { return cmd->count(name) > 0; };

    if (f.config_path.empty() || passed("--sites") || passed("--coupling")) {
        config.chain = HeisenbergChain(passed("--sites") || f.config_path.empty()
                                           ? f.sites
                                           : config.chain.sites,
                                       passed("--coupling") || f.config_path.empty()
                                           ? f.coupling
                                           : config.chain.coupling);
        config.ansatz.sites = config.chain.sites;
    }
    if (f.config_path.empty() || passed("--ansatz")) {
        config.ansatz.family = ansatz_family_from_name(f.ansatz);
    }
    if (f.config_path.empty() || passed("--layers")) {
        config.ansatz.layers = f.layers;
    }

    std::string execution = f.execution;
    if (!passed("--execution") && passed("--noise") && f.noise != "off") {
        execution = "noisy";
    }
    if (f.config_path.empty() || passed("--execution") || passed("--noise") || passed("--shots") ||
        passed("--seed")) {
        if (execution == "exact" && f.noise == "off") {
            config.execution = ExactExecution{};
        } else if (execution == "noisy" || f.noise != "off") {
            config.execution = NoisyExecution{resolve_noise(f), f.shots, f.seed};
        } else {
            config.execution = SampledExecution{f.shots, f.seed};
        }
    }

    if (optimizer_mode) {
        if (f.config_path.empty() || !std::holds_alternative<OptimizerSpec>(config.sweep) ||
            passed("--max-evals") || passed("--restarts") || passed("--tolerance") ||
            passed("--seed")) {
            config.sweep = OptimizerSpec{f.max_evals, f.tolerance, f.restarts, f.seed};
        }
    } else if (f.config_path.empty() || passed("--grid")) {
        config.sweep = parse_grid(f.grid);
    }
    if (f.config_path.empty() || passed("--threads")) {
        config.threads = f.threads;
    }
    config.validate();
    return config;
}

std::uint64_t master_seed_of(const ExperimentConfig& config) {
    if (const auto* s = std::get_if<SampledExecution>(&config.execution)) return s->seed;
    if (const auto* n = std::get_if<NoisyExecution>(&config.execution)) return n->seed;
    if (const auto* o = std::get_if<OptimizerSpec>(&config.sweep)) return o->seed;
    return 0;
}

void write_sweep_outputs(const SweepResult& result, const fs::path& dir, bool dump_circuit,
                         const std::string& export_shots) {
    fs::create_directories(dir);
    RunManifest manifest = RunManifest::create(config_to_json(result.config),
                                               master_seed_of(result.config));
    {
        const fs::path path = dir / "results.json";
        std::ofstream out(path);
        out << sweep_result_to_json(result).dump(2) << '\n';
        manifest.add_output(path);
    }
    if (std::holds_alternative<GridSpec>(result.config.sweep)) {
        const fs::path path = dir / "landscape.csv";
        std::ofstream out(path);
        Report::write_landscape_csv(out,
                                    LandscapeSeries{describe(result.config), result.points});
        manifest.add_output(path);
    }
    if (dump_circuit) {
        const fs::path path = dir / "circuit.json";
        std::ofstream out(path);
        out << build_circuit(result.config.ansatz).to_json().dump(2) << '\n';
        manifest.add_output(path);
    }
    if (!export_shots.empty()) {
        const auto* sampled = std::get_if<SampledExecution>(&result.config.execution);
        if (sampled == nullptr || sampled->shots == 0) {
            throw std::runtime_error("--export-shots requires sampled execution with shots >= 1");
        }
        const fs::path shots_dir = dir / export_shots;
        fs::create_directories(shots_dir);
        const BatchJob job = build_batch(result.config);
        const StateVector initial = neel_state(result.config.chain.sites);
        for (const BatchEntry& entry : job.circuits) {
            const StateVector psi = run_circuit(entry.circuit, {}, initial);
            const ShotRecord record =
                sample_shots(psi, job.shots, entry.sub_seed, entry.setting);
            std::ostringstream name;
            name << "point" << entry.point_index << "_setting" << entry.setting_index << ".csv";
            std::ofstream out(shots_dir / name.str());
            write_shot_csv(out, record);
            manifest.add_output(shots_dir / name.str());
        }
    }
    manifest.write(dir);
}

void print_summary(const SweepResult& result, std::ostream& out) {
    out << describe(result.config) << ": min energy " << std::setprecision(10)
        << result.min_point.estimate.energy;
    if (result.min_point.estimate.sigma > 0.0) {
        out << " +/- " << result.min_point.estimate.sigma;
    }
    out << " at theta = [";
    for (std::size_t i = 0; i < result.min_point.parameters.size(); ++i) {
        out << (i ? ", " : "") << result.min_point.parameters[i];
    }
    out << "], exact " << result.reference_energy << ", error " << result.error;
    if (!result.converged) {
        out << " (UNCONVERGED: evaluation budget exhausted)";
    }
    out << '\n';
}

int run_exact(const ConfigFlags& f, const std::string& hamiltonian_path) {
    nlohmann::json j;
    if (!hamiltonian_path.empty()) {
        std::ifstream in(hamiltonian_path);
        if (!in) {
            throw std::runtime_error("cannot open " + hamiltonian_path);
        }
        const Observable obs = parse_observable(in);
        const Eigen::MatrixXcd m = dense_matrix(obs);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
        Eigen::VectorXcd ground = solver.eigenvectors().col(0);
        std::vector<complex_t> amps(ground.data(), ground.data() + ground.size());
        const StateVector ground_state =
            StateVector::from_amplitudes(obs.qubit_count(), std::move(amps));
        j["sites"] = obs.qubit_count();
        j["source"] = hamiltonian_path;
        j["ground_energy"] = solver.eigenvalues().minCoeff();
        j["sector_mass"] = magnetization_sector(ground_state).mass;
    } else {
        const HeisenbergChain chain(f.sites, f.coupling);
        const ExactSolution solution = exact_diagonalize(chain);
        j["sites"] = chain.sites;
        j["coupling"] = chain.coupling;
        j["ground_energy"] = solution.ground_energy;
        j["spectrum_min"] = solution.spectrum.front();
        j["spectrum_max"] = solution.spectrum.back();
        j["sector_mass"] = magnetization_sector(solution.ground_state).mass;
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-chain VQE simulation toolkit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // exact
    auto* exact_cmd = app.add_subcommand("exact", "exact diagonalization of the chain");
    ConfigFlags exact_flags;
    std::string hamiltonian_path;
    exact_cmd->add_option("-N,--sites", exact_flags.sites, "chain length");
    exact_cmd->add_option("-J,--coupling", exact_flags.coupling, "coupling J > 0");
    exact_cmd->add_option("--hamiltonian", hamiltonian_path,
                          "custom observable text file (`<coeff> <axes>` per line)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "fixed parameter sweep over a grid");
    ConfigFlags sweep_flags;
    add_config_flags(sweep_cmd, sweep_flags);
    std::string sweep_out;
    bool sweep_dump_circuit = false;
    std::string sweep_export_shots;
    sweep_cmd->add_option("--out", sweep_out, "output directory");
    sweep_cmd->add_flag("--dump-circuit", sweep_dump_circuit, "write the ansatz circuit JSON");
    sweep_cmd->add_option("--export-shots", sweep_export_shots,
                          "subdirectory for per-circuit shot CSVs (sampled mode)");

    // optimize
    auto* opt_cmd = app.add_subcommand("optimize", "gradient-free local optimization");
    ConfigFlags opt_flags;
    add_config_flags(opt_cmd, opt_flags);
    std::string opt_out;
    bool opt_dump_circuit = false;
    opt_cmd->add_option("--out", opt_out, "output directory");
    opt_cmd->add_flag("--dump-circuit", opt_dump_circuit, "write the ansatz circuit JSON");

    // report
    auto* report_cmd = app.add_subcommand("report", "aggregate results.json files into tables");
    std::vector<std::string> report_inputs;
    std::string report_out;
    report_cmd->add_option("inputs", report_inputs, "results.json files")->required();
    report_cmd->add_option("--out", report_out, "output directory");

    // reproduce
    auto* repro_cmd = app.add_subcommand("reproduce", "rebuild a published table or figure");
    std::string repro_target;
    std::string repro_out;
    std::string repro_defaults = SPINVQE_DEFAULTS_PATH;
    std::uint64_t repro_seed = 1234;
    std::size_t repro_threads = 0;
    std::string repro_noise = "garnet";
    repro_cmd->add_option("target", repro_target, "table4 | table5 | fig1 | fig2 | fig3 | fig4")
        ->required();
    repro_cmd->add_option("--out", repro_out, "output root (target gets its own subdirectory)");
    repro_cmd->add_option("--defaults", repro_defaults, "published-values/tolerances JSON");
    repro_cmd->add_option("--seed", repro_seed, "master seed");
    repro_cmd->add_option("--threads", repro_threads, "worker threads");
    repro_cmd->add_option("--noise", repro_noise, "off | garnet (table5 hardware rows)")
        ->check(CLI::IsMember({"off", "garnet"}));

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "cross-module invariant battery");
    bool validate_quick = false;
    validate_cmd->add_flag("--quick", validate_quick, "fast subset (< 10 s)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(exact_cmd)) {
            return run_exact(exact_flags, hamiltonian_path);
        }
        if (app.got_subcommand(sweep_cmd)) {
            const ExperimentConfig config = build_config(sweep_cmd, sweep_flags, false);
            const SweepResult result = run_sweep(config);
            const fs::path dir = sweep_out.empty() ? default_out_root() / "sweep" : fs::path(sweep_out);
            write_sweep_outputs(result, dir, sweep_dump_circuit, sweep_export_shots);
            print_summary(result, std::cout);
            if (!variational_bound_ok(result)) {
                std::cerr << "invariant violation: minimum " << result.min_point.estimate.energy
                          << " is below the exact ground energy beyond statistical noise\n";
                return 1;
            }
            return 0;
        }
        if (app.got_subcommand(opt_cmd)) {
            const ExperimentConfig config = build_config(opt_cmd, opt_flags, true);
            const SweepResult result = run_optimizer(config);
            const fs::path dir =
                opt_out.empty() ? default_out_root() / "optimize" : fs::path(opt_out);
            write_sweep_outputs(result, dir, opt_dump_circuit, "");
            print_summary(result, std::cout);
            if (!variational_bound_ok(result)) {
                std::cerr << "invariant violation: optimizer minimum beats the exact ground\n";
                return 1;
            }
            return 0;
        }
        if (app.got_subcommand(report_cmd)) {
            std::vector<SweepResult> results;
            for (const std::string& input : report_inputs) {
                const nlohmann::json j = load_json_file(input);
                if (j.is_array()) {
                    for (const auto& item : j) {
                        results.push_back(sweep_result_from_json(item));
                    }
                } else {
                    results.push_back(sweep_result_from_json(j));
                }
            }
            const Report report = make_report(results);
            const fs::path dir =
                report_out.empty() ? default_out_root() / "report" : fs::path(report_out);
            fs::create_directories(dir);
            RunManifest manifest = RunManifest::create(
                nlohmann::json{{"command", "report"}, {"inputs", report_inputs}}, 0);
            {
                std::ofstream out(dir / "table4.csv");
                report.write_scaling_csv(out);
                manifest.add_output(dir / "table4.csv");
            }
            for (std::size_t i = 0; i < report.landscapes.size(); ++i) {
                const fs::path path = dir / ("landscape" + std::to_string(i) + ".csv");
                std::ofstream out(path);
                Report::write_landscape_csv(out, report.landscapes[i]);
                manifest.add_output(path);
            }
            {
                std::ofstream out(dir / "report.json");
                out << report.to_json().dump(2) << '\n';
                manifest.add_output(dir / "report.json");
            }
            manifest.write(dir);
            std::cout << "report written to " << dir.string() << '\n';
            return 0;
        }
        if (app.got_subcommand(repro_cmd)) {
            const nlohmann::json defaults = load_json_file(repro_defaults);
            const fs::path out_root =
                repro_out.empty() ? default_out_root() : fs::path(repro_out);
            const bool ok = cli::reproduce_target(repro_target, defaults, out_root, repro_seed,
                                                  repro_threads, repro_noise == "off", std::cout);
            return ok ? 0 : 1;
        }
        if (app.got_subcommand(validate_cmd)) {
            return cli::run_validation(validate_quick, std::cout) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
