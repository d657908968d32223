// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "spinvqe/ansatz.hpp"
#include "spinvqe/measure.hpp"
#include "spinvqe/model.hpp"
#include "spinvqe/noise.hpp"

namespace spinvqe {

/// Noiseless statevector with analytic expectations; sigma is 0.
struct ExactExecution {};

/// Statevector with shot sampling; shots == 0 selects the infinite-shot
/// measurement path (exact parity expectations, sigma 0).
struct SampledExecution {
    std::size_t shots = 1500;
    std::uint64_t seed = 1234;
};

/// Density-matrix evolution under a noise model; shots == 0 selects the
/// exact noisy expectation.
struct NoisyExecution {
    NoiseModel model;
    std::size_t shots = 0;
    std::uint64_t seed = 1234;
};

using ExecutionMode = std::variant<ExactExecution, SampledExecution, NoisyExecution>;

struct GridSpec {
    double start = 0.0;
    double end = 3.141592653589793;
    std::size_t points = 50;
};

struct OptimizerSpec {
    std::size_t max_evals = 2000000;
    double tolerance = 1e-10;
    std::size_t restarts = 8;
    std::uint64_t seed = 1234;
};

using SweepSpec = std::variant<GridSpec, OptimizerSpec>;

struct ExperimentConfig {
    HeisenbergChain chain{2, 1.0};
    AnsatzSpec ansatz{AnsatzFamily::Exchange, 2, 1};
    ExecutionMode execution = ExactExecution{};
    SweepSpec sweep = GridSpec{};
    std::size_t threads = 0; // 0 = hardware concurrency

    void validate() const;
};

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

struct SweepPoint {
    std::vector<double> parameters;
    EnergyEstimate estimate;
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<SweepPoint> points; // grid points, or optimizer improvement trace
    SweepPoint min_point;
    double reference_energy = 0.0; // exact ground energy of the chain
    double error = 0.0;            // min energy - reference
    bool converged = true;
    std::size_t evaluations = 0;
};

/// error >= -3 sigma of the min point (up to 1e-9 slack): the variational
/// bound cannot be violated beyond statistical noise.
bool variational_bound_ok(const SweepResult& result);

/// Index of the lowest-energy point; exact energy ties go to the
/// lexicographically smallest parameter vector.
std::size_t argmin_index(const std::vector<SweepPoint>& points);

nlohmann::json sweep_result_to_json(const SweepResult& result);
SweepResult sweep_result_from_json(const nlohmann::json& j);

/// One global measurement setting shared by several qubit-wise compatible
/// terms; built greedily in term order (first fit). For the Heisenberg
/// Hamiltonian this yields the all-X, all-Y and all-Z settings.
struct MeasurementSetting {
    PauliString setting;
    std::vector<std::size_t> term_indices;
};

std::vector<MeasurementSetting> group_into_settings(const Observable& obs);

/// One fully bound circuit of a batched job: ansatz at a grid point with the
/// setting's basis rotations appended.
struct BatchEntry {
    std::size_t point_index = 0;
    std::size_t setting_index = 0;
    std::vector<double> parameters;
    Circuit circuit;
    PauliString setting;
    std::uint64_t sub_seed = 0;
};

struct BatchJob {
    std::size_t qubit_count = 0;
    std::size_t shots = 0;
    std::uint64_t master_seed = 0;
    std::vector<MeasurementSetting> settings;
    std::vector<BatchEntry> circuits;
};

/// All circuits of a grid sweep: one per (grid point x measurement setting),
/// sub-seeded by point then setting so execution order is irrelevant.
/// Optimizer-mode configs are rejected.
BatchJob build_batch(const ExperimentConfig& config);

/// Executes batch entries in the given order (default: as listed) and
/// assembles per-point energies; bit-identical to run_sweep on the same
/// config regardless of order.
std::vector<SweepPoint> execute_batch(const ExperimentConfig& config, const BatchJob& job,
                                      const std::vector<std::size_t>& order = {});

/// Evaluates the energy at every grid point through the configured execution
/// path. Grid sweeps require a single-parameter ansatz. Points are evaluated
/// by a worker pool; ordering and seeds are index-derived, so results are
/// deterministic.
SweepResult run_sweep(const ExperimentConfig& config);

/// Gradient-free local search: coordinate-wise golden-section line searches
/// (seeded by a coarse periodic scan) with random restarts. Exact-statevector
/// execution only. Returns the best point plus the improvement trace; results
/// are flagged unconverged when max_evals is exhausted.
SweepResult run_optimizer(const ExperimentConfig& config);

struct ScalingRow {
    std::size_t sites = 0;
    double exact_energy = 0.0;
    std::optional<double> expressive_min;
    std::optional<double> exchange_min;
    std::optional<double> gap; // exchange_min - exact
};

struct LandscapeSeries {
    std::string label;
    std::vector<SweepPoint> points;
};

struct Report {
    std::vector<ScalingRow> scaling;
    std::vector<LandscapeSeries> landscapes;

    nlohmann::json to_json() const;
    /// table4.csv: N,exact,expressive,exchange,gap (header always written).
    void write_scaling_csv(std::ostream& out) const;
    /// landscape.csv: theta,energy,sigma.
    static void write_landscape_csv(std::ostream& out, const LandscapeSeries& series);
};

/// Aggregates sweep results into the scaling table plus per-sweep landscape
/// series.
Report make_report(const std::vector<SweepResult>& results);

std::string describe(const ExperimentConfig& config);

} // namespace spinvqe
