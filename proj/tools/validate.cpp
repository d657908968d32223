// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <vector>

#include "spinvqe/ansatz.hpp"
#include "spinvqe/measure.hpp"
#include "spinvqe/model.hpp"
#include "spinvqe/noise.hpp"
#include "spinvqe/rng.hpp"
#include "spinvqe/runner.hpp"

namespace spinvqe::cli {

namespace {

constexpr double kTwoPi = 6.283185307179586;

struct CheckLog {
    std::ostream& out;
    bool all_ok = true;

    void report(const std::string& name, bool ok, const std::string& detail) {
        out << (ok ? "PASS " : "FAIL ") << std::left << std::setw(38) << name << ' ' << detail
            << '\n';
        if (!ok) all_ok = false;
    }
};

Circuit random_circuit(std::size_t n, std::size_t gate_count, SplitMix64& rng) {
    Circuit c(n);
    for (std::size_t g = 0; g < gate_count; ++g) {
        const std::size_t kind = rng.next() % 6;
        const std::size_t a = rng.next() % n;
        std::size_t b = rng.next() % n;
        while (b == a) b = rng.next() % n;
        const double angle = rng.next_double() * kTwoPi;
        switch (kind) {
        case 0: c.append(Gate::ry(a, angle)); break;
        case 1: c.append(Gate::hadamard(a)); break;
        case 2: c.append(Gate::sdagger(a)); break;
        case 3: c.append(Gate::cnot(a, b)); break;
        case 4: c.append(Gate::cz(a, b)); break;
        default: c.append(Gate::exchange(a, b, angle)); break;
        }
    }
    return c;
}

// Exchange-family outputs stay in the initial magnetization sector.
void check_symmetry_conservation(CheckLog& log, bool quick) {
    const std::size_t max_sites = quick ? 3 : 6;
    const std::size_t vectors = quick ? 8 : 32;
    double worst = 0.0;
    for (std::size_t n = 2; n <= max_sites; ++n) {
        const StateVector neel = neel_state(n);
        const std::size_t sector = magnetization_sector(neel).dominant_sector();
        for (std::size_t layers = 1; layers <= 3; ++layers) {
            const Circuit circuit = build_exchange(n, layers);
            SplitMix64 rng(derive_subseed(7001, n * 10 + layers));
            for (std::size_t v = 0; v < vectors; ++v) {
                std::vector<double> params(layers);
                for (double& p : params) p = rng.next_double() * kTwoPi;
                const StateVector out = run_circuit(circuit, params, neel);
                worst = std::max(worst, magnetization_sector(out).mass_outside(sector));
            }
        }
    }
    log.report("exchange sector conservation", worst < 1e-10,
               "max mass outside sector = " + std::to_string(worst));

    // HEA witness: some grid angle leaks measurable mass out of the sector.
    const Circuit hea = build_hea(2);
    const StateVector neel = neel_state(2);
    const std::size_t sector = magnetization_sector(neel).dominant_sector();
    double max_leak = 0.0;
    for (std::size_t k = 0; k < 50; ++k) {
        const double theta = 3.141592653589793 * static_cast<double>(k) / 49.0;
        const std::vector<double> params{theta};
        max_leak = std::max(
            max_leak, magnetization_sector(run_circuit(hea, params, neel)).mass_outside(sector));
    }
    log.report("hea sector violation witness", max_leak > 0.01,
               "max mass outside sector = " + std::to_string(max_leak));
}

// Empirical spread of the term estimator matches the propagated variance.
void check_variance_calibration(CheckLog& log, bool quick) {
    const std::size_t repeats = quick ? 120 : 500;
    const std::size_t shots = 1500;
    const std::vector<double> targets =
        quick ? std::vector<double>{0.0, 0.5} : std::vector<double>{0.0, 0.5, -0.5, 0.9, -0.9};
    const PauliString zz("ZZ", 1.0);
    bool ok = true;
    std::string detail;
    for (double p : targets) {
        // Two-qubit state with even-parity mass (1+p)/2: parity mean is p.
        std::vector<complex_t> amps(4, complex_t{0.0, 0.0});
        amps[0] = std::sqrt((1.0 + p) / 2.0);
        amps[2] = std::sqrt((1.0 - p) / 2.0); // |01>: site 1 set
        const StateVector psi = StateVector::from_amplitudes(2, std::move(amps));

        double sum = 0.0, sum_sq = 0.0;
        for (std::size_t r = 0; r < repeats; ++r) {
            const ShotRecord record = sample_shots(psi, shots, derive_subseed(9100, r), zz);
            const auto [estimate, variance] = estimate_term(record, zz);
            sum += estimate;
            sum_sq += estimate * estimate;
        }
        const double mean = sum / static_cast<double>(repeats);
        const double empirical =
            std::sqrt((sum_sq - static_cast<double>(repeats) * mean * mean) /
                      static_cast<double>(repeats - 1));
        const double predicted = std::sqrt((1.0 - p * p) / static_cast<double>(shots));
        const double ratio = empirical / predicted;
        if (ratio < 0.8 || ratio > 1.25) ok = false;
        detail += "p=" + std::to_string(p).substr(0, 5) + ":" + std::to_string(ratio).substr(0, 5) +
                  " ";
    }
    log.report("variance formula calibration", ok, "empirical/predicted " + detail);
}

void check_noiseless_limit(CheckLog& log, bool quick) {
    const std::size_t circuits = quick ? 10 : 50;
    const NoiseModel off = NoiseModel::off();
    double worst = 0.0;
    for (std::size_t k = 0; k < circuits; ++k) {
        SplitMix64 rng(derive_subseed(9300, k));
        const std::size_t n = 2 + rng.next() % 3;
        const Circuit circuit = random_circuit(n, 12, rng);
        const StateVector psi0 = neel_state(n);
        const StateVector psi = run_circuit(circuit, {}, psi0);
        const DensityMatrix rho = evolve_noisy(circuit, {}, DensityMatrix::from_state(psi0), off);
        const Eigen::MatrixXcd diff =
            rho.matrix() - DensityMatrix::from_state(psi).matrix();
        worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
    log.report("noiseless-limit equivalence", worst < 1e-10,
               "max |rho - |psi><psi|| = " + std::to_string(worst));
}

void check_variational_bound(CheckLog& log, bool quick) {
    const std::size_t max_sites = quick ? 4 : 6;
    double worst_violation = -1.0;
    bool ok = true;
    for (std::size_t n = 2; n <= max_sites; ++n) {
        const double ground = exact_diagonalize(HeisenbergChain(n)).ground_energy;
        const Observable h = build_hamiltonian(HeisenbergChain(n));
        const StateVector neel = neel_state(n);
        const std::vector<AnsatzSpec> specs{{AnsatzFamily::Hea, n, 1},
                                            {AnsatzFamily::Exchange, n, 2},
                                            {AnsatzFamily::ExpressiveLayered, n, 2}};
        for (const AnsatzSpec& spec : specs) {
            const Circuit circuit = build_circuit(spec);
            SplitMix64 rng(derive_subseed(9500, n * 16 + static_cast<std::size_t>(spec.family)));
            for (std::size_t v = 0; v < 8; ++v) {
                std::vector<double> params(spec.parameter_count());
                for (double& p : params) p = rng.next_double() * kTwoPi;
                const double e = exact_expectation(h, run_circuit(circuit, params, neel));
                worst_violation = std::max(worst_violation, ground - e);
                if (e < ground - 1e-9) ok = false;
            }
        }
    }
    log.report("variational bound", ok,
               "max (ground - E) = " + std::to_string(worst_violation));
}

void check_readout_scaling(CheckLog& log) {
    const Observable zz(2, {PauliString("ZZ", 1.0)});
    SplitMix64 rng(424242);
    const Circuit circuit = random_circuit(2, 8, rng);
    const StateVector psi = run_circuit(circuit, {}, neel_state(2));
    const double clean = exact_expectation(zz, psi);
    double worst = 0.0;
    for (double p : {0.0, 0.01, 0.05, 0.1, 0.5}) {
        NoiseModel nm;
        nm.readout_flip_prob = p;
        const EnergyEstimate noisy =
            noisy_expectation_exact(DensityMatrix::from_state(psi), zz, nm);
        const double expected = (1.0 - 2.0 * p) * (1.0 - 2.0 * p) * clean;
        worst = std::max(worst, std::abs(noisy.energy - expected));
    }
    log.report("readout scaling law", worst < 1e-12,
               "max |noisy - (1-2p)^2 clean| = " + std::to_string(worst));
}

void check_batching_equivalence(CheckLog& log) {
    ExperimentConfig config;
    config.chain = HeisenbergChain(2, 1.0);
    config.ansatz = AnsatzSpec{AnsatzFamily::Exchange, 2, 1};
    config.execution = SampledExecution{200, 777};
    config.sweep = GridSpec{0.0, 3.141592653589793, 9};
    config.threads = 1;

    const SweepResult sequential = run_sweep(config);
    const BatchJob job = build_batch(config);
    std::vector<std::size_t> reversed(job.circuits.size());
    for (std::size_t i = 0; i < reversed.size(); ++i) {
        reversed[i] = reversed.size() - 1 - i;
    }
    const std::vector<SweepPoint> batched = execute_batch(config, job, reversed);
    bool ok = batched.size() == sequential.points.size();
    for (std::size_t i = 0; ok && i < batched.size(); ++i) {
        ok = batched[i].estimate.energy == sequential.points[i].estimate.energy &&
             batched[i].estimate.sigma == sequential.points[i].estimate.sigma;
    }
    log.report("batching equivalence", ok, "reversed-order batch matches sweep bit-exactly");
}

} // namespace

bool run_validation(bool quick, std::ostream& out) {
    CheckLog log{out};
    check_symmetry_conservation(log, quick);
    check_variance_calibration(log, quick);
    check_noiseless_limit(log, quick);
    check_variational_bound(log, quick);
    check_readout_scaling(log);
    check_batching_equivalence(log);
    out << (log.all_ok ? "validate: all checks passed\n" : "validate: FAILURES above\n");
    return log.all_ok;
}

} // namespace spinvqe::cli
