// SPDX-License-Identifier: Apache-2.0
#include "spinvqe/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace spinvqe {

namespace {

void check_prob(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                    std::to_string(p));
    }
}

} // namespace

void NoiseModel::validate() const {
    check_prob(readout_flip_prob, "readout flip probability");
    check_prob(single_qubit_depol, "single-qubit depolarizing probability");
    check_prob(two_qubit_depol, "two-qubit depolarizing probability");
    if (t1_us < 0.0 || t2_us < 0.0) {
        throw std::invalid_argument("coherence times must be non-negative");
    }
    if (t1_us > 0.0 && t2_us > 2.0 * t1_us) {
        throw std::invalid_argument("unphysical coherence times: T2 must be <= 2*T1");
    }
    if (gate_time_1q_ns < 0.0 || gate_time_2q_ns < 0.0) {
        throw std::invalid_argument("gate durations must be non-negative");
    }
}

double NoiseModel::damping_prob(double duration_ns) const {
    if (t1_us <= 0.0 || duration_ns <= 0.0) return 0.0;
    return 1.0 - std::exp(-duration_ns / (t1_us * 1000.0));
}

double NoiseModel::dephasing_lambda(double duration_ns) const {
    if (t1_us <= 0.0 || t2_us <= 0.0 || duration_ns <= 0.0) return 0.0;
    const double pure_rate = 1.0 / t2_us - 1.0 / (2.0 * t1_us); // 1/T_phi, per us
    if (pure_rate <= 0.0) return 0.0;
    return 1.0 - std::exp(-2.0 * (duration_ns / 1000.0) * pure_rate);
}

bool NoiseModel::is_noiseless() const {
    return readout_flip_prob == 0.0 && single_qubit_depol == 0.0 && two_qubit_depol == 0.0 &&
           damping_prob(gate_time_1q_ns) == 0.0 && damping_prob(gate_time_2q_ns) == 0.0 &&
           dephasing_lambda(gate_time_1q_ns) == 0.0 && dephasing_lambda(gate_time_2q_ns) == 0.0;
}

NoiseModel NoiseModel::off() { return NoiseModel{}; }

NoiseModel calibrate_from_table(const DeviceCharacteristics& device) {
    NoiseModel nm;
    nm.readout_flip_prob = 1.0 - device.readout_fidelity;
    // average gate fidelity -> depolarizing probability: p = (1 - F) d / (d - 1)
    nm.single_qubit_depol = 2.0 * (1.0 - device.single_qubit_fidelity);
    nm.two_qubit_depol = (4.0 / 3.0) * (1.0 - device.two_qubit_fidelity);
    nm.t1_us = device.t1_us;
    nm.t2_us = device.t2_echo_us;
    nm.gate_time_1q_ns = device.gate_time_1q_ns;
    nm.gate_time_2q_ns = device.gate_time_2q_ns;
    nm.validate();
    return nm;
}

NoiseModel garnet_noise_model() { return calibrate_from_table(DeviceCharacteristics{}); }

DensityMatrix::DensityMatrix(std::size_t qubit_count, Eigen::MatrixXcd m)
    : qubit_count_(qubit_count), matrix_(std::move(m)) {}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
    if (psi.qubit_count() > kMaxNoisyQubits) {
        throw std::invalid_argument("density-matrix simulation supports at most " +
                                    std::to_string(kMaxNoisyQubits) + " qubits");
    }
    const auto& amps = psi.amplitudes();
    const Eigen::Index dim = static_cast<Eigen::Index>(amps.size());
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = amps[static_cast<std::size_t>(i)];
    }
    return DensityMatrix(psi.qubit_count(), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t qubit_count) {
    if (qubit_count == 0 || qubit_count > kMaxNoisyQubits) {
        throw std::invalid_argument("invalid qubit count for density matrix");
    }
    const Eigen::Index dim = Eigen::Index{1} << qubit_count;
    return DensityMatrix(qubit_count,
                         Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::from_matrix(std::size_t qubit_count, Eigen::MatrixXcd m) {
    if (qubit_count == 0 || qubit_count > kMaxNoisyQubits) {
        throw std::invalid_argument("invalid qubit count for density matrix");
    }
    const Eigen::Index dim = Eigen::Index{1} << qubit_count;
    if (m.rows() != dim || m.cols() != dim) {
        throw std::invalid_argument("density matrix dimension must be 2^qubit_count");
    }
    return DensityMatrix(qubit_count, std::move(m));
}

double DensityMatrix::trace_real() const { return matrix_.trace().real(); }

bool DensityMatrix::is_valid(double hermit_tol, double trace_tol, double psd_floor) const {
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > hermit_tol) return false;
    if (std::abs(matrix_.trace() - complex_t{1.0, 0.0}) > trace_tol) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_);
    return solver.eigenvalues().minCoeff() >= psd_floor;
}

std::vector<double> DensityMatrix::diagonal_probabilities() const {
    std::vector<double> probs(dimension());
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        probs[i] = std::max(0.0, matrix_(static_cast<Eigen::Index>(i),
                                         static_cast<Eigen::Index>(i))
                                     .real());
        total += probs[i];
    }
    if (total <= 0.0) {
        throw std::runtime_error("density matrix diagonal has no probability mass");
    }
    for (double& p : probs) {
        p /= total;
    }
    return probs;
}

Eigen::MatrixXcd gate_unitary(const Gate& gate, std::size_t qubit_count) {
    const std::size_t dim = std::size_t{1} << qubit_count;
    Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        std::vector<complex_t> unit(dim, complex_t{0.0, 0.0});
        unit[col] = complex_t{1.0, 0.0};
        const StateVector image =
            apply_gate(StateVector::from_amplitudes(qubit_count, std::move(unit)), gate);
        for (std::size_t row = 0; row < dim; ++row) {
            u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                image.amplitude(row);
        }
    }
    return u;
}

void apply_gate_unitary(DensityMatrix& rho, const Gate& gate) {
    const Eigen::MatrixXcd u = gate_unitary(gate, rho.qubit_count());
    rho.matrix() = u * rho.matrix() * u.adjoint();
}

namespace {

Eigen::MatrixXcd single_site_operator(const Eigen::Matrix2cd& m, std::size_t site,
                                      std::size_t qubit_count) {
    const std::size_t dim = std::size_t{1} << qubit_count;
    const std::size_t mask = std::size_t{1} << site;
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                   static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        const int cb = (col & mask) ? 1 : 0;
        for (int rb = 0; rb < 2; ++rb) {
            const std::size_t row = rb ? (col | mask) : (col & ~mask);
            const complex_t v = m(rb, cb);
            if (v != complex_t{0.0, 0.0}) {
                full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = v;
            }
        }
    }
    return full;
}

Eigen::MatrixXcd pauli_full(PauliAxis axis, std::size_t site, std::size_t qubit_count) {
    Eigen::Matrix2cd m;
    switch (axis) {
    case PauliAxis::I: m << 1, 0, 0, 1; break;
    case PauliAxis::X: m << 0, 1, 1, 0; break;
    case PauliAxis::Y: m << 0, complex_t{0, -1}, complex_t{0, 1}, 0; break;
    case PauliAxis::Z: m << 1, 0, 0, -1; break;
    }
    return single_site_operator(m, site, qubit_count);
}

void kraus_pair(DensityMatrix& rho, const Eigen::Matrix2cd& k0, const Eigen::Matrix2cd& k1,
                std::size_t site) {
    const Eigen::MatrixXcd a = single_site_operator(k0, site, rho.qubit_count());
    const Eigen::MatrixXcd b = single_site_operator(k1, site, rho.qubit_count());
    rho.matrix() = a * rho.matrix() * a.adjoint() + b * rho.matrix() * b.adjoint();
}

} // namespace

void apply_depolarizing(DensityMatrix& rho, std::span<const std::size_t> sites, double p) {
    check_prob(p, "depolarizing probability");
    if (p == 0.0) return;
    if (sites.empty() || sites.size() > 2) {
        throw std::invalid_argument("depolarizing channel supports 1 or 2 sites");
    }
    for (std::size_t s : sites) {
        if (s >= rho.qubit_count()) {
            throw std::invalid_argument("depolarizing site out of range");
        }
    }
    // Uniform Pauli conjugation: (1/4^k) sum_P P rho P = I/2^k (x) tr_sites(rho).
    const std::size_t k = sites.size();
    const double weight = p / static_cast<double>(std::size_t{1} << (2 * k));
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rho.matrix().rows(), rho.matrix().cols());
    const PauliAxis axes[4] = {PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
    if (k == 1) {
        for (PauliAxis a : axes) {
            const Eigen::MatrixXcd pm = pauli_full(a, sites[0], rho.qubit_count());
            acc += pm * rho.matrix() * pm.adjoint();
        }
    } else {
        for (PauliAxis a : axes) {
            for (PauliAxis b : axes) {
                const Eigen::MatrixXcd pm = pauli_full(a, sites[0], rho.qubit_count()) *
                                            pauli_full(b, sites[1], rho.qubit_count());
                acc += pm * rho.matrix() * pm.adjoint();
            }
        }
    }
    rho.matrix() = (1.0 - p) * rho.matrix() + weight * acc;
}

void apply_amplitude_damping(DensityMatrix& rho, std::size_t site, double gamma) {
    check_prob(gamma, "amplitude damping probability");
    if (gamma == 0.0) return;
    Eigen::Matrix2cd k0, k1;
    k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
    k1 << 0, std::sqrt(gamma), 0, 0;
    kraus_pair(rho, k0, k1, site);
}

void apply_phase_damping(DensityMatrix& rho, std::size_t site, double lambda) {
    check_prob(lambda, "phase damping probability");
    if (lambda == 0.0) return;
    Eigen::Matrix2cd k0, k1;
    k0 << 1, 0, 0, std::sqrt(1.0 - lambda);
    k1 << 0, 0, 0, std::sqrt(lambda);
    kraus_pair(rho, k0, k1, site);
}

std::vector<double> apply_readout_confusion(std::vector<double> probs, std::size_t qubit_count,
                                            double flip_prob) {
    check_prob(flip_prob, "readout flip probability");
    if (probs.size() != (std::size_t{1} << qubit_count)) {
        throw std::invalid_argument("probability vector size must be 2^qubit_count");
    }
    if (flip_prob == 0.0) return probs;
    std::vector<double> next(probs.size());
    for (std::size_t site = 0; site < qubit_count; ++site) {
        const std::size_t mask = std::size_t{1} << site;
        for (std::size_t idx = 0; idx < probs.size(); ++idx) {
            next[idx] = (1.0 - flip_prob) * probs[idx] + flip_prob * probs[idx ^ mask];
        }
        probs.swap(next);
    }
    return probs;
}

DensityMatrix evolve_noisy(const Circuit& circuit, std::span<const double> params,
                           const DensityMatrix& rho0, const NoiseModel& nm) {
    nm.validate();
    if (rho0.qubit_count() != circuit.qubit_count()) {
        throw std::invalid_argument("density matrix qubit count does not match circuit");
    }
    DensityMatrix rho = rho0;
    for (const Gate& gate : circuit.bind(params)) {
        apply_gate_unitary(rho, gate);
        const bool two_site = gate.is_two_site();
        const double depol = two_site ? nm.two_qubit_depol : nm.single_qubit_depol;
        const double duration = two_site ? nm.gate_time_2q_ns : nm.gate_time_1q_ns;
        apply_depolarizing(rho, gate.sites, depol);
        const double gamma = nm.damping_prob(duration);
        const double lambda = nm.dephasing_lambda(duration);
        for (std::size_t site : gate.sites) {
            apply_amplitude_damping(rho, site, gamma);
            apply_phase_damping(rho, site, lambda);
        }
    }
    return rho;
}

namespace {

// Rotated, readout-confused measurement distribution for one term.
std::vector<double> measured_distribution(const DensityMatrix& rho, const PauliString& term,
                                          const NoiseModel& nm) {
    const Circuit rotation = basis_rotation_circuit(term);
    DensityMatrix rotated = rho;
    for (const Gate& gate : rotation.gates()) {
        apply_gate_unitary(rotated, gate);
    }
    return apply_readout_confusion(rotated.diagonal_probabilities(), rho.qubit_count(),
                                   nm.readout_flip_prob);
}

EnergyEstimate assemble(std::vector<TermEstimate> per_term) {
    EnergyEstimate e;
    double var = 0.0;
    for (const TermEstimate& t : per_term) {
        e.energy += t.estimate;
        var += t.variance;
    }
    e.sigma = std::sqrt(var);
    e.per_term = std::move(per_term);
    return e;
}

void check_obs(const DensityMatrix& rho, const Observable& obs) {
    if (obs.qubit_count() != rho.qubit_count()) {
        throw std::invalid_argument("observable qubit count does not match density matrix");
    }
}

} // namespace

EnergyEstimate noisy_expectation(const DensityMatrix& rho, const Observable& obs,
                                 const NoiseModel& nm, std::size_t shots, std::uint64_t seed) {
    check_obs(rho, obs);
    if (shots == 0) {
        throw std::invalid_argument("shot count must be at least 1 (use the exact variant)");
    }
    std::vector<TermEstimate> per_term;
    per_term.reserve(obs.term_count());
    for (std::size_t i = 0; i < obs.term_count(); ++i) {
        const PauliString& term = obs.terms()[i];
        const std::vector<double> probs = measured_distribution(rho, term, nm);
        SplitMix64 rng(derive_subseed(seed, i));
        const auto bits = sample_from_probabilities(probs, shots, rng);
        const double p = mean_parity(bits, term.support_mask());
        const double variance =
            term.coefficient * term.coefficient * (1.0 - p * p) / static_cast<double>(shots);
        per_term.push_back(TermEstimate{term, term.coefficient * p, variance});
    }
    return assemble(std::move(per_term));
}

EnergyEstimate noisy_expectation_exact(const DensityMatrix& rho, const Observable& obs,
                                       const NoiseModel& nm) {
    check_obs(rho, obs);
    std::vector<TermEstimate> per_term;
    per_term.reserve(obs.term_count());
    for (const PauliString& term : obs.terms()) {
        const std::vector<double> probs = measured_distribution(rho, term, nm);
        const double p = parity_expectation(probs, term.support_mask());
        per_term.push_back(TermEstimate{term, term.coefficient * p, 0.0});
    }
    return assemble(std::move(per_term));
}

} // namespace spinvqe
