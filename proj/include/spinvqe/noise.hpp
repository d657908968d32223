// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spinvqe/measure.hpp"
#include "spinvqe/pauli.hpp"
#include "spinvqe/statevec.hpp"

namespace spinvqe {

inline constexpr std::size_t kMaxNoisyQubits = 8;

/// Device characteristics the noise model is calibrated from. Defaults are
/// the IQM Garnet platform averages; gate durations are typical
/// superconducting values and tunable.
struct DeviceCharacteristics {
    double t1_us = 29.49;
    double t2_echo_us = 20.63;
    double single_qubit_fidelity = 0.9982; // PRX average
    double two_qubit_fidelity = 0.9901;    // CZ average
    double readout_fidelity = 0.9712;      // single-qubit average
    double gate_time_1q_ns = 40.0;
    double gate_time_2q_ns = 120.0;
};

/// Per-gate depolarizing + damping rates and a symmetric readout flip
/// probability.
struct NoiseModel {
    double readout_flip_prob = 0.0;
    double single_qubit_depol = 0.0;
    double two_qubit_depol = 0.0;
    double t1_us = 0.0;
    double t2_us = 0.0;
    double gate_time_1q_ns = 0.0;
    double gate_time_2q_ns = 0.0;

    /// Throws unless all probabilities are in [0,1] and t2 <= 2*t1.
    void validate() const;

    /// Amplitude-damping probability over a duration: 1 - exp(-tau/T1).
    double damping_prob(double duration_ns) const;

    /// Phase-damping parameter over a duration, from the pure dephasing rate
    /// 1/T_phi = 1/T2 - 1/(2*T1); off-diagonals shrink by exp(-tau/T_phi),
    /// so lambda = 1 - exp(-2*tau/T_phi).
    double dephasing_lambda(double duration_ns) const;

    bool is_noiseless() const;

    static NoiseModel off();
};

/// Depolarizing probabilities from average gate fidelity via
/// p = (1 - F) * d / (d - 1): p = 2(1-F) for d=2, p = (4/3)(1-F) for d=4.
/// Readout flip probability is 1 - readout fidelity.
NoiseModel calibrate_from_table(const DeviceCharacteristics& device = {});

/// Table-average Garnet calibration.
NoiseModel garnet_noise_model();

/// Dense 2^N x 2^N mixed-state representation, N <= 8.
class DensityMatrix {
public:
    static DensityMatrix from_state(const StateVector& psi);
    static DensityMatrix maximally_mixed(std::size_t qubit_count);
    static DensityMatrix from_matrix(std::size_t qubit_count, Eigen::MatrixXcd m);

    std::size_t qubit_count() const { return qubit_count_; }
    std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    Eigen::MatrixXcd& matrix() { return matrix_; }

    double trace_real() const;
    /// Hermitian to 1e-10, unit trace to 1e-10, eigenvalues >= -1e-8.
    bool is_valid(double hermit_tol = 1e-10, double trace_tol = 1e-10,
                  double psd_floor = -1e-8) const;

    /// Diagonal as a probability vector; tiny negative entries are clamped
    /// and the vector renormalized.
    std::vector<double> diagonal_probabilities() const;

private:
    DensityMatrix(std::size_t qubit_count, Eigen::MatrixXcd m);

    std::size_t qubit_count_;
    Eigen::MatrixXcd matrix_;
};

/// Full-space unitary of a bound gate, assembled column-wise from the
/// statevector engine.
Eigen::MatrixXcd gate_unitary(const Gate& gate, std::size_t qubit_count);

/// rho -> U rho U^dagger for a bound gate.
void apply_gate_unitary(DensityMatrix& rho, const Gate& gate);

/// Uniform depolarizing channel on the given sites: with probability p the
/// sites' joint state is replaced by the maximally mixed state, realized as
/// the uniform Pauli conjugation sum.
void apply_depolarizing(DensityMatrix& rho, std::span<const std::size_t> sites, double p);

void apply_amplitude_damping(DensityMatrix& rho, std::size_t site, double gamma);

void apply_phase_damping(DensityMatrix& rho, std::size_t site, double lambda);

/// Symmetric per-site readout confusion applied to a measured distribution.
std::vector<double> apply_readout_confusion(std::vector<double> probs, std::size_t qubit_count,
                                            double flip_prob);

/// Applies each bound gate as a unitary conjugation followed by its noise
/// channels: depolarizing of the gate's weight, then amplitude and phase
/// damping on the gate's sites for the gate duration.
DensityMatrix evolve_noisy(const Circuit& circuit, std::span<const double> params,
                           const DensityMatrix& rho0, const NoiseModel& nm);

/// Shot-based noisy estimate: per term, the basis rotation is applied as a
/// clean unitary, readout confusion acts on the measured distribution, and
/// sampling proceeds as in the measurement module with sub-seed
/// derive_subseed(seed, term_index). shots must be >= 1.
EnergyEstimate noisy_expectation(const DensityMatrix& rho, const Observable& obs,
                                 const NoiseModel& nm, std::size_t shots, std::uint64_t seed);

/// Infinite-shot path: exact parity expectations of the confused
/// distributions; sigma is 0.
EnergyEstimate noisy_expectation_exact(const DensityMatrix& rho, const Observable& obs,
                                       const NoiseModel& nm);

} // namespace spinvqe
