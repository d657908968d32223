// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "spinvqe/pauli.hpp"
#include "spinvqe/statevec.hpp"

namespace spinvqe {

/// Open-boundary antiferromagnetic Heisenberg chain, couplings in units of J.
struct HeisenbergChain {
    std::size_t sites;
    double coupling = 1.0;

    HeisenbergChain(std::size_t n, double j = 1.0);
};

/// H = J * sum_{i=0}^{N-2} (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1}),
/// exactly 3(N-1) terms.
Observable build_hamiltonian(const HeisenbergChain& chain);

/// Dense matrix of an observable, built column-wise from its action on basis
/// states. Intended for small systems; dimension 2^N.
Eigen::MatrixXcd dense_matrix(const Observable& obs);

struct ExactSolution {
    double ground_energy;
    StateVector ground_state;
    std::vector<double> spectrum; // ascending, all 2^N eigenvalues
};

/// Full dense diagonalization; supported for N <= 12.
ExactSolution exact_diagonalize(const HeisenbergChain& chain);

/// Probability mass per total-magnetization sector, indexed by Hamming
/// weight 0..N. Masses sum to 1 for a normalized state.
struct SectorReport {
    std::vector<double> mass;

    std::size_t dominant_sector() const;
    double mass_outside(std::size_t sector) const;
};

SectorReport magnetization_sector(const StateVector& psi);

} // namespace spinvqe
