// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "spinvqe/ansatz.hpp"
#include "spinvqe/model.hpp"

using namespace spinvqe;

TEST(HeisenbergChain, RejectsInvalidParameters) {
    EXPECT_THROW(HeisenbergChain(1), std::invalid_argument);
    EXPECT_THROW(HeisenbergChain(2, 0.0), std::invalid_argument);
    EXPECT_THROW(HeisenbergChain(2, -1.0), std::invalid_argument);
}

TEST(BuildHamiltonian, TermCountsAndCoefficients) {
    const Observable h2 = build_hamiltonian(HeisenbergChain(2));
    EXPECT_EQ(h2.term_count(), 3u);
    for (const PauliString& t : h2.terms()) {
        EXPECT_DOUBLE_EQ(t.coefficient, 1.0);
    }

    EXPECT_EQ(build_hamiltonian(HeisenbergChain(4)).term_count(), 9u);

    const Observable h3 = build_hamiltonian(HeisenbergChain(3, 2.0));
    EXPECT_EQ(h3.term_count(), 6u);
    for (const PauliString& t : h3.terms()) {
        EXPECT_DOUBLE_EQ(t.coefficient, 2.0);
    }
}

TEST(BuildHamiltonian, OpenBoundaryHasNoWrapBond) {
    const Observable h = build_hamiltonian(HeisenbergChain(4));
    for (const PauliString& t : h.terms()) {
        const std::string axes = t.axes_string();
        EXPECT_FALSE(axes.front() != 'I' && axes.back() != 'I') << axes;
    }
}

TEST(DenseMatrix, IsExactlyRealSymmetric) {
    const Eigen::MatrixXcd h = dense_matrix(build_hamiltonian(HeisenbergChain(3)));
    EXPECT_NEAR((h - h.adjoint()).cwiseAbs().maxCoeff(), 0.0, 0.0);
    EXPECT_NEAR(h.imag().cwiseAbs().maxCoeff(), 0.0, 0.0);
}

TEST(DenseMatrix, MatchesKroneckerOracle) {
    const Observable h = build_hamiltonian(HeisenbergChain(3));
    EXPECT_LT((dense_matrix(h) - oracle::observable_matrix(h)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ExactDiagonalize, TableEnergies) {
    EXPECT_NEAR(exact_diagonalize(HeisenbergChain(2)).ground_energy, -3.0000, 5e-4);
    EXPECT_NEAR(exact_diagonalize(HeisenbergChain(3)).ground_energy, -4.0000, 5e-4);
    EXPECT_NEAR(exact_diagonalize(HeisenbergChain(4)).ground_energy, -6.4641, 5e-4);
}

TEST(ExactDiagonalize, SpectrumIsTracelessAndSorted) {
    const ExactSolution sol = exact_diagonalize(HeisenbergChain(4));
    EXPECT_EQ(sol.spectrum.size(), 16u);
    EXPECT_TRUE(std::is_sorted(sol.spectrum.begin(), sol.spectrum.end()));
    const double trace = std::accumulate(sol.spectrum.begin(), sol.spectrum.end(), 0.0);
    EXPECT_NEAR(trace, 0.0, 1e-8);
    EXPECT_DOUBLE_EQ(sol.ground_energy, sol.spectrum.front());
}

TEST(ExactDiagonalize, GroundStateResidualAndEnergyConsistency) {
    for (std::size_t n : {2u, 3u, 4u, 5u}) {
        const HeisenbergChain chain(n);
        const ExactSolution sol = exact_diagonalize(chain);
        EXPECT_TRUE(sol.ground_state.is_normalized(1e-10));
        const Eigen::MatrixXcd h = dense_matrix(build_hamiltonian(chain));
        const Eigen::VectorXcd v = oracle::to_vector(sol.ground_state);
        EXPECT_LT((h * v - sol.ground_energy * v).norm(), 1e-8);
        // cross-module consistency with the expectation kernel
        EXPECT_NEAR(exact_expectation(build_hamiltonian(chain), sol.ground_state),
                    sol.ground_energy, 1e-9);
    }
}

TEST(ExactDiagonalize, EvenChainsGroundInZeroMagnetizationSector) {
    for (std::size_t n : {2u, 4u, 6u}) {
        const ExactSolution sol = exact_diagonalize(HeisenbergChain(n));
        const SectorReport report = magnetization_sector(sol.ground_state);
        EXPECT_LT(report.mass_outside(n / 2), 1e-10) << "N=" << n;
    }
}

TEST(ExactDiagonalize, RejectsOversizedSystems) {
    EXPECT_THROW(exact_diagonalize(HeisenbergChain(13)), std::invalid_argument);
}

TEST(MagnetizationSector, BasisAndSingletStates) {
    const SectorReport neel = magnetization_sector(StateVector::basis_state(2, {0, 1}));
    EXPECT_NEAR(neel.mass[1], 1.0, 1e-12);
    EXPECT_EQ(neel.dominant_sector(), 1u);

    std::vector<complex_t> amps(4, complex_t{0.0, 0.0});
    amps[1] = 1.0 / std::sqrt(2.0);
    amps[2] = -1.0 / std::sqrt(2.0);
    const SectorReport singlet = magnetization_sector(StateVector::from_amplitudes(2, amps));
    EXPECT_NEAR(singlet.mass[1], 1.0, 1e-12);

    const double total = std::accumulate(neel.mass.begin(), neel.mass.end(), 0.0);
    EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(MagnetizationSector, GroundStateOfFourSiteChain) {
    const ExactSolution sol = exact_diagonalize(HeisenbergChain(4));
    const SectorReport report = magnetization_sector(sol.ground_state);
    EXPECT_NEAR(report.mass[2], 1.0, 1e-10); // two-excitation, S^z = 0
}
