// SPDX-License-Identifier: Apache-2.0
#include "spinvqe/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace spinvqe {

HeisenbergChain::HeisenbergChain(std::size_t n, double j) : sites(n), coupling(j) {
    if (n < 2) {
        throw std::invalid_argument("Heisenberg chain requires at least 2 sites");
    }
    if (!(j > 0.0)) {
        throw std::invalid_argument("antiferromagnetic coupling requires J > 0");
    }
}

Observable build_hamiltonian(const HeisenbergChain& chain) {
    std::vector<PauliString> terms;
    terms.reserve(3 * (chain.sites - 1));
    for (std::size_t bond = 0; bond + 1 < chain.sites; ++bond) {
        for (PauliAxis axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
            std::vector<PauliAxis> axes(chain.sites, PauliAxis::I);
            axes[bond] = axis;
            axes[bond + 1] = axis;
            terms.emplace_back(std::move(axes), chain.coupling);
        }
    }
    return Observable(chain.sites, std::move(terms));
}

Eigen::MatrixXcd dense_matrix(const Observable& obs) {
    const std::size_t dim = std::size_t{1} << obs.qubit_count();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        std::vector<complex_t> unit(dim, complex_t{0.0, 0.0});
        unit[col] = complex_t{1.0, 0.0};
        const StateVector basis = StateVector::from_amplitudes(obs.qubit_count(), std::move(unit));
        for (const PauliString& term : obs.terms()) {
            const StateVector image = apply_pauli_string(term, basis);
            for (std::size_t row = 0; row < dim; ++row) {
                m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
                    image.amplitude(row);
            }
        }
    }
    return m;
}

ExactSolution exact_diagonalize(const HeisenbergChain& chain) {
    if (chain.sites > 12) {
        throw std::invalid_argument("exact diagonalization supports at most 12 sites");
    }
    const Observable h = build_hamiltonian(chain);
    const Eigen::MatrixXcd hc = dense_matrix(h);

    // Every term pairs an even number of Y factors, so the matrix is real
    // symmetric; solve in real arithmetic.
    if (hc.imag().cwiseAbs().maxCoeff() > 1e-14) {
        throw std::runtime_error("Heisenberg Hamiltonian matrix is unexpectedly complex");
    }
    const Eigen::MatrixXd hr = hc.real();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hr);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigensolver failed to converge");
    }

    const auto& vals = solver.eigenvalues(); // ascending
    std::vector<double> spectrum(vals.data(), vals.data() + vals.size());

    const Eigen::VectorXd ground = solver.eigenvectors().col(0);
    std::vector<complex_t> amps(ground.size());
    for (Eigen::Index i = 0; i < ground.size(); ++i) {
        amps[static_cast<std::size_t>(i)] = complex_t{ground(i), 0.0};
    }
    StateVector ground_state = StateVector::from_amplitudes(chain.sites, std::move(amps));

    const double ground_energy = spectrum.front();
    const double residual =
        (hr * ground - ground_energy * ground).norm();
    if (residual >= 1e-8) {
        throw std::runtime_error("eigenpair residual " + std::to_string(residual) +
                                 " exceeds tolerance");
    }
    return ExactSolution{ground_energy, std::move(ground_state), std::move(spectrum)};
}

std::size_t SectorReport::dominant_sector() const {
    return static_cast<std::size_t>(std::max_element(mass.begin(), mass.end()) - mass.begin());
}

double SectorReport::mass_outside(std::size_t sector) const {
    double outside = 0.0;
    for (std::size_t k = 0; k < mass.size(); ++k) {
        if (k != sector) outside += mass[k];
    }
    return outside;
}

SectorReport magnetization_sector(const StateVector& psi) {
    if (!psi.is_normalized(1e-10)) {
        throw std::invalid_argument("sector report requires a normalized state");
    }
    SectorReport report;
    report.mass.assign(psi.qubit_count() + 1, 0.0);
    const auto& amps = psi.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        report.mass[static_cast<std::size_t>(std::popcount(idx))] += std::norm(amps[idx]);
    }
    return report;
}

} // namespace spinvqe
