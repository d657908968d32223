// SPDX-License-Identifier: Apache-2.0
// Dense matrix oracle for tests: builds every operator from Kronecker
// products and generic matrix exponentials, independent of the bit-mask
// kernels under test.
#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "spinvqe/pauli.hpp"
#include "spinvqe/rng.hpp"
#include "spinvqe/statevec.hpp"

namespace spinvqe::oracle {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

Eigen::Matrix2cd pauli2(char axis);

/// Full-space matrix of an axes string; site 0 is the least-significant bit,
/// so it is the last Kronecker factor.
Eigen::MatrixXcd pauli_matrix(const std::string& axes);

Eigen::MatrixXcd observable_matrix(const Observable& obs);

/// Full-space matrix of a bound gate. Exchange gates go through Eigen's
/// generic matrix exponential, not the closed form used by the engine.
Eigen::MatrixXcd gate_matrix(const Gate& gate, std::size_t qubit_count);

Eigen::MatrixXcd circuit_matrix(const Circuit& circuit, std::span<const double> params);

Eigen::VectorXcd to_vector(const StateVector& psi);
StateVector to_state(std::size_t qubit_count, const Eigen::VectorXcd& v);

double expectation(const Observable& obs, const StateVector& psi);

/// Haar-ish random normalized state from a seeded generator.
StateVector random_state(std::size_t qubit_count, std::uint64_t seed);

PauliString random_pauli(std::size_t qubit_count, double coefficient, std::uint64_t seed);

Circuit random_circuit(std::size_t qubit_count, std::size_t gate_count, std::uint64_t seed);

/// Brute-force 1-D minimization: 201-point grid scan refined by
/// golden-section around the best sample.
double grid_minimum(const std::function<double(double)>& f, double lo, double hi);

} // namespace spinvqe::oracle
