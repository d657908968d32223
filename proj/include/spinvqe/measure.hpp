// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "spinvqe/pauli.hpp"
#include "spinvqe/rng.hpp"
#include "spinvqe/statevec.hpp"

namespace spinvqe {

/// Pre-measurement rotations for one Pauli string: X sites get a Hadamard,
/// Y sites get S-dagger then Hadamard, Z and I sites are untouched. After
/// the rotation the string's eigenvalue is the bit parity over its
/// non-identity sites.
Circuit basis_rotation_circuit(const PauliString& term);

StateVector rotate_for_basis(const StateVector& psi, const PauliString& term);

/// Sampled computational-basis outcomes. `basis` records which Pauli string
/// the rotation targeted, when the record was taken for one.
struct ShotRecord {
    std::size_t qubit_count = 0;
    std::uint64_t seed = 0;
    std::optional<PauliString> basis;
    std::vector<std::uint32_t> bitstrings; // basis-state indices

    std::size_t shots() const { return bitstrings.size(); }
};

struct TermEstimate {
    PauliString term;
    double estimate = 0.0;
    double variance = 0.0;
};

/// Estimated energy with one-standard-deviation uncertainty and the
/// per-term breakdown; sigma^2 is the plain sum of per-term variances.
struct EnergyEstimate {
    double energy = 0.0;
    double sigma = 0.0;
    std::vector<TermEstimate> per_term;
};

/// |amplitude|^2 over all basis states.
std::vector<double> born_probabilities(const StateVector& psi);

/// Independent inverse-CDF draws from a discrete distribution.
std::vector<std::uint32_t> sample_from_probabilities(const std::vector<double>& probs,
                                                     std::size_t shots, SplitMix64& rng);

/// Born-rule sampling of `psi`; deterministic for a fixed seed.
ShotRecord sample_shots(const StateVector& psi, std::size_t shots, std::uint64_t seed);
ShotRecord sample_shots(const StateVector& psi, std::size_t shots, std::uint64_t seed,
                        const PauliString& basis);

/// (-1)^popcount(index & support) averaged over shots.
double mean_parity(const std::vector<std::uint32_t>& bitstrings, std::uint64_t support_mask);

/// Exact parity expectation of a distribution over basis states.
double parity_expectation(const std::vector<double>& probs, std::uint64_t support_mask);

/// (estimate, variance) for one term from its shot record:
/// estimate = coeff * mean parity, variance = coeff^2 (1 - p^2) / shots with
/// the plug-in parity mean p. The record's basis must match the term.
std::pair<double, double> estimate_term(const ShotRecord& record, const PauliString& term);

/// Shot-based energy estimate: each term is rotated, sampled with its own
/// sub-seed (derive_subseed(seed, term_index)), and estimated independently.
EnergyEstimate estimate_energy(const StateVector& circuit_output, const Observable& obs,
                               std::size_t shots_per_term, std::uint64_t seed);

/// Infinite-shot path: per-term parity expectations taken from the rotated
/// state's exact Born distribution; sigma is 0. Goes through the same basis
/// rotations as the sampled path, so it cross-checks them against
/// exact_expectation.
EnergyEstimate estimate_energy_exact(const StateVector& circuit_output, const Observable& obs);

/// CSV with header `seed,basis,bitstring,count`, one row per distinct
/// outcome, bitstrings written site 0 first.
void write_shot_csv(std::ostream& out, const ShotRecord& record);

} // namespace spinvqe
