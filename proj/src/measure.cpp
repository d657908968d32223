// SPDX-License-Identifier: Apache-2.0
#include "spinvqe/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace spinvqe {

Circuit basis_rotation_circuit(const PauliString& term) {
    if (term.size() == 0) {
        throw std::invalid_argument("basis rotation requires a non-empty Pauli string");
    }
    Circuit c(term.size());
    for (std::size_t site = 0; site < term.size(); ++site) {
        switch (term.axes[site]) {
        case PauliAxis::X:
            c.append(Gate::hadamard(site));
            break;
        case PauliAxis::Y:
            c.append(Gate::sdagger(site));
            c.append(Gate::hadamard(site));
            break;
        case PauliAxis::Z:
        case PauliAxis::I:
            break;
        }
    }
    return c;
}

StateVector rotate_for_basis(const StateVector& psi, const PauliString& term) {
    if (term.size() != psi.qubit_count()) {
        throw std::invalid_argument("basis term length does not match state qubit count");
    }
    return run_circuit(basis_rotation_circuit(term), {}, psi);
}

std::vector<double> born_probabilities(const StateVector& psi) {
    const auto& amps = psi.amplitudes();
    std::vector<double> probs(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        probs[i] = std::norm(amps[i]);
    }
    return probs;
}

std::vector<std::uint32_t> sample_from_probabilities(const std::vector<double>& probs,
                                                     std::size_t shots, SplitMix64& rng) {
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    std::vector<std::uint32_t> out;
    out.reserve(shots);
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = rng.next_double() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
        if (idx >= probs.size()) idx = probs.size() - 1;
        out.push_back(static_cast<std::uint32_t>(idx));
    }
    return out;
}

namespace {

ShotRecord sample_impl(const StateVector& psi, std::size_t shots, std::uint64_t seed,
                       std::optional<PauliString> basis) {
    if (shots == 0) {
        throw std::invalid_argument("shot count must be at least 1");
    }
    if (!psi.is_normalized(1e-10)) {
        throw std::invalid_argument("sampling requires a normalized state");
    }
    SplitMix64 rng(seed);
    ShotRecord record;
    record.qubit_count = psi.qubit_count();
    record.seed = seed;
    record.basis = std::move(basis);
    record.bitstrings = sample_from_probabilities(born_probabilities(psi), shots, rng);
    return record;
}

} // namespace

ShotRecord sample_shots(const StateVector& psi, std::size_t shots, std::uint64_t seed) {
    return sample_impl(psi, shots, seed, std::nullopt);
}

ShotRecord sample_shots(const StateVector& psi, std::size_t shots, std::uint64_t seed,
                        const PauliString& basis) {
    return sample_impl(psi, shots, seed, basis);
}

double mean_parity(const std::vector<std::uint32_t>& bitstrings, std::uint64_t support_mask) {
    if (bitstrings.empty()) {
        throw std::invalid_argument("mean parity of an empty record");
    }
    long long sum = 0;
    for (std::uint32_t b : bitstrings) {
        sum += (std::popcount(b & support_mask) & 1) ? -1 : 1;
    }
    return static_cast<double>(sum) / static_cast<double>(bitstrings.size());
}

double parity_expectation(const std::vector<double>& probs, std::uint64_t support_mask) {
    double acc = 0.0;
    for (std::size_t idx = 0; idx < probs.size(); ++idx) {
        acc += (std::popcount(idx & support_mask) & 1) ? -probs[idx] : probs[idx];
    }
    return acc;
}

std::pair<double, double> estimate_term(const ShotRecord& record, const PauliString& term) {
    if (!record.basis || !record.basis->same_axes(term)) {
        throw std::invalid_argument("shot record was not taken in the basis of this term");
    }
    if (record.qubit_count != term.size()) {
        throw std::invalid_argument("term length does not match shot record");
    }
    const double p = mean_parity(record.bitstrings, term.support_mask());
    const double estimate = term.coefficient * p;
    const double variance = term.coefficient * term.coefficient * (1.0 - p * p) /
                            static_cast<double>(record.shots());
    return {estimate, variance};
}

namespace {

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

} // namespace

EnergyEstimate estimate_energy(const StateVector& circuit_output, const Observable& obs,
                               std::size_t shots_per_term, std::uint64_t seed) {
    if (obs.qubit_count() != circuit_output.qubit_count()) {
        throw std::invalid_argument("observable qubit count does not match state");
    }
    std::vector<TermEstimate> per_term;
    per_term.reserve(obs.term_count());
    for (std::size_t i = 0; i < obs.term_count(); ++i) {
        const PauliString& term = obs.terms()[i];
        const StateVector rotated = rotate_for_basis(circuit_output, term);
        const ShotRecord record =
            sample_shots(rotated, shots_per_term, derive_subseed(seed, i), term);
        const auto [estimate, variance] = estimate_term(record, term);
        per_term.push_back(TermEstimate{term, estimate, variance});
    }
    return assemble(std::move(per_term));
}

EnergyEstimate estimate_energy_exact(const StateVector& circuit_output, const Observable& obs) {
    if (obs.qubit_count() != circuit_output.qubit_count()) {
        throw std::invalid_argument("observable qubit count does not match state");
    }
    std::vector<TermEstimate> per_term;
    per_term.reserve(obs.term_count());
    for (const PauliString& term : obs.terms()) {
        const StateVector rotated = rotate_for_basis(circuit_output, term);
        const double p = parity_expectation(born_probabilities(rotated), term.support_mask());
        per_term.push_back(TermEstimate{term, term.coefficient * p, 0.0});
    }
    return assemble(std::move(per_term));
}

void write_shot_csv(std::ostream& out, const ShotRecord& record) {
    std::map<std::uint32_t, std::size_t> counts;
    for (std::uint32_t b : record.bitstrings) {
        ++counts[b];
    }
    const std::string basis = record.basis ? record.basis->axes_string()
                                           : std::string(record.qubit_count, 'Z');
    out << "seed,basis,bitstring,count\n";
    for (const auto& [index, count] : counts) {
        std::string bits(record.qubit_count, '0');
        for (std::size_t i = 0; i < record.qubit_count; ++i) {
            if (index & (std::uint32_t{1} << i)) bits[i] = '1';
        }
        out << record.seed << ',' << basis << ',' << bits << ',' << count << '\n';
    }
}

} // namespace spinvqe
