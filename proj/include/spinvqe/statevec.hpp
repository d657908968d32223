// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace spinvqe {

using complex_t = std::complex<double>;

/// Dense vectors above this size are refused (2^20 amplitudes).
inline constexpr std::size_t kMaxQubits = 20;

/// Dense complex amplitude vector over the 2^N computational basis states.
/// Site i of the chain maps to bit i of the basis-state index, with site 0
/// as the least-significant bit.
class StateVector {
public:
    /// Basis state |b_0 b_1 ... b_{N-1}> with amplitude 1 on the indexed state.
    static StateVector basis_state(std::size_t qubit_count, const std::vector<int>& bits);

    /// |00...0>
    static StateVector zero_state(std::size_t qubit_count);

    /// Takes ownership of a raw amplitude vector; size must be 2^qubit_count.
    /// Normalization is the caller's concern.
    static StateVector from_amplitudes(std::size_t qubit_count, std::vector<complex_t> amps);

    std::size_t qubit_count() const { return qubit_count_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<complex_t>& amplitudes() const { return amps_; }
    complex_t amplitude(std::size_t index) const { return amps_.at(index); }

    double norm() const;
    bool is_normalized(double tol = 1e-10) const;

    /// |<this|other>|, for fidelity-style comparisons in tests and reports.
    double overlap_magnitude(const StateVector& other) const;

private:
    StateVector(std::size_t qubit_count, std::vector<complex_t> amps)
        : qubit_count_(qubit_count), amps_(std::move(amps)) {}

    friend StateVector apply_gate(const StateVector&, const struct Gate&);
    friend class Circuit;

    std::size_t qubit_count_ = 0;
    std::vector<complex_t> amps_;
};

enum class GateKind : std::uint8_t { Ry, Hadamard, SDagger, Cnot, Cz, Exchange };

const char* gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

/// One gate instance. Parameterized gates carry an index into the circuit's
/// parameter vector instead of a concrete angle until bound.
struct Gate {
    GateKind kind;
    std::vector<std::size_t> sites;
    double angle = 0.0;
    int param_index = -1;

    static Gate ry(std::size_t site, double angle);
    static Gate ry_param(std::size_t site, int param_index);
    static Gate hadamard(std::size_t site);
    static Gate sdagger(std::size_t site);
    static Gate cnot(std::size_t control, std::size_t target);
    static Gate cz(std::size_t a, std::size_t b);
    /// exp[-i angle (X_i X_j + Y_i Y_j + Z_i Z_j)], exact closed form.
    static Gate exchange(std::size_t i, std::size_t j, double angle);
    static Gate exchange_param(std::size_t i, std::size_t j, int param_index);

    bool is_parameterized() const { return param_index >= 0; }
    bool is_two_site() const { return sites.size() == 2; }
};

/// Ordered gate list with named parameter slots. Binding a parameter vector
/// of the declared arity yields a fully concrete gate list.
class Circuit {
public:
    explicit Circuit(std::size_t qubit_count, std::vector<std::string> parameter_names = {});

    void append(Gate gate);

    std::size_t qubit_count() const { return qubit_count_; }
    std::size_t parameter_count() const { return parameter_names_.size(); }
    const std::vector<std::string>& parameter_names() const { return parameter_names_; }
    const std::vector<Gate>& gates() const { return gates_; }

    /// Concrete gate list with every parameter slot filled in.
    std::vector<Gate> bind(std::span<const double> params) const;

    nlohmann::json to_json() const;
    static Circuit from_json(const nlohmann::json& j);

private:
    std::size_t qubit_count_;
    std::vector<std::string> parameter_names_;
    std::vector<Gate> gates_;
};

/// Unitary action of a bound gate; the input state is not modified.
StateVector apply_gate(const StateVector& psi, const Gate& gate);

/// Applies all gates of `circuit`, bound with `params`, to `psi0` in order.
StateVector run_circuit(const Circuit& circuit, std::span<const double> params,
                        const StateVector& psi0);

} // namespace spinvqe
