// SPDX-License-Identifier: Apache-2.0
#include "spinvqe/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace spinvqe {

namespace {

void check_qubit_count(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("qubit count must be at least 1");
    }
    if (n > kMaxQubits) {
        throw std::invalid_argument("qubit count " + std::to_string(n) + " exceeds the dense limit of " +
                                    std::to_string(kMaxQubits));
    }
}

} // namespace

StateVector StateVector::basis_state(std::size_t qubit_count, const std::vector<int>& bits) {
    check_qubit_count(qubit_count);
    if (bits.size() != qubit_count) {
        throw std::invalid_argument("bitstring length " + std::to_string(bits.size()) +
                                    " does not match qubit count " + std::to_string(qubit_count));
    }
    std::size_t index = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0 && bits[i] != 1) {
            throw std::invalid_argument("bitstring entries must be 0 or 1");
        }
        index |= static_cast<std::size_t>(bits[i]) << i;
    }
    std::vector<complex_t> amps(std::size_t{1} << qubit_count, complex_t{0.0, 0.0});
    amps[index] = complex_t{1.0, 0.0};
    return StateVector(qubit_count, std::move(amps));
}

StateVector StateVector::zero_state(std::size_t qubit_count) {
    return basis_state(qubit_count, std::vector<int>(qubit_count, 0));
}

StateVector StateVector::from_amplitudes(std::size_t qubit_count, std::vector<complex_t> amps) {
    check_qubit_count(qubit_count);
    if (amps.size() != (std::size_t{1} << qubit_count)) {
        throw std::invalid_argument("amplitude vector size must be 2^qubit_count");
    }
    return StateVector(qubit_count, std::move(amps));
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

double StateVector::overlap_magnitude(const StateVector& other) const {
    if (other.qubit_count_ != qubit_count_) {
        throw std::invalid_argument("overlap between states of different qubit counts");
    }
    complex_t acc{0.0, 0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        acc += std::conj(amps_[i]) * other.amps_[i];
    }
    return std::abs(acc);
}

const char* gate_kind_name(GateKind kind) {
    switch (kind) {
    case GateKind::Ry: return "ry";
    case GateKind::Hadamard: return "h";
    case GateKind::SDagger: return "sdg";
    case GateKind::Cnot: return "cnot";
    case GateKind::Cz: return "cz";
    case GateKind::Exchange: return "exchange";
    }
    throw std::logic_error("unknown gate kind");
}

GateKind gate_kind_from_name(const std::string& name) {
    if (name == "ry") return GateKind::Ry;
    if (name == "h") return GateKind::Hadamard;
    if (name == "sdg") return GateKind::SDagger;
    if (name == "cnot") return GateKind::Cnot;
    if (name == "cz") return GateKind::Cz;
    if (name == "exchange") return GateKind::Exchange;
    throw std::invalid_argument("unknown gate kind '" + name + "'");
}

namespace {

Gate make_gate(GateKind kind, std::vector<std::size_t> sites, double angle, int param_index) {
    if (sites.size() == 2 && sites[0] == sites[1]) {
        throw std::invalid_argument("two-site gate requires distinct sites");
    }
    return Gate{kind, std::move(sites), angle, param_index};
}

} // namespace

Gate Gate::ry(std::size_t site, double angle) { return make_gate(GateKind::Ry, {site}, angle, -1); }
Gate Gate::ry_param(std::size_t site, int param_index) {
    return make_gate(GateKind::Ry, {site}, 0.0, param_index);
}
Gate Gate::hadamard(std::size_t site) { return make_gate(GateKind::Hadamard, {site}, 0.0, -1); }
Gate Gate::sdagger(std::size_t site) { return make_gate(GateKind::SDagger, {site}, 0.0, -1); }
Gate Gate::cnot(std::size_t control, std::size_t target) {
    return make_gate(GateKind::Cnot, {control, target}, 0.0, -1);
}
Gate Gate::cz(std::size_t a, std::size_t b) { return make_gate(GateKind::Cz, {a, b}, 0.0, -1); }
Gate Gate::exchange(std::size_t i, std::size_t j, double angle) {
    return make_gate(GateKind::Exchange, {i, j}, angle, -1);
}
Gate Gate::exchange_param(std::size_t i, std::size_t j, int param_index) {
    return make_gate(GateKind::Exchange, {i, j}, 0.0, param_index);
}

Circuit::Circuit(std::size_t qubit_count, std::vector<std::string> parameter_names)
    : qubit_count_(qubit_count), parameter_names_(std::move(parameter_names)) {
    check_qubit_count(qubit_count);
}

void Circuit::append(Gate gate) {
    for (std::size_t site : gate.sites) {
        if (site >= qubit_count_) {
            throw std::invalid_argument("gate site " + std::to_string(site) +
                                        " out of range for " + std::to_string(qubit_count_) +
                                        " qubits");
        }
    }
    if (gate.param_index >= 0 &&
        static_cast<std::size_t>(gate.param_index) >= parameter_names_.size()) {
        throw std::invalid_argument("gate references parameter slot " +
                                    std::to_string(gate.param_index) + " but circuit declares " +
                                    std::to_string(parameter_names_.size()));
    }
    gates_.push_back(std::move(gate));
}

std::vector<Gate> Circuit::bind(std::span<const double> params) const {
    if (params.size() != parameter_names_.size()) {
        throw std::invalid_argument("parameter vector arity " + std::to_string(params.size()) +
                                    " does not match circuit arity " +
                                    std::to_string(parameter_names_.size()));
    }
    std::vector<Gate> bound = gates_;
    for (Gate& g : bound) {
        if (g.param_index >= 0) {
            g.angle = params[static_cast<std::size_t>(g.param_index)];
            g.param_index = -1;
        }
    }
    return bound;
}

nlohmann::json Circuit::to_json() const {
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate& g : gates_) {
        nlohmann::json jg;
        jg["kind"] = gate_kind_name(g.kind);
        jg["sites"] = g.sites;
        if (g.param_index >= 0) {
            jg["param"] = parameter_names_[static_cast<std::size_t>(g.param_index)];
        } else if (g.kind == GateKind::Ry || g.kind == GateKind::Exchange) {
            jg["angle"] = g.angle;
        }
        gates.push_back(std::move(jg));
    }
    return nlohmann::json{{"qubit_count", qubit_count_},
                          {"parameters", parameter_names_},
                          {"gates", std::move(gates)}};
}

Circuit Circuit::from_json(const nlohmann::json& j) {
    Circuit c(j.at("qubit_count").get<std::size_t>(),
              j.value("parameters", std::vector<std::string>{}));
    for (const auto& jg : j.at("gates")) {
        Gate g;
        g.kind = gate_kind_from_name(jg.at("kind").get<std::string>());
        g.sites = jg.at("sites").get<std::vector<std::size_t>>();
        if (jg.contains("param")) {
            const auto name = jg["param"].get<std::string>();
            const auto& names = c.parameter_names();
            auto it = std::find(names.begin(), names.end(), name);
            if (it == names.end()) {
                throw std::invalid_argument("gate references undeclared parameter '" + name + "'");
            }
            g.param_index = static_cast<int>(it - names.begin());
        } else {
            g.angle = jg.value("angle", 0.0);
        }
        if (g.sites.size() == 2 && g.sites[0] == g.sites[1]) {
            throw std::invalid_argument("two-site gate requires distinct sites");
        }
        c.append(std::move(g));
    }
    return c;
}

namespace {

// In-place 2x2 update over all amplitude pairs split by the site bit.
void apply_one_qubit(std::vector<complex_t>& amps, std::size_t site, complex_t u00, complex_t u01,
                     complex_t u10, complex_t u11) {
    const std::size_t mask = std::size_t{1} << site;
    const std::size_t lo_mask = mask - 1;
    const std::size_t hi_mask = ~lo_mask;
    const std::size_t half = amps.size() / 2;
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i0 = ((k & hi_mask) << 1) | (k & lo_mask);
        const std::size_t i1 = i0 | mask;
        const complex_t a0 = amps[i0];
        const complex_t a1 = amps[i1];
        amps[i0] = u00 * a0 + u01 * a1;
        amps[i1] = u10 * a0 + u11 * a1;
    }
}

void check_bound(const Gate& g) {
    if (g.is_parameterized()) {
        throw std::invalid_argument("cannot apply an unbound parameterized gate");
    }
}

} // namespace

StateVector apply_gate(const StateVector& psi, const Gate& gate) {
    check_bound(gate);
    for (std::size_t site : gate.sites) {
        if (site >= psi.qubit_count()) {
            throw std::invalid_argument("gate site " + std::to_string(site) +
                                        " out of range for state of " +
                                        std::to_string(psi.qubit_count()) + " qubits");
        }
    }
    StateVector out = psi;
    auto& amps = out.amps_;

    switch (gate.kind) {
    case GateKind::Ry: {
        const double c = std::cos(gate.angle / 2.0);
        const double s = std::sin(gate.angle / 2.0);
        apply_one_qubit(amps, gate.sites[0], {c, 0}, {-s, 0}, {s, 0}, {c, 0});
        break;
    }
    case GateKind::Hadamard: {
        const double r = 1.0 / std::sqrt(2.0);
        apply_one_qubit(amps, gate.sites[0], {r, 0}, {r, 0}, {r, 0}, {-r, 0});
        break;
    }
    case GateKind::SDagger: {
        apply_one_qubit(amps, gate.sites[0], {1, 0}, {0, 0}, {0, 0}, {0, -1});
        break;
    }
    case GateKind::Cnot: {
        const std::size_t cmask = std::size_t{1} << gate.sites[0];
        const std::size_t tmask = std::size_t{1} << gate.sites[1];
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & cmask) && !(i & tmask)) {
                std::swap(amps[i], amps[i | tmask]);
            }
        }
        break;
    }
    case GateKind::Cz: {
        const std::size_t both = (std::size_t{1} << gate.sites[0]) | (std::size_t{1} << gate.sites[1]);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & both) == both) {
                amps[i] = -amps[i];
            }
        }
        break;
    }
    case GateKind::Exchange: {
        // exp[-i t (XX+YY+ZZ)] is block diagonal in the two-site magnetization:
        // e^{-it} on |00> and |11>, and e^{it} [cos 2t, -i sin 2t; -i sin 2t, cos 2t]
        // on span{|01>, |10>}.
        const double t = gate.angle;
        const complex_t phase_same = std::exp(complex_t{0.0, -t});
        const complex_t diag = std::exp(complex_t{0.0, t}) * std::cos(2.0 * t);
        const complex_t off = std::exp(complex_t{0.0, t}) * complex_t{0.0, -std::sin(2.0 * t)};
        const std::size_t mi = std::size_t{1} << gate.sites[0];
        const std::size_t mj = std::size_t{1} << gate.sites[1];
        for (std::size_t i = 0; i < amps.size(); ++i) {
            const bool bi = (i & mi) != 0;
            const bool bj = (i & mj) != 0;
            if (bi == bj) {
                amps[i] *= phase_same;
            } else if (bi && !bj) {
                // visit each {|01>,|10>} pair once, from its bi=1 member
                const std::size_t partner = (i ^ mi) | mj;
                const complex_t a10 = amps[i];
                const complex_t a01 = amps[partner];
                amps[partner] = diag * a01 + off * a10;
                amps[i] = off * a01 + diag * a10;
            }
        }
        break;
    }
    }
    return out;
}

StateVector run_circuit(const Circuit& circuit, std::span<const double> params,
                        const StateVector& psi0) {
    if (psi0.qubit_count() != circuit.qubit_count()) {
        throw std::invalid_argument("initial state qubit count does not match circuit");
    }
    StateVector psi = psi0;
    for (const Gate& g : circuit.bind(params)) {
        psi = apply_gate(psi, g);
    }
    return psi;
}

} // namespace spinvqe
