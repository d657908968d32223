// SPDX-License-Identifier: Apache-2.0
#include "spinvqe/ansatz.hpp"

#include <stdexcept>

namespace spinvqe {

const char* ansatz_family_name(AnsatzFamily family) {
    switch (family) {
    case AnsatzFamily::Hea: return "hea";
    case AnsatzFamily::Exchange: return "exchange";
    case AnsatzFamily::ExpressiveLayered: return "expressive";
    }
    throw std::logic_error("unknown ansatz family");
}

AnsatzFamily ansatz_family_from_name(const std::string& name) {
    if (name == "hea") return AnsatzFamily::Hea;
    if (name == "exchange") return AnsatzFamily::Exchange;
    if (name == "expressive") return AnsatzFamily::ExpressiveLayered;
    throw std::invalid_argument("unknown ansatz family '" + name + "'");
}

std::size_t AnsatzSpec::parameter_count() const {
    switch (family) {
    case AnsatzFamily::Hea: return 1;
    case AnsatzFamily::Exchange: return layers;
    case AnsatzFamily::ExpressiveLayered: return sites * layers;
    }
    throw std::logic_error("unknown ansatz family");
}

StateVector neel_state(std::size_t sites) {
    std::vector<int> bits(sites);
    for (std::size_t i = 0; i < sites; ++i) {
        bits[i] = static_cast<int>(i % 2);
    }
    return StateVector::basis_state(sites, bits);
}

Circuit build_hea(std::size_t sites) {
    if (sites < 2) {
        throw std::invalid_argument("HEA requires at least 2 sites");
    }
    Circuit c(sites, {"theta"});
    for (std::size_t i = 0; i < sites; ++i) {
        c.append(Gate::ry_param(i, 0));
    }
    for (std::size_t i = 0; i + 1 < sites; ++i) {
        c.append(Gate::cnot(i, i + 1));
    }
    return c;
}

Circuit build_exchange(std::size_t sites, std::size_t layers) {
    if (sites < 2) {
        throw std::invalid_argument("exchange ansatz requires at least 2 sites");
    }
    if (layers < 1) {
        throw std::invalid_argument("exchange ansatz requires at least 1 layer");
    }
    std::vector<std::string> names;
    names.reserve(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        names.push_back("theta" + std::to_string(l));
    }
    Circuit c(sites, std::move(names));
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t i = 0; i + 1 < sites; ++i) {
            c.append(Gate::exchange_param(i, i + 1, static_cast<int>(l)));
        }
    }
    return c;
}

Circuit build_expressive(std::size_t sites, std::size_t layers) {
    if (sites < 2) {
        throw std::invalid_argument("expressive ansatz requires at least 2 sites");
    }
    if (layers < 1) {
        throw std::invalid_argument("expressive ansatz requires at least 1 layer");
    }
    std::vector<std::string> names;
    names.reserve(sites * layers);
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t i = 0; i < sites; ++i) {
            names.push_back("theta" + std::to_string(l) + "_" + std::to_string(i));
        }
    }
    Circuit c(sites, std::move(names));
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t i = 0; i < sites; ++i) {
            c.append(Gate::ry_param(i, static_cast<int>(l * sites + i)));
        }
        for (std::size_t i = 0; i + 1 < sites; ++i) {
            c.append(Gate::cnot(i, i + 1));
        }
    }
    return c;
}

Circuit build_circuit(const AnsatzSpec& spec) {
    switch (spec.family) {
    case AnsatzFamily::Hea: return build_hea(spec.sites);
    case AnsatzFamily::Exchange: return build_exchange(spec.sites, spec.layers);
    case AnsatzFamily::ExpressiveLayered: return build_expressive(spec.sites, spec.layers);
    }
    throw std::logic_error("unknown ansatz family");
}

} // namespace spinvqe
