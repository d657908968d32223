// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>

#include "spinvqe/statevec.hpp"

namespace spinvqe {

enum class AnsatzFamily { Hea, Exchange, ExpressiveLayered };

const char* ansatz_family_name(AnsatzFamily family);
AnsatzFamily ansatz_family_from_name(const std::string& name);

struct AnsatzSpec {
    AnsatzFamily family;
    std::size_t sites;
    std::size_t layers = 1;

    /// Hea: 1 shared angle. Exchange: one shared angle per layer.
    /// ExpressiveLayered: one independent R_y angle per site per layer.
    std::size_t parameter_count() const;
};

/// Alternating |0101...> starting with 0 at site 0; the classical
/// antiferromagnetic configuration, and the initial state of every family.
StateVector neel_state(std::size_t sites);

/// N=2: R_y(theta) on both sites (shared), then CNOT(0,1).
/// N>2: one shared-angle R_y layer on all sites, then a CNOT ladder
/// (control i, target i+1 for i = 0..N-2).
Circuit build_hea(std::size_t sites);

/// Per layer, exchange gates applied sequentially on bonds
/// (0,1), (1,2), ..., (N-2,N-1), all sharing that layer's angle.
Circuit build_exchange(std::size_t sites, std::size_t layers);

/// Per layer, independent R_y on every site followed by a CNOT ladder.
Circuit build_expressive(std::size_t sites, std::size_t layers);

Circuit build_circuit(const AnsatzSpec& spec);

} // namespace spinvqe
