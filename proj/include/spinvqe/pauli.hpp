// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "spinvqe/statevec.hpp"

namespace spinvqe {

enum class PauliAxis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_to_char(PauliAxis axis);
PauliAxis axis_from_char(char c);

/// Tensor product of single-site Pauli operators with a real coefficient.
/// The all-identity string with coefficient c is the constant c.
struct PauliString {
    std::vector<PauliAxis> axes;
    double coefficient = 1.0;

    PauliString() = default;
    PauliString(std::string_view axes_str, double coeff);
    PauliString(std::vector<PauliAxis> axes_in, double coeff);

    std::size_t size() const { return axes.size(); }
    bool is_identity() const;
    std::string axes_string() const;

    /// Sites where the operator flips the bit (X and Y).
    std::uint64_t flip_mask() const;
    /// Sites contributing a (-1)^bit phase (Y and Z).
    std::uint64_t phase_mask() const;
    /// Non-identity sites; after basis rotation the eigenvalue is the bit
    /// parity over exactly these sites.
    std::uint64_t support_mask() const;
    int y_count() const;

    bool same_axes(const PauliString& other) const { return axes == other.axes; }
};

/// Weighted sum of Pauli strings over a fixed qubit count. Terms with
/// identical axes are merged at construction; terms that cancel to zero
/// are dropped.
class Observable {
public:
    Observable(std::size_t qubit_count, std::vector<PauliString> terms);

    std::size_t qubit_count() const { return qubit_count_; }
    const std::vector<PauliString>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

private:
    std::size_t qubit_count_;
    std::vector<PauliString> terms_;
};

/// s acting on psi as a linear operator, coefficient included.
StateVector apply_pauli_string(const PauliString& s, const StateVector& psi);

/// <psi|P|psi> for a single string; psi must be normalized. Throws if the
/// imaginary residue exceeds 1e-10.
double exact_expectation(const PauliString& term, const StateVector& psi);

/// <psi|obs|psi>; psi must be normalized to 1e-10.
double exact_expectation(const Observable& obs, const StateVector& psi);

/// Text format, one term per line: `<coefficient> <axes>`, e.g. `1.0 XXI`.
/// Blank lines and lines starting with '#' are skipped on parse.
std::string format_observable(const Observable& obs);
Observable parse_observable(std::istream& in);
Observable parse_observable(const std::string& text);

} // namespace spinvqe
