// SPDX-License-Identifier: Apache-2.0
#include "spinvqe/pauli.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace spinvqe {

char axis_to_char(PauliAxis axis) {
    switch (axis) {
    case PauliAxis::I: return 'I';
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
    }
    throw std::logic_error("unknown Pauli axis");
}

PauliAxis axis_from_char(char c) {
    switch (c) {
    case 'I': return PauliAxis::I;
    case 'X': return PauliAxis::X;
    case 'Y': return PauliAxis::Y;
    case 'Z': return PauliAxis::Z;
    default:
        throw std::invalid_argument(std::string("invalid Pauli axis character '") + c + "'");
    }
}

PauliString::PauliString(std::string_view axes_str, double coeff) : coefficient(coeff) {
    axes.reserve(axes_str.size());
    for (char c : axes_str) {
        axes.push_back(axis_from_char(c));
    }
}

PauliString::PauliString(std::vector<PauliAxis> axes_in, double coeff)
    : axes(std::move(axes_in)), coefficient(coeff) {}

bool PauliString::is_identity() const {
    for (PauliAxis a : axes) {
        if (a != PauliAxis::I) return false;
    }
    return true;
}

std::string PauliString::axes_string() const {
    std::string s;
    s.reserve(axes.size());
    for (PauliAxis a : axes) {
        s.push_back(axis_to_char(a));
    }
    return s;
}

std::uint64_t PauliString::flip_mask() const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i] == PauliAxis::X || axes[i] == PauliAxis::Y) m |= std::uint64_t{1} << i;
    }
    return m;
}

std::uint64_t PauliString::phase_mask() const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i] == PauliAxis::Y || axes[i] == PauliAxis::Z) m |= std::uint64_t{1} << i;
    }
    return m;
}

std::uint64_t PauliString::support_mask() const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i] != PauliAxis::I) m |= std::uint64_t{1} << i;
    }
    return m;
}

int PauliString::y_count() const {
    int n = 0;
    for (PauliAxis a : axes) {
        if (a == PauliAxis::Y) ++n;
    }
    return n;
}

Observable::Observable(std::size_t qubit_count, std::vector<PauliString> terms)
    : qubit_count_(qubit_count) {
    if (qubit_count == 0) {
        throw std::invalid_argument("observable requires a positive qubit count");
    }
    std::map<std::string, std::size_t> seen;
    for (PauliString& t : terms) {
        if (t.size() != qubit_count) {
            throw std::invalid_argument("term length " + std::to_string(t.size()) +
                                        " does not match observable qubit count " +
                                        std::to_string(qubit_count));
        }
        const std::string key = t.axes_string();
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(key, terms_.size());
            terms_.push_back(std::move(t));
        } else {
            terms_[it->second].coefficient += t.coefficient;
        }
    }
    std::erase_if(terms_, [](const PauliString& t) { return t.coefficient == 0.0; });
}

namespace {

// Phase of P|index>: i^{#Y} * (-1)^{popcount(index & (Y|Z mask))}.
complex_t pauli_phase(int y_count, std::uint64_t phase_mask, std::uint64_t index) {
    static constexpr complex_t i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    complex_t p = i_pow[y_count & 3];
    if (std::popcount(index & phase_mask) & 1) p = -p;
    return p;
}

void check_lengths(const PauliString& s, const StateVector& psi) {
    if (s.size() != psi.qubit_count()) {
        throw std::invalid_argument("Pauli string length " + std::to_string(s.size()) +
                                    " does not match state qubit count " +
                                    std::to_string(psi.qubit_count()));
    }
}

} // namespace

StateVector apply_pauli_string(const PauliString& s, const StateVector& psi) {
    check_lengths(s, psi);
    const std::uint64_t flip = s.flip_mask();
    const std::uint64_t phase = s.phase_mask();
    const int ny = s.y_count();
    const auto& in = psi.amplitudes();
    std::vector<complex_t> out(in.size());
    for (std::size_t idx = 0; idx < in.size(); ++idx) {
        out[idx ^ flip] = s.coefficient * pauli_phase(ny, phase, idx) * in[idx];
    }
    return StateVector::from_amplitudes(psi.qubit_count(), std::move(out));
}

namespace {

complex_t raw_expectation(const PauliString& s, const StateVector& psi) {
    const std::uint64_t flip = s.flip_mask();
    const std::uint64_t phase = s.phase_mask();
    const int ny = s.y_count();
    const auto& amps = psi.amplitudes();
    complex_t acc{0.0, 0.0};
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        acc += std::conj(amps[idx ^ flip]) * pauli_phase(ny, phase, idx) * amps[idx];
    }
    return s.coefficient * acc;
}

void check_normalized(const StateVector& psi) {
    if (!psi.is_normalized(1e-10)) {
        throw std::invalid_argument("expectation requires a normalized state (norm = " +
                                    std::to_string(psi.norm()) + ")");
    }
}

double discard_imag(complex_t value) {
    if (std::abs(value.imag()) > 1e-10) {
        throw std::runtime_error("expectation has imaginary residue " +
                                 std::to_string(value.imag()) +
                                 "; observable is not Hermitian");
    }
    return value.real();
}

} // namespace

double exact_expectation(const PauliString& term, const StateVector& psi) {
    check_lengths(term, psi);
    check_normalized(psi);
    return discard_imag(raw_expectation(term, psi));
}

double exact_expectation(const Observable& obs, const StateVector& psi) {
    if (obs.qubit_count() != psi.qubit_count()) {
        throw std::invalid_argument("observable qubit count does not match state");
    }
    check_normalized(psi);
    complex_t acc{0.0, 0.0};
    for (const PauliString& t : obs.terms()) {
        acc += raw_expectation(t, psi);
    }
    return discard_imag(acc);
}

std::string format_observable(const Observable& obs) {
    std::ostringstream out;
    out.precision(17);
    for (const PauliString& t : obs.terms()) {
        out << t.coefficient << ' ' << t.axes_string() << '\n';
    }
    return out.str();
}

Observable parse_observable(std::istream& in) {
    std::vector<PauliString> terms;
    std::size_t qubit_count = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        double coeff = 0.0;
        std::string axes;
        if (!(ls >> coeff >> axes)) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected `<coeff> <axes>`");
        }
        std::string extra;
        if (ls >> extra) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": trailing content '" +
                                        extra + "'");
        }
        PauliString term(axes, coeff);
        if (qubit_count == 0) {
            qubit_count = term.size();
        } else if (term.size() != qubit_count) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": inconsistent string length");
        }
        terms.push_back(std::move(term));
    }
    if (terms.empty()) {
        throw std::invalid_argument("observable text contains no terms");
    }
    return Observable(qubit_count, std::move(terms));
}

Observable parse_observable(const std::string& text) {
    std::istringstream in(text);
    return parse_observable(in);
}

} // namespace spinvqe
