// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "spinvqe/pauli.hpp"

using namespace spinvqe;

namespace {

StateVector singlet() {
    std::vector<complex_t> amps(4, complex_t{0.0, 0.0});
    const double r = 1.0 / std::sqrt(2.0);
    amps[2] = complex_t{r, 0.0};  // |01>: site 0 clear, site 1 set
    amps[1] = complex_t{-r, 0.0}; // |10>
    return StateVector::from_amplitudes(2, std::move(amps));
}

Observable heisenberg2() {
    return Observable(2, {PauliString("XX", 1.0), PauliString("YY", 1.0), PauliString("ZZ", 1.0)});
}

} // namespace

TEST(PauliString, MasksAndCounts) {
    const PauliString p("XYZI", 2.0);
    EXPECT_EQ(p.flip_mask(), 0b0011u);    // X and Y sites
    EXPECT_EQ(p.phase_mask(), 0b0110u);   // Y and Z sites
    EXPECT_EQ(p.support_mask(), 0b0111u); // non-identity sites
    EXPECT_EQ(p.y_count(), 1);
    EXPECT_EQ(p.axes_string(), "XYZI");
    EXPECT_FALSE(p.is_identity());
    EXPECT_TRUE(PauliString("III", 0.5).is_identity());
}

TEST(PauliString, RejectsBadAxisCharacter) {
    EXPECT_THROW(PauliString("XQ", 1.0), std::invalid_argument);
}

TEST(ApplyPauliString, ZZOnNeelGivesMinusOne) {
    const StateVector psi = StateVector::basis_state(2, {0, 1});
    const StateVector out = apply_pauli_string(PauliString("ZZ", 1.0), psi);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(out.amplitude(i) + psi.amplitude(i)), 0.0, 1e-15);
    }
}

TEST(ApplyPauliString, XOnFirstSiteFlipsBitZero) {
    const StateVector psi = StateVector::basis_state(2, {0, 0});
    const StateVector out = apply_pauli_string(PauliString("XI", 1.0), psi);
    // |00> -> |10>, i.e. index 1 under site-0-is-LSB ordering
    EXPECT_NEAR(std::abs(out.amplitude(1) - complex_t{1.0, 0.0}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out.amplitude(0)), 0.0, 1e-15);
}

TEST(ApplyPauliString, SingletIsEigenstateOfExchangeCoupling) {
    const StateVector psi = singlet();
    const Observable h = heisenberg2();
    // oracle route: dense 4x4 matrix-vector product
    const Eigen::VectorXcd expect = oracle::observable_matrix(h) * oracle::to_vector(psi);
    Eigen::VectorXcd got = Eigen::VectorXcd::Zero(4);
    for (const PauliString& term : h.terms()) {
        got += oracle::to_vector(apply_pauli_string(term, psi));
    }
    EXPECT_LT((got - expect).cwiseAbs().maxCoeff(), 1e-12);
    // -3 * singlet
    EXPECT_LT((got + 3.0 * oracle::to_vector(psi)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ApplyPauliString, AgreesWithDenseOracleOnRandomInputs) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 1 + seed % 4;
        const StateVector psi = oracle::random_state(n, 100 + seed);
        const PauliString term = oracle::random_pauli(n, 1.7, 200 + seed);
        const Eigen::VectorXcd expect =
            term.coefficient * oracle::pauli_matrix(term.axes_string()) * oracle::to_vector(psi);
        const Eigen::VectorXcd got = oracle::to_vector(apply_pauli_string(term, psi));
        EXPECT_LT((got - expect).cwiseAbs().maxCoeff(), 1e-12) << "seed " << seed;
    }
}

TEST(ApplyPauliString, DimensionMismatchThrows) {
    const StateVector psi = StateVector::basis_state(2, {0, 0});
    EXPECT_THROW(apply_pauli_string(PauliString("XXX", 1.0), psi), std::invalid_argument);
}

TEST(ExactExpectation, NeelStateEnergy) {
    const StateVector psi = StateVector::basis_state(2, {0, 1});
    EXPECT_NEAR(exact_expectation(heisenberg2(), psi), -1.0, 1e-12);
}

TEST(ExactExpectation, SingletEnergyMatchesTableValue) {
    EXPECT_NEAR(exact_expectation(heisenberg2(), singlet()), -3.0, 1e-10);
}

TEST(ExactExpectation, UniformSuperpositionMatchesDenseOracle) {
    std::vector<complex_t> amps(16, complex_t{0.25, 0.0});
    const StateVector psi = StateVector::from_amplitudes(4, std::move(amps));
    std::vector<PauliString> terms;
    for (std::size_t bond = 0; bond < 3; ++bond) {
        for (char axis : {'X', 'Y', 'Z'}) {
            std::string axes(4, 'I');
            axes[bond] = axis;
            axes[bond + 1] = axis;
            terms.emplace_back(axes, 1.0);
        }
    }
    const Observable h4(4, std::move(terms));
    const double expected = oracle::expectation(h4, psi); // dense 16x16 route
    EXPECT_NEAR(exact_expectation(h4, psi), expected, 1e-12);
    EXPECT_NEAR(expected, 3.0, 1e-12); // XX bonds contribute +1 each on the uniform state
}

TEST(ExactExpectation, RejectsUnnormalizedState) {
    std::vector<complex_t> amps(4, complex_t{1.0, 0.0});
    const StateVector psi = StateVector::from_amplitudes(2, std::move(amps));
    EXPECT_THROW(exact_expectation(heisenberg2(), psi), std::invalid_argument);
}

TEST(ExactExpectation, LinearityOnRandomObservables) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 2 + seed % 3;
        const StateVector psi = oracle::random_state(n, 300 + seed);
        const PauliString p = oracle::random_pauli(n, 1.0, 400 + seed);
        const PauliString q = oracle::random_pauli(n, 1.0, 500 + seed);
        if (p.same_axes(q)) continue;
        const double a = 0.7, b = -1.3;
        const Observable combo(n, {PauliString(p.axes, a), PauliString(q.axes, b)});
        const double lhs = exact_expectation(combo, psi);
        const double rhs = a * exact_expectation(PauliString(p.axes, 1.0), psi) +
                           b * exact_expectation(PauliString(q.axes, 1.0), psi);
        EXPECT_NEAR(lhs, rhs, 1e-12);
    }
}

TEST(ExactExpectation, HermiticityOnRandomStates) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 2 + seed % 3;
        const StateVector psi = oracle::random_state(n, 600 + seed);
        std::vector<PauliString> terms;
        for (int k = 0; k < 4; ++k) {
            terms.push_back(
                oracle::random_pauli(n, 0.5 * static_cast<double>(k + 1), 700 + 10 * seed + k));
        }
        // No throw means the imaginary residue stayed under 1e-10.
        EXPECT_NO_THROW(exact_expectation(Observable(n, std::move(terms)), psi));
    }
}

TEST(PauliInvolution, TwiceIsIdentity) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const std::size_t n = 1 + seed % 4;
        const StateVector psi = oracle::random_state(n, 800 + seed);
        const PauliString term = oracle::random_pauli(n, 1.0, 900 + seed);
        const StateVector twice = apply_pauli_string(term, apply_pauli_string(term, psi));
        const Eigen::VectorXcd diff = oracle::to_vector(twice) - oracle::to_vector(psi);
        EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Observable, MergesDuplicateTerms) {
    const Observable obs(2, {PauliString("XX", 1.0), PauliString("ZZ", 0.5),
                             PauliString("XX", 0.25)});
    EXPECT_EQ(obs.term_count(), 2u);
    for (const PauliString& t : obs.terms()) {
        if (t.axes_string() == "XX") EXPECT_DOUBLE_EQ(t.coefficient, 1.25);
    }
}

TEST(Observable, DropsCancelledTerms) {
    const Observable obs(2, {PauliString("XY", 1.0), PauliString("XY", -1.0),
                             PauliString("ZI", 2.0)});
    EXPECT_EQ(obs.term_count(), 1u);
    EXPECT_EQ(obs.terms()[0].axes_string(), "ZI");
}

TEST(Observable, RejectsMixedLengths) {
    EXPECT_THROW(Observable(2, {PauliString("XX", 1.0), PauliString("XXX", 1.0)}),
                 std::invalid_argument);
}

TEST(ObservableText, RoundTrip) {
    const Observable obs(3, {PauliString("XXI", 1.0), PauliString("IYY", -0.25),
                             PauliString("ZIZ", 3.5)});
    const Observable parsed = parse_observable(format_observable(obs));
    ASSERT_EQ(parsed.term_count(), obs.term_count());
    for (std::size_t i = 0; i < obs.term_count(); ++i) {
        EXPECT_EQ(parsed.terms()[i].axes_string(), obs.terms()[i].axes_string());
        EXPECT_DOUBLE_EQ(parsed.terms()[i].coefficient, obs.terms()[i].coefficient);
    }
}

TEST(ObservableText, ParsesCommentsAndBlankLines) {
    const Observable obs = parse_observable("# Heisenberg N=2\n\n1.0 XX\n1.0 YY\n1.0 ZZ\n");
    EXPECT_EQ(obs.term_count(), 3u);
    EXPECT_EQ(obs.qubit_count(), 2u);
}

TEST(ObservableText, RejectsMalformedLines) {
    EXPECT_THROW(parse_observable("1.0\n"), std::invalid_argument);
    EXPECT_THROW(parse_observable("1.0 XX trailing\n"), std::invalid_argument);
    EXPECT_THROW(parse_observable("1.0 XX\n2.0 XXX\n"), std::invalid_argument);
    EXPECT_THROW(parse_observable(""), std::invalid_argument);
}
