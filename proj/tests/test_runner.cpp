// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracle.hpp"
#include "spinvqe/runner.hpp"

using namespace spinvqe;

namespace {

ExperimentConfig exchange_exact(std::size_t n, std::size_t points = 50) {
    ExperimentConfig config;
    config.chain = HeisenbergChain(n);
    config.ansatz = AnsatzSpec{AnsatzFamily::Exchange, n, 1};
    config.execution = ExactExecution{};
    config.sweep = GridSpec{0.0, M_PI, points};
    config.threads = 1;
    return config;
}

} // namespace

TEST(GroupIntoSettings, HeisenbergCollapsesToThreeGlobalBases) {
    const Observable h2 = build_hamiltonian(HeisenbergChain(2));
    const auto s2 = group_into_settings(h2);
    ASSERT_EQ(s2.size(), 3u);

    const Observable h4 = build_hamiltonian(HeisenbergChain(4));
    const auto s4 = group_into_settings(h4);
    ASSERT_EQ(s4.size(), 3u);
    EXPECT_EQ(s4[0].setting.axes_string(), "XXXX");
    EXPECT_EQ(s4[1].setting.axes_string(), "YYYY");
    EXPECT_EQ(s4[2].setting.axes_string(), "ZZZZ");
    for (const auto& s : s4) {
        EXPECT_EQ(s.term_indices.size(), 3u); // one bond term per setting family
    }
}

TEST(BuildBatch, CircuitCountsMatchGridTimesBases) {
    EXPECT_EQ(build_batch(exchange_exact(2, 50)).circuits.size(), 150u);

    ExperimentConfig three = exchange_exact(2, 3);
    three.sweep = GridSpec{0.0, M_PI / 2.0, 3}; // {0, pi/4, pi/2}
    const BatchJob job = build_batch(three);
    EXPECT_EQ(job.circuits.size(), 9u);
    EXPECT_EQ(job.circuits[0].parameters[0], 0.0);
    EXPECT_NEAR(job.circuits[3].parameters[0], M_PI / 4.0, 1e-15);
}

TEST(BuildBatch, OptimizerModeIsRejected) {
    ExperimentConfig config = exchange_exact(2);
    config.sweep = OptimizerSpec{};
    EXPECT_THROW(build_batch(config), std::invalid_argument);
}

TEST(BuildBatch, MultiParameterGridIsRejected) {
    ExperimentConfig config = exchange_exact(2);
    config.ansatz = AnsatzSpec{AnsatzFamily::ExpressiveLayered, 2, 2};
    EXPECT_THROW(config.validate(), std::invalid_argument);
}

TEST(BatchingEquivalence, ShuffledExecutionIsBitExact) {
    for (int mode = 0; mode < 3; ++mode) {
        ExperimentConfig config = exchange_exact(2, 9);
        if (mode == 1) {
            config.execution = SampledExecution{300, 4242};
        } else if (mode == 2) {
            config.execution = NoisyExecution{garnet_noise_model(), 300, 4242};
        }
        const SweepResult sequential = run_sweep(config);
        const BatchJob job = build_batch(config);
        std::vector<std::size_t> order(job.circuits.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), std::mt19937{12345});
        const std::vector<SweepPoint> batched = execute_batch(config, job, order);
        ASSERT_EQ(batched.size(), sequential.points.size());
        for (std::size_t i = 0; i < batched.size(); ++i) {
            EXPECT_EQ(batched[i].estimate.energy, sequential.points[i].estimate.energy)
                << "mode " << mode << " point " << i;
            EXPECT_EQ(batched[i].estimate.sigma, sequential.points[i].estimate.sigma);
        }
    }
}

TEST(BatchingEquivalence, GroupedInfiniteShotMatchesExactExpectationPerBond) {
    // N=4: XX/YY/ZZ terms on different bonds are read out from the same three
    // global settings; per-bond parity extraction must agree with the exact
    // per-term expectations.
    ExperimentConfig config = exchange_exact(4, 7);
    config.execution = SampledExecution{0, 1}; // infinite-shot measurement path
    const SweepResult result = run_sweep(config);

    const Observable h = build_hamiltonian(HeisenbergChain(4));
    const Circuit circuit = build_exchange(4, 1);
    const StateVector neel = neel_state(4);
    for (const SweepPoint& point : result.points) {
        const StateVector psi = run_circuit(circuit, point.parameters, neel);
        ASSERT_EQ(point.estimate.per_term.size(), h.term_count());
        for (const TermEstimate& t : point.estimate.per_term) {
            EXPECT_NEAR(t.estimate, exact_expectation(t.term, psi), 1e-12)
                << t.term.axes_string();
        }
        EXPECT_NEAR(point.estimate.energy, exact_expectation(h, psi), 1e-12);
    }
}

TEST(RunSweep, ExchangeTwoSiteExactColumn) {
    const SweepResult result = run_sweep(exchange_exact(2, 50));
    EXPECT_EQ(result.points.size(), 50u);
    EXPECT_NEAR(result.min_point.estimate.energy, -1.0, 1e-9);
    EXPECT_NEAR(result.reference_energy, -3.0, 1e-9);
    EXPECT_NEAR(result.error, 2.0, 1e-9);
    for (const SweepPoint& p : result.points) {
        EXPECT_NEAR(p.estimate.energy, -1.0, 1e-9);
    }
    EXPECT_TRUE(variational_bound_ok(result));
}

TEST(RunSweep, SampledModeIsDeterministicPerSeed) {
    ExperimentConfig config = exchange_exact(2, 11);
    config.execution = SampledExecution{500, 777};
    const SweepResult a = run_sweep(config);
    const SweepResult b = run_sweep(config);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        EXPECT_EQ(a.points[i].estimate.energy, b.points[i].estimate.energy);
    }
    config.execution = SampledExecution{500, 778};
    const SweepResult c = run_sweep(config);
    bool any_different = false;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        any_different |= a.points[i].estimate.energy != c.points[i].estimate.energy;
    }
    EXPECT_TRUE(any_different);
}

TEST(RunSweep, ThreadedAndSequentialAgreeBitExactly) {
    ExperimentConfig config = exchange_exact(3, 16);
    config.execution = SampledExecution{400, 31415};
    config.threads = 1;
    const SweepResult sequential = run_sweep(config);
    config.threads = 4;
    const SweepResult threaded = run_sweep(config);
    for (std::size_t i = 0; i < sequential.points.size(); ++i) {
        EXPECT_EQ(sequential.points[i].estimate.energy, threaded.points[i].estimate.energy);
    }
}

TEST(RunSweep, NoisyGarnetBracketsTheHardwareValue) {
    ExperimentConfig config = exchange_exact(2, 50);
    config.execution = NoisyExecution{garnet_noise_model(), 0, 1};
    const SweepResult result = run_sweep(config);
    EXPECT_GE(result.min_point.estimate.energy, -1.0);
    EXPECT_LE(result.min_point.estimate.energy, -0.80);
    EXPECT_GT(result.min_point.estimate.energy, -1.0 + 1e-6);
}

TEST(RunSweep, NeelEnergySampledWithinThreeSigma) {
    // <XX> and <YY> vanish on the Neel state, so shot noise is genuinely
    // nonzero; the estimate must still track the exact value.
    ExperimentConfig config = exchange_exact(2, 2);
    config.sweep = GridSpec{0.0, 1e-12, 2}; // effectively the Neel point twice
    config.execution = SampledExecution{1500, 2024};
    const SweepResult result = run_sweep(config);
    for (const SweepPoint& p : result.points) {
        EXPECT_GT(p.estimate.sigma, 0.0);
        EXPECT_NEAR(p.estimate.energy, -1.0, 4.0 * p.estimate.sigma);
    }
}

TEST(RunOptimizer, ExpressiveFamiliesReachTheirTargets) {
    ExperimentConfig config;
    config.chain = HeisenbergChain(2);
    config.ansatz = AnsatzSpec{AnsatzFamily::ExpressiveLayered, 2, 3};
    config.execution = ExactExecution{};
    config.sweep = OptimizerSpec{};
    const SweepResult n2 = run_optimizer(config);
    EXPECT_NEAR(n2.min_point.estimate.energy, -3.0, 1e-3);
    EXPECT_TRUE(n2.converged);
    EXPECT_TRUE(variational_bound_ok(n2));

    config.chain = HeisenbergChain(3);
    config.ansatz = AnsatzSpec{AnsatzFamily::ExpressiveLayered, 3, 4};
    const SweepResult n3 = run_optimizer(config);
    EXPECT_LE(n3.min_point.estimate.energy, -3.98);
}

TEST(RunOptimizer, SameSeedSameTrajectory) {
    ExperimentConfig config;
    config.chain = HeisenbergChain(2);
    config.ansatz = AnsatzSpec{AnsatzFamily::ExpressiveLayered, 2, 2};
    config.execution = ExactExecution{};
    config.sweep = OptimizerSpec{50000, 1e-10, 3, 99};
    const SweepResult a = run_optimizer(config);
    const SweepResult b = run_optimizer(config);
    EXPECT_EQ(a.min_point.estimate.energy, b.min_point.estimate.energy);
    EXPECT_EQ(a.min_point.parameters, b.min_point.parameters);
    EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(RunOptimizer, SingleEvaluationBudgetIsUnconverged) {
    ExperimentConfig config;
    config.chain = HeisenbergChain(2);
    config.ansatz = AnsatzSpec{AnsatzFamily::Hea, 2, 1};
    config.execution = ExactExecution{};
    config.sweep = OptimizerSpec{1, 1e-10, 8, 1};
    const SweepResult result = run_optimizer(config);
    EXPECT_FALSE(result.converged);
    EXPECT_EQ(result.evaluations, 1u);
    ASSERT_EQ(result.points.size(), 1u);
    // restart 0 starts from all-zero angles: the bare Neel/CNOT point
    EXPECT_NEAR(result.min_point.estimate.energy, -1.0, 1e-12);
}

TEST(RunOptimizer, RejectsNonExactExecution) {
    ExperimentConfig config;
    config.chain = HeisenbergChain(2);
    config.ansatz = AnsatzSpec{AnsatzFamily::ExpressiveLayered, 2, 2};
    config.execution = SampledExecution{100, 1};
    config.sweep = OptimizerSpec{};
    EXPECT_THROW(run_optimizer(config), std::invalid_argument);
}

TEST(VariationalBound, HoldsForRandomConfigurations) {
    for (std::size_t n = 2; n <= 6; ++n) {
        const double ground = exact_diagonalize(HeisenbergChain(n)).ground_energy;
        const Observable h = build_hamiltonian(HeisenbergChain(n));
        const StateVector neel = neel_state(n);
        for (AnsatzFamily family :
             {AnsatzFamily::Hea, AnsatzFamily::Exchange, AnsatzFamily::ExpressiveLayered}) {
            const AnsatzSpec spec{family, n, 2};
            const Circuit circuit = build_circuit(spec);
            SplitMix64 rng(derive_subseed(31337, n * 8 + static_cast<std::size_t>(family)));
            for (int v = 0; v < 6; ++v) {
                std::vector<double> params(spec.parameter_count());
                for (double& p : params) p = rng.next_double() * 2.0 * M_PI;
                const double e = exact_expectation(h, run_circuit(circuit, params, neel));
                EXPECT_GE(e, ground - 1e-9) << "N=" << n;
            }
        }
    }
}

TEST(MonotoneGap, ExchangeErrorGrowsWithSystemSize) {
    std::vector<double> gaps;
    for (std::size_t n : {2u, 3u, 4u}) {
        const SweepResult result = run_sweep(exchange_exact(n));
        gaps.push_back(result.error);
    }
    EXPECT_LE(gaps[0], gaps[1] + 1e-9);
    EXPECT_LE(gaps[1], gaps[2] + 1e-9);
    EXPECT_NEAR(gaps[0], 2.0, 1e-9);
    EXPECT_NEAR(gaps[1], 2.0, 1e-9);
}

TEST(ArgminIndex, BreaksTiesLexicographically) {
    std::vector<SweepPoint> points;
    points.push_back(SweepPoint{{2.0}, EnergyEstimate{-1.0, 0.0, {}}});
    points.push_back(SweepPoint{{1.0}, EnergyEstimate{-1.0, 0.0, {}}});
    points.push_back(SweepPoint{{3.0}, EnergyEstimate{-0.5, 0.0, {}}});
    EXPECT_EQ(argmin_index(points), 1u);
    points.push_back(SweepPoint{{0.5}, EnergyEstimate{-2.0, 0.0, {}}});
    EXPECT_EQ(argmin_index(points), 3u);
    EXPECT_THROW(argmin_index({}), std::invalid_argument);
}

TEST(MakeReport, ScalingTableReproducesExactColumn) {
    std::vector<SweepResult> results;
    for (std::size_t n : {2u, 3u, 4u}) {
        results.push_back(run_sweep(exchange_exact(n, 10)));
    }
    const Report report = make_report(results);
    ASSERT_EQ(report.scaling.size(), 3u);
    EXPECT_NEAR(report.scaling[0].exact_energy, -3.0000, 5e-4);
    EXPECT_NEAR(report.scaling[1].exact_energy, -4.0000, 5e-4);
    EXPECT_NEAR(report.scaling[2].exact_energy, -6.4641, 5e-4);
    EXPECT_TRUE(report.scaling[0].exchange_min.has_value());
    EXPECT_FALSE(report.scaling[0].expressive_min.has_value());
    EXPECT_EQ(report.landscapes.size(), 3u);
}

TEST(MakeReport, EmptyInputKeepsSchemaHeaders) {
    const Report report = make_report({});
    std::ostringstream csv;
    report.write_scaling_csv(csv);
    EXPECT_EQ(csv.str(), "N,exact,expressive,exchange,gap\n");
    EXPECT_TRUE(report.to_json().contains("scaling"));
}

TEST(MakeReport, LandscapeCsvHasThreeColumnsAndGridRows) {
    ExperimentConfig config = exchange_exact(2, 7);
    config.execution = NoisyExecution{garnet_noise_model(), 200, 5};
    const SweepResult result = run_sweep(config);
    const Report report = make_report({result});
    ASSERT_EQ(report.landscapes.size(), 1u);
    std::ostringstream csv;
    Report::write_landscape_csv(csv, report.landscapes[0]);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "theta,energy,sigma");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2);
        ++rows;
    }
    EXPECT_EQ(rows, 7u);
}

TEST(ConfigJson, RoundTripAllModes) {
    ExperimentConfig config = exchange_exact(3, 21);
    config.execution = NoisyExecution{garnet_noise_model(), 1500, 555};
    config.threads = 2;
    const ExperimentConfig back = config_from_json(config_to_json(config));
    EXPECT_EQ(back.chain.sites, 3u);
    EXPECT_EQ(std::get<GridSpec>(back.sweep).points, 21u);
    const auto& noisy = std::get<NoisyExecution>(back.execution);
    EXPECT_EQ(noisy.shots, 1500u);
    EXPECT_EQ(noisy.seed, 555u);
    EXPECT_DOUBLE_EQ(noisy.model.readout_flip_prob, garnet_noise_model().readout_flip_prob);

    ExperimentConfig opt;
    opt.chain = HeisenbergChain(4);
    opt.ansatz = AnsatzSpec{AnsatzFamily::ExpressiveLayered, 4, 4};
    opt.sweep = OptimizerSpec{1000, 1e-8, 2, 7};
    const ExperimentConfig opt_back = config_from_json(config_to_json(opt));
    EXPECT_EQ(std::get<OptimizerSpec>(opt_back.sweep).restarts, 2u);
    EXPECT_EQ(opt_back.ansatz.layers, 4u);
}

TEST(ConfigJson, RejectsInvalidConfigs) {
    nlohmann::json j = config_to_json(exchange_exact(2));
    j["sweep"]["grid"]["points"] = 1;
    EXPECT_THROW(config_from_json(j), std::invalid_argument);

    j = config_to_json(exchange_exact(2));
    j["execution"] = {{"mode", "noisy"},
                      {"noise", {{"readout_flip_prob", 1.5}}}};
    EXPECT_THROW(config_from_json(j), std::invalid_argument);
}

TEST(SweepResultJson, RoundTripPreservesEverything) {
    ExperimentConfig config = exchange_exact(2, 5);
    config.execution = SampledExecution{120, 9};
    const SweepResult result = run_sweep(config);
    const SweepResult back = sweep_result_from_json(sweep_result_to_json(result));
    EXPECT_EQ(back.points.size(), result.points.size());
    EXPECT_DOUBLE_EQ(back.min_point.estimate.energy, result.min_point.estimate.energy);
    EXPECT_DOUBLE_EQ(back.reference_energy, result.reference_energy);
    EXPECT_DOUBLE_EQ(back.error, result.error);
    EXPECT_EQ(back.points[2].estimate.per_term.size(),
              result.points[2].estimate.per_term.size());
}
