// SPDX-License-Identifier: Apache-2.0
#include "spinvqe/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace spinvqe {

void ExperimentConfig::validate() const {
    if (ansatz.sites != chain.sites) {
        throw std::invalid_argument("ansatz site count must match the chain");
    }
    if (ansatz.layers < 1) {
        throw std::invalid_argument("ansatz requires at least 1 layer");
    }
    if (const auto* grid = std::get_if<GridSpec>(&sweep)) {
        if (grid->points < 2) {
            throw std::invalid_argument("grid sweep requires at least 2 points");
        }
        if (!std::isfinite(grid->start) || !std::isfinite(grid->end)) {
            throw std::invalid_argument("grid sweep range must be finite");
        }
        if (ansatz.parameter_count() != 1) {
            throw std::invalid_argument(
                "grid sweeps are defined for single-parameter ansatz configurations");
        }
    } else {
        const auto& opt = std::get<OptimizerSpec>(sweep);
        if (opt.max_evals < 1) {
            throw std::invalid_argument("optimizer requires max_evals >= 1");
        }
        if (opt.restarts < 1) {
            throw std::invalid_argument("optimizer requires at least 1 restart");
        }
    }
    if (const auto* noisy = std::get_if<NoisyExecution>(&execution)) {
        noisy->model.validate();
        if (chain.sites > kMaxNoisyQubits) {
            throw std::invalid_argument("noisy execution supports at most " +
                                        std::to_string(kMaxNoisyQubits) + " sites");
        }
    }
}

namespace {

nlohmann::json noise_to_json(const NoiseModel& nm) {
    return nlohmann::json{{"readout_flip_prob", nm.readout_flip_prob},
                          {"single_qubit_depol", nm.single_qubit_depol},
                          {"two_qubit_depol", nm.two_qubit_depol},
                          {"t1_us", nm.t1_us},
                          {"t2_us", nm.t2_us},
                          {"gate_time_1q_ns", nm.gate_time_1q_ns},
                          {"gate_time_2q_ns", nm.gate_time_2q_ns}};
}

NoiseModel noise_from_json(const nlohmann::json& j) {
    NoiseModel nm;
    nm.readout_flip_prob = j.value("readout_flip_prob", 0.0);
    nm.single_qubit_depol = j.value("single_qubit_depol", 0.0);
    nm.two_qubit_depol = j.value("two_qubit_depol", 0.0);
    nm.t1_us = j.value("t1_us", 0.0);
    nm.t2_us = j.value("t2_us", 0.0);
    nm.gate_time_1q_ns = j.value("gate_time_1q_ns", 0.0);
    nm.gate_time_2q_ns = j.value("gate_time_2q_ns", 0.0);
    nm.validate();
    return nm;
}

} // namespace

nlohmann::json config_to_json(const ExperimentConfig& config) {
    nlohmann::json j;
    j["chain"] = {{"sites", config.chain.sites}, {"coupling", config.chain.coupling}};
    j["ansatz"] = {{"family", ansatz_family_name(config.ansatz.family)},
                   {"layers", config.ansatz.layers}};
    if (std::holds_alternative<ExactExecution>(config.execution)) {
        j["execution"] = {{"mode", "exact"}};
    } else if (const auto* s = std::get_if<SampledExecution>(&config.execution)) {
        j["execution"] = {{"mode", "sampled"}, {"shots", s->shots}, {"seed", s->seed}};
    } else {
        const auto& n = std::get<NoisyExecution>(config.execution);
        j["execution"] = {{"mode", "noisy"},
                          {"shots", n.shots},
                          {"seed", n.seed},
                          {"noise", noise_to_json(n.model)}};
    }
    if (const auto* grid = std::get_if<GridSpec>(&config.sweep)) {
        j["sweep"] = {{"grid",
                       {{"start", grid->start}, {"end", grid->end}, {"points", grid->points}}}};
    } else {
        const auto& opt = std::get<OptimizerSpec>(config.sweep);
        j["sweep"] = {{"optimizer",
                       {{"max_evals", opt.max_evals},
                        {"tolerance", opt.tolerance},
                        {"restarts", opt.restarts},
                        {"seed", opt.seed}}}};
    }
    j["threads"] = config.threads;
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    const auto& jc = j.at("chain");
    config.chain = HeisenbergChain(jc.at("sites").get<std::size_t>(), jc.value("coupling", 1.0));
    const auto& ja = j.at("ansatz");
    config.ansatz.family = ansatz_family_from_name(ja.at("family").get<std::string>());
    config.ansatz.sites = config.chain.sites;
    config.ansatz.layers = ja.value("layers", std::size_t{1});
    if (j.contains("execution")) {
        const auto& je = j["execution"];
        const auto mode = je.at("mode").get<std::string>();
        if (mode == "exact") {
            config.execution = ExactExecution{};
        } else if (mode == "sampled") {
            config.execution = SampledExecution{je.value("shots", std::size_t{1500}),
                                                je.value("seed", std::uint64_t{1234})};
        } else if (mode == "noisy") {
            NoisyExecution n;
            n.shots = je.value("shots", std::size_t{0});
            n.seed = je.value("seed", std::uint64_t{1234});
            n.model = je.contains("noise") ? noise_from_json(je["noise"]) : garnet_noise_model();
            config.execution = n;
        } else {
            throw std::invalid_argument("unknown execution mode '" + mode + "'");
        }
    }
    if (j.contains("sweep")) {
        const auto& js = j["sweep"];
        if (js.contains("grid")) {
            const auto& jg = js["grid"];
            config.sweep = GridSpec{jg.value("start", 0.0),
                                    jg.value("end", 3.141592653589793),
                                    jg.value("points", std::size_t{50})};
        } else if (js.contains("optimizer")) {
            const auto& jo = js["optimizer"];
            config.sweep = OptimizerSpec{jo.value("max_evals", std::size_t{2000000}),
                                         jo.value("tolerance", 1e-10),
                                         jo.value("restarts", std::size_t{8}),
                                         jo.value("seed", std::uint64_t{1234})};
        } else {
            throw std::invalid_argument("sweep must contain 'grid' or 'optimizer'");
        }
    }
    config.threads = j.value("threads", std::size_t{0});
    config.validate();
    return config;
}

bool variational_bound_ok(const SweepResult& result) {
    return result.error >= -3.0 * result.min_point.estimate.sigma - 1e-9;
}

namespace {

nlohmann::json point_to_json(const SweepPoint& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const TermEstimate& t : p.estimate.per_term) {
        terms.push_back({{"axes", t.term.axes_string()},
                         {"coefficient", t.term.coefficient},
                         {"estimate", t.estimate},
                         {"variance", t.variance}});
    }
    return nlohmann::json{{"parameters", p.parameters},
                          {"energy", p.estimate.energy},
                          {"sigma", p.estimate.sigma},
                          {"per_term", std::move(terms)}};
}

} // namespace

nlohmann::json sweep_result_to_json(const SweepResult& result) {
    nlohmann::json points = nlohmann::json::array();
    for (const SweepPoint& p : result.points) {
        points.push_back(point_to_json(p));
    }
    return nlohmann::json{{"config", config_to_json(result.config)},
                          {"points", std::move(points)},
                          {"min_point", point_to_json(result.min_point)},
                          {"reference_energy", result.reference_energy},
                          {"error", result.error},
                          {"converged", result.converged},
                          {"evaluations", result.evaluations}};
}

namespace {

SweepPoint point_from_json(const nlohmann::json& j) {
    SweepPoint p;
    p.parameters = j.at("parameters").get<std::vector<double>>();
    p.estimate.energy = j.at("energy").get<double>();
    p.estimate.sigma = j.value("sigma", 0.0);
    if (j.contains("per_term")) {
        for (const auto& jt : j["per_term"]) {
            TermEstimate t;
            t.term = PauliString(jt.at("axes").get<std::string>(),
                                 jt.value("coefficient", 1.0));
            t.estimate = jt.at("estimate").get<double>();
            t.variance = jt.value("variance", 0.0);
            p.estimate.per_term.push_back(std::move(t));
        }
    }
    return p;
}

} // namespace

SweepResult sweep_result_from_json(const nlohmann::json& j) {
    SweepResult result;
    result.config = config_from_json(j.at("config"));
    for (const auto& jp : j.at("points")) {
        result.points.push_back(point_from_json(jp));
    }
    result.min_point = point_from_json(j.at("min_point"));
    result.reference_energy = j.at("reference_energy").get<double>();
    result.error = j.at("error").get<double>();
    result.converged = j.value("converged", true);
    result.evaluations = j.value("evaluations", std::size_t{0});
    return result;
}

std::vector<MeasurementSetting> group_into_settings(const Observable& obs) {
    std::vector<MeasurementSetting> settings;
    for (std::size_t t = 0; t < obs.term_count(); ++t) {
        const PauliString& term = obs.terms()[t];
        bool placed = false;
        for (MeasurementSetting& s : settings) {
            bool compatible = true;
            for (std::size_t site = 0; site < term.size(); ++site) {
                const PauliAxis a = term.axes[site];
                const PauliAxis b = s.setting.axes[site];
                if (a != PauliAxis::I && b != PauliAxis::I && a != b) {
                    compatible = false;
                    break;
                }
            }
            if (compatible) {
                for (std::size_t site = 0; site < term.size(); ++site) {
                    if (s.setting.axes[site] == PauliAxis::I) {
                        s.setting.axes[site] = term.axes[site];
                    }
                }
                s.term_indices.push_back(t);
                placed = true;
                break;
            }
        }
        if (!placed) {
            settings.push_back(MeasurementSetting{PauliString(term.axes, 1.0), {t}});
        }
    }
    return settings;
}

std::size_t argmin_index(const std::vector<SweepPoint>& points) {
    if (points.empty()) {
        throw std::invalid_argument("cannot take the minimum of an empty sweep");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double e = points[i].estimate.energy;
        const double be = points[best].estimate.energy;
        if (e < be || (e == be && std::lexicographical_compare(
                                      points[i].parameters.begin(), points[i].parameters.end(),
                                      points[best].parameters.begin(),
                                      points[best].parameters.end()))) {
            best = i;
        }
    }
    return best;
}

namespace {

std::vector<double> grid_values(const GridSpec& grid) {
    std::vector<double> values(grid.points);
    const double step = (grid.end - grid.start) / static_cast<double>(grid.points - 1);
    for (std::size_t k = 0; k < grid.points; ++k) {
        values[k] = grid.start + static_cast<double>(k) * step;
    }
    return values;
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
    if (threads == 0) {
        threads = std::thread::hardware_concurrency();
    }
    if (threads == 0) threads = 1;
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    for (auto& th : pool) {
        th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
}

// Sampled-path estimate of one term from its setting's shot record.
TermEstimate term_from_bits(const PauliString& term, const std::vector<std::uint32_t>& bits) {
    const double p = mean_parity(bits, term.support_mask());
    const double est = term.coefficient * p;
    const double var =
        term.coefficient * term.coefficient * (1.0 - p * p) / static_cast<double>(bits.size());
    return TermEstimate{term, est, var};
}

TermEstimate term_from_probs(const PauliString& term, const std::vector<double>& probs) {
    const double p = parity_expectation(probs, term.support_mask());
    return TermEstimate{term, term.coefficient * p, 0.0};
}

// Shared evaluation machinery for grid sweeps and batch execution.
struct SweepEngine {
    const ExperimentConfig& config;
    Observable obs;
    std::vector<MeasurementSetting> settings;
    Circuit ansatz;
    StateVector initial;
    std::size_t shots = 0;        // 0 = infinite-shot
    std::uint64_t master_seed = 0;
    bool sampled_path = false;    // sampled or noisy (vs exact expectation)
    bool noisy_path = false;
    NoiseModel nm;

    explicit SweepEngine(const ExperimentConfig& cfg)
        : config(cfg),
          obs(build_hamiltonian(cfg.chain)),
          settings(group_into_settings(obs)),
          ansatz(build_circuit(cfg.ansatz)),
          initial(neel_state(cfg.chain.sites)) {
        if (const auto* s = std::get_if<SampledExecution>(&cfg.execution)) {
            sampled_path = true;
            shots = s->shots;
            master_seed = s->seed;
        } else if (const auto* n = std::get_if<NoisyExecution>(&cfg.execution)) {
            sampled_path = true;
            noisy_path = true;
            shots = n->shots;
            master_seed = n->seed;
            nm = n->model;
        }
    }

    // Estimates for one setting's terms at the given parameters.
    std::vector<TermEstimate> evaluate_setting(std::span<const double> params,
                                               std::size_t setting_index,
                                               std::uint64_t sub_seed) const {
        const MeasurementSetting& setting = settings[setting_index];
        std::vector<double> probs;
        if (noisy_path) {
            DensityMatrix rho =
                evolve_noisy(ansatz, params, DensityMatrix::from_state(initial), nm);
            const Circuit rotation = basis_rotation_circuit(setting.setting);
            for (const Gate& g : rotation.gates()) {
                apply_gate_unitary(rho, g);
            }
            probs = apply_readout_confusion(rho.diagonal_probabilities(), rho.qubit_count(),
                                            nm.readout_flip_prob);
        } else {
            StateVector psi = run_circuit(ansatz, params, initial);
            psi = rotate_for_basis(psi, setting.setting);
            probs = born_probabilities(psi);
        }
        std::vector<TermEstimate> estimates;
        estimates.reserve(setting.term_indices.size());
        if (shots > 0) {
            SplitMix64 rng(sub_seed);
            const auto bits = sample_from_probabilities(probs, shots, rng);
            for (std::size_t t : setting.term_indices) {
                estimates.push_back(term_from_bits(obs.terms()[t], bits));
            }
        } else {
            for (std::size_t t : setting.term_indices) {
                estimates.push_back(term_from_probs(obs.terms()[t], probs));
            }
        }
        return estimates;
    }

    // Exact path: analytic expectations of one setting's terms.
    std::vector<TermEstimate> evaluate_setting_exact(std::span<const double> params,
                                                     std::size_t setting_index) const {
        const StateVector psi = run_circuit(ansatz, params, initial);
        std::vector<TermEstimate> estimates;
        for (std::size_t t : settings[setting_index].term_indices) {
            const PauliString& term = obs.terms()[t];
            estimates.push_back(TermEstimate{term, exact_expectation(term, psi), 0.0});
        }
        return estimates;
    }

    EnergyEstimate assemble_point(std::vector<std::vector<TermEstimate>> per_setting) const {
        std::vector<TermEstimate> per_term(obs.term_count());
        for (std::size_t s = 0; s < settings.size(); ++s) {
            for (std::size_t k = 0; k < settings[s].term_indices.size(); ++k) {
                per_term[settings[s].term_indices[k]] = per_setting[s][k];
            }
        }
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
};



SweepResult finalize_result(const ExperimentConfig& config, std::vector<SweepPoint> points,
                            bool converged, std::size_t evaluations) {
    SweepResult result;
    result.config = config;
    result.reference_energy = exact_diagonalize(config.chain).ground_energy;
    result.min_point = points[argmin_index(points)];
    result.points = std::move(points);
    result.error = result.min_point.estimate.energy - result.reference_energy;
    result.converged = converged;
    result.evaluations = evaluations;
    return result;
}

} // namespace

BatchJob build_batch(const ExperimentConfig& config) {
    config.validate();
    const auto* grid = std::get_if<GridSpec>(&config.sweep);
    if (grid == nullptr) {
        throw std::invalid_argument("batching is defined for fixed grid sweeps, not optimizers");
    }
    SweepEngine engine(config);
    BatchJob job;
    job.qubit_count = config.chain.sites;
    job.shots = engine.shots;
    job.master_seed = engine.master_seed;
    job.settings = engine.settings;
    const std::vector<double> thetas = grid_values(*grid);
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        const std::vector<double> params{thetas[k]};
        const std::vector<Gate> bound = engine.ansatz.bind(params);
        const std::uint64_t point_seed = derive_subseed(engine.master_seed, k);
        for (std::size_t s = 0; s < engine.settings.size(); ++s) {
            Circuit circuit(config.chain.sites);
            for (const Gate& g : bound) {
                circuit.append(g);
            }
            const Circuit rotation = basis_rotation_circuit(engine.settings[s].setting);
            for (const Gate& g : rotation.gates()) {
                circuit.append(g);
            }
            BatchEntry entry{k, s, params, std::move(circuit), engine.settings[s].setting,
                             derive_subseed(point_seed, s)};
            job.circuits.push_back(std::move(entry));
        }
    }
    return job;
}

std::vector<SweepPoint> execute_batch(const ExperimentConfig& config, const BatchJob& job,
                                      const std::vector<std::size_t>& order) {
    config.validate();
    SweepEngine engine(config);
    if (job.settings.size() != engine.settings.size()) {
        throw std::invalid_argument("batch job does not match the config's measurement settings");
    }
    std::vector<std::size_t> schedule = order;
    if (schedule.empty()) {
        schedule.resize(job.circuits.size());
        std::iota(schedule.begin(), schedule.end(), std::size_t{0});
    }
    if (schedule.size() != job.circuits.size()) {
        throw std::invalid_argument("execution order must cover every batch entry exactly once");
    }

    const std::size_t num_points = job.circuits.size() / job.settings.size();
    std::vector<std::vector<std::vector<TermEstimate>>> per_point(
        num_points, std::vector<std::vector<TermEstimate>>(job.settings.size()));

    const bool exact_mode = std::holds_alternative<ExactExecution>(config.execution);
    parallel_for(schedule.size(), config.threads, [&](std::size_t i) {
        const BatchEntry& entry = job.circuits[schedule[i]];
        per_point[entry.point_index][entry.setting_index] =
            exact_mode
                ? engine.evaluate_setting_exact(entry.parameters, entry.setting_index)
                : engine.evaluate_setting(entry.parameters, entry.setting_index, entry.sub_seed);
    });

    std::vector<SweepPoint> points(num_points);
    for (const BatchEntry& entry : job.circuits) {
        points[entry.point_index].parameters = entry.parameters;
    }
    for (std::size_t k = 0; k < num_points; ++k) {
        points[k].estimate = engine.assemble_point(std::move(per_point[k]));
    }
    return points;
}

SweepResult run_sweep(const ExperimentConfig& config) {
    const BatchJob job = build_batch(config);
    std::vector<SweepPoint> points = execute_batch(config, job);
    const std::size_t evaluations = points.size();
    return finalize_result(config, std::move(points), true, evaluations);
}

namespace {

constexpr double kTwoPi = 6.283185307179586;

struct Objective {
    const SweepEngine& engine;
    std::size_t max_evals;
    std::size_t evals = 0;

    std::optional<double> operator()(std::span<const double> params) {
        if (evals >= max_evals) return std::nullopt;
        ++evals;
        const StateVector psi = run_circuit(engine.ansatz, params, engine.initial);
        return exact_expectation(engine.obs, psi);
    }
};

} // namespace

SweepResult run_optimizer(const ExperimentConfig& config) {
    config.validate();
    const auto* opt = std::get_if<OptimizerSpec>(&config.sweep);
    if (opt == nullptr) {
        throw std::invalid_argument("run_optimizer requires an optimizer sweep spec");
    }
    if (!std::holds_alternative<ExactExecution>(config.execution)) {
        throw std::invalid_argument("the optimizer runs on the exact-statevector path only");
    }

    SweepEngine engine(config);
    Objective objective{engine, opt->max_evals};
    const std::size_t arity = config.ansatz.parameter_count();
    constexpr double golden = 0.6180339887498949;

    std::vector<SweepPoint> trace;
    std::vector<double> best_params;
    double best_energy = std::numeric_limits<double>::infinity();
    bool exhausted = false;

    auto note_best = [&](const std::vector<double>& params, double energy) {
        if (energy < best_energy) {
            best_energy = energy;
            best_params = params;
            trace.push_back(SweepPoint{params, EnergyEstimate{energy, 0.0, {}}});
        }
    };

    for (std::size_t restart = 0; restart < opt->restarts && !exhausted; ++restart) {
        std::vector<double> x(arity, 0.0);
        if (restart > 0) {
            SplitMix64 rng(derive_subseed(opt->seed, restart));
            for (double& v : x) {
                v = rng.next_double() * kTwoPi;
            }
        }
        auto e0 = objective(x);
        if (!e0) {
            exhausted = true;
            break;
        }
        double current = *e0;
        note_best(x, current);

        for (std::size_t pass = 0; pass < 200 && !exhausted; ++pass) {
            const double pass_start = current;
            for (std::size_t c = 0; c < arity && !exhausted; ++c) {
                // Coarse periodic scan seeds the bracket; one period of any
                // single R_y or exchange angle is sinusoidal in the energy,
                // so a pi/4-spaced scan brackets the line minimum.
                double scan_best_x = x[c];
                double scan_best_e = current;
                for (int j = 0; j < 8; ++j) {
                    const double t = static_cast<double>(j) * kTwoPi / 8.0;
                    std::vector<double> y = x;
                    y[c] = t;
                    const auto e = objective(y);
                    if (!e) {
                        exhausted = true;
                        break;
                    }
                    note_best(y, *e);
                    if (*e < scan_best_e) {
                        scan_best_e = *e;
                        scan_best_x = t;
                    }
                }
                if (exhausted) break;

                double lo = scan_best_x - kTwoPi / 8.0;
                double hi = scan_best_x + kTwoPi / 8.0;
                double x1 = hi - golden * (hi - lo);
                double x2 = lo + golden * (hi - lo);
                std::vector<double> y = x;
                y[c] = x1;
                auto f1 = objective(y);
                y[c] = x2;
                auto f2 = objective(y);
                if (!f1 || !f2) {
                    exhausted = true;
                    break;
                }
                while (hi - lo > 1e-9) {
                    if (*f1 < *f2) {
                        hi = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = hi - golden * (hi - lo);
                        y[c] = x1;
                        f1 = objective(y);
                    } else {
                        lo = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = lo + golden * (hi - lo);
                        y[c] = x2;
                        f2 = objective(y);
                    }
                    if (!f1 || !f2) {
                        exhausted = true;
                        break;
                    }
                }
                if (exhausted) break;
                y[c] = 0.5 * (lo + hi);
                const auto fm = objective(y);
                if (!fm) {
                    exhausted = true;
                    break;
                }
                note_best(y, *fm);
                if (*fm < current) {
                    current = *fm;
                    x = y;
                } else if (scan_best_e < current) {
                    current = scan_best_e;
                    x[c] = scan_best_x;
                }
            }
            if (pass_start - current < opt->tolerance) break;
        }
    }

    if (best_params.empty()) {
        throw std::logic_error("optimizer finished without evaluating any point");
    }

    // Full per-term breakdown for the winning point (reporting only).
    const StateVector psi = run_circuit(engine.ansatz, best_params, engine.initial);
    std::vector<TermEstimate> per_term;
    for (const PauliString& term : engine.obs.terms()) {
        per_term.push_back(TermEstimate{term, exact_expectation(term, psi), 0.0});
    }
    EnergyEstimate best_estimate{best_energy, 0.0, std::move(per_term)};
    if (!trace.empty()) {
        trace.back().estimate = best_estimate;
    }

    SweepResult result;
    result.config = config;
    result.reference_energy = exact_diagonalize(config.chain).ground_energy;
    result.points = std::move(trace);
    result.min_point = SweepPoint{std::move(best_params), std::move(best_estimate)};
    result.error = result.min_point.estimate.energy - result.reference_energy;
    result.converged = !exhausted;
    result.evaluations = objective.evals;
    return result;
}

std::string describe(const ExperimentConfig& config) {
    std::ostringstream out;
    out << ansatz_family_name(config.ansatz.family) << " N=" << config.chain.sites;
    if (config.ansatz.family != AnsatzFamily::Hea && config.ansatz.layers != 1) {
        out << " L=" << config.ansatz.layers;
    }
    if (std::holds_alternative<ExactExecution>(config.execution)) {
        out << " exact";
    } else if (const auto* s = std::get_if<SampledExecution>(&config.execution)) {
        out << (s->shots ? " sampled" : " infinite-shot");
    } else {
        out << " noisy";
    }
    return out.str();
}

Report make_report(const std::vector<SweepResult>& results) {
    Report report;
    for (const SweepResult& r : results) {
        const std::size_t n = r.config.chain.sites;
        auto row = std::find_if(report.scaling.begin(), report.scaling.end(),
                                [n](const ScalingRow& s) { return s.sites == n; });
        if (row == report.scaling.end()) {
            report.scaling.push_back(ScalingRow{n, r.reference_energy, {}, {}, {}});
            row = std::prev(report.scaling.end());
        }
        const double e = r.min_point.estimate.energy;
        switch (r.config.ansatz.family) {
        case AnsatzFamily::ExpressiveLayered:
            if (!row->expressive_min || e < *row->expressive_min) row->expressive_min = e;
            break;
        case AnsatzFamily::Exchange:
            if (!row->exchange_min || e < *row->exchange_min) {
                row->exchange_min = e;
                row->gap = e - r.reference_energy;
            }
            break;
        case AnsatzFamily::Hea:
            break;
        }
        if (std::holds_alternative<GridSpec>(r.config.sweep)) {
            report.landscapes.push_back(LandscapeSeries{describe(r.config), r.points});
        }
    }
    std::sort(report.scaling.begin(), report.scaling.end(),
              [](const ScalingRow& a, const ScalingRow& b) { return a.sites < b.sites; });
    return report;
}

nlohmann::json Report::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const ScalingRow& r : scaling) {
        nlohmann::json jr{{"sites", r.sites}, {"exact", r.exact_energy}};
        if (r.expressive_min) jr["expressive"] = *r.expressive_min;
        if (r.exchange_min) jr["exchange"] = *r.exchange_min;
        if (r.gap) jr["gap"] = *r.gap;
        rows.push_back(std::move(jr));
    }
    nlohmann::json series = nlohmann::json::array();
    for (const LandscapeSeries& s : landscapes) {
        nlohmann::json points = nlohmann::json::array();
        for (const SweepPoint& p : s.points) {
            points.push_back({{"parameters", p.parameters},
                              {"energy", p.estimate.energy},
                              {"sigma", p.estimate.sigma}});
        }
        series.push_back({{"label", s.label}, {"points", std::move(points)}});
    }
    return nlohmann::json{{"scaling", std::move(rows)}, {"landscapes", std::move(series)}};
}

void Report::write_scaling_csv(std::ostream& out) const {
    out << "N,exact,expressive,exchange,gap\n";
    out.precision(10);
    for (const ScalingRow& r : scaling) {
        out << r.sites << ',' << r.exact_energy << ',';
        if (r.expressive_min) out << *r.expressive_min;
        out << ',';
        if (r.exchange_min) out << *r.exchange_min;
        out << ',';
        if (r.gap) out << *r.gap;
        out << '\n';
    }
}

void Report::write_landscape_csv(std::ostream& out, const LandscapeSeries& series) {
    out << "theta,energy,sigma\n";
    out.precision(12);
    for (const SweepPoint& p : series.points) {
        out << (p.parameters.empty() ? 0.0 : p.parameters[0]) << ',' << p.estimate.energy << ','
            << p.estimate.sigma << '\n';
    }
}

} // namespace spinvqe
