// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinvqe/manifest.hpp"
#include "spinvqe/runner.hpp"

namespace spinvqe::cli {

namespace {

namespace fs = std::filesystem;

struct CellCheck {
    std::string label;
    double computed = 0.0;
    double reference = 0.0;
    bool checked = true; // informational rows print the deviation only
    bool ok = true;
};

void print_cell(std::ostream& log, const CellCheck& c) {
    log << "  " << std::left << std::setw(44) << c.label << " computed " << std::setw(14)
        << std::setprecision(8) << c.computed << " paper " << std::setw(12) << c.reference
        << " deviation " << std::scientific << std::setprecision(2)
        << (c.computed - c.reference) << std::defaultfloat << std::setprecision(8)
        << (c.checked ? (c.ok ? "  [PASS]" : "  [FAIL]") : "  [info]") << '\n';
}

GridSpec default_grid(const nlohmann::json& defaults) {
    const auto& g = defaults.at("grid");
    return GridSpec{g.value("start", 0.0), g.value("end", 3.141592653589793),
                    g.value("points", std::size_t{50})};
}

ExperimentConfig exchange_sweep_config(std::size_t n, const nlohmann::json& defaults,
                                       std::size_t threads) {
    ExperimentConfig config;
    config.chain = HeisenbergChain(n, 1.0);
    config.ansatz = AnsatzSpec{AnsatzFamily::Exchange, n, 1};
    config.execution = ExactExecution{};
    config.sweep = default_grid(defaults);
    config.threads = threads;
    return config;
}

ExperimentConfig expressive_opt_config(std::size_t n, const nlohmann::json& defaults,
                                       std::uint64_t seed, std::size_t threads) {
    const std::size_t layers =
        defaults.at("expressive_layers").at(std::to_string(n)).get<std::size_t>();
    ExperimentConfig config;
    config.chain = HeisenbergChain(n, 1.0);
    config.ansatz = AnsatzSpec{AnsatzFamily::ExpressiveLayered, n, layers};
    config.execution = ExactExecution{};
    OptimizerSpec opt;
    opt.seed = seed;
    config.sweep = opt;
    config.threads = threads;
    return config;
}

ExperimentConfig noisy_sweep_config(AnsatzFamily family, const nlohmann::json& defaults,
                                    std::size_t shots, std::uint64_t seed, std::size_t threads) {
    ExperimentConfig config;
    config.chain = HeisenbergChain(2, 1.0);
    config.ansatz = AnsatzSpec{family, 2, 1};
    config.execution = NoisyExecution{garnet_noise_model(), shots, seed};
    config.sweep = default_grid(defaults);
    config.threads = threads;
    return config;
}

struct ScalingData {
    std::vector<SweepResult> results;
    Report report;

    const ScalingRow& row(std::size_t n) const {
        for (const ScalingRow& r : report.scaling) {
            if (r.sites == n) return r;
        }
        throw std::runtime_error("missing scaling row for N=" + std::to_string(n));
    }
};

ScalingData compute_scaling(const nlohmann::json& defaults, std::uint64_t seed,
                            std::size_t threads) {
    ScalingData data;
    for (std::size_t n : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
        data.results.push_back(run_sweep(exchange_sweep_config(n, defaults, threads)));
        data.results.push_back(run_optimizer(expressive_opt_config(n, defaults, seed, threads)));
    }
    data.report = make_report(data.results);
    return data;
}

void write_results_json(const fs::path& dir, const std::vector<SweepResult>& results,
                        RunManifest& manifest) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SweepResult& r : results) {
        arr.push_back(sweep_result_to_json(r));
    }
    const fs::path path = dir / "results.json";
    std::ofstream out(path);
    out << arr.dump(2) << '\n';
    manifest.add_output(path);
}

double paper_value(const nlohmann::json& defaults, const char* table, const char* column,
                   std::size_t n) {
    return defaults.at(table).at(column).at(std::to_string(n)).get<double>();
}

bool check_scaling_cells(const ScalingData& data, const nlohmann::json& defaults,
                         std::ostream& log, bool full_checks) {
    const double exact_tol = defaults["table4"].value("exact_tolerance", 5e-4);
    bool ok = true;
    std::vector<CellCheck> cells;
    for (std::size_t n : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
        const ScalingRow& row = data.row(n);
        CellCheck exact{"exact N=" + std::to_string(n), row.exact_energy,
                        paper_value(defaults, "table4", "exact", n)};
        exact.ok = std::abs(exact.computed - exact.reference) <= exact_tol;
        cells.push_back(exact);

        CellCheck expressive{"expressive N=" + std::to_string(n), row.expressive_min.value(),
                             paper_value(defaults, "table4", "expressive", n)};
        if (full_checks) {
            if (n == 2) {
                const double tol =
                    defaults["table4"].value("expressive_equality_tolerance_n2", 1e-3);
                expressive.ok = std::abs(expressive.computed - row.exact_energy) <= tol;
            } else {
                const double bound = defaults["table4"]["expressive_upper_bound"]
                                         .at(std::to_string(n))
                                         .get<double>();
                expressive.ok = expressive.computed <= bound;
            }
        } else {
            expressive.checked = false;
        }
        cells.push_back(expressive);

        // The N>=3 exchange extension is this implementation's choice; the
        // published restricted minima have no defined circuit to compare
        // against, so those cells are reported side by side, not asserted.
        CellCheck exchange{"physics-informed N=" + std::to_string(n), row.exchange_min.value(),
                           paper_value(defaults, "table4", "exchange", n)};
        if (full_checks && n == 2) {
            const double tol = defaults["table4"].value("exchange_equality_tolerance_n2", 1e-9);
            exchange.ok = std::abs(exchange.computed - (-1.0)) <= tol;
        } else {
            exchange.checked = false;
        }
        cells.push_back(exchange);

        CellCheck gap{"energy gap N=" + std::to_string(n), row.gap.value(),
                      paper_value(defaults, "table4", "gap", n)};
        gap.checked = false;
        cells.push_back(gap);
    }

    if (full_checks) {
        // Restricted-minimum property set for the exchange family.
        for (std::size_t n : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
            const ScalingRow& row = data.row(n);
            const double neel_energy = -static_cast<double>(n - 1);
            CellCheck props{"exchange bounds N=" + std::to_string(n), row.exchange_min.value(),
                            neel_energy};
            props.ok = row.exchange_min.value() >= row.exact_energy - 1e-9 &&
                       row.exchange_min.value() <= neel_energy + 1e-9;
            cells.push_back(props);
        }
        const double g2 = data.row(2).gap.value();
        const double g3 = data.row(3).gap.value();
        const double g4 = data.row(4).gap.value();
        CellCheck monotone{"monotone gap over N", g4, g2};
        monotone.ok = g2 <= g3 + 1e-9 && g3 <= g4 + 1e-9;
        cells.push_back(monotone);
    }

    for (const CellCheck& c : cells) {
        print_cell(log, c);
        if (c.checked && !c.ok) ok = false;
    }
    return ok;
}

bool reproduce_table4(const nlohmann::json& defaults, const fs::path& dir, std::uint64_t seed,
                      std::size_t threads, std::ostream& log) {
    ScalingData data = compute_scaling(defaults, seed, threads);

    RunManifest manifest = RunManifest::create(
        nlohmann::json{{"target", "table4"}, {"seed", seed}}, seed);
    fs::create_directories(dir);
    {
        const fs::path path = dir / "table4.csv";
        std::ofstream out(path);
        data.report.write_scaling_csv(out);
        manifest.add_output(path);
    }
    {
        const fs::path path = dir / "report.json";
        std::ofstream out(path);
        out << data.report.to_json().dump(2) << '\n';
        manifest.add_output(path);
    }
    write_results_json(dir, data.results, manifest);
    manifest.write(dir);

    return check_scaling_cells(data, defaults, log, /*full_checks=*/true);
}

bool reproduce_fig2(const nlohmann::json& defaults, const fs::path& dir, std::uint64_t seed,
                    std::size_t threads, std::ostream& log) {
    ScalingData data = compute_scaling(defaults, seed, threads);

    RunManifest manifest =
        RunManifest::create(nlohmann::json{{"target", "fig2"}, {"seed", seed}}, seed);
    fs::create_directories(dir);
    const fs::path path = dir / "fig2.csv";
    std::ofstream out(path);
    data.report.write_scaling_csv(out);
    manifest.add_output(path);
    manifest.write(dir);

    return check_scaling_cells(data, defaults, log, /*full_checks=*/false);
}

bool reproduce_fig1(const nlohmann::json& defaults, const fs::path& dir, std::uint64_t seed,
                    std::size_t threads, std::ostream& log) {
    ExperimentConfig config = exchange_sweep_config(2, defaults, threads);
    config.ansatz = AnsatzSpec{AnsatzFamily::Hea, 2, 1};
    const SweepResult result = run_sweep(config);

    RunManifest manifest =
        RunManifest::create(nlohmann::json{{"target", "fig1"}, {"seed", seed}}, seed);
    fs::create_directories(dir);
    const fs::path path = dir / "fig1.csv";
    std::ofstream out(path);
    Report::write_landscape_csv(out, LandscapeSeries{describe(config), result.points});
    manifest.add_output(path);
    manifest.write(dir);

    CellCheck bound{"HEA sweep variational bound (min - exact)", result.error, 0.0};
    bound.ok = variational_bound_ok(result);
    print_cell(log, bound);
    log << "  exact reference N=2: " << result.reference_energy << '\n';
    return bound.ok;
}

bool check_noisy_bracket(const nlohmann::json& defaults, const SweepResult& result,
                         const char* label, std::ostream& log) {
    const auto bracket = defaults.at("hardware").at("noisy_bracket");
    const double lo = bracket.at(0).get<double>();
    const double hi = bracket.at(1).get<double>();
    const double uplift = defaults["hardware"].value("noisy_uplift_min", 1e-6);
    const double sigma = result.min_point.estimate.sigma;
    const double min_energy = result.min_point.estimate.energy;

    CellCheck cell{std::string(label) + " noisy minimum",
                   min_energy,
                   defaults["hardware"]["exchange_n2"]["value"].get<double>()};
    cell.ok = min_energy >= lo - 3.0 * sigma && min_energy <= hi + 3.0 * sigma &&
              min_energy > -1.0 + uplift - 3.0 * sigma;
    print_cell(log, cell);
    return cell.ok;
}

bool reproduce_fig3(const nlohmann::json& defaults, const fs::path& dir, std::uint64_t seed,
                    std::size_t threads, std::ostream& log) {
    const ExperimentConfig config =
        noisy_sweep_config(AnsatzFamily::Exchange, defaults, /*shots=*/0, seed, threads);
    const SweepResult result = run_sweep(config);

    RunManifest manifest =
        RunManifest::create(nlohmann::json{{"target", "fig3"}, {"seed", seed}}, seed);
    fs::create_directories(dir);
    const fs::path path = dir / "fig3.csv";
    std::ofstream out(path);
    Report::write_landscape_csv(out, LandscapeSeries{describe(config), result.points});
    manifest.add_output(path);
    manifest.write(dir);

    return check_noisy_bracket(defaults, result, "exchange", log);
}

bool reproduce_fig4(const nlohmann::json& defaults, const fs::path& dir, std::uint64_t seed,
                    std::size_t threads, std::ostream& log) {
    const ExperimentConfig exchange =
        noisy_sweep_config(AnsatzFamily::Exchange, defaults, /*shots=*/0, seed, threads);
    const ExperimentConfig hea =
        noisy_sweep_config(AnsatzFamily::Hea, defaults, /*shots=*/0, seed, threads);
    const SweepResult exchange_result = run_sweep(exchange);
    const SweepResult hea_result = run_sweep(hea);

    RunManifest manifest =
        RunManifest::create(nlohmann::json{{"target", "fig4"}, {"seed", seed}}, seed);
    fs::create_directories(dir);
    for (const auto& [name, cfg, res] :
         {std::tuple{"fig4_exchange.csv", &exchange, &exchange_result},
          std::tuple{"fig4_hea.csv", &hea, &hea_result}}) {
        const fs::path path = dir / name;
        std::ofstream out(path);
        Report::write_landscape_csv(out, LandscapeSeries{describe(*cfg), res->points});
        manifest.add_output(path);
    }
    manifest.write(dir);

    const bool ok = check_noisy_bracket(defaults, exchange_result, "exchange", log);
    log << "  hea noisy minimum: " << hea_result.min_point.estimate.energy
        << " (comparison series, unchecked)\n";
    return ok;
}

bool reproduce_table5(const nlohmann::json& defaults, const fs::path& dir, std::uint64_t seed,
                      std::size_t threads, bool noise_off, std::ostream& log) {
    ScalingData data = compute_scaling(defaults, seed, threads);

    std::ostringstream csv;
    csv << "platform,ansatz,N,E_min,sigma,error,notes\n";
    csv.precision(10);
    for (std::size_t n : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
        const ScalingRow& row = data.row(n);
        csv << "classical,exact," << n << ',' << row.exact_energy << ",0,0,reference\n";
    }
    for (std::size_t n : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
        const ScalingRow& row = data.row(n);
        csv << "simulator,expressive," << n << ',' << *row.expressive_min << ",0,"
            << (*row.expressive_min - row.exact_energy) << ",full space\n";
    }
    for (std::size_t n : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
        const ScalingRow& row = data.row(n);
        csv << "simulator,physics-informed," << n << ',' << *row.exchange_min << ",0,"
            << *row.gap << ",restricted\n";
    }

    bool ok = check_scaling_cells(data, defaults, log, /*full_checks=*/true);

    std::vector<SweepResult> all_results = data.results;
    if (!noise_off) {
        const std::size_t shots = 1500;
        SweepResult noisy_hea =
            run_sweep(noisy_sweep_config(AnsatzFamily::Hea, defaults, shots, seed, threads));
        SweepResult noisy_exchange =
            run_sweep(noisy_sweep_config(AnsatzFamily::Exchange, defaults, shots, seed, threads));
        for (const auto& [name, res] : {std::pair{"expressive", &noisy_hea},
                                        std::pair{"physics-informed", &noisy_exchange}}) {
            csv << "noisy-sim," << name << ",2," << res->min_point.estimate.energy << ','
                << res->min_point.estimate.sigma << ',' << res->error << ",garnet model\n";
        }
        ok = check_noisy_bracket(defaults, noisy_exchange, "physics-informed", log) && ok;
        log << "  hardware-efficient noisy minimum: " << noisy_hea.min_point.estimate.energy
            << " +/- " << noisy_hea.min_point.estimate.sigma << " (paper "
            << defaults["hardware"]["hea_n2"]["value"].get<double>() << " +/- "
            << defaults["hardware"]["hea_n2"]["sigma"].get<double>() << ", unchecked)\n";
        all_results.push_back(std::move(noisy_hea));
        all_results.push_back(std::move(noisy_exchange));
    }

    RunManifest manifest = RunManifest::create(
        nlohmann::json{{"target", "table5"}, {"seed", seed}, {"noise_off", noise_off}}, seed);
    fs::create_directories(dir);
    {
        const fs::path path = dir / "table5.csv";
        std::ofstream out(path);
        out << csv.str();
        manifest.add_output(path);
    }
    write_results_json(dir, all_results, manifest);
    manifest.write(dir);
    return ok;
}

} // namespace

bool reproduce_target(const std::string& target, const nlohmann::json& defaults,
                      const fs::path& out_root, std::uint64_t seed, std::size_t threads,
                      bool noise_off, std::ostream& log) {
    const fs::path dir = out_root / target;
    log << "reproduce " << target << " -> " << dir.string() << '\n';
    bool ok = false;
    if (target == "table4") {
        ok = reproduce_table4(defaults, dir, seed, threads, log);
    } else if (target == "table5") {
        ok = reproduce_table5(defaults, dir, seed, threads, noise_off, log);
    } else if (target == "fig1") {
        ok = reproduce_fig1(defaults, dir, seed, threads, log);
    } else if (target == "fig2") {
        ok = reproduce_fig2(defaults, dir, seed, threads, log);
    } else if (target == "fig3") {
        ok = reproduce_fig3(defaults, dir, seed, threads, log);
    } else if (target == "fig4") {
        ok = reproduce_fig4(defaults, dir, seed, threads, log);
    } else {
        throw std::invalid_argument("unknown reproduce target '" + target +
                                    "' (expected table4, table5, fig1, fig2, fig3 or fig4)");
    }
    log << (ok ? "reproduce " + target + ": all checked cells in tolerance\n"
               : "reproduce " + target + ": TOLERANCE FAILURES above\n");
    return ok;
}

} // namespace spinvqe::cli
