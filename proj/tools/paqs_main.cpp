// Copyright 2026 The paqs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <clocale>
#include <iostream>

#include "paqs/experiments.hpp"

namespace {

using namespace paqs;

nlohmann::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("config '" + path + "' is not valid JSON: " + e.what());
    }
    return j;
}

Scenario load_scenario(const std::string& path, double dt_override) {
    Scenario sc = scenario_from_json(load_config(path));
    if (dt_override > 0.0) sc.dt = dt_override;
    sc.validate();
    return sc;
}

nlohmann::json run_result_json(const RunResult& r) {
    nlohmann::json j;
    j["ground_bits"] = r.ground_bits;
    j["p_ground"] = r.p_ground;
    j["max_trace_dev"] = r.max_trace_dev;
    j["min_eig"] = r.min_eig;
    j["max_herm_dev"] = r.max_herm_dev;
    j["dt_effective"] = r.dt_effective;
    j["min_gap"] = r.min_gap;
    j["adiabaticity"] = r.adiabaticity;
    return j;
}

std::string run_result_csv(const RunResult& r) {
    return csv_document({"ground_bits", "p_ground", "max_trace_dev", "min_eig", "max_herm_dev",
                         "dt_effective", "min_gap", "adiabaticity"},
                        {{r.ground_bits, fmt_g12(r.p_ground), fmt_g12(r.max_trace_dev),
                          fmt_g12(r.min_eig), fmt_g12(r.max_herm_dev), fmt_g12(r.dt_effective),
                          fmt_g12(r.min_gap), fmt_g12(r.adiabaticity)}});
}

nlohmann::json verify_report_json(const std::vector<CheckResult>& results) {
    nlohmann::json j;
    j["all_passed"] = all_passed(results);
    j["checks"] = nlohmann::json::array();
    for (const CheckResult& r : results) {
        nlohmann::json c;
        c["name"] = r.name;
        c["pass"] = r.pass;
        c["value"] = r.value;
        c["threshold"] = r.threshold;
        if (!r.note.empty()) c["note"] = r.note;
        j["checks"].push_back(c);
    }
    return j;
}

int cmd_spectrum(const std::string& config, const std::string& out_dir, int points,
                 double dt_override) {
    const Scenario sc = load_scenario(config, dt_override);
    const SpectrumTable table = compute_spectrum(sc, points);
    const std::filesystem::path out(out_dir);
    write_text_file(out / "spectrum_full.csv", spectrum_csv(table, false));

    auto transpose = [](const std::vector<std::vector<double>>& rows) {
        std::vector<std::vector<double>> cols(rows.front().size(),
                                              std::vector<double>(rows.size()));
        for (size_t r = 0; r < rows.size(); ++r)
            for (size_t c = 0; c < rows[r].size(); ++c) cols[c][r] = rows[r][c];
        return cols;
    };
    write_text_file(out / "spectrum_full.svg",
                    svg::line_chart(table.times, transpose(table.full),
                                    "instantaneous spectrum, full register", "t (ns)",
                                    "E (rad/ns)"));
    if (!table.sector.empty()) {
        write_text_file(out / "spectrum_sector.csv", spectrum_csv(table, true));
        write_text_file(out / "spectrum_sector.svg",
                        svg::line_chart(table.times, transpose(table.sector),
                                        "instantaneous spectrum, all-ones sector", "t (ns)",
                                        "E (rad/ns)"));
    }
    std::cout << "spectrum tables written to " << out.string() << "\n";
    return 0;
}

int cmd_run(const std::string& config, const std::string& out_dir, const std::string& format,
            double dt_override) {
    const Scenario sc = load_scenario(config, dt_override);
    const RunResult res = run_single(sc);
    const std::string text =
        format == "json" ? run_result_json(res).dump(2) + "\n" : run_result_csv(res);
    std::cout << text;
    if (!out_dir.empty()) {
        const std::filesystem::path out(out_dir);
        write_text_file(out / (format == "json" ? "run.json" : "run.csv"), text);
    }
    return 0;
}

int cmd_sweep(const std::string& config, const std::string& out_dir, int parallel,
              double dt_override) {
    const nlohmann::json j = load_config(config);
    Scenario sc = scenario_from_json(j);
    if (dt_override > 0.0) sc.dt = dt_override;
    const SweepSpec spec = j.contains("sweep") ? sweep_from_json(j.at("sweep")) : default_sweep();

    const std::filesystem::path out(out_dir);
    const std::vector<SweepPoint> points = run_sweep(sc, spec, parallel, out / "points");
    write_text_file(out / "sweep.csv", sweep_csv(spec, points));

    std::vector<double> xs, ys;
    for (int i = 0; i < spec.axis1.points; ++i) xs.push_back(spec.axis1.value(i));
    for (int jj = 0; jj < spec.axis2.points; ++jj) ys.push_back(spec.axis2.value(jj));
    // heatmap rows indexed by axis2, columns by axis1
    std::vector<double> diff(points.size(), 0.0), panc(points.size(), 0.0);
    for (const SweepPoint& p : points) {
        diff[static_cast<size_t>(p.j) * xs.size() + p.i] = p.difference;
        panc[static_cast<size_t>(p.j) * xs.size() + p.i] = p.p_ancilla;
    }
    const std::string xl = sweep_param_name(spec.axis1.param);
    const std::string yl = sweep_param_name(spec.axis2.param);
    write_text_file(out / "sweep_difference.svg",
                    svg::heatmap(xs, ys, diff, "P_ancilla - P_conventional at t = T", xl, yl, true));
    write_text_file(out / "sweep_p_ancilla.svg",
                    svg::heatmap(xs, ys, panc, "P_ancilla at t = T", xl, yl, false));

    int failed = 0;
    for (const SweepPoint& p : points) failed += p.ok ? 0 : 1;
    std::cout << "sweep grid " << spec.axis1.points << "x" << spec.axis2.points << " written to "
              << out.string() << (failed ? " (" + std::to_string(failed) + " failed points)" : "")
              << "\n";
    return failed == 0 ? 0 : 1;
}

int cmd_verify(const std::string& config, const std::string& out_dir) {
    Scenario sc = config.empty() ? reference_scenario() : load_scenario(config, 0.0);
    const std::vector<CheckResult> results = run_verify_suite(
        sc.schedule(), sc.instance, sc.driver.is_ancilla() ? sc.driver.c : -0.5,
        sc.bath_for(DriverKind::ancilla(sc.driver.is_ancilla() ? sc.driver.c : -0.5)));
    const std::string text = verify_report_json(results).dump(2) + "\n";
    std::cout << text;
    if (!out_dir.empty()) write_text_file(std::filesystem::path(out_dir) / "verify.json", text);
    return all_passed(results) ? 0 : 1;
}

int cmd_convergence(const std::string& config, const std::string& format, double dt_override) {
    const Scenario sc = load_scenario(config, dt_override);
    const double discrepancy = convergence_for(sc);
    if (format == "json") {
        nlohmann::json j;
        j["dt"] = sc.dt;
        j["max_probability_discrepancy"] = discrepancy;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << csv_document({"dt", "max_probability_discrepancy"},
                                  {{fmt_g12(sc.dt), fmt_g12(discrepancy)}});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"open-system quantum annealing with the ancilla-pair driver"};
    app.require_subcommand(1);

    std::string config, out_dir = "out", format = "csv";
    int points = 101, parallel = static_cast<int>(std::thread::hardware_concurrency());
    if (parallel < 1) parallel = 1;
    double dt_override = 0.0;

    CLI::App* spectrum = app.add_subcommand("spectrum", "instantaneous spectra of H and the sector");
    spectrum->add_option("--config", config, "scenario JSON")->required();
    spectrum->add_option("--out", out_dir, "output directory");
    spectrum->add_option("--points", points, "time grid size");
    spectrum->add_option("--dt", dt_override, "override run.dt");

    CLI::App* run = app.add_subcommand("run", "single open-system anneal");
    run->add_option("--config", config, "scenario JSON")->required();
    run->add_option("--out", out_dir, "output directory")->default_val("");
    run->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--dt", dt_override, "override run.dt");

    CLI::App* sweep = app.add_subcommand("sweep", "two-parameter grid, ancilla vs conventional");
    sweep->add_option("--config", config, "scenario JSON with optional sweep block")->required();
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--parallel", parallel, "worker count");
    sweep->add_option("--dt", dt_override, "override run.dt");

    CLI::App* verify = app.add_subcommand("verify", "structural self-checks, JSON report");
    verify->add_option("--config", config, "scenario JSON (default: reference scenario)");
    verify->add_option("--out", out_dir, "output directory")->default_val("");

    CLI::App* convergence = app.add_subcommand("convergence", "dt vs dt/2 certificate");
    convergence->add_option("--config", config, "scenario JSON")->required();
    convergence->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    convergence->add_option("--dt", dt_override, "override run.dt");

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum->parsed()) return cmd_spectrum(config, out_dir, points, dt_override);
        if (run->parsed()) return cmd_run(config, out_dir, format, dt_override);
        if (sweep->parsed()) return cmd_sweep(config, out_dir, parallel, dt_override);
        if (verify->parsed()) return cmd_verify(config, out_dir);
        if (convergence->parsed()) return cmd_convergence(config, format, dt_override);
    } catch (const paqs::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const paqs::numerical_error& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
