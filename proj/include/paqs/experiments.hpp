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

#pragma once

#include <atomic>
#include <limits>
#include <optional>
#include <thread>

#include "paqs/propagation.hpp"
#include "paqs/report.hpp"
#include "paqs/scenario.hpp"
#include "paqs/verify.hpp"

namespace paqs {

struct RunResult {
    std::string ground_bits;
    double p_ground = 0.0;
    double max_trace_dev = 0.0;
    double min_eig = 0.0;
    double max_herm_dev = 0.0;
    double dt_effective = 0.0;
    // adiabaticity diagnostic (reported, never enforced): smallest gap above
    // the followed ground level and its product with the anneal time
    double min_gap = 0.0;
    double adiabaticity = 0.0;  // min_gap * T
};

/// Minimum instantaneous gap E_1 - E_0 along the anneal, evaluated on the
/// Hamiltonian the dynamics actually follows: the all-ones sector block for
/// the ancilla driver (other sectors are superselected away), the register
/// Hamiltonian itself otherwise.
inline double min_instantaneous_gap(const Scenario& sc, const DriverKind& driver,
                                    int t_points = 101) {
    const AnnealSchedule sched = sc.schedule();
    double min_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < t_points; ++k) {
        const double t = sched.T * k / (t_points - 1);
        const ComplexMatrix H =
            driver.is_ancilla()
                ? block_hamiltonian(t, sched, sc.instance, driver.c,
                                    SectorLabel::all_ones(sc.instance.n_vars))
                : hamiltonian_at(t, sched, sc.instance, driver);
        const EigenSystem es = hermitian_eigensystem(H, sc.gap_tol);
        min_gap = std::min(min_gap, es.values[1] - es.values[0]);
    }
    return min_gap;
}

/// Open-system anneal from the (nondegenerate) ground state of H(0); reports
/// the probability of the classical optimum at t = T plus integrator monitors.
inline RunResult run_single_with(const Scenario& sc, const DriverKind& driver) {
    sc.validate();
    const AnnealSchedule sched = sc.schedule();
    const BathConfig bath = sc.bath_for(driver);

    const ComplexMatrix H0 = hamiltonian_at(0.0, sched, sc.instance, driver);
    const EigenSystem es = hermitian_eigensystem(H0, sc.gap_tol);
    double scale = 1.0;
    for (double v : es.values) scale = std::max(scale, std::abs(v));
    if (es.values[1] - es.values[0] <= 1e-9 * scale)
        throw std::invalid_argument(
            "run: ground state of H(0) is degenerate; the anneal start is ill-defined");
    StateVector ground(H0.dim);
    for (int r = 0; r < H0.dim; ++r) ground[r] = es.vectors(r, 0);

    const Trajectory traj = integrate_open(outer(ground), sched, sc.instance, driver, bath, sc.dt,
                                           sc.gap_tol, sc.snapshots);
    RunResult res;
    res.ground_bits = ground_bitstring(sc.instance);
    res.p_ground = physical_marginal(traj.rho.back(), res.ground_bits);
    res.max_trace_dev = traj.max_trace_dev();
    res.min_eig = traj.min_eigenvalue();
    res.max_herm_dev = traj.max_herm_dev();
    res.dt_effective = traj.dt_effective;
    res.min_gap = min_instantaneous_gap(sc, driver);
    res.adiabaticity = res.min_gap * sched.T;
    return res;
}

inline RunResult run_single(const Scenario& sc) { return run_single_with(sc, sc.driver); }

struct SpectrumTable {
    std::vector<double> times;
    std::vector<std::vector<double>> full;    // row per time, 4^N columns
    std::vector<std::vector<double>> sector;  // all-ones sector, 2^N columns (ancilla only)
};

inline SpectrumTable compute_spectrum(const Scenario& sc, int n_points) {
    sc.validate();
    if (n_points < 2) throw config_error("spectrum: need at least 2 time points");
    const AnnealSchedule sched = sc.schedule();
    SpectrumTable table;
    for (int k = 0; k < n_points; ++k) {
        const double t = sched.T * k / (n_points - 1);
        table.times.push_back(t);
        const ComplexMatrix H = hamiltonian_at(t, sched, sc.instance, sc.driver);
        table.full.push_back(hermitian_eigensystem(H, sc.gap_tol).values);
        if (sc.driver.is_ancilla()) {
            const ComplexMatrix Hb = block_hamiltonian(t, sched, sc.instance, sc.driver.c,
                                                       SectorLabel::all_ones(sc.instance.n_vars));
            table.sector.push_back(hermitian_eigensystem(Hb, sc.gap_tol).values);
        }
    }
    return table;
}

/// Open-run convergence certificate at the scenario's dt (dt vs dt/2).
inline double convergence_for(const Scenario& sc) {
    sc.validate();
    const AnnealSchedule sched = sc.schedule();
    const BathConfig bath = sc.bath_for(sc.driver);
    const ComplexMatrix H0 = hamiltonian_at(0.0, sched, sc.instance, sc.driver);
    const EigenSystem es = hermitian_eigensystem(H0, sc.gap_tol);
    StateVector ground(H0.dim);
    for (int r = 0; r < H0.dim; ++r) ground[r] = es.vectors(r, 0);
    return convergence_check_open(outer(ground), sched, sc.instance, sc.driver, bath, sc.dt,
                                  sc.gap_tol, sc.snapshots);
}

// ---- parameter sweeps ----

enum class SweepParam { C, Gz, Gx, Theta, G };

inline std::string sweep_param_name(SweepParam p) {
    switch (p) {
        case SweepParam::C: return "c";
        case SweepParam::Gz: return "gz";
        case SweepParam::Gx: return "gx";
        case SweepParam::Theta: return "theta";
        default: return "g";
    }
}

inline SweepParam sweep_param_from_name(const std::string& name) {
    if (name == "c") return SweepParam::C;
    if (name == "gz") return SweepParam::Gz;
    if (name == "gx") return SweepParam::Gx;
    if (name == "theta") return SweepParam::Theta;
    if (name == "g") return SweepParam::G;
    throw config_error("unknown sweep parameter '" + name + "' (expected c|gz|gx|theta|g)");
}

struct SweepAxis {
    SweepParam param = SweepParam::Gz;
    double min = 0.0;
    double max = 0.0;
    int points = 1;

    double value(int k) const {
        if (points <= 1) return min;
        return min + (max - min) * k / (points - 1);
    }
    void validate() const {
        if (points < 1) throw config_error("sweep axis needs at least one point");
        if (!std::isfinite(min) || !std::isfinite(max)) throw config_error("sweep range not finite");
    }
};

struct SweepSpec {
    SweepAxis axis1, axis2;
};

/// Default grid when the config carries no sweep block: c in [-2, -0.1] x
/// uniform gz in [0, 0.2].
inline SweepSpec default_sweep() {
    SweepSpec spec;
    spec.axis1 = {SweepParam::C, -2.0, -0.1, 20};
    spec.axis2 = {SweepParam::Gz, 0.0, 0.2, 11};
    return spec;
}

inline SweepAxis sweep_axis_from_json(const nlohmann::json& j) {
    try {
        SweepAxis axis;
        axis.param = sweep_param_from_name(j.at("param").get<std::string>());
        axis.min = j.at("min").get<double>();
        axis.max = j.at("max").get<double>();
        axis.points = j.at("points").get<int>();
        axis.validate();
        return axis;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed sweep axis: ") + e.what());
    }
}

inline SweepSpec sweep_from_json(const nlohmann::json& j) {
    SweepSpec spec;
    spec.axis1 = sweep_axis_from_json(j.at("axis1"));
    spec.axis2 = sweep_axis_from_json(j.at("axis2"));
    return spec;
}

namespace detail {

inline double uniform_coupling_value(const CouplingSpec& c, const char* which) {
    if (!c.uniform)
        throw config_error(std::string("sweeps over theta/g need a uniform ") + which +
                           " coupling in the template");
    return c.value;
}

}  // namespace detail

/// Template scenario + grid indices -> concrete scenario. theta/g values are
/// turned into (gz, gx) = (g cos theta, g sin theta); whichever of the two is
/// not swept comes from the template couplings.
inline Scenario apply_sweep_point(const Scenario& base, const SweepSpec& spec, int i, int j) {
    Scenario sc = base;
    std::optional<double> theta_val, g_val;
    auto apply = [&](const SweepAxis& axis, int k) {
        const double v = axis.value(k);
        switch (axis.param) {
            case SweepParam::C:
                if (!sc.driver.is_ancilla())
                    throw config_error("c sweep requires an ancilla driver template");
                sc.driver.c = v;
                break;
            case SweepParam::Gz: sc.gz = CouplingSpec::scalar(v); break;
            case SweepParam::Gx: sc.gx = CouplingSpec::scalar(v); break;
            case SweepParam::Theta: theta_val = v; break;
            case SweepParam::G: g_val = v; break;
        }
    };
    apply(spec.axis1, i);
    apply(spec.axis2, j);
    if (theta_val || g_val) {
        const double gz0 = detail::uniform_coupling_value(sc.gz, "gz");
        const double gx0 = detail::uniform_coupling_value(sc.gx, "gx");
        const double g = g_val.value_or(std::hypot(gz0, gx0));
        const double theta = theta_val.value_or(std::atan2(gx0, gz0));
        if (g < 0.0) throw config_error("sweep: g must be nonnegative");
        if (theta < -1e-12 || theta > 1.5707963267948966 + 1e-12)
            throw config_error("sweep: theta must lie in [0, pi/2]");
        sc.gz = CouplingSpec::scalar(g * std::cos(theta));
        sc.gx = CouplingSpec::scalar(g * std::sin(theta));
    }
    return sc;
}

struct SweepPoint {
    int i = 0, j = 0;
    double v1 = 0.0, v2 = 0.0;
    bool ok = false;
    std::string error;
    double p_ancilla = 0.0;
    double p_conventional = 0.0;
    double difference = 0.0;
    // worst integrator monitors over both runs of the point
    double max_trace_dev = 0.0;
    double min_eig = 0.0;
    double max_herm_dev = 0.0;
};

inline nlohmann::json sweep_point_to_json(const SweepPoint& p) {
    nlohmann::json j;
    j["i"] = p.i;
    j["j"] = p.j;
    j["v1"] = p.v1;
    j["v2"] = p.v2;
    j["ok"] = p.ok;
    if (!p.ok) j["error"] = p.error;
    j["p_ancilla"] = p.p_ancilla;
    j["p_conventional"] = p.p_conventional;
    j["difference"] = p.difference;
    j["max_trace_dev"] = p.max_trace_dev;
    j["min_eig"] = p.min_eig;
    j["max_herm_dev"] = p.max_herm_dev;
    return j;
}

inline std::optional<SweepPoint> sweep_point_from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
        SweepPoint p;
        p.i = j.at("i").get<int>();
        p.j = j.at("j").get<int>();
        p.v1 = j.at("v1").get<double>();
        p.v2 = j.at("v2").get<double>();
        p.ok = j.at("ok").get<bool>();
        if (j.contains("error")) p.error = j.at("error").get<std::string>();
        p.p_ancilla = j.at("p_ancilla").get<double>();
        p.p_conventional = j.at("p_conventional").get<double>();
        p.difference = j.at("difference").get<double>();
        p.max_trace_dev = j.at("max_trace_dev").get<double>();
        p.min_eig = j.at("min_eig").get<double>();
        p.max_herm_dev = j.at("max_herm_dev").get<double>();
        return p;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;  // stale or truncated point file: recompute
    }
}

/// Grid execution over a worker pool. Each point runs the ancilla scenario and
/// its conventional twin; failures are recorded per point and the sweep keeps
/// going. Existing per-point files under point_dir are reused (resume).
inline std::vector<SweepPoint> run_sweep(const Scenario& base, const SweepSpec& spec,
                                         int parallelism,
                                         const std::filesystem::path& point_dir = {}) {
    base.validate();
    if (!base.driver.is_ancilla())
        throw config_error("sweep: the template scenario must use the ancilla driver");
    spec.axis1.validate();
    spec.axis2.validate();
    const bool persist = !point_dir.empty();
    if (persist) std::filesystem::create_directories(point_dir);

    const int n1 = spec.axis1.points, n2 = spec.axis2.points;
    std::vector<SweepPoint> results(static_cast<size_t>(n1) * n2);
    auto point_path = [&](int i, int j) {
        char name[64];
        std::snprintf(name, sizeof(name), "point_%03d_%03d.json", i, j);
        return point_dir / name;
    };

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= n1 * n2) return;
            const int i = k / n2, j = k % n2;
            SweepPoint p;
            p.i = i;
            p.j = j;
            p.v1 = spec.axis1.value(i);
            p.v2 = spec.axis2.value(j);
            if (persist) {
                if (auto cached = sweep_point_from_file(point_path(i, j));
                    cached && cached->ok && cached->i == i && cached->j == j) {
                    results[k] = *cached;
                    continue;
                }
            }
            try {
                const Scenario sc = apply_sweep_point(base, spec, i, j);
                const RunResult anc = run_single_with(sc, sc.driver);
                const RunResult conv = run_single_with(sc, DriverKind::conventional());
                p.p_ancilla = anc.p_ground;
                p.p_conventional = conv.p_ground;
                p.difference = p.p_ancilla - p.p_conventional;
                p.max_trace_dev = std::max(anc.max_trace_dev, conv.max_trace_dev);
                p.min_eig = std::min(anc.min_eig, conv.min_eig);
                p.max_herm_dev = std::max(anc.max_herm_dev, conv.max_herm_dev);
                p.ok = true;
            } catch (const std::exception& e) {
                p.ok = false;
                p.error = e.what();
            }
            if (persist)
                write_text_file(point_path(i, j), sweep_point_to_json(p).dump(2) + "\n");
            results[k] = p;
        }
    };

    const int workers = std::max(1, parallelism);
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();
    return results;
}

inline std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepPoint>& points) {
    std::vector<std::vector<std::string>> rows;
    for (const SweepPoint& p : points)
        rows.push_back({fmt_g12(p.v1), fmt_g12(p.v2), fmt_g12(p.p_ancilla),
                        fmt_g12(p.p_conventional), fmt_g12(p.difference),
                        p.ok ? "" : p.error});
    return csv_document({sweep_param_name(spec.axis1.param), sweep_param_name(spec.axis2.param),
                         "p_ancilla", "p_conventional", "difference", "error"},
                        rows);
}

inline std::string spectrum_csv(const SpectrumTable& table, bool sector) {
    const auto& data = sector ? table.sector : table.full;
    if (data.empty()) return "";
    std::vector<std::string> header = {"t"};
    for (size_t c = 0; c < data.front().size(); ++c) header.push_back("E_" + std::to_string(c));
    std::vector<std::vector<std::string>> rows;
    for (size_t k = 0; k < table.times.size(); ++k) {
        std::vector<std::string> row = {fmt_g12(table.times[k])};
        for (double v : data[k]) row.push_back(fmt_g12(v));
        rows.push_back(std::move(row));
    }
    return csv_document(header, rows);
}

}  // namespace paqs
