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

#include <json.hpp>

#include "paqs/bath.hpp"
#include "paqs/model.hpp"

namespace paqs {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-site coupling magnitudes, either one shared scalar or an explicit list.
struct CouplingSpec {
    bool uniform = true;
    double value = 0.0;
    std::vector<double> list;

    static CouplingSpec scalar(double v) { return {true, v, {}}; }
    static CouplingSpec explicit_list(std::vector<double> l) { return {false, 0.0, std::move(l)}; }

    std::vector<double> resolve(int register_size) const {
        if (uniform) return std::vector<double>(register_size, value);
        if (static_cast<int>(list.size()) != register_size)
            throw config_error("coupling list has " + std::to_string(list.size()) +
                               " entries, register needs " + std::to_string(register_size));
        return list;
    }

    bool operator==(const CouplingSpec&) const = default;
};

/// One complete experiment description: instance, schedule, driver, bath and
/// integration controls. Serializable to a single JSON document.
struct Scenario {
    ProblemInstance instance;
    ScheduleForm schedule_form = ScheduleForm::LinearStandard;
    double a = 10.0;  // rad/ns
    DriverKind driver = DriverKind::ancilla(-0.5);
    double beta = 1.0 / 1.57;
    double eta = 0.2;
    double omega_c = 8.0 * 3.14159265358979323846;
    CouplingSpec gz = CouplingSpec::scalar(0.0);
    CouplingSpec gx = CouplingSpec::scalar(0.0);
    double T = 1000.0;   // ns
    double dt = 0.01;    // ns
    double gap_tol = 1e-8;
    int snapshots = 201;

    AnnealSchedule schedule() const {
        AnnealSchedule s;
        s.a = a;
        s.T = T;
        s.form = schedule_form;
        return s;
    }

    BathConfig bath_for(const DriverKind& d) const {
        const int m = d.register_size(instance.n_vars);
        BathConfig b;
        b.beta = beta;
        b.eta = eta;
        b.omega_c = omega_c;
        b.gz = gz.resolve(m);
        b.gx = gx.resolve(m);
        b.validate(m);
        return b;
    }

    void validate() const {
        instance.validate();
        schedule().validate();
        bath_for(driver);
        if (!(dt > 0.0)) throw config_error("run.dt must be positive");
        if (!(gap_tol > 0.0)) throw config_error("run.gap_tol must be positive");
        if (snapshots < 2) throw config_error("run.snapshots must be at least 2");
    }
};

namespace detail {

inline nlohmann::json coupling_to_json(const CouplingSpec& c) {
    if (c.uniform) return c.value;
    return c.list;
}

inline CouplingSpec coupling_from_json(const nlohmann::json& j, const std::string& key) {
    if (j.is_number()) return CouplingSpec::scalar(j.get<double>());
    if (j.is_array()) return CouplingSpec::explicit_list(j.get<std::vector<double>>());
    throw config_error("bath." + key + " must be a number or an array");
}

}  // namespace detail

inline nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::json j;
    j["instance"]["h"] = s.instance.h;
    auto& couplings = j["instance"]["J"] = nlohmann::json::array();
    for (const IsingCoupling& c : s.instance.J)
        couplings.push_back(nlohmann::json::array({c.i, c.j, c.value}));
    j["schedule"]["form"] = s.schedule_form == ScheduleForm::LinearStandard
                                ? "linear-standard"
                                : "linear-paper-literal";
    j["schedule"]["a"] = s.a;
    j["driver"]["kind"] = s.driver.is_ancilla() ? "ancilla" : "conventional";
    if (s.driver.is_ancilla()) j["driver"]["c"] = s.driver.c;
    j["bath"]["beta"] = s.beta;
    j["bath"]["eta"] = s.eta;
    j["bath"]["omega_c"] = s.omega_c;
    j["bath"]["gz"] = detail::coupling_to_json(s.gz);
    j["bath"]["gx"] = detail::coupling_to_json(s.gx);
    j["run"]["T"] = s.T;
    j["run"]["dt"] = s.dt;
    j["run"]["gap_tol"] = s.gap_tol;
    j["run"]["snapshots"] = s.snapshots;
    return j;
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
    try {
        Scenario s;
        const auto& inst = j.at("instance");
        s.instance.h = inst.at("h").get<std::vector<double>>();
        s.instance.n_vars = static_cast<int>(s.instance.h.size());
        if (inst.contains("J"))
            for (const auto& row : inst.at("J")) {
                if (!row.is_array() || row.size() != 3)
                    throw config_error("instance.J entries must be [i, j, value]");
                s.instance.J.push_back(
                    {row[0].get<int>(), row[1].get<int>(), row[2].get<double>()});
            }

        if (j.contains("schedule")) {
            const auto& sch = j.at("schedule");
            if (sch.contains("form")) {
                const std::string form = sch.at("form").get<std::string>();
                if (form == "linear-standard")
                    s.schedule_form = ScheduleForm::LinearStandard;
                else if (form == "linear-paper-literal")
                    s.schedule_form = ScheduleForm::LinearPaperLiteral;
                else
                    throw config_error("unknown schedule.form '" + form + "'");
            }
            if (sch.contains("a")) s.a = sch.at("a").get<double>();
        }

        const auto& drv = j.at("driver");
        const std::string kind = drv.at("kind").get<std::string>();
        if (kind == "ancilla")
            s.driver = DriverKind::ancilla(drv.at("c").get<double>());
        else if (kind == "conventional")
            s.driver = DriverKind::conventional();
        else
            throw config_error("unknown driver.kind '" + kind + "'");

        if (j.contains("bath")) {
            const auto& bath = j.at("bath");
            if (bath.contains("beta")) s.beta = bath.at("beta").get<double>();
            if (bath.contains("eta")) s.eta = bath.at("eta").get<double>();
            if (bath.contains("omega_c")) s.omega_c = bath.at("omega_c").get<double>();
            if (bath.contains("gz")) s.gz = detail::coupling_from_json(bath.at("gz"), "gz");
            if (bath.contains("gx")) s.gx = detail::coupling_from_json(bath.at("gx"), "gx");
        }

        if (j.contains("run")) {
            const auto& run = j.at("run");
            if (run.contains("T")) s.T = run.at("T").get<double>();
            if (run.contains("dt")) s.dt = run.at("dt").get<double>();
            if (run.contains("gap_tol")) s.gap_tol = run.at("gap_tol").get<double>();
            if (run.contains("snapshots")) s.snapshots = run.at("snapshots").get<int>();
        }

        s.validate();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed scenario config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("invalid scenario: ") + e.what());
    }
}

inline Scenario scenario_from_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

/// Reference scenario used by the self-check suite and as a config template:
/// h = (1, 1/4), J_12 = 1/8, c = -1/2, T = 1000 ns, uniform gz = 0.1.
inline Scenario reference_scenario() {
    Scenario s;
    s.instance.n_vars = 2;
    s.instance.h = {1.0, 0.25};
    s.instance.J = {{1, 2, 0.125}};
    s.driver = DriverKind::ancilla(-0.5);
    s.gz = CouplingSpec::scalar(0.1);
    s.gx = CouplingSpec::scalar(0.0);
    return s;
}

}  // namespace paqs
