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

#include "paqs/model.hpp"

namespace paqs {

/// Common Ohmic bath: inverse temperature beta (ns), strength eta ((rad/ns)^-2),
/// cutoff omega_c (rad/ns), and per-site longitudinal/transversal couplings
/// (rad/ns) sized to the register the scenario runs on.
struct BathConfig {
    double beta = 0.0;
    double eta = 0.0;
    double omega_c = 0.0;
    std::vector<double> gz;
    std::vector<double> gx;

    void validate(int register_size) const {
        if (!(beta > 0.0) || !(eta > 0.0) || !(omega_c > 0.0))
            throw std::invalid_argument("BathConfig: beta, eta, omega_c must be positive");
        if (static_cast<int>(gz.size()) != register_size ||
            static_cast<int>(gx.size()) != register_size)
            throw std::invalid_argument("BathConfig: coupling lists must have one entry per site (" +
                                        std::to_string(register_size) + ")");
        for (double g : gz)
            if (!std::isfinite(g)) throw std::invalid_argument("BathConfig: non-finite gz");
        for (double g : gx)
            if (!std::isfinite(g)) throw std::invalid_argument("BathConfig: non-finite gx");
    }

    static BathConfig uniform(double beta, double eta, double omega_c, double gz, double gx,
                              int register_size) {
        BathConfig b;
        b.beta = beta;
        b.eta = eta;
        b.omega_c = omega_c;
        b.gz.assign(register_size, gz);
        b.gx.assign(register_size, gx);
        return b;
    }
};

/// Ohmic rate with thermal detailed balance,
///   gamma(w) = eta |w| e^{-|w|/w_c} / (1 - e^{-beta |w|})           for w > 0,
///   gamma(w) = gamma(|w|) e^{-beta |w|}                             for w < 0,
///   gamma(0) = eta / beta (continuous limit).
inline double bath_gamma(double omega, double beta, double eta, double omega_c) {
    if (!std::isfinite(omega)) throw std::invalid_argument("bath_gamma: non-finite omega");
    if (omega == 0.0) return eta / beta;
    const double w = std::abs(omega);
    const double emission = eta * w * std::exp(-w / omega_c) / (-std::expm1(-beta * w));
    return omega > 0.0 ? emission : emission * std::exp(-beta * w);
}

inline double bath_gamma(double omega, const BathConfig& bath) {
    return bath_gamma(omega, bath.beta, bath.eta, bath.omega_c);
}

/// Collective system operator C_alpha = sum_i g_i^alpha sigma_i^alpha on the
/// register selected by the driver.
inline ComplexMatrix collective_coupling(Axis axis, const BathConfig& bath,
                                         const DriverKind& driver, int n_vars) {
    const int qubits = driver.register_size(n_vars);
    bath.validate(qubits);
    const std::vector<double>& g = axis == Axis::Z ? bath.gz : bath.gx;
    ComplexMatrix C(1 << qubits);
    for (int i = 1; i <= qubits; ++i)
        if (g[i - 1] != 0.0) add_scaled_into(C, g[i - 1], pauli_on(i, axis, qubits));
    return C;
}

}  // namespace paqs
