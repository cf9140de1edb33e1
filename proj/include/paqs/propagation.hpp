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

#include "paqs/master_equation.hpp"

namespace paqs {

struct SnapshotRecord {
    double t = 0.0;
    double trace_dev = 0.0;  // |Tr rho - 1|            (open)
    double min_eig = 0.0;    // min eigenvalue of rho   (open)
    double herm_dev = 0.0;   // max |rho - rho^dag|     (open)
    double norm_dev = 0.0;   // | ||psi|| - 1 |          (closed)
};

struct Trajectory {
    bool closed = true;
    double dt_effective = 0.0;
    std::vector<double> times;
    std::vector<StateVector> psi;    // closed runs
    std::vector<ComplexMatrix> rho;  // open runs
    std::vector<SnapshotRecord> monitors;

    double max_trace_dev() const {
        double m = 0.0;
        for (const SnapshotRecord& r : monitors) m = std::max(m, r.trace_dev);
        return m;
    }
    double min_eigenvalue() const {
        double m = 1.0;
        for (const SnapshotRecord& r : monitors) m = std::min(m, r.min_eig);
        return m;
    }
    double max_herm_dev() const {
        double m = 0.0;
        for (const SnapshotRecord& r : monitors) m = std::max(m, r.herm_dev);
        return m;
    }
    double max_norm_dev() const {
        double m = 0.0;
        for (const SnapshotRecord& r : monitors) m = std::max(m, r.norm_dev);
        return m;
    }
};

namespace detail {

struct StepGrid {
    int intervals;  // snapshot intervals
    int steps_per_interval;
    double h;  // effective step, h * steps_per_interval * intervals = T
};

inline StepGrid make_step_grid(double T, double dt, int n_snapshots) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
    if (n_snapshots < 2) throw std::invalid_argument("integrate: need at least 2 snapshots");
    StepGrid g;
    g.intervals = n_snapshots - 1;
    const double interval = T / g.intervals;
    g.steps_per_interval = std::max(1, static_cast<int>(std::ceil(interval / dt - 1e-12)));
    g.h = interval / g.steps_per_interval;
    return g;
}

inline double min_density_eigenvalue(const ComplexMatrix& rho) {
    // eigenvalues of the hermitized state; the coarse gap_tol collapses binning
    ComplexMatrix sym = 0.5 * (rho + adjoint(rho));
    const EigenSystem es = hermitian_eigensystem(sym, 1.0);
    return es.values.front();
}

/// RK4 on d psi/dt = -i (A(t) D + B(t) P) psi with norm monitoring.
inline Trajectory integrate_closed_matrices(const StateVector& psi0, const ComplexMatrix& D,
                                            const ComplexMatrix& P, const AnnealSchedule& sched,
                                            double dt, int n_snapshots) {
    const int dim = D.dim;
    if (static_cast<int>(psi0.size()) != dim)
        throw std::invalid_argument("integrate_closed: state dimension mismatch");
    if (std::abs(vec_norm(psi0) - 1.0) > 1e-8)
        throw std::invalid_argument("integrate_closed: initial state is not normalized");
    const StepGrid grid = make_step_grid(sched.T, dt, n_snapshots);

    StateVector psi = psi0, k1(dim), k2(dim), k3(dim), k4(dim), stage(dim), hd(dim), hp(dim);
    auto deriv = [&](double t, const StateVector& x, StateVector& out) {
        matvec_into(D, x, hd);
        matvec_into(P, x, hp);
        const double At = sched.A(t), Bt = sched.B(t);
        for (int i = 0; i < dim; ++i) out[i] = cplx(0.0, -1.0) * (At * hd[i] + Bt * hp[i]);
    };

    Trajectory traj;
    traj.closed = true;
    traj.dt_effective = grid.h;
    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.psi.push_back(psi);
        SnapshotRecord rec;
        rec.t = t;
        rec.norm_dev = std::abs(vec_norm(psi) - 1.0);
        traj.monitors.push_back(rec);
        if (rec.norm_dev > 1e-5)
            throw numerical_error("integrate_closed: norm drift " + std::to_string(rec.norm_dev) +
                                  " at t=" + std::to_string(t) + " ns; reduce dt (current h=" +
                                  std::to_string(grid.h) + " ns)");
    };

    record(0.0);
    const double h = grid.h;
    for (int iv = 0; iv < grid.intervals; ++iv) {
        for (int s = 0; s < grid.steps_per_interval; ++s) {
            const double t = (static_cast<double>(iv) * grid.steps_per_interval + s) * h;
            deriv(t, psi, k1);
            for (int i = 0; i < dim; ++i) stage[i] = psi[i] + 0.5 * h * k1[i];
            deriv(t + 0.5 * h, stage, k2);
            for (int i = 0; i < dim; ++i) stage[i] = psi[i] + 0.5 * h * k2[i];
            deriv(t + 0.5 * h, stage, k3);
            for (int i = 0; i < dim; ++i) stage[i] = psi[i] + h * k3[i];
            deriv(std::min(t + h, sched.T), stage, k4);
            for (int i = 0; i < dim; ++i)
                psi[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        record(static_cast<double>(iv + 1) * sched.T / grid.intervals);
    }
    return traj;
}

}  // namespace detail

/// Fixed-step RK4 on the Schroedinger equation for the full annealing register.
/// No renormalization is applied; norm drift is recorded and aborts past 1e-5.
inline Trajectory integrate_closed(const StateVector& psi0, const AnnealSchedule& sched,
                                   const ProblemInstance& inst, const DriverKind& driver,
                                   double dt, int n_snapshots) {
    sched.validate();
    inst.validate();
    return detail::integrate_closed_matrices(psi0, driver_matrix(inst.n_vars, driver),
                                             problem_hamiltonian(inst, driver.placement()), sched,
                                             dt, n_snapshots);
}

/// Closed evolution under the all-ones sector Hamiltonian on the N physical
/// qubits (the conventional-annealing dynamics the ancilla construction embeds).
inline Trajectory integrate_closed_sector(const StateVector& psi0, const AnnealSchedule& sched,
                                          const ProblemInstance& inst, double c, double dt,
                                          int n_snapshots) {
    sched.validate();
    inst.validate();
    const int n = inst.n_vars;
    ComplexMatrix D(1 << n);
    for (int i = 1; i <= n; ++i)
        add_scaled_into(D, c + sector_sign(1), pauli_on(i, Axis::X, n));
    return detail::integrate_closed_matrices(
        psi0, D, problem_hamiltonian(inst, Placement::Conventional), sched, dt, n_snapshots);
}

/// Fixed-step RK4 on a prepared Lindblad model (full or reduced register).
/// The generator is rebuilt at every stage time; the end-of-step generator is
/// reused as the next step's start since those are the same instant.
inline Trajectory integrate_model(const ComplexMatrix& rho0, const LindbladModel& model, double dt,
                                  int n_snapshots) {
    const int dim = model.dim();
    detail::check_density_matrix(rho0, dim, "integrate_open");
    const double T = model.schedule().T;
    const detail::StepGrid grid = detail::make_step_grid(T, dt, n_snapshots);

    ComplexMatrix rho = rho0, k1(dim), k2(dim), k3(dim), k4(dim), stage(dim);
    GeneratorScratch ws;

    Trajectory traj;
    traj.closed = false;
    traj.dt_effective = grid.h;
    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.rho.push_back(rho);
        SnapshotRecord rec;
        rec.t = t;
        rec.trace_dev = std::abs(trace(rho) - cplx(1.0, 0.0));
        rec.herm_dev = adjoint_deviation(rho);
        rec.min_eig = detail::min_density_eigenvalue(rho);
        traj.monitors.push_back(rec);
        if (rec.trace_dev > 1e-5)
            throw numerical_error("integrate_open: trace deviation " +
                                  std::to_string(rec.trace_dev) + " at t=" + std::to_string(t) +
                                  " ns; reduce dt (current h=" + std::to_string(grid.h) + " ns)");
        if (rec.min_eig < -1e-5)
            throw numerical_error("integrate_open: negative population " +
                                  std::to_string(rec.min_eig) + " at t=" + std::to_string(t) +
                                  " ns; reduce dt (current h=" + std::to_string(grid.h) + " ns)");
    };

    record(0.0);
    const double h = grid.h;
    PreparedGenerator g_lo = model.prepare(0.0);
    for (int iv = 0; iv < grid.intervals; ++iv) {
        for (int s = 0; s < grid.steps_per_interval; ++s) {
            const double t = (static_cast<double>(iv) * grid.steps_per_interval + s) * h;
            const PreparedGenerator g_mid = model.prepare(std::min(t + 0.5 * h, T));
            PreparedGenerator g_hi = model.prepare(std::min(t + h, T));
            g_lo.apply_into(rho, k1, ws);
            stage = rho;
            add_scaled_into(stage, 0.5 * h, k1);
            g_mid.apply_into(stage, k2, ws);
            stage = rho;
            add_scaled_into(stage, 0.5 * h, k2);
            g_mid.apply_into(stage, k3, ws);
            stage = rho;
            add_scaled_into(stage, h, k3);
            g_hi.apply_into(stage, k4, ws);
            add_scaled_into(rho, h / 6.0, k1);
            add_scaled_into(rho, h / 3.0, k2);
            add_scaled_into(rho, h / 3.0, k3);
            add_scaled_into(rho, h / 6.0, k4);
            g_lo = std::move(g_hi);
        }
        record(static_cast<double>(iv + 1) * T / grid.intervals);
    }
    return traj;
}

/// Adiabatic master equation on the full register.
inline Trajectory integrate_open(const ComplexMatrix& rho0, const AnnealSchedule& sched,
                                 const ProblemInstance& inst, const DriverKind& driver,
                                 const BathConfig& bath, double dt, double gap_tol,
                                 int n_snapshots) {
    return integrate_model(rho0, LindbladModel::full_register(sched, inst, driver, bath, gap_tol),
                           dt, n_snapshots);
}

/// Reduced all-ones-sector master equation on the N physical qubits.
inline Trajectory integrate_open_reduced(const ComplexMatrix& rho0, const AnnealSchedule& sched,
                                         const ProblemInstance& inst, double c,
                                         const BathConfig& bath, double dt, double gap_tol,
                                         int n_snapshots) {
    return integrate_model(rho0, LindbladModel::reduced_sector(sched, inst, c, bath, gap_tol), dt,
                           n_snapshots);
}

namespace detail {

inline double max_probability_discrepancy(const Trajectory& x, const Trajectory& y, int n_vars) {
    double worst = 0.0;
    for (size_t k = 0; k < x.times.size(); ++k) {
        const std::vector<double> px = x.closed ? physical_probability_vector(x.psi[k], n_vars)
                                                : physical_probability_vector(x.rho[k], n_vars);
        const std::vector<double> py = y.closed ? physical_probability_vector(y.psi[k], n_vars)
                                                : physical_probability_vector(y.rho[k], n_vars);
        for (size_t i = 0; i < px.size(); ++i) worst = std::max(worst, std::abs(px[i] - py[i]));
    }
    return worst;
}

}  // namespace detail

/// Convergence certificate: rerun at dt/2 and report the worst
/// physical-bitstring probability discrepancy over all snapshots.
inline double convergence_check_closed(const StateVector& psi0, const AnnealSchedule& sched,
                                       const ProblemInstance& inst, const DriverKind& driver,
                                       double dt, int n_snapshots) {
    const Trajectory full = integrate_closed(psi0, sched, inst, driver, dt, n_snapshots);
    const Trajectory half = integrate_closed(psi0, sched, inst, driver, dt / 2.0, n_snapshots);
    return detail::max_probability_discrepancy(full, half, inst.n_vars);
}

inline double convergence_check_open(const ComplexMatrix& rho0, const AnnealSchedule& sched,
                                     const ProblemInstance& inst, const DriverKind& driver,
                                     const BathConfig& bath, double dt, double gap_tol,
                                     int n_snapshots) {
    const Trajectory full =
        integrate_open(rho0, sched, inst, driver, bath, dt, gap_tol, n_snapshots);
    const Trajectory half =
        integrate_open(rho0, sched, inst, driver, bath, dt / 2.0, gap_tol, n_snapshots);
    return detail::max_probability_discrepancy(full, half, inst.n_vars);
}

}  // namespace paqs
