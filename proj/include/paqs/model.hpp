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

#include <string>

#include "paqs/eigensystem.hpp"
#include "paqs/matrix.hpp"

namespace paqs {

inline constexpr int kMaxVars = 6;  // logical Ising variables; ancilla register is 2N qubits

/// Ising objective: sum_i h_i z_i + sum_{i<j} J_ij z_i z_j with z in {+1,-1}.
struct IsingCoupling {
    int i = 0;  // 1-based variable indices, i < j
    int j = 0;
    double value = 0.0;
};

struct ProblemInstance {
    int n_vars = 0;
    std::vector<double> h;
    std::vector<IsingCoupling> J;

    void validate() const {
        if (n_vars < 1 || n_vars > kMaxVars)
            throw std::invalid_argument("ProblemInstance: n_vars must be in [1, " +
                                        std::to_string(kMaxVars) + "]");
        if (static_cast<int>(h.size()) != n_vars)
            throw std::invalid_argument("ProblemInstance: h must have n_vars entries");
        for (double v : h)
            if (!std::isfinite(v)) throw std::invalid_argument("ProblemInstance: non-finite field");
        for (const IsingCoupling& c : J) {
            if (c.i < 1 || c.j <= c.i || c.j > n_vars)
                throw std::invalid_argument("ProblemInstance: coupling indices must satisfy 1 <= i < j <= n_vars");
            if (!std::isfinite(c.value))
                throw std::invalid_argument("ProblemInstance: non-finite coupling");
        }
    }

    /// Objective value of the spin configuration encoded by `bits`
    /// (bit 0 -> z=+1, bit 1 -> z=-1; variable 1 is the leading character).
    double energy(const std::string& bits) const {
        auto z = [&](int var) { return bits[var - 1] == '0' ? 1.0 : -1.0; };
        double e = 0.0;
        for (int i = 1; i <= n_vars; ++i) e += h[i - 1] * z(i);
        for (const IsingCoupling& c : J) e += c.value * z(c.i) * z(c.j);
        return e;
    }
};

enum class ScheduleForm { LinearStandard, LinearPaperLiteral };

/// Interpolation envelopes A(t), B(t) over the anneal [0, T].
/// LinearStandard ramps the driver down and the problem up; LinearPaperLiteral
/// is the reversed variant kept selectable for auditing (it violates the
/// annealing ordering, see ordering_ok()).
struct AnnealSchedule {
    double a = 10.0;   // overall energy scale, rad/ns
    double T = 1000.0; // anneal time, ns
    ScheduleForm form = ScheduleForm::LinearStandard;

    void validate() const {
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::invalid_argument("AnnealSchedule: energy scale a must be positive");
        if (!(T > 0.0) || !std::isfinite(T))
            throw std::invalid_argument("AnnealSchedule: anneal time T must be positive");
    }

    double A(double t) const {
        return form == ScheduleForm::LinearStandard ? a * (1.0 - t / T) : a * t / T;
    }
    double B(double t) const { return a - A(t); }

    bool ordering_ok() const { return A(0.0) > B(0.0) && A(T) < B(T); }
};

enum class Placement { Conventional, Ancilla };

struct DriverKind {
    enum class Kind { Conventional, Ancilla };
    Kind kind = Kind::Conventional;
    double c = 0.0;  // pair-driver weight, meaningful for Ancilla only

    static DriverKind conventional() { return {Kind::Conventional, 0.0}; }
    static DriverKind ancilla(double c) { return {Kind::Ancilla, c}; }

    bool is_ancilla() const { return kind == Kind::Ancilla; }
    int register_size(int n_vars) const { return is_ancilla() ? 2 * n_vars : n_vars; }
    Placement placement() const { return is_ancilla() ? Placement::Ancilla : Placement::Conventional; }
};

/// Sector label: one bit per ancilla qubit, lambda_{2i-1} in {0,1}.
struct SectorLabel {
    std::vector<int> bits;

    static SectorLabel from_int(int value, int n) {
        SectorLabel s;
        s.bits.resize(n);
        for (int i = 0; i < n; ++i) s.bits[i] = (value >> (n - 1 - i)) & 1;
        return s;
    }
    static SectorLabel all_ones(int n) { return from_int((1 << n) - 1, n); }
    int to_int() const {
        int v = 0;
        for (int b : bits) v = (v << 1) | b;
        return v;
    }
};

/// f(x) = 1 - 2x maps the ancilla bit to the sign it imprints on the pair driver.
inline double sector_sign(int bit) { return 1.0 - 2.0 * bit; }

namespace detail {

inline void check_time(double t, const AnnealSchedule& sched) {
    const double slack = 1e-9 * std::max(1.0, sched.T);
    if (t < -slack || t > sched.T + slack)
        throw std::invalid_argument("time " + std::to_string(t) + " outside anneal window [0, " +
                                    std::to_string(sched.T) + "]");
}

/// Full-register basis index of (sector bits, physical bits), qubit 1 leftmost,
/// ancillas on odd qubits, physical spins on even qubits.
inline int interleaved_index(int sector, int phys, int n_vars) {
    int idx = 0;
    for (int i = 1; i <= n_vars; ++i) {
        const int a = (sector >> (n_vars - i)) & 1;
        const int s = (phys >> (n_vars - i)) & 1;
        idx |= a << (2 * n_vars - (2 * i - 1));
        idx |= s << (2 * n_vars - 2 * i);
    }
    return idx;
}

/// Index of variable i's qubit bit within a register basis index.
inline int variable_bit(int basis_index, int i, int n_vars, Placement placement) {
    const int qubits = placement == Placement::Ancilla ? 2 * n_vars : n_vars;
    const int site = placement == Placement::Ancilla ? 2 * i : i;
    return (basis_index >> (qubits - site)) & 1;
}

}  // namespace detail

/// Diagonal problem Hamiltonian. Conventional placement puts variable i on
/// qubit i (N qubits); ancilla placement puts it on qubit 2i (2N qubits).
inline ComplexMatrix problem_hamiltonian(const ProblemInstance& inst, Placement placement) {
    inst.validate();
    const int n = inst.n_vars;
    const int qubits = placement == Placement::Ancilla ? 2 * n : n;
    const int dim = 1 << qubits;
    ComplexMatrix H(dim);
    for (int idx = 0; idx < dim; ++idx) {
        double e = 0.0;
        for (int i = 1; i <= n; ++i)
            e += inst.h[i - 1] * (detail::variable_bit(idx, i, n, placement) ? -1.0 : 1.0);
        for (const IsingCoupling& c : inst.J) {
            const double zi = detail::variable_bit(idx, c.i, n, placement) ? -1.0 : 1.0;
            const double zj = detail::variable_bit(idx, c.j, n, placement) ? -1.0 : 1.0;
            e += c.value * zi * zj;
        }
        H(idx, idx) = e;
    }
    return H;
}

/// Time-independent driver part D such that H(t) = A(t) D + B(t) H_p.
/// Conventional: D = -sum_i sigma_i^x. Ancilla: D = sum_i (c sigma^x sigma^x
/// - sigma^y sigma^y) on each (2i-1, 2i) pair.
inline ComplexMatrix driver_matrix(int n_vars, const DriverKind& driver) {
    const int qubits = driver.register_size(n_vars);
    const int dim = 1 << qubits;
    ComplexMatrix D(dim);
    if (!driver.is_ancilla()) {
        for (int i = 1; i <= n_vars; ++i) add_scaled_into(D, -1.0, pauli_on(i, Axis::X, qubits));
        return D;
    }
    for (int i = 1; i <= n_vars; ++i) {
        const ComplexMatrix xx =
            matmul(pauli_on(2 * i - 1, Axis::X, qubits), pauli_on(2 * i, Axis::X, qubits));
        const ComplexMatrix yy =
            matmul(pauli_on(2 * i - 1, Axis::Y, qubits), pauli_on(2 * i, Axis::Y, qubits));
        add_scaled_into(D, driver.c, xx);
        add_scaled_into(D, -1.0, yy);
    }
    return D;
}

inline ComplexMatrix hamiltonian_at(double t, const AnnealSchedule& sched,
                                    const ProblemInstance& inst, const DriverKind& driver) {
    sched.validate();
    detail::check_time(t, sched);
    ComplexMatrix H = sched.A(t) * driver_matrix(inst.n_vars, driver);
    add_scaled_into(H, sched.B(t), problem_hamiltonian(inst, driver.placement()));
    return H;
}

/// Tensor power of the pairwise CNOT (control = physical qubit, target = ancilla).
inline ComplexMatrix build_W(int n_vars) {
    if (n_vars < 1 || n_vars > kMaxVars)
        throw std::invalid_argument("build_W: n_vars out of range");
    ComplexMatrix C(4);
    C(0, 0) = 1.0;
    C(1, 3) = 1.0;
    C(2, 2) = 1.0;
    C(3, 1) = 1.0;
    ComplexMatrix W = C;
    for (int i = 1; i < n_vars; ++i) W = kron(W, C);
    return W;
}

/// Sector Hamiltonian on the physical register, re-indexed to qubits 1..N:
/// A(t) sum_i (c + f(lambda_i)) sigma_i^x + B(t) (problem part).
inline ComplexMatrix block_hamiltonian(double t, const AnnealSchedule& sched,
                                       const ProblemInstance& inst, double c,
                                       const SectorLabel& sector) {
    sched.validate();
    detail::check_time(t, sched);
    if (static_cast<int>(sector.bits.size()) != inst.n_vars)
        throw std::invalid_argument("block_hamiltonian: sector label length != n_vars");
    const int n = inst.n_vars;
    ComplexMatrix H(1 << n);
    const double At = sched.A(t);
    for (int i = 1; i <= n; ++i)
        add_scaled_into(H, At * (c + sector_sign(sector.bits[i - 1])), pauli_on(i, Axis::X, n));
    add_scaled_into(H, sched.B(t), problem_hamiltonian(inst, Placement::Conventional));
    return H;
}

/// Direct sum over all 2^N sectors (lambda ascending as big-endian integers),
/// realized on the interleaved full register so that it equals
/// W^dagger H(t) W entry for entry.
inline ComplexMatrix assemble_block_diagonal(double t, const AnnealSchedule& sched,
                                             const ProblemInstance& inst, double c) {
    const int n = inst.n_vars;
    const int phys_dim = 1 << n;
    ComplexMatrix H(1 << (2 * n));
    for (int lambda = 0; lambda < (1 << n); ++lambda) {
        const ComplexMatrix block =
            block_hamiltonian(t, sched, inst, c, SectorLabel::from_int(lambda, n));
        for (int r = 0; r < phys_dim; ++r)
            for (int cidx = 0; cidx < phys_dim; ++cidx) {
                const cplx v = block(r, cidx);
                if (v == cplx(0.0, 0.0)) continue;
                H(detail::interleaved_index(lambda, r, n),
                  detail::interleaved_index(lambda, cidx, n)) = v;
            }
    }
    return H;
}

/// Ground state of H(0): uniform superposition for the conventional driver,
/// the paired Bell-like product (|01> + |10>)/sqrt(2) for the ancilla driver.
inline StateVector initial_state(const DriverKind& driver, int n_vars) {
    if (n_vars < 1 || n_vars > kMaxVars)
        throw std::invalid_argument("initial_state: n_vars out of range");
    if (!driver.is_ancilla()) {
        const int dim = 1 << n_vars;
        return StateVector(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
    }
    if (!(driver.c < 0.0))
        throw std::invalid_argument(
            "initial_state: ancilla driver requires c < 0 for (|01>+|10>)/sqrt(2) to be the "
            "ground state");
    StateVector pair = {0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0};
    StateVector psi = pair;
    for (int i = 1; i < n_vars; ++i) {
        StateVector next(psi.size() * 4);
        for (size_t x = 0; x < psi.size(); ++x)
            for (size_t y = 0; y < 4; ++y) next[x * 4 + y] = psi[x] * pair[y];
        psi = std::move(next);
    }
    return psi;
}

/// Probability of measuring `bits` on the physical qubits. For conventional
/// registers (dim == 2^N) this is the diagonal element <bits|rho|bits>.
inline double physical_marginal(const ComplexMatrix& rho, const std::string& bits) {
    const int n = static_cast<int>(bits.size());
    for (char ch : bits)
        if (ch != '0' && ch != '1')
            throw std::invalid_argument("physical_marginal: bits must be a 0/1 string");
    const double trace_dev = std::abs(trace(rho) - cplx(1.0, 0.0));
    if (trace_dev > 1e-6)
        throw numerical_error("physical_marginal: trace deviates from 1 by " +
                              std::to_string(trace_dev));
    int phys = 0;
    for (char ch : bits) phys = (phys << 1) | (ch - '0');

    if (rho.dim == (1 << n)) return rho(phys, phys).real();
    if (rho.dim == (1 << (2 * n))) {
        double p = 0.0;
        for (int sector = 0; sector < (1 << n); ++sector) {
            const int idx = detail::interleaved_index(sector, phys, n);
            p += rho(idx, idx).real();
        }
        return p;
    }
    throw std::invalid_argument("physical_marginal: register size does not match bit string");
}

/// All 2^N physical-bitstring probabilities of a register state, index =
/// big-endian bitstring value.
inline std::vector<double> physical_probability_vector(const ComplexMatrix& rho, int n_vars) {
    std::vector<double> p(static_cast<size_t>(1) << n_vars, 0.0);
    if (rho.dim == (1 << n_vars)) {
        for (int i = 0; i < rho.dim; ++i) p[i] = rho(i, i).real();
        return p;
    }
    if (rho.dim == (1 << (2 * n_vars))) {
        for (int phys = 0; phys < (1 << n_vars); ++phys)
            for (int sector = 0; sector < (1 << n_vars); ++sector) {
                const int idx = detail::interleaved_index(sector, phys, n_vars);
                p[phys] += rho(idx, idx).real();
            }
        return p;
    }
    throw std::invalid_argument("physical_probability_vector: register size mismatch");
}

inline std::vector<double> physical_probability_vector(const StateVector& psi, int n_vars) {
    std::vector<double> p(static_cast<size_t>(1) << n_vars, 0.0);
    if (psi.size() == static_cast<size_t>(1) << n_vars) {
        for (size_t i = 0; i < psi.size(); ++i) p[i] = std::norm(psi[i]);
        return p;
    }
    if (psi.size() == static_cast<size_t>(1) << (2 * n_vars)) {
        for (int phys = 0; phys < (1 << n_vars); ++phys)
            for (int sector = 0; sector < (1 << n_vars); ++sector)
                p[phys] += std::norm(psi[detail::interleaved_index(sector, phys, n_vars)]);
        return p;
    }
    throw std::invalid_argument("physical_probability_vector: register size mismatch");
}

/// Bitstring minimizing the Ising objective (ties broken toward the smaller
/// big-endian value).
inline std::string ground_bitstring(const ProblemInstance& inst) {
    inst.validate();
    std::string best, cur(inst.n_vars, '0');
    double best_e = 0.0;
    for (int v = 0; v < (1 << inst.n_vars); ++v) {
        for (int i = 0; i < inst.n_vars; ++i)
            cur[i] = ((v >> (inst.n_vars - 1 - i)) & 1) ? '1' : '0';
        const double e = inst.energy(cur);
        if (best.empty() || e < best_e) {
            best = cur;
            best_e = e;
        }
    }
    return best;
}

}  // namespace paqs
