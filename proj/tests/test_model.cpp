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

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "paqs/model.hpp"

using namespace paqs;

namespace {

// Reference two-variable instance: h = (1, 1/4), J_12 = 1/8.
ProblemInstance coef_instance() {
    ProblemInstance inst;
    inst.n_vars = 2;
    inst.h = {1.0, 0.25};
    inst.J = {{1, 2, 0.125}};
    return inst;
}

AnnealSchedule default_schedule(double T = 1000.0) {
    AnnealSchedule s;
    s.a = 10.0;
    s.T = T;
    s.form = ScheduleForm::LinearStandard;
    return s;
}

// Enumeration oracle: Ising energy from the raw coefficient lists, written
// independently of ProblemInstance::energy.
double ising_energy_oracle(const std::vector<double>& h,
                           const std::vector<std::tuple<int, int, double>>& J,
                           const std::vector<int>& bits) {
    double e = 0.0;
    for (size_t i = 0; i < h.size(); ++i) e += h[i] * (bits[i] ? -1.0 : 1.0);
    for (const auto& [i, j, v] : J)
        e += v * (bits[i - 1] ? -1.0 : 1.0) * (bits[j - 1] ? -1.0 : 1.0);
    return e;
}

ProblemInstance random_instance(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ProblemInstance inst;
    inst.n_vars = n;
    for (int i = 0; i < n; ++i) inst.h.push_back(dist(rng));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) inst.J.push_back({i, j, dist(rng)});
    return inst;
}

}  // namespace

TEST_CASE("problem Hamiltonian matches the enumeration oracle") {
    const ProblemInstance inst = coef_instance();
    const ComplexMatrix H = problem_hamiltonian(inst, Placement::Conventional);

    std::vector<double> expected;
    for (int s1 : {0, 1})
        for (int s2 : {0, 1})
            expected.push_back(ising_energy_oracle({1.0, 0.25}, {{1, 2, 0.125}}, {s1, s2}));
    CHECK(expected == std::vector<double>{1.375, 0.625, -0.875, -1.125});
    for (int i = 0; i < 4; ++i) CHECK(H(i, i).real() == Catch::Approx(expected[i]).margin(1e-15));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(H(i, j) == cplx(0.0, 0.0));
}

TEST_CASE("ancilla placement replicates each diagonal value 4 times") {
    const ProblemInstance inst = coef_instance();
    const ComplexMatrix Hc = problem_hamiltonian(inst, Placement::Conventional);
    const ComplexMatrix Ha = problem_hamiltonian(inst, Placement::Ancilla);
    REQUIRE(Ha.dim == 16);
    std::vector<double> dc, da;
    for (int i = 0; i < 4; ++i) dc.push_back(Hc(i, i).real());
    for (int i = 0; i < 16; ++i) da.push_back(Ha(i, i).real());
    std::sort(dc.begin(), dc.end());
    std::sort(da.begin(), da.end());
    for (int k = 0; k < 4; ++k)
        for (int r = 0; r < 4; ++r)
            CHECK(da[4 * k + r] == Catch::Approx(dc[k]).margin(1e-15));
}

TEST_CASE("zero instance gives the zero matrix") {
    ProblemInstance inst;
    inst.n_vars = 2;
    inst.h = {0.0, 0.0};
    CHECK(max_abs(problem_hamiltonian(inst, Placement::Ancilla)) == 0.0);
}

TEST_CASE("schedule forms and annealing ordering") {
    AnnealSchedule s = default_schedule();
    CHECK(s.A(0.0) == 10.0);
    CHECK(s.B(0.0) == 0.0);
    CHECK(s.A(s.T) == 0.0);
    CHECK(s.ordering_ok());

    s.form = ScheduleForm::LinearPaperLiteral;
    CHECK(s.A(0.0) == 0.0);
    CHECK_FALSE(s.ordering_ok());
}

TEST_CASE("ancilla Hamiltonian at t = 0 is the scaled pair driver") {
    ProblemInstance inst;
    inst.n_vars = 1;
    inst.h = {0.3};
    const AnnealSchedule s = default_schedule();
    const ComplexMatrix H0 = hamiltonian_at(0.0, s, inst, DriverKind::ancilla(-0.5));
    const EigenSystem es = hermitian_eigensystem(H0, 1e-8);
    const std::vector<double> expected = {-1.5, -0.5, 0.5, 1.5};  // a * (+-(c+-1))
    for (int i = 0; i < 4; ++i)
        CHECK(es.values[i] == Catch::Approx(s.a * expected[i]).margin(1e-10));
}

TEST_CASE("ancilla Hamiltonian at t = T is the problem part alone") {
    const ProblemInstance inst = coef_instance();
    const AnnealSchedule s = default_schedule();
    const ComplexMatrix HT = hamiltonian_at(s.T, s, inst, DriverKind::ancilla(-0.5));
    const ComplexMatrix expected = s.B(s.T) * problem_hamiltonian(inst, Placement::Ancilla);
    CHECK(max_abs(HT - expected) == 0.0);
}

TEST_CASE("sigma^z sigma^z on each pair commutes with the ancilla Hamiltonian") {
    const ProblemInstance inst = coef_instance();
    const AnnealSchedule s = default_schedule();
    for (double t : {0.0, 250.0, 500.0, 900.0, 1000.0}) {
        const ComplexMatrix H = hamiltonian_at(t, s, inst, DriverKind::ancilla(-0.5));
        for (int i = 1; i <= inst.n_vars; ++i) {
            const ComplexMatrix zz =
                matmul(pauli_on(2 * i - 1, Axis::Z, 4), pauli_on(2 * i, Axis::Z, 4));
            CHECK(frobenius_norm(commutator(H, zz)) <= 1e-12);
        }
    }
}

TEST_CASE("hamiltonian_at rejects out-of-window times") {
    const ProblemInstance inst = coef_instance();
    const AnnealSchedule s = default_schedule();
    CHECK_THROWS_AS(hamiltonian_at(-1.0, s, inst, DriverKind::conventional()),
                    std::invalid_argument);
    CHECK_THROWS_AS(hamiltonian_at(s.T + 1.0, s, inst, DriverKind::conventional()),
                    std::invalid_argument);
}

TEST_CASE("W for one pair is the documented permutation") {
    const ComplexMatrix W = build_W(1);
    const double rows[4][4] = {
        {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(W(r, c) == cplx(rows[r][c], 0.0));
}

TEST_CASE("W is an involution and matches the CNOT formula") {
    for (int n : {1, 2, 3}) {
        const ComplexMatrix W = build_W(n);
        CHECK(max_abs(matmul(W, W) - ComplexMatrix::identity(W.dim)) <= 1e-14);
    }
    // C = sigma^x (ancilla) (I - sigma^z)/2 (physical) + I (I + sigma^z)/2
    const ComplexMatrix I2 = ComplexMatrix::identity(2);
    const ComplexMatrix sx = pauli_on(1, Axis::X, 1);
    const ComplexMatrix sz = pauli_on(1, Axis::Z, 1);
    const ComplexMatrix C =
        kron(sx, 0.5 * (I2 - sz)) + kron(I2, 0.5 * (I2 + sz));
    CHECK(max_abs(build_W(1) - C) <= 1e-14);
}

TEST_CASE("W conjugation turns sigma^z sigma^z into the ancilla sigma^z") {
    const ComplexMatrix W = build_W(1);
    const ComplexMatrix zz = matmul(pauli_on(1, Axis::Z, 2), pauli_on(2, Axis::Z, 2));
    const ComplexMatrix conj_zz = matmul(matmul(adjoint(W), zz), W);
    CHECK(max_abs(conj_zz - pauli_on(1, Axis::Z, 2)) <= 1e-14);
}

TEST_CASE("block Hamiltonian transverse coefficients follow c + f(lambda)") {
    const ProblemInstance inst = coef_instance();
    const AnnealSchedule s = default_schedule();
    const double t = 300.0, c = -0.5;
    const ComplexMatrix bpart = s.B(t) * problem_hamiltonian(inst, Placement::Conventional);

    const ComplexMatrix ones = block_hamiltonian(t, s, inst, c, SectorLabel::all_ones(2));
    ComplexMatrix xsum(4);
    add_scaled_into(xsum, 1.0, pauli_on(1, Axis::X, 2));
    add_scaled_into(xsum, 1.0, pauli_on(2, Axis::X, 2));
    CHECK(max_abs(ones - (bpart + s.A(t) * (c - 1.0) * xsum)) <= 1e-13);

    const ComplexMatrix zeros = block_hamiltonian(t, s, inst, c, SectorLabel::from_int(0, 2));
    CHECK(max_abs(zeros - (bpart + s.A(t) * (c + 1.0) * xsum)) <= 1e-13);

    // the B part never depends on the sector
    for (int lam = 0; lam < 4; ++lam) {
        const ComplexMatrix blk = block_hamiltonian(t, s, inst, c, SectorLabel::from_int(lam, 2));
        for (int i = 0; i < 4; ++i) CHECK(blk(i, i) == bpart(i, i));
    }
}

TEST_CASE("assembled block diagonal equals the conjugated Hamiltonian") {
    const AnnealSchedule s = default_schedule();
    for (int n : {1, 2}) {
        const ProblemInstance inst = n == 2 ? coef_instance() : random_instance(1, 5u);
        const ComplexMatrix W = build_W(n);
        for (double t : {0.0, 500.0, 1000.0}) {
            const ComplexMatrix H = hamiltonian_at(t, s, inst, DriverKind::ancilla(-0.5));
            const ComplexMatrix conj = matmul(matmul(adjoint(W), H), W);
            const ComplexMatrix assembled = assemble_block_diagonal(t, s, inst, -0.5);
            CHECK(max_abs(conj - assembled) <= 1e-12);
        }
    }
}

TEST_CASE("N=1 assembly is literally blockdiag(H_0, H_1)") {
    ProblemInstance inst = random_instance(1, 9u);
    const AnnealSchedule s = default_schedule();
    const double t = 123.0;
    const ComplexMatrix M = assemble_block_diagonal(t, s, inst, -0.5);
    const ComplexMatrix b0 = block_hamiltonian(t, s, inst, -0.5, SectorLabel::from_int(0, 1));
    const ComplexMatrix b1 = block_hamiltonian(t, s, inst, -0.5, SectorLabel::from_int(1, 1));
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            CHECK(M(r, c) == b0(r, c));
            CHECK(M(2 + r, 2 + c) == b1(r, c));
            CHECK(M(r, 2 + c) == cplx(0.0, 0.0));
            CHECK(M(2 + r, c) == cplx(0.0, 0.0));
        }
}

TEST_CASE("assembly spectrum is the union of block spectra") {
    const ProblemInstance inst = coef_instance();
    const AnnealSchedule s = default_schedule();
    const double t = 400.0;
    const EigenSystem full = hermitian_eigensystem(assemble_block_diagonal(t, s, inst, -0.5), 1e-8);
    std::vector<double> collected;
    for (int lam = 0; lam < 4; ++lam) {
        const EigenSystem blk = hermitian_eigensystem(
            block_hamiltonian(t, s, inst, -0.5, SectorLabel::from_int(lam, 2)), 1e-8);
        collected.insert(collected.end(), blk.values.begin(), blk.values.end());
    }
    std::sort(collected.begin(), collected.end());
    for (size_t i = 0; i < collected.size(); ++i)
        CHECK(full.values[i] == Catch::Approx(collected[i]).margin(1e-10));
}

TEST_CASE("initial states") {
    const StateVector conv = initial_state(DriverKind::conventional(), 2);
    for (const cplx& v : conv) CHECK(v == cplx(0.5, 0.0));

    const StateVector anc = initial_state(DriverKind::ancilla(-0.5), 1);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(anc[0] == cplx(0.0, 0.0));
    CHECK(anc[1].real() == Catch::Approx(r).margin(1e-15));
    CHECK(anc[2].real() == Catch::Approx(r).margin(1e-15));
    CHECK(anc[3] == cplx(0.0, 0.0));

    CHECK_THROWS_AS(initial_state(DriverKind::ancilla(0.5), 1), std::invalid_argument);
    CHECK_THROWS_AS(initial_state(DriverKind::ancilla(0.0), 1), std::invalid_argument);
}

TEST_CASE("initial ancilla state is the H(0) ground state with energy N a (c-1)") {
    const AnnealSchedule s = default_schedule();
    for (int n : {1, 2}) {
        ProblemInstance inst = random_instance(n, 21u + n);
        const double c = -0.5;
        const DriverKind driver = DriverKind::ancilla(c);
        const StateVector psi = initial_state(driver, n);
        const ComplexMatrix H0 = hamiltonian_at(0.0, s, inst, driver);
        const StateVector hpsi = matvec(H0, psi);
        const cplx energy = inner(psi, hpsi);
        CHECK(energy.real() == Catch::Approx(n * s.a * (c - 1.0)).margin(1e-10));
        CHECK(energy.imag() == Catch::Approx(0.0).margin(1e-12));
        // ground and gapped
        const EigenSystem es = hermitian_eigensystem(H0, 1e-8);
        CHECK(energy.real() == Catch::Approx(es.values[0]).margin(1e-9));
        CHECK(es.values[1] - es.values[0] > 1e-6);
    }
}

TEST_CASE("physical marginal on the ancilla register") {
    // |10>: ancilla qubit 1 in |1>, physical qubit 2 in |0>
    StateVector e2(4, cplx(0.0, 0.0));
    e2[2] = 1.0;
    CHECK(physical_marginal(outer(e2), "0") == Catch::Approx(1.0).margin(1e-15));
    CHECK(physical_marginal(outer(e2), "1") == Catch::Approx(0.0).margin(1e-15));

    const ComplexMatrix rho = outer(initial_state(DriverKind::ancilla(-0.5), 1));
    CHECK(physical_marginal(rho, "0") == Catch::Approx(0.5).margin(1e-14));
    CHECK(physical_marginal(rho, "1") == Catch::Approx(0.5).margin(1e-14));
}

TEST_CASE("marginals sum to one and trace violations are flagged") {
    std::mt19937 rng(33u);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    // random diagonal density matrix on the 2-pair register
    ComplexMatrix rho(16);
    double total = 0.0;
    for (int i = 0; i < 16; ++i) {
        rho(i, i) = dist(rng);
        total += rho(i, i).real();
    }
    for (int i = 0; i < 16; ++i) rho(i, i) /= total;

    double sum = 0.0;
    for (const std::string& bits : {"00", "01", "10", "11"}) sum += physical_marginal(rho, bits);
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));

    const std::vector<double> pv = physical_probability_vector(rho, 2);
    CHECK(pv[0] == Catch::Approx(physical_marginal(rho, "00")).margin(1e-14));
    CHECK(pv[3] == Catch::Approx(physical_marginal(rho, "11")).margin(1e-14));

    rho(0, 0) += 1.0;  // break the trace
    CHECK_THROWS_AS(physical_marginal(rho, "00"), numerical_error);
}

TEST_CASE("ground bitstring of the reference instance is 11") {
    CHECK(ground_bitstring(coef_instance()) == "11");
}

TEST_CASE("instance validation") {
    ProblemInstance bad;
    bad.n_vars = 2;
    bad.h = {1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.h = {1.0, 1.0};
    bad.J = {{2, 1, 0.5}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.J = {{1, 2, 0.5}};
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("variable count is capped at six") {
    ProblemInstance big;
    big.n_vars = 7;
    big.h.assign(7, 0.1);
    CHECK_THROWS_AS(big.validate(), std::invalid_argument);
}

TEST_CASE("three-variable register keeps the sector structure") {
    const ProblemInstance inst = random_instance(3, 61u);
    const AnnealSchedule s = default_schedule();
    const double c = -0.8, t = 371.0;
    const ComplexMatrix H = hamiltonian_at(t, s, inst, DriverKind::ancilla(c));
    REQUIRE(H.dim == 64);

    for (int i = 1; i <= 3; ++i) {
        const ComplexMatrix zz =
            matmul(pauli_on(2 * i - 1, Axis::Z, 6), pauli_on(2 * i, Axis::Z, 6));
        CHECK(frobenius_norm(commutator(H, zz)) <= 1e-11);
    }

    const ComplexMatrix W = build_W(3);
    CHECK(max_abs(matmul(matmul(adjoint(W), H), W) - assemble_block_diagonal(t, s, inst, c)) <=
          1e-12);

    const StateVector psi = initial_state(DriverKind::ancilla(c), 3);
    const cplx e = inner(psi, matvec(H, psi));
    const ComplexMatrix bpart = s.B(t) * problem_hamiltonian(inst, Placement::Ancilla);
    const cplx e_b = inner(psi, matvec(bpart, psi));
    CHECK(e.real() - e_b.real() == Catch::Approx(3.0 * s.A(t) * (c - 1.0)).margin(1e-9));
}
