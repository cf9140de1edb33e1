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

#include "paqs/matrix.hpp"

using namespace paqs;

namespace {

// Independent 2x2 Pauli tables used by the enumeration oracles below.
const cplx kSigma[3][2][2] = {
    {{0.0, 1.0}, {1.0, 0.0}},                                // x
    {{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}},         // y
    {{1.0, 0.0}, {0.0, -1.0}},                               // z
};

// Brute-force 4x4 kron of two single-qubit Paulis, built entry by entry.
ComplexMatrix kron2_oracle(int axis_a, int axis_b) {
    ComplexMatrix M(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            M(r, c) = kSigma[axis_a][r >> 1][c >> 1] * kSigma[axis_b][r & 1][c & 1];
    return M;
}

ComplexMatrix random_matrix(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix M(n);
    for (cplx& v : M.a) v = cplx(dist(rng), dist(rng));
    return M;
}

}  // namespace

TEST_CASE("pauli_on single-qubit z is diag(1,-1)") {
    const ComplexMatrix z = pauli_on(1, Axis::Z, 1);
    CHECK(z(0, 0) == cplx(1.0, 0.0));
    CHECK(z(1, 1) == cplx(-1.0, 0.0));
    CHECK(z(0, 1) == cplx(0.0, 0.0));
    CHECK(z(1, 0) == cplx(0.0, 0.0));
}

TEST_CASE("pauli_on site 2 of 2 is I otimes sigma_x") {
    const ComplexMatrix x2 = pauli_on(2, Axis::X, 2);
    const ComplexMatrix expected = kron(ComplexMatrix::identity(2), pauli_on(1, Axis::X, 1));
    CHECK(max_abs(x2 - expected) == 0.0);
    // antidiagonal inside each 2-block
    CHECK(x2(0, 1) == cplx(1.0, 0.0));
    CHECK(x2(1, 0) == cplx(1.0, 0.0));
    CHECK(x2(2, 3) == cplx(1.0, 0.0));
    CHECK(x2(0, 2) == cplx(0.0, 0.0));
}

TEST_CASE("pauli squares to identity and is traceless self-adjoint") {
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
        const ComplexMatrix p = pauli_on(1, axis, 2);
        CHECK(max_abs(matmul(p, p) - ComplexMatrix::identity(4)) == 0.0);
        CHECK(std::abs(trace(p)) == 0.0);
        CHECK(adjoint_deviation(p) == 0.0);
    }
}

TEST_CASE("pauli_on rejects bad arguments") {
    CHECK_THROWS_AS(pauli_on(0, Axis::X, 2), std::invalid_argument);
    CHECK_THROWS_AS(pauli_on(3, Axis::X, 2), std::invalid_argument);
    CHECK_THROWS_AS(pauli_on(1, Axis::X, 13), std::invalid_argument);
}

TEST_CASE("kron identities") {
    const ComplexMatrix I2 = ComplexMatrix::identity(2);
    CHECK(max_abs(kron(I2, I2) - ComplexMatrix::identity(4)) == 0.0);

    const ComplexMatrix zz = kron(pauli_on(1, Axis::Z, 1), pauli_on(1, Axis::Z, 1));
    CHECK(zz(0, 0) == cplx(1.0, 0.0));
    CHECK(zz(1, 1) == cplx(-1.0, 0.0));
    CHECK(zz(2, 2) == cplx(-1.0, 0.0));
    CHECK(zz(3, 3) == cplx(1.0, 0.0));
}

TEST_CASE("kron(xx) - kron(yy) against entrywise enumeration") {
    const ComplexMatrix got = kron(pauli_on(1, Axis::X, 1), pauli_on(1, Axis::X, 1)) -
                              kron(pauli_on(1, Axis::Y, 1), pauli_on(1, Axis::Y, 1));
    const ComplexMatrix expected = kron2_oracle(0, 0) - kron2_oracle(1, 1);
    CHECK(max_abs(got - expected) == 0.0);
    // couples |00> and |11> with weight 2, leaves |01>,|10> uncoupled
    CHECK(got(0, 3) == cplx(2.0, 0.0));
    CHECK(got(3, 0) == cplx(2.0, 0.0));
    CHECK(got(1, 2) == cplx(0.0, 0.0));
    CHECK(got(2, 1) == cplx(0.0, 0.0));
}

TEST_CASE("kron dimension cap") {
    const ComplexMatrix big = ComplexMatrix::identity(1 << 11);
    CHECK_THROWS_AS(kron(big, ComplexMatrix::identity(4)), std::invalid_argument);
}

TEST_CASE("pauli anticommutation and cross-site commutation") {
    const int n = 3;
    for (int site = 1; site <= n; ++site) {
        const ComplexMatrix x = pauli_on(site, Axis::X, n);
        const ComplexMatrix z = pauli_on(site, Axis::Z, n);
        CHECK(max_abs(matmul(x, z) + matmul(z, x)) <= 1e-14);
    }
    for (Axis a : {Axis::X, Axis::Y, Axis::Z})
        for (Axis b : {Axis::X, Axis::Y, Axis::Z})
            CHECK(max_abs(commutator(pauli_on(1, a, n), pauli_on(3, b, n))) <= 1e-14);
}

TEST_CASE("kron associativity up to reshaping") {
    for (unsigned seed : {7u, 11u, 42u}) {
        const ComplexMatrix A = random_matrix(2, seed);
        const ComplexMatrix B = random_matrix(3, seed + 1);
        const ComplexMatrix C = random_matrix(2, seed + 2);
        CHECK(max_abs(kron(kron(A, B), C) - kron(A, kron(B, C))) <= 1e-14);
    }
}

TEST_CASE("matmul / adjoint / trace basics") {
    const ComplexMatrix A = random_matrix(5, 3u);
    const ComplexMatrix B = random_matrix(5, 4u);
    // (AB)^dag = B^dag A^dag
    CHECK(max_abs(adjoint(matmul(A, B)) - matmul(adjoint(B), adjoint(A))) <= 1e-13);
    // trace cyclicity
    CHECK(std::abs(trace(matmul(A, B)) - trace(matmul(B, A))) <= 1e-13);
}

TEST_CASE("outer product is a rank-1 projector for unit vectors") {
    StateVector v = {0.5, cplx(0.0, 0.5), 0.5, cplx(-0.5, 0.0)};
    const ComplexMatrix P = outer(v);
    CHECK(std::abs(trace(P) - cplx(1.0, 0.0)) <= 1e-14);
    CHECK(max_abs(matmul(P, P) - P) <= 1e-14);
}
