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

#include "paqs/eigensystem.hpp"

using namespace paqs;

namespace {

ComplexMatrix random_hermitian(int n, unsigned seed, bool complex_entries) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix M(n);
    for (cplx& v : M.a) v = complex_entries ? cplx(dist(rng), dist(rng)) : cplx(dist(rng), 0.0);
    return 0.5 * (M + adjoint(M));
}

void check_decomposition(const ComplexMatrix& M, const EigenSystem& es) {
    const int n = M.dim;
    // ascending values
    for (int i = 1; i < n; ++i) CHECK(es.values[i - 1] <= es.values[i]);
    // unitarity
    CHECK(max_abs(matmul(adjoint(es.vectors), es.vectors) - ComplexMatrix::identity(n)) <= 1e-10);
    // residual |MV - V Lambda|
    ComplexMatrix VL = es.vectors;
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) VL(r, c) *= es.values[c];
    const double scale = std::max(1e-30, frobenius_norm(M));
    CHECK(frobenius_norm(matmul(M, es.vectors) - VL) <= 1e-9 * scale);
    // reconstruction
    const ComplexMatrix R = matmul(matmul(es.vectors, [&] {
                                       ComplexMatrix D(n);
                                       for (int i = 0; i < n; ++i) D(i, i) = es.values[i];
                                       return D;
                                   }()),
                                   adjoint(es.vectors));
    double vmax = 0.0;
    for (double v : es.values) vmax = std::max(vmax, std::abs(v));
    CHECK(max_abs(M - R) <= 1e-9 * std::max(1e-30, vmax));
}

void check_bins(const EigenSystem& es, double gap_tol) {
    const int n = static_cast<int>(es.values.size());
    std::vector<int> seen(static_cast<size_t>(n) * n, 0);
    bool zero_bin_found = false;
    for (const GapBin& bin : es.bins) {
        if (bin.zero) {
            zero_bin_found = true;
            CHECK(bin.omega == 0.0);
        }
        for (const auto& [a, b] : bin.pairs) {
            seen[static_cast<size_t>(a) * n + b] += 1;
            CHECK(std::abs(bin.omega - (es.values[b] - es.values[a])) <= gap_tol);
        }
    }
    for (int count : seen) CHECK(count == 1);
    CHECK(zero_bin_found);  // diagonal pairs always produce the omega=0 bin
}

}  // namespace

TEST_CASE("sigma_z eigensystem and gap bins") {
    const EigenSystem es = hermitian_eigensystem(pauli_on(1, Axis::Z, 1), 1e-8);
    REQUIRE(es.values.size() == 2);
    CHECK(es.values[0] == Catch::Approx(-1.0).margin(1e-13));
    CHECK(es.values[1] == Catch::Approx(1.0).margin(1e-13));
    REQUIRE(es.bins.size() == 3);
    CHECK(es.bins[0].omega == Catch::Approx(-2.0).margin(1e-12));
    CHECK(es.bins[1].zero);
    CHECK(es.bins[1].pairs.size() == 2);
    CHECK(es.bins[2].omega == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("pair driver spectrum at c = -1/2") {
    // c sigma^x sigma^x - sigma^y sigma^y has eigenvalues +-(c+1), +-(c-1)
    const double c = -0.5;
    ComplexMatrix H = c * kron(pauli_on(1, Axis::X, 1), pauli_on(1, Axis::X, 1)) -
                      1.0 * kron(pauli_on(1, Axis::Y, 1), pauli_on(1, Axis::Y, 1));
    const EigenSystem es = hermitian_eigensystem(H, 1e-8);
    std::vector<double> expected = {c - 1.0, -(c + 1.0), c + 1.0, -(c - 1.0)};
    std::sort(expected.begin(), expected.end());
    REQUIRE(es.values.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(es.values[i] == Catch::Approx(expected[i]).margin(1e-12));
    check_decomposition(H, es);
}

TEST_CASE("problem diagonal from the reference coefficients") {
    // h = (1, 1/4), J_12 = 1/8; enumeration over the four spin configurations
    const double h2 = 1.0, h4 = 0.25, J = 0.125;
    std::vector<double> diag;
    for (int s2 : {0, 1})
        for (int s4 : {0, 1}) {
            const double z2 = s2 ? -1.0 : 1.0, z4 = s4 ? -1.0 : 1.0;
            diag.push_back(h2 * z2 + h4 * z4 + J * z2 * z4);
        }
    CHECK(diag == std::vector<double>{1.375, 0.625, -0.875, -1.125});

    ComplexMatrix H(4);
    for (int i = 0; i < 4; ++i) H(i, i) = diag[i];
    const EigenSystem es = hermitian_eigensystem(H, 1e-8);
    std::vector<double> expected = diag;
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < 4; ++i) CHECK(es.values[i] == Catch::Approx(expected[i]).margin(1e-13));
}

TEST_CASE("random Hermitian decompositions, real and complex paths") {
    for (int n : {2, 5, 8, 16}) {
        for (bool complex_entries : {false, true}) {
            const ComplexMatrix M = random_hermitian(n, 100u + n, complex_entries);
            const EigenSystem es = hermitian_eigensystem(M, 1e-8);
            check_decomposition(M, es);
            check_bins(es, 1e-8);
        }
    }
}

TEST_CASE("degenerate spectra land in shared bins") {
    // 2 x sigma_z: eigenvalues (-2,-2-ish? no: diag(2,-2)) with a 4-fold structure
    ComplexMatrix H(4);
    H(0, 0) = 1.0;
    H(1, 1) = 1.0;
    H(2, 2) = -1.0;
    H(3, 3) = -1.0;
    const EigenSystem es = hermitian_eigensystem(H, 1e-8);
    REQUIRE(es.bins.size() == 3);
    CHECK(es.bins[1].zero);
    CHECK(es.bins[1].pairs.size() == 8);  // 4 diagonal + 4 within degenerate levels
    CHECK(es.bins[0].pairs.size() == 4);
    CHECK(es.bins[2].pairs.size() == 4);
}

TEST_CASE("non-self-adjoint input is rejected") {
    ComplexMatrix M(2);
    M(0, 1) = 1.0;  // strictly upper entry, no mirror
    CHECK_THROWS_AS(hermitian_eigensystem(M, 1e-8), std::invalid_argument);
}

TEST_CASE("zero matrix decomposes cleanly") {
    const EigenSystem es = hermitian_eigensystem(ComplexMatrix(3), 1e-8);
    for (double v : es.values) CHECK(v == 0.0);
    CHECK(es.bins.size() == 1);
    CHECK(es.bins[0].zero);
}

#ifdef PAQS_TEST_HAVE_EIGEN
#include <Eigen/Eigenvalues>

TEST_CASE("Jacobi eigenvalues agree with an independent dense solver") {
    for (int n : {4, 8, 16, 32, 64}) {
        for (bool complex_entries : {false, true}) {
            const ComplexMatrix M = random_hermitian(n, 500u + n, complex_entries);
            const EigenSystem ours = hermitian_eigensystem(M, 1e-8);

            Eigen::MatrixXcd em(n, n);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) em(r, c) = M(r, c);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em);
            REQUIRE(solver.info() == Eigen::Success);

            double scale = 1.0;
            for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(solver.eigenvalues()[i]));
            for (int i = 0; i < n; ++i)
                CHECK(std::abs(ours.values[i] - solver.eigenvalues()[i]) <= 1e-11 * scale);
        }
    }
}

TEST_CASE("clustered spectra stay accurate") {
    // two tight clusters split by ~1e-12 on top of well separated levels
    ComplexMatrix D(6);
    const double diag[6] = {-2.0, -1.0, -1.0 + 1e-12, 0.5, 0.5 + 2e-12, 3.0};
    for (int i = 0; i < 6; ++i) D(i, i) = diag[i];
    // conjugate by a random unitary built from a Hermitian generator
    const ComplexMatrix G = random_hermitian(6, 77u, true);
    const EigenSystem ges = hermitian_eigensystem(G, 1.0);
    const ComplexMatrix M = matmul(matmul(ges.vectors, D), adjoint(ges.vectors));
    const EigenSystem es = hermitian_eigensystem(0.5 * (M + adjoint(M)), 1e-8);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(es.values[i] - diag[i]) <= 1e-10);
}
#endif
