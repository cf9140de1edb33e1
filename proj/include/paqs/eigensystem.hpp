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

#include <numeric>
#include <utility>

#include "paqs/matrix.hpp"

namespace paqs {

/// One cluster of Bohr frequencies omega_{ba} = E_b - E_a.
/// `pairs` holds the ordered index pairs (a, b) whose gap fell in this bin.
struct GapBin {
    double omega = 0.0;
    bool zero = false;
    std::vector<std::pair<int, int>> pairs;
};

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are eigenvectors
    std::vector<GapBin> bins;
};

namespace detail {

inline constexpr double kJacobiTolFactor = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

// One cyclic-Jacobi pass machinery shared by the real and complex paths.
// Rotation parameters for zeroing a symmetric pivot with |apq| = r (real).
inline void jacobi_cs(double app, double aqq, double r, double& c, double& s, double& t) {
    const double tau = (aqq - app) / (2.0 * r);
    t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                     : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
    c = 1.0 / std::sqrt(1.0 + t * t);
    s = t * c;
}

/// Cyclic Jacobi on a real symmetric matrix (row-major, n*n).
/// On exit A is (numerically) diagonal and V holds the accumulated rotations.
inline void jacobi_real(int n, std::vector<double>& A, std::vector<double>& V) {
    V.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) V[static_cast<size_t>(i) * n + i] = 1.0;
    double frob = 0.0;
    for (double v : A) frob += v * v;
    frob = std::sqrt(frob);
    const double off_target = kJacobiTolFactor * frob;
    if (frob == 0.0) return;
    const double skip_below = off_target / n;

    auto offdiag = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += A[static_cast<size_t>(p) * n + q] * A[static_cast<size_t>(p) * n + q];
        return std::sqrt(2.0 * s);
    };

    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        if (offdiag() <= off_target) return;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A[static_cast<size_t>(p) * n + q];
                if (std::abs(apq) <= skip_below) continue;
                double c, s, t;
                jacobi_cs(A[static_cast<size_t>(p) * n + p], A[static_cast<size_t>(q) * n + q], apq, c, s, t);
                A[static_cast<size_t>(p) * n + p] -= t * apq;
                A[static_cast<size_t>(q) * n + q] += t * apq;
                A[static_cast<size_t>(p) * n + q] = 0.0;
                A[static_cast<size_t>(q) * n + p] = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    double& arp = A[static_cast<size_t>(r) * n + p];
                    double& arq = A[static_cast<size_t>(r) * n + q];
                    const double x = arp, y = arq;
                    arp = c * x - s * y;
                    arq = s * x + c * y;
                    A[static_cast<size_t>(p) * n + r] = arp;
                    A[static_cast<size_t>(q) * n + r] = arq;
                }
                for (int r = 0; r < n; ++r) {
                    double& vrp = V[static_cast<size_t>(r) * n + p];
                    double& vrq = V[static_cast<size_t>(r) * n + q];
                    const double x = vrp, y = vrq;
                    vrp = c * x - s * y;
                    vrq = s * x + c * y;
                }
            }
        }
    }
    throw numerical_error("jacobi_real: no convergence after " +
                          std::to_string(kJacobiMaxSweeps) + " sweeps");
}

/// Cyclic Jacobi on a complex Hermitian matrix. Each pivot is first made real
/// by a diagonal phase, then rotated away as in the real case.
inline void jacobi_complex(int n, std::vector<cplx>& A, std::vector<cplx>& V) {
    V.assign(static_cast<size_t>(n) * n, cplx(0.0, 0.0));
    for (int i = 0; i < n; ++i) V[static_cast<size_t>(i) * n + i] = 1.0;
    double frob = 0.0;
    for (const cplx& v : A) frob += std::norm(v);
    frob = std::sqrt(frob);
    const double off_target = kJacobiTolFactor * frob;
    if (frob == 0.0) return;
    const double skip_below = off_target / n;

    auto offdiag = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += std::norm(A[static_cast<size_t>(p) * n + q]);
        return std::sqrt(2.0 * s);
    };

    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        if (offdiag() <= off_target) return;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = A[static_cast<size_t>(p) * n + q];
                const double r = std::abs(apq);
                if (r <= skip_below) continue;
                // Phase D = diag(..., 1_p, ..., e^{i phi}_q, ...) with A(p,q) e^{i phi} real > 0.
                const cplx phase = std::conj(apq) / r;
                for (int k = 0; k < n; ++k) {
                    A[static_cast<size_t>(k) * n + q] *= phase;
                    V[static_cast<size_t>(k) * n + q] *= phase;
                }
                for (int k = 0; k < n; ++k) A[static_cast<size_t>(q) * n + k] *= std::conj(phase);
                A[static_cast<size_t>(q) * n + q] = cplx(A[static_cast<size_t>(q) * n + q].real(), 0.0);
                double c, s, t;
                jacobi_cs(A[static_cast<size_t>(p) * n + p].real(),
                          A[static_cast<size_t>(q) * n + q].real(), r, c, s, t);
                A[static_cast<size_t>(p) * n + p] -= t * r;
                A[static_cast<size_t>(q) * n + q] += t * r;
                A[static_cast<size_t>(p) * n + q] = 0.0;
                A[static_cast<size_t>(q) * n + p] = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    cplx& akp = A[static_cast<size_t>(k) * n + p];
                    cplx& akq = A[static_cast<size_t>(k) * n + q];
                    const cplx x = akp, y = akq;
                    akp = c * x - s * y;
                    akq = s * x + c * y;
                    A[static_cast<size_t>(p) * n + k] = std::conj(akp);
                    A[static_cast<size_t>(q) * n + k] = std::conj(akq);
                }
                for (int k = 0; k < n; ++k) {
                    cplx& vkp = V[static_cast<size_t>(k) * n + p];
                    cplx& vkq = V[static_cast<size_t>(k) * n + q];
                    const cplx x = vkp, y = vkq;
                    vkp = c * x - s * y;
                    vkq = s * x + c * y;
                }
            }
        }
    }
    throw numerical_error("jacobi_complex: no convergence after " +
                          std::to_string(kJacobiMaxSweeps) + " sweeps");
}

inline std::vector<int> ascending_order(const std::vector<double>& values) {
    std::vector<int> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return values[i] < values[j]; });
    return idx;
}

}  // namespace detail

/// Single-linkage clustering of all ordered-pair gaps omega_{ba} = E_b - E_a.
/// A new bin starts wherever two consecutive sorted gaps differ by more than
/// gap_tol. The bin holding 0 gets omega set to exactly 0.
inline std::vector<GapBin> make_gap_bins(const std::vector<double>& values, double gap_tol) {
    if (gap_tol <= 0.0) throw std::invalid_argument("make_gap_bins: gap_tol must be positive");
    const int d = static_cast<int>(values.size());
    struct Item {
        double w;
        int a, b;
    };
    std::vector<Item> items;
    items.reserve(static_cast<size_t>(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) items.push_back({values[b] - values[a], a, b});
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
        if (x.w != y.w) return x.w < y.w;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });

    std::vector<GapBin> bins;
    for (size_t k = 0; k < items.size(); ++k) {
        if (k == 0 || items[k].w - items[k - 1].w > gap_tol) bins.emplace_back();
        bins.back().pairs.emplace_back(items[k].a, items[k].b);
        bins.back().omega += items[k].w;
    }
    for (GapBin& bin : bins) {
        bin.omega /= static_cast<double>(bin.pairs.size());
        if (std::abs(bin.omega) <= gap_tol) {
            bin.omega = 0.0;
            bin.zero = true;
        }
    }
    return bins;
}

/// Full eigendecomposition of a self-adjoint matrix with gap binning.
/// Cyclic Jacobi; a real-symmetric input takes the all-real path.
inline EigenSystem hermitian_eigensystem(const ComplexMatrix& M, double gap_tol) {
    if (gap_tol <= 0.0)
        throw std::invalid_argument("hermitian_eigensystem: gap_tol must be positive");
    const double herm_tol = 1e-10 * std::max(1.0, max_abs(M));
    if (adjoint_deviation(M) > herm_tol)
        throw std::invalid_argument("hermitian_eigensystem: input is not self-adjoint");

    const int n = M.dim;
    EigenSystem es;
    es.vectors = ComplexMatrix(n);
    std::vector<double> raw_values(n);

    if (is_real(M)) {
        std::vector<double> A(static_cast<size_t>(n) * n), V;
        for (size_t k = 0; k < M.a.size(); ++k) A[k] = M.a[k].real();
        // symmetrize away rounding in the strict lower triangle
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double m = 0.5 * (A[static_cast<size_t>(i) * n + j] + A[static_cast<size_t>(j) * n + i]);
                A[static_cast<size_t>(i) * n + j] = m;
                A[static_cast<size_t>(j) * n + i] = m;
            }
        detail::jacobi_real(n, A, V);
        for (int i = 0; i < n; ++i) raw_values[i] = A[static_cast<size_t>(i) * n + i];
        const std::vector<int> order = detail::ascending_order(raw_values);
        es.values.resize(n);
        for (int c = 0; c < n; ++c) {
            es.values[c] = raw_values[order[c]];
            for (int r = 0; r < n; ++r)
                es.vectors(r, c) = V[static_cast<size_t>(r) * n + order[c]];
        }
    } else {
        std::vector<cplx> A = M.a, V;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const cplx m = 0.5 * (A[static_cast<size_t>(i) * n + j] +
                                      std::conj(A[static_cast<size_t>(j) * n + i]));
                A[static_cast<size_t>(i) * n + j] = m;
                A[static_cast<size_t>(j) * n + i] = std::conj(m);
            }
        detail::jacobi_complex(n, A, V);
        for (int i = 0; i < n; ++i) raw_values[i] = A[static_cast<size_t>(i) * n + i].real();
        const std::vector<int> order = detail::ascending_order(raw_values);
        es.values.resize(n);
        for (int c = 0; c < n; ++c) {
            es.values[c] = raw_values[order[c]];
            for (int r = 0; r < n; ++r)
                es.vectors(r, c) = V[static_cast<size_t>(r) * n + order[c]];
        }
    }

    es.bins = make_gap_bins(es.values, gap_tol);
    return es;
}

}  // namespace paqs
