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

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace paqs {

using cplx = std::complex<double>;
using StateVector = std::vector<cplx>;

/// Thrown when an integrator or eigensolver leaves its validity envelope.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxQubits = 12;
inline constexpr int kMaxDim = 1 << kMaxQubits;

/// Dense square complex matrix, row-major.
struct ComplexMatrix {
    int dim = 0;
    std::vector<cplx> a;

    ComplexMatrix() = default;
    explicit ComplexMatrix(int n) : dim(n), a(static_cast<size_t>(n) * n) {}

    cplx& operator()(int i, int j) { return a[static_cast<size_t>(i) * dim + j]; }
    const cplx& operator()(int i, int j) const { return a[static_cast<size_t>(i) * dim + j]; }

    static ComplexMatrix zero(int n) { return ComplexMatrix(n); }
    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline void check_same_dim(const ComplexMatrix& A, const ComplexMatrix& B, const char* what) {
    if (A.dim != B.dim)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(A.dim) + " vs " + std::to_string(B.dim) + ")");
}

inline ComplexMatrix operator+(const ComplexMatrix& A, const ComplexMatrix& B) {
    check_same_dim(A, B, "operator+");
    ComplexMatrix C(A.dim);
    for (size_t k = 0; k < A.a.size(); ++k) C.a[k] = A.a[k] + B.a[k];
    return C;
}

inline ComplexMatrix operator-(const ComplexMatrix& A, const ComplexMatrix& B) {
    check_same_dim(A, B, "operator-");
    ComplexMatrix C(A.dim);
    for (size_t k = 0; k < A.a.size(); ++k) C.a[k] = A.a[k] - B.a[k];
    return C;
}

inline ComplexMatrix operator*(cplx s, const ComplexMatrix& A) {
    ComplexMatrix C(A.dim);
    for (size_t k = 0; k < A.a.size(); ++k) C.a[k] = s * A.a[k];
    return C;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& A) { return cplx(s, 0.0) * A; }

inline void add_scaled_into(ComplexMatrix& Y, cplx s, const ComplexMatrix& X) {
    for (size_t k = 0; k < Y.a.size(); ++k) Y.a[k] += s * X.a[k];
}

inline ComplexMatrix adjoint(const ComplexMatrix& A) {
    ComplexMatrix C(A.dim);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) C(j, i) = std::conj(A(i, j));
    return C;
}

inline void matmul_into(const ComplexMatrix& A, const ComplexMatrix& B, ComplexMatrix& C) {
    const int n = A.dim;
    std::fill(C.a.begin(), C.a.end(), cplx(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        const cplx* arow = &A.a[static_cast<size_t>(i) * n];
        cplx* crow = &C.a[static_cast<size_t>(i) * n];
        for (int k = 0; k < n; ++k) {
            const cplx aik = arow[k];
            if (aik == cplx(0.0, 0.0)) continue;
            const cplx* brow = &B.a[static_cast<size_t>(k) * n];
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
}

inline ComplexMatrix matmul(const ComplexMatrix& A, const ComplexMatrix& B) {
    check_same_dim(A, B, "matmul");
    ComplexMatrix C(A.dim);
    matmul_into(A, B, C);
    return C;
}

inline ComplexMatrix commutator(const ComplexMatrix& A, const ComplexMatrix& B) {
    return matmul(A, B) - matmul(B, A);
}

inline cplx trace(const ComplexMatrix& A) {
    cplx t = 0.0;
    for (int i = 0; i < A.dim; ++i) t += A(i, i);
    return t;
}

inline double frobenius_norm(const ComplexMatrix& A) {
    double s = 0.0;
    for (const cplx& v : A.a) s += std::norm(v);
    return std::sqrt(s);
}

inline double max_abs(const ComplexMatrix& A) {
    double m = 0.0;
    for (const cplx& v : A.a) m = std::max(m, std::abs(v));
    return m;
}

/// max entrywise |M - M^dagger|
inline double adjoint_deviation(const ComplexMatrix& A) {
    double m = 0.0;
    for (int i = 0; i < A.dim; ++i)
        for (int j = i; j < A.dim; ++j)
            m = std::max(m, std::abs(A(i, j) - std::conj(A(j, i))));
    return m;
}

inline bool is_real(const ComplexMatrix& A) {
    for (const cplx& v : A.a)
        if (v.imag() != 0.0) return false;
    return true;
}

/// Kronecker product. dim(C) = dim(A) * dim(B); guarded by the register cap.
inline ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B) {
    const long long nd = static_cast<long long>(A.dim) * B.dim;
    if (nd > kMaxDim)
        throw std::invalid_argument("kron: result dimension " + std::to_string(nd) +
                                    " exceeds cap " + std::to_string(kMaxDim));
    ComplexMatrix C(static_cast<int>(nd));
    for (int ia = 0; ia < A.dim; ++ia)
        for (int ja = 0; ja < A.dim; ++ja) {
            const cplx v = A(ia, ja);
            if (v == cplx(0.0, 0.0)) continue;
            for (int ib = 0; ib < B.dim; ++ib)
                for (int jb = 0; jb < B.dim; ++jb)
                    C(ia * B.dim + ib, ja * B.dim + jb) = v * B(ib, jb);
        }
    return C;
}

enum class Axis { X, Y, Z };

inline char axis_name(Axis a) {
    switch (a) {
        case Axis::X: return 'x';
        case Axis::Y: return 'y';
        default: return 'z';
    }
}

/// Pauli operator on one site of an n-qubit register.
/// Site 1 is the leftmost tensor factor (most significant bit).
inline ComplexMatrix pauli_on(int site, Axis axis, int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::invalid_argument("pauli_on: n_qubits must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(n_qubits));
    if (site < 1 || site > n_qubits)
        throw std::invalid_argument("pauli_on: site " + std::to_string(site) +
                                    " out of range for " + std::to_string(n_qubits) + " qubits");
    const int dim = 1 << n_qubits;
    const int mask = 1 << (n_qubits - site);
    ComplexMatrix M(dim);
    for (int col = 0; col < dim; ++col) {
        const bool bit = (col & mask) != 0;
        switch (axis) {
            case Axis::Z: M(col, col) = bit ? -1.0 : 1.0; break;
            case Axis::X: M(col ^ mask, col) = 1.0; break;
            case Axis::Y: M(col ^ mask, col) = bit ? cplx(0.0, -1.0) : cplx(0.0, 1.0); break;
        }
    }
    return M;
}

// ---- state-vector helpers ----

inline double vec_norm(const StateVector& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

inline void matvec_into(const ComplexMatrix& A, const StateVector& x, StateVector& y) {
    const int n = A.dim;
    for (int i = 0; i < n; ++i) {
        cplx acc = 0.0;
        const cplx* arow = &A.a[static_cast<size_t>(i) * n];
        for (int j = 0; j < n; ++j) acc += arow[j] * x[j];
        y[i] = acc;
    }
}

inline StateVector matvec(const ComplexMatrix& A, const StateVector& x) {
    StateVector y(x.size());
    matvec_into(A, x, y);
    return y;
}

inline cplx inner(const StateVector& x, const StateVector& y) {
    cplx s = 0.0;
    for (size_t k = 0; k < x.size(); ++k) s += std::conj(x[k]) * y[k];
    return s;
}

/// |psi><psi|
inline ComplexMatrix outer(const StateVector& psi) {
    ComplexMatrix M(static_cast<int>(psi.size()));
    for (int i = 0; i < M.dim; ++i)
        for (int j = 0; j < M.dim; ++j) M(i, j) = psi[i] * std::conj(psi[j]);
    return M;
}

}  // namespace paqs
