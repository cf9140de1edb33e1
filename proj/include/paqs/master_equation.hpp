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

#include "paqs/bath.hpp"
#include "paqs/eigensystem.hpp"
#include "paqs/model.hpp"

namespace paqs {

namespace detail {

inline constexpr double kElementPruneTol = 1e-14;

// C = A * B with A real, both row-major n x n.
inline void mm_real_cplx(int n, const double* A, const cplx* B, cplx* C) {
    std::fill(C, C + static_cast<size_t>(n) * n, cplx(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        const double* arow = A + static_cast<size_t>(i) * n;
        cplx* crow = C + static_cast<size_t>(i) * n;
        for (int k = 0; k < n; ++k) {
            const double aik = arow[k];
            if (aik == 0.0) continue;
            const cplx* brow = B + static_cast<size_t>(k) * n;
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
}

// C = A * B with B real.
inline void mm_cplx_real(int n, const cplx* A, const double* B, cplx* C) {
    std::fill(C, C + static_cast<size_t>(n) * n, cplx(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        const cplx* arow = A + static_cast<size_t>(i) * n;
        cplx* crow = C + static_cast<size_t>(i) * n;
        for (int k = 0; k < n; ++k) {
            const cplx aik = arow[k];
            if (aik == cplx(0.0, 0.0)) continue;
            const double* brow = B + static_cast<size_t>(k) * n;
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
}

inline void mm_real_real(int n, const double* A, const double* B, double* C) {
    std::fill(C, C + static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* arow = A + static_cast<size_t>(i) * n;
        double* crow = C + static_cast<size_t>(i) * n;
        for (int k = 0; k < n; ++k) {
            const double aik = arow[k];
            if (aik == 0.0) continue;
            const double* brow = B + static_cast<size_t>(k) * n;
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
}

}  // namespace detail

/// One spectrally resolved jump operator A_{alpha,omega}(t) kept sparse in the
/// instantaneous eigenbasis: elements v_ab = <E_a| C_alpha |E_b> for ordered
/// pairs (a, b) in the omega bin.
struct JumpTerm {
    Axis axis = Axis::Z;
    double omega = 0.0;
    double rate = 0.0;
    struct Element {
        int a, b;
        cplx v;
    };
    std::vector<Element> elements;  // sorted by (a, b)
};

struct LindbladEntry {
    Axis axis = Axis::Z;
    double omega = 0.0;
    double rate = 0.0;
    ComplexMatrix op;  // original-basis A_{alpha,omega}(t)
};

struct LindbladSet {
    double t = 0.0;
    std::vector<LindbladEntry> entries;
};

struct GeneratorScratch {
    ComplexMatrix t1, t2, t3, t4;
    void resize(int d) {
        if (t1.dim != d) {
            t1 = ComplexMatrix(d);
            t2 = ComplexMatrix(d);
            t3 = ComplexMatrix(d);
            t4 = ComplexMatrix(d);
        }
    }
};

/// Generator of the adiabatic master equation frozen at one time:
///   L[rho] = -i[H, rho] + sum_{alpha,omega} gamma(omega)
///            (A rho A^dag - 1/2 {A^dag A, rho}).
/// Work happens in the instantaneous eigenbasis, where the commutator is
/// elementwise and each jump operator touches only its bin's matrix elements.
class PreparedGenerator {
public:
    PreparedGenerator() = default;

    int dim() const { return d_; }
    double time() const { return t_; }
    const EigenSystem& eigensystem() const { return es_; }

    void apply_into(const ComplexMatrix& rho, ComplexMatrix& out, GeneratorScratch& ws) const {
        eval(rho, out, ws, true);
    }

    /// Dissipator part only (no -i[H, rho]).
    void dissipator_into(const ComplexMatrix& rho, ComplexMatrix& out, GeneratorScratch& ws) const {
        eval(rho, out, ws, false);
    }

    ComplexMatrix apply(const ComplexMatrix& rho) const {
        GeneratorScratch ws;
        ComplexMatrix out(d_);
        apply_into(rho, out, ws);
        return out;
    }

    ComplexMatrix dissipator(const ComplexMatrix& rho) const {
        GeneratorScratch ws;
        ComplexMatrix out(d_);
        dissipator_into(rho, out, ws);
        return out;
    }

    /// Materialize the jump operators back in the original basis.
    LindbladSet lindblad_set() const {
        LindbladSet set;
        set.t = t_;
        for (const JumpTerm& term : terms_) {
            ComplexMatrix sparse(d_);
            for (const JumpTerm::Element& el : term.elements) sparse(el.a, el.b) = el.v;
            LindbladEntry entry;
            entry.axis = term.axis;
            entry.omega = term.omega;
            entry.rate = term.rate;
            entry.op = matmul(matmul(es_.vectors, sparse), adjoint(es_.vectors));
            set.entries.push_back(std::move(entry));
        }
        return set;
    }

    const std::vector<JumpTerm>& terms() const { return terms_; }

private:
    friend class LindbladModel;

    void eval(const ComplexMatrix& rho, ComplexMatrix& out, GeneratorScratch& ws,
              bool with_hamiltonian) const {
        if (rho.dim != d_) throw std::invalid_argument("PreparedGenerator: state dimension mismatch");
        if (out.dim != d_) out = ComplexMatrix(d_);
        ws.resize(d_);
        const int n = d_;

        // no couplings: plain von Neumann term, no eigenbasis needed
        if (commutator_only_) {
            if (!with_hamiltonian) {
                std::fill(out.a.begin(), out.a.end(), cplx(0.0, 0.0));
                return;
            }
            if (real_basis_) {
                detail::mm_real_cplx(n, h_re_.data(), rho.a.data(), ws.t1.a.data());
                detail::mm_cplx_real(n, rho.a.data(), h_re_.data(), ws.t2.a.data());
            } else {
                matmul_into(h_c_, rho, ws.t1);
                matmul_into(rho, h_c_, ws.t2);
            }
            for (size_t k = 0; k < out.a.size(); ++k)
                out.a[k] = cplx(0.0, -1.0) * (ws.t1.a[k] - ws.t2.a[k]);
            return;
        }
        ComplexMatrix& rho_eig = ws.t1;
        ComplexMatrix& acc = ws.t2;
        ComplexMatrix& tmp = ws.t3;

        // into the eigenbasis
        if (real_basis_) {
            detail::mm_real_cplx(n, vt_re_.data(), rho.a.data(), tmp.a.data());
            detail::mm_cplx_real(n, tmp.a.data(), v_re_.data(), rho_eig.a.data());
        } else {
            matmul_into(vdag_c_, rho, tmp);
            matmul_into(tmp, es_.vectors, rho_eig);
        }

        // -i (E_a - E_b) rho_ab, elementwise in the eigenbasis
        if (with_hamiltonian) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    acc(i, j) = cplx(0.0, -1.0) * (es_.values[i] - es_.values[j]) * rho_eig(i, j);
        } else {
            std::fill(acc.a.begin(), acc.a.end(), cplx(0.0, 0.0));
        }

        // jump part: gamma * A rho A^dag, bin by bin
        for (const JumpTerm& term : terms_) {
            for (const JumpTerm::Element& e1 : term.elements) {
                const cplx w1 = term.rate * e1.v;
                for (const JumpTerm::Element& e2 : term.elements)
                    acc(e1.a, e2.a) += w1 * std::conj(e2.v) * rho_eig(e1.b, e2.b);
            }
        }

        // -1/2 {A^dag A, rho} accumulated as -(Gh rho + rho Gh)
        if (has_dissipator_) {
            ComplexMatrix& tmp2 = ws.t4;
            if (real_basis_) {
                detail::mm_real_cplx(n, ghalf_re_.data(), rho_eig.a.data(), tmp.a.data());
                detail::mm_cplx_real(n, rho_eig.a.data(), ghalf_re_.data(), tmp2.a.data());
            } else {
                matmul_into(ghalf_c_, rho_eig, tmp);
                matmul_into(rho_eig, ghalf_c_, tmp2);
            }
            for (size_t k = 0; k < acc.a.size(); ++k) acc.a[k] -= tmp.a[k] + tmp2.a[k];
        }

        // back to the original basis
        if (real_basis_) {
            detail::mm_real_cplx(n, v_re_.data(), acc.a.data(), tmp.a.data());
            detail::mm_cplx_real(n, tmp.a.data(), vt_re_.data(), out.a.data());
        } else {
            matmul_into(es_.vectors, acc, tmp);
            matmul_into(tmp, vdag_c_, out);
        }
    }

    int d_ = 0;
    double t_ = 0.0;
    bool real_basis_ = false;
    bool has_dissipator_ = false;
    bool commutator_only_ = false;
    EigenSystem es_;
    std::vector<double> v_re_, vt_re_;  // eigenvector matrix and transpose (real path)
    ComplexMatrix vdag_c_;              // complex path
    std::vector<double> h_re_;          // commutator-only mode keeps H directly
    ComplexMatrix h_c_;
    std::vector<double> ghalf_re_;      // 1/2 sum gamma A^dag A in the eigenbasis
    ComplexMatrix ghalf_c_;
    std::vector<JumpTerm> terms_;
};

/// Time-dependent open system H(t) = A(t) D + B(t) P with collective bath
/// couplings. Covers both the full register (conventional or ancilla driver)
/// and the reduced all-ones-sector dynamics.
class LindbladModel {
public:
    struct CouplingOp {
        Axis axis;
        ComplexMatrix op;
    };

    LindbladModel() = default;

    /// Generic assembly: H(t) = A(t) driver_part + B(t) problem_part with the
    /// given collective coupling operators against one common Ohmic bath.
    LindbladModel(const AnnealSchedule& sched, ComplexMatrix driver_part,
                  ComplexMatrix problem_part, std::vector<CouplingOp> couplings, double beta,
                  double eta, double omega_c, double gap_tol)
        : sched_(sched),
          beta_(beta),
          eta_(eta),
          omega_c_(omega_c),
          gap_tol_(gap_tol),
          driver_part_(std::move(driver_part)),
          problem_part_(std::move(problem_part)),
          couplings_(std::move(couplings)) {
        sched_.validate();
        check_same_dim(driver_part_, problem_part_, "LindbladModel");
        for (const CouplingOp& c : couplings_) check_same_dim(driver_part_, c.op, "LindbladModel");
        if (!(beta_ > 0.0) || !(eta_ > 0.0) || !(omega_c_ > 0.0))
            throw std::invalid_argument("LindbladModel: beta, eta, omega_c must be positive");
        if (!(gap_tol_ > 0.0)) throw std::invalid_argument("LindbladModel: gap_tol must be positive");
        finalize();
    }

    static LindbladModel full_register(const AnnealSchedule& sched, const ProblemInstance& inst,
                                       const DriverKind& driver, const BathConfig& bath,
                                       double gap_tol) {
        sched.validate();
        inst.validate();
        const int qubits = driver.register_size(inst.n_vars);
        bath.validate(qubits);
        LindbladModel m;
        m.sched_ = sched;
        m.beta_ = bath.beta;
        m.eta_ = bath.eta;
        m.omega_c_ = bath.omega_c;
        m.gap_tol_ = gap_tol;
        m.driver_part_ = driver_matrix(inst.n_vars, driver);
        m.problem_part_ = problem_hamiltonian(inst, driver.placement());
        for (Axis axis : {Axis::Z, Axis::X}) {
            ComplexMatrix C = collective_coupling(axis, bath, driver, inst.n_vars);
            if (max_abs(C) > 0.0) m.couplings_.push_back({axis, std::move(C)});
        }
        m.finalize();
        return m;
    }

    /// Appendix-style reduction to the all-ones sector: system is the sector
    /// Hamiltonian on N physical qubits, the bath couples through
    /// sum_i (g^z_{2i} - g^z_{2i-1}) sigma_i^z. Longitudinal couplings only.
    static LindbladModel reduced_sector(const AnnealSchedule& sched, const ProblemInstance& inst,
                                        double c, const BathConfig& bath, double gap_tol) {
        sched.validate();
        inst.validate();
        const int n = inst.n_vars;
        bath.validate(2 * n);
        for (double g : bath.gx)
            if (g != 0.0)
                throw std::invalid_argument(
                    "reduced_sector: transversal couplings must vanish for the sector reduction");
        LindbladModel m;
        m.sched_ = sched;
        m.beta_ = bath.beta;
        m.eta_ = bath.eta;
        m.omega_c_ = bath.omega_c;
        m.gap_tol_ = gap_tol;
        const int dim = 1 << n;
        m.driver_part_ = ComplexMatrix(dim);
        for (int i = 1; i <= n; ++i)
            add_scaled_into(m.driver_part_, c + sector_sign(1), pauli_on(i, Axis::X, n));
        m.problem_part_ = problem_hamiltonian(inst, Placement::Conventional);
        ComplexMatrix C(dim);
        for (int i = 1; i <= n; ++i) {
            const double delta = bath.gz[2 * i - 1] - bath.gz[2 * i - 2];
            if (delta != 0.0) add_scaled_into(C, delta, pauli_on(i, Axis::Z, n));
        }
        if (max_abs(C) > 0.0) m.couplings_.push_back({Axis::Z, std::move(C)});
        m.finalize();
        return m;
    }

    int dim() const { return driver_part_.dim; }
    const std::vector<CouplingOp>& couplings() const { return couplings_; }
    const AnnealSchedule& schedule() const { return sched_; }
    double gap_tol() const { return gap_tol_; }
    bool has_dissipator() const { return !couplings_.empty(); }

    ComplexMatrix hamiltonian(double t) const {
        detail::check_time(t, sched_);
        ComplexMatrix H = sched_.A(t) * driver_part_;
        add_scaled_into(H, sched_.B(t), problem_part_);
        return H;
    }

    PreparedGenerator prepare(double t) const {
        detail::check_time(t, sched_);
        PreparedGenerator g;
        g.d_ = dim();
        g.t_ = t;
        g.real_basis_ = real_path_;
        g.has_dissipator_ = false;
        const int n = g.d_;
        const double At = sched_.A(t), Bt = sched_.B(t);

        if (couplings_.empty()) {
            g.commutator_only_ = true;
            if (real_path_) {
                g.h_re_.resize(static_cast<size_t>(n) * n);
                for (size_t k = 0; k < g.h_re_.size(); ++k)
                    g.h_re_[k] = At * d_re_[k] + Bt * p_re_[k];
            } else {
                g.h_c_ = hamiltonian(t);
            }
            return g;
        }

        std::vector<std::vector<double>> coupling_eig_re;  // V^T C V per coupling (real path)
        std::vector<ComplexMatrix> coupling_eig_c;

        if (real_path_) {
            std::vector<double> A(static_cast<size_t>(n) * n);
            for (size_t k = 0; k < A.size(); ++k) A[k] = At * d_re_[k] + Bt * p_re_[k];
            std::vector<double> V;
            detail::jacobi_real(n, A, V);
            std::vector<double> raw(n);
            for (int i = 0; i < n; ++i) raw[i] = A[static_cast<size_t>(i) * n + i];
            const std::vector<int> order = detail::ascending_order(raw);
            g.es_.values.resize(n);
            g.v_re_.resize(static_cast<size_t>(n) * n);
            g.vt_re_.resize(static_cast<size_t>(n) * n);
            for (int c = 0; c < n; ++c) {
                g.es_.values[c] = raw[order[c]];
                for (int r = 0; r < n; ++r) {
                    const double v = V[static_cast<size_t>(r) * n + order[c]];
                    g.v_re_[static_cast<size_t>(r) * n + c] = v;
                    g.vt_re_[static_cast<size_t>(c) * n + r] = v;
                }
            }
            g.es_.vectors = ComplexMatrix(n);
            for (size_t k = 0; k < g.v_re_.size(); ++k) g.es_.vectors.a[k] = g.v_re_[k];
            std::vector<double> tmp(static_cast<size_t>(n) * n), res(static_cast<size_t>(n) * n);
            for (const std::vector<double>& c_re : c_re_) {
                detail::mm_real_real(n, g.vt_re_.data(), c_re.data(), tmp.data());
                detail::mm_real_real(n, tmp.data(), g.v_re_.data(), res.data());
                coupling_eig_re.push_back(res);
            }
        } else {
            const ComplexMatrix H = hamiltonian(t);
            EigenSystem es = hermitian_eigensystem(H, gap_tol_);
            g.es_.values = es.values;
            g.es_.vectors = es.vectors;
            g.vdag_c_ = adjoint(g.es_.vectors);
            for (const CouplingOp& c : couplings_)
                coupling_eig_c.push_back(matmul(matmul(g.vdag_c_, c.op), g.es_.vectors));
        }

        g.es_.bins = make_gap_bins(g.es_.values, gap_tol_);

        // spectrally resolved jump operators, elements pruned below 1e-14
        for (size_t ci = 0; ci < couplings_.size(); ++ci) {
            auto element_at = [&](int a, int b) -> cplx {
                if (real_path_) return coupling_eig_re[ci][static_cast<size_t>(a) * n + b];
                return coupling_eig_c[ci](a, b);
            };
            for (const GapBin& bin : g.es_.bins) {
                JumpTerm term;
                term.axis = couplings_[ci].axis;
                term.omega = bin.omega;
                term.rate = bath_gamma(bin.omega, beta_, eta_, omega_c_);
                for (const auto& [a, b] : bin.pairs) {
                    const cplx v = element_at(a, b);
                    if (std::abs(v) > detail::kElementPruneTol) term.elements.push_back({a, b, v});
                }
                if (!term.elements.empty() && term.rate > 0.0) {
                    std::sort(term.elements.begin(), term.elements.end(),
                              [](const JumpTerm::Element& x, const JumpTerm::Element& y) {
                                  return x.a != y.a ? x.a < y.a : x.b < y.b;
                              });
                    g.terms_.push_back(std::move(term));
                }
            }
        }

        // Gh = 1/2 sum_terms gamma A^dag A, assembled from the sparse elements
        if (!g.terms_.empty()) {
            g.has_dissipator_ = true;
            if (real_path_) {
                g.ghalf_re_.assign(static_cast<size_t>(n) * n, 0.0);
            } else {
                g.ghalf_c_ = ComplexMatrix(n);
            }
            for (const JumpTerm& term : g.terms_) {
                size_t lo = 0;
                while (lo < term.elements.size()) {
                    size_t hi = lo;
                    while (hi < term.elements.size() && term.elements[hi].a == term.elements[lo].a)
                        ++hi;
                    for (size_t p = lo; p < hi; ++p)
                        for (size_t q = lo; q < hi; ++q) {
                            const cplx val = 0.5 * term.rate * std::conj(term.elements[p].v) *
                                             term.elements[q].v;
                            if (real_path_)
                                g.ghalf_re_[static_cast<size_t>(term.elements[p].b) * n +
                                            term.elements[q].b] += val.real();
                            else
                                g.ghalf_c_(term.elements[p].b, term.elements[q].b) += val;
                        }
                    lo = hi;
                }
            }
        }
        return g;
    }

private:
    void finalize() {
        real_path_ = is_real(driver_part_) && is_real(problem_part_);
        for (const CouplingOp& c : couplings_) real_path_ = real_path_ && is_real(c.op);
        if (!real_path_) return;
        const int n = dim();
        d_re_.resize(static_cast<size_t>(n) * n);
        p_re_.resize(static_cast<size_t>(n) * n);
        for (size_t k = 0; k < d_re_.size(); ++k) {
            d_re_[k] = driver_part_.a[k].real();
            p_re_[k] = problem_part_.a[k].real();
        }
        for (const CouplingOp& c : couplings_) {
            std::vector<double> buf(static_cast<size_t>(n) * n);
            for (size_t k = 0; k < buf.size(); ++k) buf[k] = c.op.a[k].real();
            c_re_.push_back(std::move(buf));
        }
    }

    AnnealSchedule sched_;
    double beta_ = 0.0, eta_ = 0.0, omega_c_ = 0.0, gap_tol_ = 1e-8;
    ComplexMatrix driver_part_, problem_part_;
    std::vector<CouplingOp> couplings_;
    bool real_path_ = false;
    std::vector<double> d_re_, p_re_;
    std::vector<std::vector<double>> c_re_;
};

inline LindbladSet lindblad_operators(double t, const AnnealSchedule& sched,
                                      const ProblemInstance& inst, const DriverKind& driver,
                                      const BathConfig& bath, double gap_tol) {
    return LindbladModel::full_register(sched, inst, driver, bath, gap_tol).prepare(t).lindblad_set();
}

namespace detail {

inline void check_density_matrix(const ComplexMatrix& rho, int dim, const char* what) {
    if (rho.dim != dim)
        throw std::invalid_argument(std::string(what) + ": state dimension mismatch");
    if (adjoint_deviation(rho) > 1e-6)
        throw std::invalid_argument(std::string(what) + ": state is not self-adjoint");
    if (std::abs(trace(rho) - cplx(1.0, 0.0)) > 1e-6)
        throw std::invalid_argument(std::string(what) + ": state trace deviates from 1");
}

}  // namespace detail

/// d rho / dt of the full-register adiabatic master equation at time t.
inline ComplexMatrix liouvillian_apply(double t, const ComplexMatrix& rho,
                                       const AnnealSchedule& sched, const ProblemInstance& inst,
                                       const DriverKind& driver, const BathConfig& bath,
                                       double gap_tol) {
    const LindbladModel model = LindbladModel::full_register(sched, inst, driver, bath, gap_tol);
    detail::check_density_matrix(rho, model.dim(), "liouvillian_apply");
    return model.prepare(t).apply(rho);
}

/// d rho / dt of the reduced all-ones-sector master equation at time t.
inline ComplexMatrix reduced_liouvillian_apply(double t, const ComplexMatrix& rho_sector,
                                               const AnnealSchedule& sched,
                                               const ProblemInstance& inst, double c,
                                               const BathConfig& bath, double gap_tol) {
    const LindbladModel model = LindbladModel::reduced_sector(sched, inst, c, bath, gap_tol);
    detail::check_density_matrix(rho_sector, model.dim(), "reduced_liouvillian_apply");
    return model.prepare(t).apply(rho_sector);
}

}  // namespace paqs
