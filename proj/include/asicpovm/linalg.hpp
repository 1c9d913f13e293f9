#pragma once

// Dense complex vectors and matrices, a cyclic-Jacobi Hermitian eigensolver,
// the positive definite inverse square root, and spectral numerical rank.
// Self-contained; sized for desk-scale problems (n up to a few hundred).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace asicpovm::la {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0, 0.0)) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const std::vector<double>& d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    bool all_finite() const {
        for (const auto& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("ComplexMatrix: dimension mismatch in product");
        ComplexMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                cplx aik = a(i, k);
                if (aik == cplx(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

    friend CVector operator*(const ComplexMatrix& a, const CVector& v) {
        if (a.cols_ != v.size())
            throw std::invalid_argument("ComplexMatrix: dimension mismatch in mat-vec");
        CVector out(a.rows_, 0.0);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

private:
    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("ComplexMatrix: shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

/// <u|v> = sum_i conj(u_i) v_i  (conjugate-linear in the first argument).
inline cplx inner(const CVector& u, const CVector& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("inner: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

inline double norm(const CVector& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

/// |v><v|: rank-one Hermitian with trace = |v|^2.
inline ComplexMatrix outer(const CVector& v) {
    ComplexMatrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

struct HermitianEigen {
    std::vector<double> eigenvalues; // ascending
    ComplexMatrix eigenvectors;      // orthonormal columns, matching order
};

/// Cyclic complex Jacobi diagonalization. Deterministic output: ascending
/// eigenvalues, each eigenvector phase-fixed so its largest-modulus entry is
/// real positive. Cap 100 sweeps, convergence when the off-diagonal Frobenius
/// mass drops below 1e-14 * |M|_F.
inline HermitianEigen hermitian_eig(const ComplexMatrix& M, double tol = 1e-9) {
    const std::size_t n = M.rows();
    if (n != M.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
    if (!M.all_finite()) throw std::invalid_argument("hermitian_eig: non-finite entries");

    double normM = M.frobenius_norm();
    {
        double herm_res = (M - M.adjoint()).frobenius_norm();
        if (herm_res > tol * std::max(normM, 1e-300))
            throw std::invalid_argument("hermitian_eig: input not Hermitian (residual " +
                                        std::to_string(herm_res) + ")");
    }

    ComplexMatrix A = (M + M.adjoint()) * cplx(0.5, 0.0);
    ComplexMatrix V = ComplexMatrix::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(A(i, j));
        return std::sqrt(s);
    };

    const double stop = 1e-14 * std::max(normM, 1e-300);
    bool converged = (n <= 1) || off_norm() <= stop;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                cplx apq = A(p, q);
                double beta = std::abs(apq);
                if (beta <= stop / (double(n) * double(n))) continue;
                cplx phase = apq / beta; // e^{i phi}
                double app = A(p, p).real();
                double aqq = A(q, q).real();
                double tau = (app - aqq) / (2.0 * beta);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                cplx sp = s * phase;        // s * e^{i phi}
                cplx spc = std::conj(sp);   // s * e^{-i phi}

                // A <- J* A J; J differs from I only at (p,p),(p,q),(q,p),(q,q):
                // J_pp = c, J_pq = -s e^{i phi}, J_qp = s e^{-i phi}, J_qq = c.
                for (std::size_t k = 0; k < n; ++k) {
                    cplx akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp + spc * akq;
                    A(k, q) = -sp * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    cplx apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk + sp * aqk;
                    A(q, k) = -spc * apk + c * aqk;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                A(p, p) = cplx(A(p, p).real(), 0.0);
                A(q, q) = cplx(A(q, q).real(), 0.0);
                for (std::size_t k = 0; k < n; ++k) {
                    cplx vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp + spc * vkq;
                    V(k, q) = -sp * vkp + c * vkq;
                }
            }
        }
        converged = off_norm() <= stop;
    }
    if (!converged)
        throw std::runtime_error("hermitian_eig: no convergence within 100 sweeps");

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = A(i, i).real();
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });

    HermitianEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t src = perm[j];
        out.eigenvalues[j] = diag[src];
        // phase convention: largest-modulus entry real positive
        std::size_t imax = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            double m = std::abs(V(i, src));
            if (m > best + 1e-15) {
                best = m;
                imax = i;
            }
        }
        cplx ph(1.0, 0.0);
        if (best > 0.0) {
            cplx top = V(imax, src);
            if (std::abs(top) > 0.0) ph = std::conj(top) / std::abs(top);
        }
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = V(i, src) * ph;
    }
    return out;
}

/// V f(Lambda) V* for a Hermitian input.
template <typename F>
inline ComplexMatrix hermitian_function(const HermitianEigen& eig, F&& f) {
    const std::size_t n = eig.eigenvalues.size();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        double fk = f(eig.eigenvalues[k]);
        if (fk == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            cplx vik = eig.eigenvectors(i, k) * fk;
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
        }
    }
    return out;
}

/// M^{-1/2} for Hermitian positive definite M (min eigenvalue must exceed tol).
inline ComplexMatrix inv_sqrt_psd(const ComplexMatrix& M, double tol = 1e-9) {
    auto eig = hermitian_eig(M, tol);
    double lam_min = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
    if (lam_min <= tol)
        throw std::domain_error("inv_sqrt_psd: matrix not positive definite (min eigenvalue " +
                                std::to_string(lam_min) + ")");
    ComplexMatrix r = hermitian_function(eig, [](double x) { return 1.0 / std::sqrt(x); });
    return (r + r.adjoint()) * cplx(0.5, 0.0);
}

/// Number of eigenvalues of M*M exceeding tol * max_eigenvalue(M*M);
/// tol < 0 selects the default spectral cutoff n * machine epsilon.
inline std::size_t numerical_rank(const ComplexMatrix& M, double tol = -1.0) {
    if (M.rows() == 0 || M.cols() == 0) return 0;
    ComplexMatrix H = M.adjoint() * M;
    auto eig = hermitian_eig(H, 1e-6);
    double lam_max = 0.0;
    for (double l : eig.eigenvalues) lam_max = std::max(lam_max, l);
    if (lam_max <= 0.0) return 0;
    double rel = tol < 0.0
                     ? static_cast<double>(std::max(M.rows(), M.cols())) *
                           std::numeric_limits<double>::epsilon()
                     : tol;
    double thr = rel * lam_max;
    std::size_t rank = 0;
    for (double l : eig.eigenvalues)
        if (l > thr) ++rank;
    return rank;
}

} // namespace asicpovm::la
