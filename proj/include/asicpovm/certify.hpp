#pragma once

// Certification engine: measures completeness, informational completeness,
// overlap statistics, unbiasedness, frame bounds and explicit overlap bounds
// on vector systems and projector POVMs, and runs the Born-rule tomography
// round trip. Also houses the empirical character/exponential sum evaluators.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "asicpovm/linalg.hpp"
#include "asicpovm/numtheory.hpp"
#include "asicpovm/types.hpp"

namespace asicpovm {

// ---------------------------------------------------------------------------
// scan policy
// ---------------------------------------------------------------------------

struct ScanPolicy {
    std::size_t exhaustive_cap = 4096;     // max vector count for exhaustive pair scans
    std::uint64_t sample_count = 1000000;  // sampled pairs above the cap
    std::uint64_t seed = 0;
};

struct ScanMode {
    bool exhaustive = true;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;

    std::string to_string() const {
        if (exhaustive) return "exhaustive";
        return "sampled(" + std::to_string(sample_count) + "," + std::to_string(seed) + ")";
    }
};

struct OverlapStats {
    double max_sq = 0.0;
    double mean_sq = 0.0;
    std::array<std::uint64_t, 64> histogram{}; // |<.|.>|^2 binned uniformly on [0,1]
    ScanMode mode;
};

namespace detail {

inline std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

inline void record_overlap(OverlapStats& st, double sq, double& accum, std::uint64_t& count) {
    st.max_sq = std::max(st.max_sq, sq);
    accum += sq;
    ++count;
    double clamped = std::min(std::max(sq, 0.0), 1.0);
    std::size_t bin = std::min<std::size_t>(static_cast<std::size_t>(clamped * 64.0), 63);
    ++st.histogram[bin];
}

inline OverlapStats pair_overlap_stats(const std::vector<la::CVector>& vecs,
                                       const ScanPolicy& policy) {
    if (vecs.size() < 2) throw std::invalid_argument("overlap_stats: need at least 2 vectors");
    OverlapStats st;
    double accum = 0.0;
    std::uint64_t count = 0;
    const std::size_t n = vecs.size();
    if (n <= policy.exhaustive_cap) {
        st.mode = ScanMode{true, 0, 0};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                record_overlap(st, std::norm(la::inner(vecs[i], vecs[j])), accum, count);
    } else {
        st.mode = ScanMode{false, policy.sample_count, policy.seed};
        std::mt19937_64 rng(policy.seed);
        while (count < policy.sample_count) {
            std::size_t i = static_cast<std::size_t>(rng() % n);
            std::size_t j = static_cast<std::size_t>(rng() % n);
            if (i == j) continue;
            record_overlap(st, std::norm(la::inner(vecs[i], vecs[j])), accum, count);
        }
    }
    st.mean_sq = count ? accum / static_cast<double>(count) : 0.0;
    return st;
}

inline std::vector<std::size_t> group_of(const VectorSystem& sys) {
    std::vector<std::size_t> gid(sys.size(), static_cast<std::size_t>(-1));
    for (std::size_t g = 0; g < sys.basis_groups.size(); ++g)
        for (std::size_t i : sys.basis_groups[g]) gid[i] = g;
    return gid;
}

} // namespace detail

/// |<psi_i|psi_j>|^2 statistics over i < j for a unit-vector system.
inline OverlapStats overlap_stats(const VectorSystem& sys, const ScanPolicy& policy = {}) {
    return detail::pair_overlap_stats(sys.vectors, policy);
}

/// n^2 tr(E_i E_j) statistics over i < j (equals |<v_i|v_j>|^2 for the
/// stored scaled vectors of a rank-one POVM).
inline OverlapStats overlap_stats(const ProjectorPOVM& povm, const ScanPolicy& policy = {}) {
    return detail::pair_overlap_stats(povm.vectors, policy);
}

// ---------------------------------------------------------------------------
// POVM checks
// ---------------------------------------------------------------------------

/// |sum_i E_i - I|_F.
inline double check_completeness(const ProjectorPOVM& povm) {
    la::ComplexMatrix s = povm.element_sum();
    return (s - la::ComplexMatrix::identity(povm.dim)).frobenius_norm();
}

struct RankCheck {
    std::size_t rank = 0;
    std::size_t required = 0;
    bool complete = false;
};

/// Builds the Gram matrix H_ij = tr(E_i E_j) of the n^2 POVM elements and
/// certifies linear independence by its numerical rank.
inline RankCheck check_informational_completeness(const ProjectorPOVM& povm,
                                                  double rank_tol = -1.0) {
    const std::size_t n2 = povm.dim * povm.dim;
    if (povm.size() != n2)
        throw std::invalid_argument("check_informational_completeness: element count != n^2");
    la::ComplexMatrix gram(n2, n2);
    const double scale = 1.0 / (static_cast<double>(povm.dim) * static_cast<double>(povm.dim));
    for (std::size_t i = 0; i < n2; ++i) {
        for (std::size_t j = i; j < n2; ++j) {
            double t = std::norm(la::inner(povm.vectors[i], povm.vectors[j])) * scale;
            gram(i, j) = t;
            gram(j, i) = t;
        }
    }
    RankCheck rc;
    rc.rank = la::numerical_rank(gram, rank_tol);
    rc.required = n2;
    rc.complete = rc.rank == n2;
    return rc;
}

/// Max over cross-basis pairs of | |<.,.>| - n^{-1/2} |. Requires basis groups.
inline double check_unbiasedness(const VectorSystem& sys) {
    if (sys.basis_groups.empty())
        throw std::invalid_argument("check_unbiasedness: system has no basis groups");
    auto gid = detail::group_of(sys);
    const double ref = 1.0 / std::sqrt(static_cast<double>(sys.dim));
    double max_dev = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i)
        for (std::size_t j = i + 1; j < sys.size(); ++j) {
            if (gid[i] == gid[j]) continue;
            double ov = std::abs(la::inner(sys.vectors[i], sys.vectors[j]));
            max_dev = std::max(max_dev, std::abs(ov - ref));
        }
    return max_dev;
}

struct CrossOverlapExtremes {
    double max_abs = 0.0;
    double min_abs = 1.0;
    std::uint64_t pairs = 0;
};

/// Exhaustive cross-basis overlap extremes (hard-bound checks are never sampled).
inline CrossOverlapExtremes cross_basis_extremes(const VectorSystem& sys) {
    if (sys.basis_groups.empty())
        throw std::invalid_argument("cross_basis_extremes: system has no basis groups");
    auto gid = detail::group_of(sys);
    CrossOverlapExtremes ex;
    for (std::size_t i = 0; i < sys.size(); ++i)
        for (std::size_t j = i + 1; j < sys.size(); ++j) {
            if (gid[i] == gid[j]) continue;
            double ov = std::abs(la::inner(sys.vectors[i], sys.vectors[j]));
            ex.max_abs = std::max(ex.max_abs, ov);
            ex.min_abs = std::min(ex.min_abs, ov);
            ++ex.pairs;
        }
    return ex;
}

// ---------------------------------------------------------------------------
// special bound
// ---------------------------------------------------------------------------

/// k <= n(1-alpha)/(1-n*alpha) for a constant-overlap system of k vectors.
inline double special_bound(std::uint64_t n, double alpha) {
    if (alpha < 0.0 || alpha * static_cast<double>(n) >= 1.0)
        throw std::domain_error("special_bound: requires 0 <= alpha < 1/n");
    double nn = static_cast<double>(n);
    return nn * (1.0 - alpha) / (1.0 - nn * alpha);
}

/// Exact rational evaluation for alpha = num/den; returns an exact double
/// whenever the result fits (alpha = 1/(n+1) gives exactly n^2).
inline double special_bound(std::uint64_t n, std::uint64_t num, std::uint64_t den) {
    if (den == 0 || n * num >= den)
        throw std::domain_error("special_bound: requires 0 <= num/den < 1/n");
    unsigned __int128 numerator = static_cast<unsigned __int128>(n) * (den - num);
    std::uint64_t denominator = den - n * num;
    return static_cast<double>(static_cast<long double>(numerator) /
                               static_cast<long double>(denominator));
}

// ---------------------------------------------------------------------------
// frames and symmetrization
// ---------------------------------------------------------------------------

/// (min, max) eigenvalues of the frame operator sum_i |psi_i><psi_i|.
inline std::pair<double, double> frame_bounds(const VectorSystem& sys) {
    if (sys.vectors.empty()) throw std::invalid_argument("frame_bounds: empty system");
    la::ComplexMatrix g(sys.dim, sys.dim);
    for (const auto& v : sys.vectors) g += la::outer(v);
    auto eig = la::hermitian_eig(g);
    return {eig.eigenvalues.front(), eig.eigenvalues.back()};
}

/// The subnormalized projectors E_i = |psi_i><psi_i|/n with their frame
/// operator G = sum E_i, no symmetrization.
inline ProjectorPOVM raw_povm(const VectorSystem& sys) {
    ProjectorPOVM povm;
    povm.dim = sys.dim;
    povm.kind = ProjectorPOVM::Kind::raw;
    povm.vectors = sys.vectors;
    povm.labels = sys.labels;
    povm.source = sys;
    povm.provenance = sys.provenance;
    povm.frame_operator = povm.element_sum();
    return povm;
}

/// Canonical POVM: F_i = G^{-1/2} E_i G^{-1/2} with G = sum_i E_i positive
/// definite; sum_i F_i = I. Throws if the system does not span C^n.
inline ProjectorPOVM symmetrize_to_povm(const VectorSystem& sys, double pd_tol = 1e-9) {
    ProjectorPOVM povm = raw_povm(sys);
    la::ComplexMatrix half;
    try {
        half = la::inv_sqrt_psd(povm.frame_operator, pd_tol);
    } catch (const std::domain_error& e) {
        throw std::domain_error(std::string("symmetrize_to_povm: system does not span; ") +
                                e.what());
    }
    povm.kind = ProjectorPOVM::Kind::symmetrized;
    povm.symmetrizer = half;
    for (auto& v : povm.vectors) v = half * v;
    double residual = (povm.element_sum() - la::ComplexMatrix::identity(povm.dim)).frobenius_norm();
    if (residual > 1e-10)
        throw std::logic_error("symmetrize_to_povm: completeness residual " +
                               std::to_string(residual));
    return povm;
}

// ---------------------------------------------------------------------------
// Born probabilities and state reconstruction
// ---------------------------------------------------------------------------

/// p_i = tr(rho E_i) for a symmetrized POVM and a density matrix rho.
inline std::vector<double> born_probabilities(const ProjectorPOVM& povm,
                                              const la::ComplexMatrix& rho,
                                              double tol = 1e-9) {
    if (povm.kind != ProjectorPOVM::Kind::symmetrized)
        throw std::invalid_argument("born_probabilities: POVM must be symmetrized");
    if (rho.rows() != povm.dim || rho.cols() != povm.dim)
        throw std::invalid_argument("born_probabilities: dimension mismatch");
    if ((rho - rho.adjoint()).frobenius_norm() > tol * std::max(rho.frobenius_norm(), 1.0))
        throw std::invalid_argument("born_probabilities: rho not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
        throw std::invalid_argument("born_probabilities: rho not trace one");
    {
        auto eig = la::hermitian_eig(rho, tol);
        if (eig.eigenvalues.front() < -tol)
            throw std::invalid_argument("born_probabilities: rho not positive semidefinite");
    }
    std::vector<double> probs;
    probs.reserve(povm.size());
    double total = 0.0;
    const double w = 1.0 / static_cast<double>(povm.dim);
    for (const auto& v : povm.vectors) {
        la::CVector rv = rho * v;
        double pi = (la::inner(v, rv)).real() * w;
        probs.push_back(pi);
        total += pi;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw std::logic_error("born_probabilities: probabilities sum to " +
                               std::to_string(total));
    return probs;
}

namespace detail {

/// Deterministic Gaussian source (explicit Box-Muller over mt19937_64 so the
/// stream does not depend on the standard library's distribution internals).
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

    double normal() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool have_ = false;
};

/// Hermitian coordinate basis: n diagonal units, then (sym, antisym)/sqrt(2)
/// pairs for i < j in row order. tr(B_a B_b) = delta_ab.
inline double element_coordinate(const la::CVector& v, std::size_t dim, std::size_t j) {
    if (j < dim) return std::norm(v[j]);
    std::size_t k = j - dim;
    std::size_t pair = k / 2;
    // invert pair index -> (row, col)
    std::size_t row = 0;
    std::size_t remaining = pair;
    std::size_t row_pairs = dim - 1;
    while (remaining >= row_pairs) {
        remaining -= row_pairs;
        ++row;
        --row_pairs;
    }
    std::size_t col = row + 1 + remaining;
    la::cplx z = std::conj(v[row]) * v[col];
    const double s = std::numbers::sqrt2;
    return (k % 2 == 0) ? s * z.real() : s * z.imag();
}

inline la::ComplexMatrix matrix_from_coordinates(std::size_t dim, const std::vector<double>& x) {
    la::ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = x[i];
    std::size_t k = dim;
    const double inv_s = 1.0 / std::numbers::sqrt2;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            double re = x[k++] * inv_s;
            double im = x[k++] * inv_s;
            m(i, j) = la::cplx(re, -im);
            m(j, i) = la::cplx(re, im);
        }
    }
    return m;
}

} // namespace detail

/// Seeded random density matrix: rho = XX*/tr(XX*) for a complex Gaussian X.
inline la::ComplexMatrix random_density_matrix(std::size_t n, detail::GaussianRng& rng) {
    la::ComplexMatrix x(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = la::cplx(rng.normal(), rng.normal());
    la::ComplexMatrix rho = x * x.adjoint();
    double tr = rho.trace().real();
    rho *= la::cplx(1.0 / tr, 0.0);
    return rho;
}

/// Least-squares tomography over the n^2 real Hermitian coordinates. The
/// normal-equation eigendecomposition is factored once at construction so
/// repeated solves against the same POVM are cheap. Construction throws
/// std::domain_error when the POVM is numerically rank-deficient.
class TomographySolver {
public:
    explicit TomographySolver(const ProjectorPOVM& povm)
        : dim_(povm.dim), ncoord_(povm.dim * povm.dim), nelem_(povm.size()) {
        if (nelem_ < ncoord_)
            throw std::invalid_argument("TomographySolver: fewer elements than n^2 unknowns");

        // A_{kj} = tr(B_j E_k), real
        a_.resize(nelem_ * ncoord_);
        const double w = 1.0 / static_cast<double>(dim_);
        for (std::size_t k = 0; k < nelem_; ++k)
            for (std::size_t j = 0; j < ncoord_; ++j)
                a_[k * ncoord_ + j] = detail::element_coordinate(povm.vectors[k], dim_, j) * w;

        la::ComplexMatrix m(ncoord_, ncoord_);
        for (std::size_t a = 0; a < ncoord_; ++a)
            for (std::size_t b = a; b < ncoord_; ++b) {
                double s = 0.0;
                for (std::size_t k = 0; k < nelem_; ++k)
                    s += a_[k * ncoord_ + a] * a_[k * ncoord_ + b];
                m(a, b) = s;
                m(b, a) = s;
            }

        eig_ = la::hermitian_eig(m, 1e-6);
        double lam_max = eig_.eigenvalues.back();
        double thr =
            static_cast<double>(ncoord_) * std::numeric_limits<double>::epsilon() * lam_max;
        if (lam_max <= 0.0 || eig_.eigenvalues.front() <= thr)
            throw std::domain_error(
                "TomographySolver: POVM numerically rank-deficient (min/max eigenvalue ratio " +
                detail::fmt_sci(eig_.eigenvalues.front() / lam_max) + ")");
    }

    la::ComplexMatrix solve(const std::vector<double>& probs, double* residual_out = nullptr) const {
        if (probs.size() != nelem_)
            throw std::invalid_argument("TomographySolver: probability count mismatch");
        std::vector<double> y(ncoord_, 0.0);
        for (std::size_t a = 0; a < ncoord_; ++a) {
            double s = 0.0;
            for (std::size_t k = 0; k < nelem_; ++k) s += a_[k * ncoord_ + a] * probs[k];
            y[a] = s;
        }
        std::vector<double> x(ncoord_, 0.0);
        for (std::size_t k = 0; k < ncoord_; ++k) {
            double uy = 0.0;
            for (std::size_t i = 0; i < ncoord_; ++i) uy += eig_.eigenvectors(i, k).real() * y[i];
            double coef = uy / eig_.eigenvalues[k];
            for (std::size_t i = 0; i < ncoord_; ++i)
                x[i] += coef * eig_.eigenvectors(i, k).real();
        }
        if (residual_out) {
            double r2 = 0.0;
            for (std::size_t k = 0; k < nelem_; ++k) {
                double ax = 0.0;
                for (std::size_t j = 0; j < ncoord_; ++j) ax += a_[k * ncoord_ + j] * x[j];
                r2 += (ax - probs[k]) * (ax - probs[k]);
            }
            *residual_out = std::sqrt(r2);
        }
        return detail::matrix_from_coordinates(dim_, x);
    }

private:
    std::size_t dim_, ncoord_, nelem_;
    std::vector<double> a_;
    la::HermitianEigen eig_;
};

/// One-shot solve of tr(rho E_i) = p_i for Hermitian rho by least squares.
inline la::ComplexMatrix reconstruct_state(const ProjectorPOVM& povm,
                                           const std::vector<double>& probs,
                                           double* residual_out = nullptr) {
    return TomographySolver(povm).solve(probs, residual_out);
}

/// Max Frobenius round-trip error over `count` seeded random density matrices.
inline double tomography_roundtrip_error(const ProjectorPOVM& povm, int count = 20,
                                         std::uint64_t seed = 0) {
    TomographySolver solver(povm);
    detail::GaussianRng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < count; ++t) {
        la::ComplexMatrix rho = random_density_matrix(povm.dim, rng);
        auto probs = born_probabilities(povm, rho);
        la::ComplexMatrix rec = solver.solve(probs);
        worst = std::max(worst, (rec - rho).frobenius_norm());
    }
    return worst;
}

// ---------------------------------------------------------------------------
// empirical character / exponential sum bounds
// ---------------------------------------------------------------------------

struct SumBound {
    double modulus = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    bool asserted = false; // true when the bound is a hard theorem (Weil kind)
};

namespace detail {

inline std::uint64_t poly_eval_mod(const std::vector<std::uint64_t>& coeffs, std::uint64_t u,
                                   std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = (nt::mul_mod(acc, u % p, p) + coeffs[i] % p) % p;
    return acc;
}

inline std::size_t poly_degree(const std::vector<std::uint64_t>& coeffs, std::uint64_t p) {
    for (std::size_t i = coeffs.size(); i-- > 0;)
        if (coeffs[i] % p != 0) return i;
    return 0;
}

} // namespace detail

/// |sum_{u=0}^{p-1} e_p(F(u)) chi(G(u))| vs (d + nu - 1) sqrt(p); chi(0) = 0 by
/// convention, nu = number of distinct roots of G in the algebraic closure,
/// supplied by the caller. The bound is a theorem: a violation beyond FP
/// rounding throws.
inline SumBound weil_sum_bound(const nt::Character& chi,
                               const std::vector<std::uint64_t>& f_coeffs,
                               const std::vector<std::uint64_t>& g_coeffs,
                               std::uint64_t nu) {
    const std::uint64_t p = chi.modulus();
    la::cplx s = 0.0;
    for (std::uint64_t u = 0; u < p; ++u) {
        std::uint64_t gu = detail::poly_eval_mod(g_coeffs, u, p);
        if (gu == 0) continue; // chi(0) = 0
        std::uint64_t fu = detail::poly_eval_mod(f_coeffs, u, p);
        s += nt::root_of_unity(p, static_cast<std::int64_t>(fu)) * chi(gu);
    }
    SumBound out;
    out.modulus = std::abs(s);
    std::size_t d = detail::poly_degree(f_coeffs, p);
    out.bound = (static_cast<double>(d) + static_cast<double>(nu) - 1.0) *
                std::sqrt(static_cast<double>(p));
    out.ratio = out.bound > 0.0 ? out.modulus / out.bound : (out.modulus > 0.0 ? INFINITY : 0.0);
    out.asserted = true;
    double guard = 1e-12 * (1.0 + out.bound) + static_cast<double>(p) * 1e-15;
    if (out.modulus > out.bound + guard)
        throw std::logic_error("weil_sum_bound: bound violated (modulus " +
                               std::to_string(out.modulus) + " > " + std::to_string(out.bound) +
                               ")");
    return out;
}

/// |sum_{u=1}^p e_p(F(u)) e_n(ku)| vs p^{2/3} (deg 2) or p^{3/4} (deg >= 3).
/// Reported only; the implied constants are unknown.
inline SumBound mixed_sum_bound(std::uint64_t p, const std::vector<std::uint64_t>& f_coeffs,
                                std::int64_t k, std::uint64_t n) {
    std::size_t d = detail::poly_degree(f_coeffs, p);
    if (d < 2) throw std::invalid_argument("mixed_sum_bound: deg F must be >= 2");
    la::cplx s = 0.0;
    for (std::uint64_t u = 1; u <= p; ++u) {
        std::uint64_t fu = detail::poly_eval_mod(f_coeffs, u, p);
        s += nt::root_of_unity(p, static_cast<std::int64_t>(fu)) *
             nt::root_of_unity(n, static_cast<std::int64_t>(k * static_cast<std::int64_t>(u % n)));
    }
    SumBound out;
    out.modulus = std::abs(s);
    out.bound = std::pow(static_cast<double>(p), d == 2 ? 2.0 / 3.0 : 3.0 / 4.0);
    out.ratio = out.modulus / out.bound;
    out.asserted = false;
    return out;
}

/// |sum_{u=1}^h e_p(F(u))| vs h^{1+eps} (1/h + 1/p + p/h^d)^{1/2^{d-1}}.
/// Reported only.
inline SumBound weyl_sum_bound(std::uint64_t p, const std::vector<std::uint64_t>& f_coeffs,
                               std::uint64_t h, double epsilon = 0.05) {
    std::size_t d = detail::poly_degree(f_coeffs, p);
    if (d < 2) throw std::invalid_argument("weyl_sum_bound: deg F must be >= 2");
    if (h > p) throw std::invalid_argument("weyl_sum_bound: requires h <= p");
    la::cplx s = 0.0;
    for (std::uint64_t u = 1; u <= h; ++u) {
        std::uint64_t fu = detail::poly_eval_mod(f_coeffs, u, p);
        s += nt::root_of_unity(p, static_cast<std::int64_t>(fu));
    }
    SumBound out;
    out.modulus = std::abs(s);
    double hd = std::pow(static_cast<double>(h), static_cast<double>(d));
    double inner = 1.0 / static_cast<double>(h) + 1.0 / static_cast<double>(p) +
                   static_cast<double>(p) / hd;
    out.bound = std::pow(static_cast<double>(h), 1.0 + epsilon) *
                std::pow(inner, 1.0 / std::pow(2.0, static_cast<double>(d - 1)));
    out.ratio = out.modulus / out.bound;
    out.asserted = false;
    return out;
}

/// |sum_{u=1}^p e_p(u^2)| — the classical quadratic sum, modulus sqrt(p).
inline double gauss_quadratic_modulus(std::uint64_t p) {
    la::cplx s = 0.0;
    for (std::uint64_t u = 1; u <= p; ++u)
        s += nt::root_of_unity(p, static_cast<std::int64_t>(u * u % p));
    return std::abs(s);
}

struct WeilSweepResult {
    std::uint64_t sums_checked = 0;
    std::uint64_t violations = 0;
    double worst_ratio = 0.0;
};

/// Exhaustive Weil-bound sweep for one prime: every character order n | p-1
/// with n >= 2, every monic F of degree 1..deg_max with zero constant term
/// (|sum| is invariant under the constant coefficient), G(X) = X.
inline WeilSweepResult weil_sweep_prime(std::uint64_t p, std::size_t deg_max) {
    WeilSweepResult res;
    {
        std::uint64_t g = nt::find_primitive_root(p);
        std::vector<std::uint64_t> log(p, 0);
        {
            std::uint64_t x = 1;
            for (std::uint64_t k = 0; k + 1 < p; ++k) {
                log[x] = k;
                x = nt::mul_mod(x, g, p);
            }
        }
        std::vector<la::cplx> ep(p);
        for (std::uint64_t k = 0; k < p; ++k) ep[k] = nt::root_of_unity(p, static_cast<std::int64_t>(k));
        for (std::uint64_t n = 2; n < p; ++n) {
            if ((p - 1) % n != 0) continue;
            std::vector<la::cplx> chi(p);
            chi[0] = 0.0;
            for (std::uint64_t x = 1; x < p; ++x)
                chi[x] = nt::root_of_unity(n, static_cast<std::int64_t>(log[x] % n));
            for (std::size_t d = 1; d <= deg_max; ++d) {
                const double bound = static_cast<double>(d) * std::sqrt(static_cast<double>(p));
                const double guard = 1e-12 * (1.0 + bound) + static_cast<double>(p) * 1e-15;
                // enumerate a_1..a_{d-1}; a_d = 1, a_0 = 0
                std::uint64_t inner_count = 1;
                for (std::size_t i = 1; i < d; ++i) inner_count *= p;
                std::vector<std::uint64_t> coeffs(d + 1, 0);
                coeffs[d] = 1;
                for (std::uint64_t idx = 0; idx < inner_count; ++idx) {
                    std::uint64_t kk = idx;
                    for (std::size_t i = 1; i < d; ++i) {
                        coeffs[i] = kk % p;
                        kk /= p;
                    }
                    la::cplx s = 0.0;
                    for (std::uint64_t u = 1; u < p; ++u) {
                        std::uint64_t fu = 0;
                        for (std::size_t i = d + 1; i-- > 0;)
                            fu = (fu * u + coeffs[i]) % p;
                        s += ep[fu] * chi[u];
                    }
                    double modulus = std::abs(s);
                    res.worst_ratio = std::max(res.worst_ratio, modulus / bound);
                    ++res.sums_checked;
                    if (modulus > bound + guard) ++res.violations;
                }
            }
        }
    }
    return res;
}

/// Sweep over all primes 3 <= p <= p_max.
inline WeilSweepResult weil_exhaustive_sweep(std::uint64_t p_max, std::size_t deg_max) {
    WeilSweepResult res;
    for (std::uint64_t p = 3; p <= p_max; ++p) {
        if (!nt::is_prime(p)) continue;
        auto one = weil_sweep_prime(p, deg_max);
        res.sums_checked += one.sums_checked;
        res.violations += one.violations;
        res.worst_ratio = std::max(res.worst_ratio, one.worst_ratio);
    }
    return res;
}

// ---------------------------------------------------------------------------
// explicit Construction I overlap bound
// ---------------------------------------------------------------------------

/// Valid explicit bound on max q^2 tr(F_i F_j): triangle inequality applied to
/// the three terms of G^{-1} = alpha I + beta Q - gamma |0><0|, i.e.
/// ((alpha+beta) q^{-1/2} + gamma/q)^2 = ((q^{3/2}+1)/(q(q-1)))^2.
inline double construction1_overlap_bound(std::uint64_t q) {
    double qq = static_cast<double>(q);
    double v = (qq * std::sqrt(qq) + 1.0) / (qq * (qq - 1.0));
    return v * v;
}

/// The literal sum-of-squares chain value
/// (1/q)(1+1/(q^2-1))^2 + (1/q)(q/(q^2-1))^2 + (1/(q(q-1)))^2.
/// Report-only: it is not a valid upper bound for q >= 5 (the measured maximum
/// exceeds it), so only construction1_overlap_bound is asserted.
inline double construction1_sum_of_squares_value(std::uint64_t q) {
    double qq = static_cast<double>(q);
    double a = 1.0 + 1.0 / (qq * qq - 1.0);
    double b = qq / (qq * qq - 1.0);
    double c = 1.0 / (qq * (qq - 1.0));
    return a * a / qq + b * b / qq + c * c;
}

// ---------------------------------------------------------------------------
// certification report
// ---------------------------------------------------------------------------

struct HardCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double limit = 0.0;
};

struct CertificationReport {
    Provenance provenance;
    std::uint64_t n = 0;
    std::uint64_t element_count = 0;
    std::optional<double> completeness_residual;
    std::optional<std::uint64_t> gram_rank;
    std::optional<std::uint64_t> required_rank;
    double overlap_max_sq = 0.0;
    double overlap_mean_sq = 0.0;
    std::array<std::uint64_t, 64> overlap_histogram{};
    std::optional<double> unbiasedness_max_dev;
    double frame_lower = 0.0;
    double frame_upper = 0.0;
    std::optional<double> explicit_bound_value;   // asserted explicit bound, when one exists
    std::optional<bool> bound_satisfied;
    std::optional<double> reference_bound_value; // reported comparison value
    std::optional<double> tomography_error;
    ScanMode scan_mode;
    double wall_time_ms = 0.0;
    std::vector<HardCheck> hard_checks;

    bool passed() const {
        for (const auto& c : hard_checks)
            if (!c.passed) return false;
        return true;
    }

    void add_check(const std::string& name, double value, double limit) {
        hard_checks.push_back({name, value <= limit, value, limit});
    }
};

namespace detail {

inline double bound_guard(double bound) { return 1e-12 * (1.0 + bound); }

} // namespace detail

/// Full certification of a unit-vector system. Hard checks depend on the
/// construction recorded in provenance.
inline CertificationReport certify_system(const VectorSystem& sys,
                                          const ScanPolicy& policy = {}) {
    auto t0 = std::chrono::steady_clock::now();
    CertificationReport rep;
    rep.provenance = sys.provenance;
    rep.n = sys.dim;
    rep.element_count = sys.size();

    double worst_norm_dev = 0.0;
    for (const auto& v : sys.vectors)
        worst_norm_dev = std::max(worst_norm_dev, std::abs(la::norm(v) - 1.0));
    rep.add_check("unit_norms", worst_norm_dev, 1e-12);

    if (!sys.basis_groups.empty()) {
        double worst_ortho = 0.0;
        for (const auto& group : sys.basis_groups) {
            for (std::size_t a = 0; a < group.size(); ++a)
                for (std::size_t b = a + 1; b < group.size(); ++b)
                    worst_ortho = std::max(
                        worst_ortho, std::abs(la::inner(sys.vectors[group[a]], sys.vectors[group[b]])));
        }
        rep.add_check("basis_orthonormality", worst_ortho, 1e-10);
        rep.unbiasedness_max_dev = check_unbiasedness(sys);
    }

    auto stats = overlap_stats(sys, policy);
    rep.overlap_max_sq = stats.max_sq;
    rep.overlap_mean_sq = stats.mean_sq;
    rep.overlap_histogram = stats.histogram;
    rep.scan_mode = stats.mode;

    auto fb = frame_bounds(sys);
    rep.frame_lower = fb.first;
    rep.frame_upper = fb.second;

    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(sys.dim));
    const std::string& kind = sys.provenance.construction;
    const bool grouped = !sys.basis_groups.empty();
    if ((kind == "mub" || kind == "amub-char" || kind == "amub-poly") && !grouped) {
        rep.hard_checks.push_back({"basis_groups_present", false, 0.0, 1.0});
    } else if (kind == "mub") {
        rep.explicit_bound_value = inv_sqrt_n;
        rep.add_check("unbiasedness", *rep.unbiasedness_max_dev, 1e-10);
        rep.bound_satisfied = *rep.unbiasedness_max_dev <= 1e-10;
    } else if (kind == "amub-char") {
        double bound = static_cast<double>(sys.provenance.d) *
                       std::sqrt(static_cast<double>(sys.provenance.p)) /
                       static_cast<double>(sys.dim);
        auto ex = cross_basis_extremes(sys);
        rep.explicit_bound_value = bound;
        rep.add_check("cross_overlap_bound", ex.max_abs, bound + detail::bound_guard(bound));
        rep.bound_satisfied = rep.hard_checks.back().passed;
    } else if (kind == "amub-poly") {
        auto gid = detail::group_of(sys);
        double worst_std_dev = 0.0;
        const auto& std_group = sys.basis_groups.front();
        for (std::size_t i : std_group)
            for (std::size_t j = 0; j < sys.size(); ++j) {
                if (gid[j] == gid[i]) continue;
                double ov = std::abs(la::inner(sys.vectors[i], sys.vectors[j]));
                worst_std_dev = std::max(worst_std_dev, std::abs(ov - inv_sqrt_n));
            }
        rep.add_check("standard_cross_overlap", worst_std_dev, 1e-12);
        rep.reference_bound_value =
            std::pow(static_cast<double>(sys.dim), sys.provenance.d >= 2 ? -0.25 : -1.0 / 3.0);
    } else if (kind == "asic-approx") {
        rep.reference_bound_value = 2.0 * inv_sqrt_n;
    }

    rep.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/// Full certification of a projector POVM, including the tomography round trip
/// for symmetrized kinds.
inline CertificationReport certify_povm(const ProjectorPOVM& povm, const ScanPolicy& policy = {},
                                        bool run_tomography = true, int tomography_count = 20,
                                        std::uint64_t tomography_seed = 0) {
    auto t0 = std::chrono::steady_clock::now();
    CertificationReport rep;
    rep.provenance = povm.provenance;
    rep.n = povm.dim;
    rep.element_count = povm.size();

    rep.completeness_residual = check_completeness(povm);
    if (povm.kind == ProjectorPOVM::Kind::symmetrized)
        rep.add_check("completeness", *rep.completeness_residual, 1e-10);

    if (povm.size() == povm.dim * povm.dim) {
        auto rc = check_informational_completeness(povm);
        rep.gram_rank = rc.rank;
        rep.required_rank = rc.required;
        rep.hard_checks.push_back({"informational_completeness", rc.complete,
                                   static_cast<double>(rc.rank),
                                   static_cast<double>(rc.required)});
    }

    auto stats = overlap_stats(povm, policy);
    rep.overlap_max_sq = stats.max_sq;
    rep.overlap_mean_sq = stats.mean_sq;
    rep.overlap_histogram = stats.histogram;
    rep.scan_mode = stats.mode;

    if (!povm.source.vectors.empty()) {
        auto fb = frame_bounds(povm.source);
        rep.frame_lower = fb.first;
        rep.frame_upper = fb.second;
    }

    const std::string& kind = povm.provenance.construction;
    if (kind == "asic1") {
        double bound = construction1_overlap_bound(povm.provenance.q);
        rep.explicit_bound_value = bound;
        rep.add_check("overlap_bound", stats.max_sq, bound + detail::bound_guard(bound));
        rep.bound_satisfied = rep.hard_checks.back().passed;
        rep.reference_bound_value = construction1_sum_of_squares_value(povm.provenance.q);
    } else if (kind == "asic2") {
        rep.reference_bound_value = 1.0 / static_cast<double>(povm.dim);
    }

    if (run_tomography && povm.kind == ProjectorPOVM::Kind::symmetrized &&
        povm.size() == povm.dim * povm.dim) {
        try {
            double err = tomography_roundtrip_error(povm, tomography_count, tomography_seed);
            rep.tomography_error = err;
            rep.add_check("tomography_roundtrip", err, 1e-8);
        } catch (const std::domain_error&) {
            rep.tomography_error = std::nullopt;
            rep.hard_checks.push_back(
                {"tomography_roundtrip", false, std::numeric_limits<double>::infinity(), 1e-8});
        }
    }

    rep.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace asicpovm
