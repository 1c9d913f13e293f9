#pragma once

// Vector-system builders: exact MUBs in odd prime power dimension, the two
// ASIC-POVM constructions (MUB pruning and MUB perturbation), polynomial-phase
// approximate MUBs and approximate-SIC systems for arbitrary dimension, and
// character-sum approximate MUBs for n with a small prime p = 1 (mod n).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "asicpovm/certify.hpp"
#include "asicpovm/ffield.hpp"
#include "asicpovm/numtheory.hpp"
#include "asicpovm/types.hpp"

namespace asicpovm {

namespace detail {

inline ff::FiniteField field_for_prime_power(std::uint64_t q) {
    std::uint64_t p = 0;
    std::uint32_t r = 0;
    if (!ff::factor_prime_power(q, p, r) || p == 2)
        throw std::invalid_argument("expected an odd prime power, got " + std::to_string(q));
    return ff::FiniteField(p, r);
}

inline la::CVector standard_basis_vector(std::size_t dim, std::size_t i) {
    la::CVector v(dim, la::cplx(0.0, 0.0));
    v[i] = 1.0;
    return v;
}

/// psi_{a,b}[x] = q^{-1/2} e_p(Tr(a x^2 + b x)).
inline la::CVector quadratic_phase_vector(const ff::FiniteField& field,
                                          const std::vector<ff::FieldElement>& elems,
                                          const std::vector<ff::FieldElement>& squares,
                                          const ff::FieldElement& a, const ff::FieldElement& b) {
    const std::uint64_t q = field.cardinality();
    const std::uint64_t p = field.characteristic();
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    la::CVector v(q);
    for (std::uint64_t xi = 0; xi < q; ++xi) {
        ff::FieldElement t =
            field.add(field.mul(a, squares[xi]), field.mul(b, elems[xi]));
        v[xi] = scale * nt::root_of_unity(
                            p, static_cast<std::int64_t>(field.trace_to_prime(t)));
    }
    return v;
}

} // namespace detail

// ---------------------------------------------------------------------------
// exact MUBs, q = p^r, p >= 3
// ---------------------------------------------------------------------------

/// The standard basis B_0 plus the q quadratic-phase bases B_a; q+1 mutually
/// unbiased bases of C^q, q^2 + q vectors in total.
inline VectorSystem mub_prime_power(std::uint64_t q) {
    ff::FiniteField field = detail::field_for_prime_power(q);
    const auto elems = field.enumerate();
    std::vector<ff::FieldElement> squares;
    squares.reserve(q);
    for (const auto& x : elems) squares.push_back(field.mul(x, x));

    VectorSystem sys;
    sys.dim = q;
    sys.provenance.construction = "mub";
    sys.provenance.dim = q;
    sys.provenance.p = field.characteristic();
    sys.provenance.q = q;
    sys.provenance.ext_degree = field.extension_degree();

    std::vector<std::size_t> std_group;
    for (std::uint64_t j = 0; j < q; ++j) {
        std_group.push_back(sys.vectors.size());
        sys.vectors.push_back(detail::standard_basis_vector(q, j));
        sys.labels.push_back({"std", {static_cast<std::int64_t>(j)}});
    }
    sys.basis_groups.push_back(std_group);

    for (std::uint64_t ai = 0; ai < q; ++ai) {
        std::vector<std::size_t> group;
        for (std::uint64_t bi = 0; bi < q; ++bi) {
            group.push_back(sys.vectors.size());
            sys.vectors.push_back(detail::quadratic_phase_vector(field, elems, squares,
                                                                 elems[ai], elems[bi]));
            sys.labels.push_back(
                {"quad", {static_cast<std::int64_t>(ai), static_cast<std::int64_t>(bi)}});
        }
        sys.basis_groups.push_back(group);
    }

    sys.validate();
    return sys;
}

// ---------------------------------------------------------------------------
// Construction I: pruned MUB vectors, symmetrized
// ---------------------------------------------------------------------------

/// The q^2 pruned vectors: quadratic-phase psi_{a,b} for b != 0 plus the full
/// standard basis as psi_{a,0}.
inline VectorSystem asic_pruned_system(std::uint64_t q) {
    ff::FiniteField field = detail::field_for_prime_power(q);
    const auto elems = field.enumerate();
    std::vector<ff::FieldElement> squares;
    squares.reserve(q);
    for (const auto& x : elems) squares.push_back(field.mul(x, x));

    VectorSystem sys;
    sys.dim = q;
    sys.provenance.construction = "asic1";
    sys.provenance.dim = q;
    sys.provenance.p = field.characteristic();
    sys.provenance.q = q;
    sys.provenance.ext_degree = field.extension_degree();

    for (std::uint64_t ai = 0; ai < q; ++ai) {
        for (std::uint64_t bi = 0; bi < q; ++bi) {
            if (bi == 0) {
                sys.vectors.push_back(detail::standard_basis_vector(q, ai));
                sys.labels.push_back(
                    {"std", {static_cast<std::int64_t>(ai), static_cast<std::int64_t>(bi)}});
            } else {
                sys.vectors.push_back(detail::quadratic_phase_vector(field, elems, squares,
                                                                     elems[ai], elems[bi]));
                sys.labels.push_back(
                    {"quad", {static_cast<std::int64_t>(ai), static_cast<std::int64_t>(bi)}});
            }
        }
    }

    sys.validate();
    return sys;
}

/// Symmetrized Construction I ASIC-POVM: F_{a,b} = G^{-1/2} E_{a,b} G^{-1/2}.
inline ProjectorPOVM asic_pruned(std::uint64_t q) {
    return symmetrize_to_povm(asic_pruned_system(q));
}

/// The frame operator of the pruned set in closed form: I - Q/q + |0><0|/q,
/// where Q permutes x -> -x in the field enumeration order.
inline la::ComplexMatrix asic_pruned_frame_expected(std::uint64_t q) {
    ff::FiniteField field = detail::field_for_prime_power(q);
    const auto elems = field.enumerate();
    la::ComplexMatrix g = la::ComplexMatrix::identity(q);
    const double invq = 1.0 / static_cast<double>(q);
    for (std::uint64_t xi = 0; xi < q; ++xi) {
        std::uint64_t ni = field.index_of(field.neg(elems[xi]));
        g(xi, ni) -= invq;
    }
    g(0, 0) += invq;
    return g;
}

/// Closed-form inverse (1 + 1/(q^2-1)) I + q/(q^2-1) Q - 1/(q-1) |0><0|.
inline la::ComplexMatrix closed_form_G_inverse(std::uint64_t q) {
    ff::FiniteField field = detail::field_for_prime_power(q);
    const auto elems = field.enumerate();
    const double qq = static_cast<double>(q);
    la::ComplexMatrix g(q, q);
    const double alpha = 1.0 + 1.0 / (qq * qq - 1.0);
    const double beta = qq / (qq * qq - 1.0);
    const double gamma = 1.0 / (qq - 1.0);
    for (std::uint64_t i = 0; i < q; ++i) g(i, i) = alpha;
    for (std::uint64_t xi = 0; xi < q; ++xi) {
        std::uint64_t ni = field.index_of(field.neg(elems[xi]));
        g(xi, ni) += beta;
    }
    g(0, 0) -= gamma;
    return g;
}

// ---------------------------------------------------------------------------
// Construction II: perturbed MUB vectors, symmetrized
// ---------------------------------------------------------------------------

/// phi_{a,b} = N_a (r^{ax} e_p(a x^2 + b x))_x with N_a = (sum_x r^{2ax})^{-1/2}.
/// The exponent ax is the plain integer product; only e_p arguments reduce mod p.
inline VectorSystem asic_perturbed_system(std::uint64_t p, double r) {
    if (!nt::is_prime(p) || p == 2)
        throw std::invalid_argument("asic_perturbed: p must be an odd prime");
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("asic_perturbed: r must lie in (0,1)");

    VectorSystem sys;
    sys.dim = p;
    sys.provenance.construction = "asic2";
    sys.provenance.dim = p;
    sys.provenance.p = p;
    sys.provenance.q = p;
    sys.provenance.ext_degree = 1;
    sys.provenance.perturb_r = r;

    for (std::uint64_t a = 0; a < p; ++a) {
        double norm2 = 0.0;
        for (std::uint64_t x = 0; x < p; ++x)
            norm2 += std::pow(r, 2.0 * static_cast<double>(a * x));
        const double na = 1.0 / std::sqrt(norm2);
        for (std::uint64_t b = 0; b < p; ++b) {
            la::CVector v(p);
            for (std::uint64_t x = 0; x < p; ++x) {
                double amp = na * std::pow(r, static_cast<double>(a * x));
                std::uint64_t phase = (a * x % p) * (x % p) % p; // a x^2 mod p
                phase = (phase + b * x) % p;
                v[x] = amp * nt::root_of_unity(p, static_cast<std::int64_t>(phase));
            }
            sys.vectors.push_back(std::move(v));
            sys.labels.push_back(
                {"perturbed", {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)}});
        }
    }

    sys.validate();
    return sys;
}

inline double asic_perturbed_default_r(std::uint64_t p) {
    return 1.0 - std::pow(static_cast<double>(p), -3.0);
}

/// Symmetrized Construction II ASIC-POVM; r defaults to 1 - p^{-3}.
inline ProjectorPOVM asic_perturbed(std::uint64_t p, double r) {
    return symmetrize_to_povm(asic_perturbed_system(p, r));
}

inline ProjectorPOVM asic_perturbed(std::uint64_t p) {
    return asic_perturbed(p, asic_perturbed_default_r(p));
}

/// Diagonal of the frame operator: entry x is sum_a N_a^2 r^{2ax}.
inline std::vector<double> perturbed_frame_diag(std::uint64_t p, double r) {
    if (!nt::is_prime(p) || p == 2)
        throw std::invalid_argument("perturbed_frame_diag: p must be an odd prime");
    std::vector<double> na2(p);
    for (std::uint64_t a = 0; a < p; ++a) {
        double norm2 = 0.0;
        for (std::uint64_t x = 0; x < p; ++x)
            norm2 += std::pow(r, 2.0 * static_cast<double>(a * x));
        na2[a] = 1.0 / norm2;
    }
    std::vector<double> diag(p, 0.0);
    for (std::uint64_t x = 0; x < p; ++x)
        for (std::uint64_t a = 0; a < p; ++a)
            diag[x] += na2[a] * std::pow(r, 2.0 * static_cast<double>(a * x));
    return diag;
}

// ---------------------------------------------------------------------------
// polynomial-phase AMUBs and approximate-SIC vectors (any dimension)
// ---------------------------------------------------------------------------

/// Standard basis plus the n^d bases B_f, f in F_d:
/// psi_{f,i} = n^{-1/2} (e_p(f(u)) e_n(iu))_{u=1..n}, p the smallest prime >= n.
inline VectorSystem amub_polynomial(std::uint64_t n, std::uint64_t d,
                                    std::size_t max_vectors = 65536) {
    if (n < 2) throw std::invalid_argument("amub_polynomial: n must be >= 2");
    if (d < 1) throw std::invalid_argument("amub_polynomial: d must be >= 1");
    PolynomialFamily fam{n, d, PolynomialFamily::Kind::f_family};
    if (max_vectors < n || fam.size() > (max_vectors - n) / n)
        throw std::invalid_argument("amub_polynomial: vector count exceeds memory cap");
    const std::uint64_t p = nt::next_prime_geq(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));

    VectorSystem sys;
    sys.dim = n;
    sys.provenance.construction = "amub-poly";
    sys.provenance.dim = n;
    sys.provenance.p = p;
    sys.provenance.d = d;
    sys.provenance.prime_gap = p - n;

    std::vector<std::size_t> std_group;
    for (std::uint64_t j = 0; j < n; ++j) {
        std_group.push_back(sys.vectors.size());
        sys.vectors.push_back(detail::standard_basis_vector(n, j));
        sys.labels.push_back({"std", {static_cast<std::int64_t>(j)}});
    }
    sys.basis_groups.push_back(std_group);

    for (std::uint64_t k = 0; k < fam.size(); ++k) {
        const auto coeffs = fam.coefficients(k);
        std::vector<std::uint64_t> phase(n);
        for (std::uint64_t u = 1; u <= n; ++u) phase[u - 1] = fam.eval_mod(coeffs, u, p);
        std::vector<std::size_t> group;
        for (std::uint64_t i = 1; i <= n; ++i) {
            la::CVector v(n);
            for (std::uint64_t u = 1; u <= n; ++u) {
                v[u - 1] = scale *
                           nt::root_of_unity(p, static_cast<std::int64_t>(phase[u - 1])) *
                           nt::root_of_unity(n, static_cast<std::int64_t>(i * u % n));
            }
            group.push_back(sys.vectors.size());
            sys.vectors.push_back(std::move(v));
            sys.labels.push_back(
                {"poly", {static_cast<std::int64_t>(k), static_cast<std::int64_t>(i)}});
        }
        sys.basis_groups.push_back(group);
    }

    sys.validate();
    return sys;
}

/// The n^2 vectors psi_f = n^{-1/2} (e_p(f(u)))_{u=1..n}, f in F_2 (monomial
/// degrees 2 and 3), p the smallest prime >= n. No basis grouping.
inline VectorSystem approx_sic_vectors(std::uint64_t n, std::size_t max_vectors = 65536) {
    if (n < 2) throw std::invalid_argument("approx_sic_vectors: n must be >= 2");
    PolynomialFamily fam{n, 2, PolynomialFamily::Kind::f_family};
    if (fam.size() > max_vectors)
        throw std::invalid_argument("approx_sic_vectors: vector count exceeds memory cap");
    const std::uint64_t p = nt::next_prime_geq(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));

    VectorSystem sys;
    sys.dim = n;
    sys.provenance.construction = "asic-approx";
    sys.provenance.dim = n;
    sys.provenance.p = p;
    sys.provenance.d = 2;
    sys.provenance.prime_gap = p - n;

    for (std::uint64_t k = 0; k < fam.size(); ++k) {
        const auto coeffs = fam.coefficients(k);
        la::CVector v(n);
        for (std::uint64_t u = 1; u <= n; ++u)
            v[u - 1] =
                scale * nt::root_of_unity(p, static_cast<std::int64_t>(fam.eval_mod(coeffs, u, p)));
        sys.vectors.push_back(std::move(v));
        sys.labels.push_back({"poly", {static_cast<std::int64_t>(coeffs[0]),
                                       static_cast<std::int64_t>(coeffs[1])}});
    }

    sys.validate();
    return sys;
}

// ---------------------------------------------------------------------------
// character-sum AMUBs (n with a small prime p = 1 mod n)
// ---------------------------------------------------------------------------

/// Standard basis plus the n^d bases
/// psi_{f,i} = n^{-1/2} (e_p(f(u)) chi(u)^i)_{u in U_n}, f in G_d, where
/// p is the smallest prime = 1 (mod n) and chi is the order-n character of the
/// subgroup U_n (chi(h^k) = e_n(k) for h = g^{(p-1)/n}); for gcd((p-1)/n, n) = 1
/// this is the restriction of the order-n character mod p.
inline VectorSystem amub_character(std::uint64_t n, std::uint64_t d,
                                   std::size_t max_vectors = 65536) {
    if (n < 2) throw std::invalid_argument("amub_character: n must be >= 2");
    if (d < 1) throw std::invalid_argument("amub_character: d must be >= 1");
    PolynomialFamily fam{n, d, PolynomialFamily::Kind::g_family};
    if (max_vectors < n || fam.size() > (max_vectors - n) / n)
        throw std::invalid_argument("amub_character: vector count exceeds memory cap");

    const std::uint64_t p = nt::smallest_prime_congruent_1(n);
    nt::Character chi(p, n);
    nt::SubgroupUn un = nt::subgroup_un(p, n);
    const std::uint64_t cofactor = (p - 1) / n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));

    // subgroup discrete log: u = h^k with h = g^{(p-1)/n}
    std::vector<std::uint64_t> sublog(n);
    for (std::uint64_t idx = 0; idx < n; ++idx)
        sublog[idx] = chi.log(un.elements[idx]) / cofactor;

    VectorSystem sys;
    sys.dim = n;
    sys.provenance.construction = "amub-char";
    sys.provenance.dim = n;
    sys.provenance.p = p;
    sys.provenance.d = d;
    sys.provenance.prime_ratio = nt::congruent_prime_ratio(n, p);

    std::vector<std::size_t> std_group;
    for (std::uint64_t j = 0; j < n; ++j) {
        std_group.push_back(sys.vectors.size());
        sys.vectors.push_back(detail::standard_basis_vector(n, j));
        sys.labels.push_back({"std", {static_cast<std::int64_t>(j)}});
    }
    sys.basis_groups.push_back(std_group);

    for (std::uint64_t k = 0; k < fam.size(); ++k) {
        const auto coeffs = fam.coefficients(k);
        std::vector<std::uint64_t> phase(n);
        for (std::uint64_t idx = 0; idx < n; ++idx)
            phase[idx] = fam.eval_mod(coeffs, un.elements[idx], p);
        std::vector<std::size_t> group;
        for (std::uint64_t i = 1; i <= n; ++i) {
            la::CVector v(n);
            for (std::uint64_t idx = 0; idx < n; ++idx) {
                v[idx] = scale *
                         nt::root_of_unity(p, static_cast<std::int64_t>(phase[idx])) *
                         nt::root_of_unity(n, static_cast<std::int64_t>(i * sublog[idx] % n));
            }
            group.push_back(sys.vectors.size());
            sys.vectors.push_back(std::move(v));
            sys.labels.push_back(
                {"char", {static_cast<std::int64_t>(k), static_cast<std::int64_t>(i)}});
        }
        sys.basis_groups.push_back(group);
    }

    sys.validate();
    return sys;
}

} // namespace asicpovm
