#pragma once

// Shared domain types: labeled vector systems, projector POVMs, polynomial
// phase families, and construction provenance.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "asicpovm/linalg.hpp"

namespace asicpovm {

struct VectorLabel {
    std::string family;               // e.g. "std", "quad", "poly"
    std::vector<std::int64_t> index;  // (a,b), (f,i), ...

    bool operator==(const VectorLabel&) const = default;
};

struct Provenance {
    std::string construction;     // mub | asic1 | asic2 | amub-poly | asic-approx | amub-char
    std::uint64_t dim = 0;        // ambient dimension n
    std::uint64_t p = 0;          // characteristic / chosen prime
    std::uint64_t q = 0;          // prime power, when applicable
    std::uint64_t ext_degree = 0; // r with q = p^r
    std::uint64_t d = 0;          // polynomial family degree parameter
    double perturb_r = 0.0;       // Construction II perturbation
    std::uint64_t prime_gap = 0;  // p - n for next_prime_geq searches
    double prime_ratio = 0.0;     // p / (n log^2 n) for the 1 (mod n) search

    bool operator==(const Provenance&) const = default;
};

/// A labeled family of vectors in C^n, optionally partitioned into
/// orthonormal bases. Every vector is unit norm within 1e-12; within any
/// declared basis group, pairwise inner products are delta_ij within 1e-10.
struct VectorSystem {
    std::size_t dim = 0;
    std::vector<la::CVector> vectors;
    std::vector<VectorLabel> labels;
    std::vector<std::vector<std::size_t>> basis_groups;
    Provenance provenance;

    std::size_t size() const { return vectors.size(); }

    /// Checks the type invariants; throws std::logic_error on violation.
    void validate(double norm_tol = 1e-12, double ortho_tol = 1e-10) const {
        if (labels.size() != vectors.size())
            throw std::logic_error("VectorSystem: label/vector count mismatch");
        for (const auto& v : vectors) {
            if (v.size() != dim) throw std::logic_error("VectorSystem: dimension mismatch");
            if (std::abs(la::norm(v) - 1.0) > norm_tol)
                throw std::logic_error("VectorSystem: vector not unit norm");
        }
        for (const auto& group : basis_groups) {
            if (group.size() != dim)
                throw std::logic_error("VectorSystem: basis group of wrong size");
            for (std::size_t a = 0; a < group.size(); ++a) {
                for (std::size_t b = a; b < group.size(); ++b) {
                    la::cplx ip = la::inner(vectors[group[a]], vectors[group[b]]);
                    double expect = (a == b) ? 1.0 : 0.0;
                    if (std::abs(ip - la::cplx(expect, 0.0)) > ortho_tol)
                        throw std::logic_error("VectorSystem: basis group not orthonormal");
                }
            }
        }
    }
};

/// Rank-one POVM data: elements w * |v_i><v_i| with w = 1/dim. For the
/// symmetrized kind the stored vectors are G^{-1/2} psi_i (not unit norm) and
/// sum_i elements = I within 1e-10.
struct ProjectorPOVM {
    enum class Kind { raw, symmetrized };

    std::size_t dim = 0;
    Kind kind = Kind::raw;
    std::vector<la::CVector> vectors;     // scaled so element_i = outer(v_i)/dim
    std::vector<VectorLabel> labels;
    VectorSystem source;                  // the unit-vector system it came from
    la::ComplexMatrix frame_operator;     // G = sum outer(psi_i)/dim of the source
    la::ComplexMatrix symmetrizer;        // G^{-1/2}; empty unless symmetrized
    Provenance provenance;

    std::size_t size() const { return vectors.size(); }

    la::ComplexMatrix element(std::size_t i) const {
        la::ComplexMatrix e = la::outer(vectors[i]);
        e *= la::cplx(1.0 / static_cast<double>(dim), 0.0);
        return e;
    }

    std::vector<la::ComplexMatrix> elements() const {
        std::vector<la::ComplexMatrix> out;
        out.reserve(vectors.size());
        for (std::size_t i = 0; i < vectors.size(); ++i) out.push_back(element(i));
        return out;
    }

    la::ComplexMatrix element_sum() const {
        la::ComplexMatrix s(dim, dim);
        for (std::size_t i = 0; i < vectors.size(); ++i) s += element(i);
        return s;
    }
};

/// Monomial phase families: F_d uses degrees 2..d+1, G_d uses degrees 1..d,
/// coefficients 0..n-1 each, so both have n^d members indexed mixed-radix.
struct PolynomialFamily {
    enum class Kind { f_family, g_family };

    std::uint64_t n = 0;
    std::uint64_t d = 0;
    Kind kind = Kind::f_family;

    /// n^d, saturating at UINT64_MAX (memory caps reject long before that).
    std::uint64_t size() const {
        std::uint64_t s = 1;
        for (std::uint64_t i = 0; i < d; ++i) {
            if (n != 0 && s > UINT64_MAX / n) return UINT64_MAX;
            s *= n;
        }
        return s;
    }

    std::uint64_t min_degree() const { return kind == Kind::f_family ? 2 : 1; }

    /// Coefficients of member k: digit j of k base n multiplies X^(min_degree+j).
    std::vector<std::uint64_t> coefficients(std::uint64_t k) const {
        std::vector<std::uint64_t> c(d);
        for (std::uint64_t j = 0; j < d; ++j) {
            c[j] = k % n;
            k /= n;
        }
        return c;
    }

    /// f(u) mod p for integer u.
    std::uint64_t eval_mod(const std::vector<std::uint64_t>& coeffs, std::uint64_t u,
                           std::uint64_t p) const {
        auto mulm = [p](std::uint64_t a, std::uint64_t b) {
            return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
        };
        std::uint64_t um = u % p;
        std::uint64_t upow = 1;
        for (std::uint64_t j = 0; j < min_degree(); ++j) upow = mulm(upow, um);
        std::uint64_t acc = 0;
        for (std::uint64_t j = 0; j < d; ++j) {
            acc = (acc + mulm(coeffs[j] % p, upow)) % p;
            upow = mulm(upow, um);
        }
        return acc;
    }
};

/// Mixed-radix enumeration of a whole family, ascending index.
inline std::vector<std::vector<std::uint64_t>> enumerate_poly_family(const PolynomialFamily& fam) {
    std::vector<std::vector<std::uint64_t>> out;
    out.reserve(fam.size());
    for (std::uint64_t k = 0; k < fam.size(); ++k) out.push_back(fam.coefficients(k));
    return out;
}

} // namespace asicpovm
