#pragma once

// Finite field F_{p^r} arithmetic in the power basis, with the absolute trace
// to the prime subfield. The modulus is the lexicographically smallest monic
// irreducible polynomial of degree r over F_p, so element enumeration and all
// derived vector systems are reproducible across runs and platforms.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "asicpovm/numtheory.hpp"

namespace asicpovm::ff {

class FiniteField;

/// Element of F_{p^r}: coefficient vector c[0..r-1] (c[i] multiplies X^i),
/// entries reduced mod p. Created only through its owning field.
struct FieldElement {
    std::vector<std::uint32_t> coeffs;
    const FiniteField* field = nullptr;

    bool operator==(const FieldElement& other) const {
        return field == other.field && coeffs == other.coeffs;
    }
};

namespace detail {

using Poly = std::vector<std::uint32_t>; // coeffs, index = degree

inline Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, std::uint32_t p) {
    std::size_t r = mod.size() - 1;
    std::vector<std::uint64_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
    for (std::size_t d = out.size(); d-- > r;) {
        std::uint64_t c = out[d];
        if (c == 0) continue;
        out[d] = 0;
        for (std::size_t k = 0; k <= r; ++k) {
            std::uint64_t sub = (c * mod[k]) % p;
            out[d - r + k] = (out[d - r + k] + p - sub) % p;
        }
    }
    Poly res(r, 0);
    for (std::size_t i = 0; i < r && i < out.size(); ++i)
        res[i] = static_cast<std::uint32_t>(out[i]);
    return res;
}

inline Poly poly_pow_mod(Poly base, std::uint64_t e, const Poly& mod, std::uint32_t p) {
    std::size_t r = mod.size() - 1;
    Poly result(r, 0);
    result[0] = 1;
    while (e > 0) {
        if (e & 1) result = poly_mul_mod(result, base, mod, p);
        base = poly_mul_mod(base, base, mod, p);
        e >>= 1;
    }
    return result;
}

inline Poly poly_trim(Poly a) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    return a;
}

// gcd of polynomials over F_p; {0} encodes the zero polynomial
inline Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    auto inv_mod = [p](std::uint32_t v) {
        std::uint32_t result = 1, base = v, e = p - 2;
        while (e) {
            if (e & 1) result = static_cast<std::uint64_t>(result) * base % p;
            base = static_cast<std::uint64_t>(base) * base % p;
            e >>= 1;
        }
        return result;
    };
    auto is_zero = [](const Poly& v) { return v.size() == 1 && v[0] == 0; };
    auto mod_reduce = [&](Poly num, const Poly& den) {
        num = poly_trim(std::move(num));
        if (den.size() == 1) return Poly{0}; // nonzero constant divides everything
        std::uint32_t lead_inv = inv_mod(den.back());
        while (!is_zero(num) && num.size() >= den.size()) {
            std::uint64_t c = static_cast<std::uint64_t>(num.back()) * lead_inv % p;
            std::size_t shift = num.size() - den.size();
            for (std::size_t i = 0; i < den.size(); ++i)
                num[shift + i] = static_cast<std::uint32_t>(
                    (num[shift + i] + static_cast<std::uint64_t>(p) * p - c * den[i] % p) % p);
            num = poly_trim(std::move(num)); // top coefficient cancelled exactly
        }
        return num;
    };
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!is_zero(b)) {
        Poly r = mod_reduce(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// f monic of degree r (coeffs size r+1, top = 1), irreducible over F_p iff
// X^(p^r) = X mod f and gcd(X^(p^(r/t)) - X mod f, f) = 1 for every prime t | r.
inline bool is_irreducible(const Poly& mod, std::uint32_t p) {
    std::size_t r = mod.size() - 1;
    if (r == 1) return true;
    Poly x(r, 0);
    x[1] = 1;
    auto frob_power = [&](std::size_t k) {
        Poly h = x;
        for (std::size_t j = 0; j < k; ++j) h = poly_pow_mod(h, p, mod, p);
        return h;
    };
    if (frob_power(r) != x) return false;
    std::size_t rr = r;
    std::vector<std::size_t> primes;
    for (std::size_t d = 2; d * d <= rr; ++d) {
        if (rr % d == 0) {
            primes.push_back(d);
            while (rr % d == 0) rr /= d;
        }
    }
    if (rr > 1) primes.push_back(rr);
    for (std::size_t t : primes) {
        Poly diff = frob_power(r / t);
        diff[1] = (diff[1] + p - 1) % p; // subtract X
        Poly mod_full = mod;             // gcd against f itself (degree r)
        Poly g = poly_gcd(poly_trim(std::move(diff)), mod_full, p);
        if (!(g.size() == 1 && g[0] != 0)) return false;
    }
    return true;
}

} // namespace detail

/// F_{p^r} for an odd prime p. Elements are indexed 0..q-1 by reading the
/// coefficient vector as base-p digits (least significant = constant term),
/// which orders them lexicographically most-significant-coefficient-first;
/// index 0 is the zero element.
class FiniteField {
public:
    FiniteField(std::uint64_t p, std::uint32_t r, std::uint64_t cardinality_cap = 1ULL << 20)
        : p_(static_cast<std::uint32_t>(p)), r_(r) {
        if (!nt::is_prime(p) || p == 2)
            throw std::invalid_argument("FiniteField: characteristic must be an odd prime");
        if (r < 1) throw std::invalid_argument("FiniteField: extension degree must be >= 1");
        q_ = 1;
        for (std::uint32_t i = 0; i < r; ++i) {
            q_ *= p;
            if (q_ > cardinality_cap)
                throw std::invalid_argument("FiniteField: p^r exceeds cardinality cap");
        }
        if (r_ == 1) {
            modulus_ = {0, 1}; // X - 0 convention for the prime field
        } else {
            bool found = false;
            for (std::uint64_t k = 0; k < q_; ++k) {
                detail::Poly mod(r_ + 1, 0);
                std::uint64_t kk = k;
                for (std::uint32_t i = 0; i < r_; ++i) {
                    mod[i] = static_cast<std::uint32_t>(kk % p_);
                    kk /= p_;
                }
                mod[r_] = 1;
                if (detail::is_irreducible(mod, p_)) {
                    modulus_ = mod;
                    found = true;
                    break;
                }
            }
            if (!found) throw std::logic_error("FiniteField: no irreducible modulus found");
        }
    }

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t extension_degree() const { return r_; }
    std::uint64_t cardinality() const { return q_; }

    /// Modulus coefficients c[0..r] of X^r + c[r-1]X^{r-1} + ... + c[0] (c[r] = 1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    FieldElement zero() const { return make(std::vector<std::uint32_t>(r_, 0)); }

    FieldElement one() const {
        std::vector<std::uint32_t> c(r_, 0);
        c[0] = 1;
        return make(c);
    }

    /// Embedding of a prime-field residue.
    FieldElement from_prime(std::uint64_t c) const {
        std::vector<std::uint32_t> v(r_, 0);
        v[0] = static_cast<std::uint32_t>(c % p_);
        return make(v);
    }

    FieldElement element_at(std::uint64_t index) const {
        if (index >= q_) throw std::out_of_range("FiniteField: element index out of range");
        std::vector<std::uint32_t> c(r_, 0);
        for (std::uint32_t i = 0; i < r_; ++i) {
            c[i] = static_cast<std::uint32_t>(index % p_);
            index /= p_;
        }
        return make(c);
    }

    std::uint64_t index_of(const FieldElement& a) const {
        check(a);
        std::uint64_t idx = 0;
        for (std::uint32_t i = r_; i-- > 0;) idx = idx * p_ + a.coeffs[i];
        return idx;
    }

    /// All q elements, index order (zero first).
    std::vector<FieldElement> enumerate() const {
        std::vector<FieldElement> out;
        out.reserve(q_);
        for (std::uint64_t k = 0; k < q_; ++k) out.push_back(element_at(k));
        return out;
    }

    FieldElement add(const FieldElement& a, const FieldElement& b) const {
        check(a);
        check(b);
        std::vector<std::uint32_t> c(r_);
        for (std::uint32_t i = 0; i < r_; ++i) c[i] = (a.coeffs[i] + b.coeffs[i]) % p_;
        return make(c);
    }

    FieldElement sub(const FieldElement& a, const FieldElement& b) const {
        check(a);
        check(b);
        std::vector<std::uint32_t> c(r_);
        for (std::uint32_t i = 0; i < r_; ++i) c[i] = (a.coeffs[i] + p_ - b.coeffs[i]) % p_;
        return make(c);
    }

    FieldElement neg(const FieldElement& a) const {
        check(a);
        std::vector<std::uint32_t> c(r_);
        for (std::uint32_t i = 0; i < r_; ++i) c[i] = (p_ - a.coeffs[i]) % p_;
        return make(c);
    }

    FieldElement mul(const FieldElement& a, const FieldElement& b) const {
        check(a);
        check(b);
        if (r_ == 1)
            return from_prime(static_cast<std::uint64_t>(a.coeffs[0]) * b.coeffs[0] % p_);
        return make(detail::poly_mul_mod(a.coeffs, b.coeffs, modulus_, p_));
    }

    FieldElement pow(const FieldElement& a, std::uint64_t e) const {
        check(a);
        if (r_ == 1) return from_prime(nt::pow_mod(a.coeffs[0], e, p_));
        return make(detail::poly_pow_mod(a.coeffs, e, modulus_, p_));
    }

    FieldElement inv(const FieldElement& a) const {
        check(a);
        if (is_zero(a)) throw std::domain_error("FiniteField: inverse of zero");
        return pow(a, q_ - 2);
    }

    bool is_zero(const FieldElement& a) const {
        check(a);
        for (auto c : a.coeffs)
            if (c != 0) return false;
        return true;
    }

    /// Absolute trace Tr(a) = sum_{j=0}^{r-1} a^(p^j), as a residue in 0..p-1.
    std::uint32_t trace_to_prime(const FieldElement& a) const {
        check(a);
        FieldElement acc = a;
        FieldElement b = a;
        for (std::uint32_t j = 1; j < r_; ++j) {
            b = pow(b, p_);
            acc = add(acc, b);
        }
        for (std::uint32_t i = 1; i < r_; ++i) {
            if (acc.coeffs[i] != 0)
                throw std::logic_error("FiniteField: trace not in prime subfield");
        }
        return acc.coeffs[0];
    }

private:
    FieldElement make(std::vector<std::uint32_t> c) const {
        FieldElement e;
        e.coeffs = std::move(c);
        e.field = this;
        return e;
    }

    void check(const FieldElement& a) const {
        if (a.field != this)
            throw std::invalid_argument("FiniteField: element belongs to a different field");
        if (a.coeffs.size() != r_)
            throw std::invalid_argument("FiniteField: malformed element");
    }

    std::uint32_t p_;
    std::uint32_t r_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
};

inline FiniteField make_field(std::uint64_t p, std::uint32_t r,
                              std::uint64_t cardinality_cap = 1ULL << 20) {
    return FiniteField(p, r, cardinality_cap);
}

/// Writes q = p^r with p prime; returns false if q is not a prime power.
inline bool factor_prime_power(std::uint64_t q, std::uint64_t& p_out, std::uint32_t& r_out) {
    if (q < 2) return false;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            std::uint64_t m = q;
            std::uint32_t r = 0;
            while (m % d == 0) {
                m /= d;
                ++r;
            }
            if (m != 1) return false;
            p_out = d;
            r_out = r;
            return true;
        }
    }
    p_out = q; // q itself prime
    r_out = 1;
    return true;
}

} // namespace asicpovm::ff
