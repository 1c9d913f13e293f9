#pragma once

// Primes, primitive roots, roots of unity, multiplicative characters mod p,
// and the order-n subgroup of F_p^x.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace asicpovm::nt {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

namespace detail {

inline bool miller_rabin_witness(std::uint64_t n, std::uint64_t a) {
    // n odd >= 3, 2 <= a <= n-2; returns true if n passes the witness test
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace detail

/// Deterministic for all 64-bit inputs: the fixed witness set
/// {2,3,5,7,11,13,17,19,23,29,31,37} is known to be exact below 3.3e24.
inline bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                            23ULL, 29ULL, 31ULL, 37ULL}) {
        if (m == p) return true;
        if (m % p == 0) return false;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                            23ULL, 29ULL, 31ULL, 37ULL}) {
        if (!detail::miller_rabin_witness(m, a)) return false;
    }
    return true;
}

/// Smallest prime p >= n.
inline std::uint64_t next_prime_geq(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("next_prime_geq: n must be >= 2");
    for (std::uint64_t p = n;; ++p) {
        if (is_prime(p)) return p;
        if (p == UINT64_MAX)
            throw std::overflow_error("next_prime_geq: search exceeded 64 bits");
    }
}

/// Smallest prime p with p = 1 (mod n). Searches p = k*n + 1 up to
/// cap_multiplier * n and throws if none is found in range.
inline std::uint64_t smallest_prime_congruent_1(std::uint64_t n,
                                                std::uint64_t cap_multiplier = 1000000) {
    if (n < 1) throw std::invalid_argument("smallest_prime_congruent_1: n must be >= 1");
    for (std::uint64_t k = 1; k <= cap_multiplier; ++k) {
        std::uint64_t p = k * n + 1;
        if (p <= k) throw std::overflow_error("smallest_prime_congruent_1: overflow");
        if (is_prime(p)) return p;
    }
    throw std::runtime_error("smallest_prime_congruent_1: search limit exceeded for n=" +
                             std::to_string(n));
}

/// Observed ratio p / (n log^2 n) for the least prime p = 1 (mod n).
/// Diagnostic only; 0 for n = 1.
inline double congruent_prime_ratio(std::uint64_t n, std::uint64_t p) {
    if (n <= 1) return 0.0;
    double ln = std::log(static_cast<double>(n));
    return static_cast<double>(p) / (static_cast<double>(n) * ln * ln);
}

/// e_m(z) = exp(2*pi*i*z/m).
inline std::complex<double> root_of_unity(std::uint64_t m, double z) {
    return std::polar(1.0, 2.0 * std::numbers::pi * z / static_cast<double>(m));
}

/// Integer-argument overload; reduces z mod m first (exact, e_m is m-periodic).
inline std::complex<double> root_of_unity(std::uint64_t m, std::int64_t z) {
    std::int64_t mm = static_cast<std::int64_t>(m);
    std::int64_t zr = z % mm;
    if (zr < 0) zr += mm;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(zr) /
                               static_cast<double>(m));
}

namespace detail {

inline std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
    std::vector<std::uint64_t> fac;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            fac.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) fac.push_back(m);
    return fac;
}

} // namespace detail

/// Smallest primitive root mod p.
inline std::uint64_t find_primitive_root(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("find_primitive_root: p must be prime");
    if (p == 2) return 1;
    auto fac = detail::prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (std::uint64_t f : fac) {
            if (pow_mod(g, (p - 1) / f, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("find_primitive_root: no generator found");
}

/// Multiplicative character mod p of exact order n (n | p-1), backed by a
/// discrete-log table for the smallest primitive root g: chi(g^k) = e_n(k).
class Character {
public:
    Character(std::uint64_t p, std::uint64_t n)
        : p_(p), n_(n), g_(find_primitive_root(p)), log_(p, 0) {
        if (!is_prime(p)) throw std::invalid_argument("Character: p must be prime");
        if (n < 1 || (p - 1) % n != 0)
            throw std::invalid_argument("Character: order must divide p-1");
        std::uint64_t x = 1;
        for (std::uint64_t k = 0; k + 1 < p; ++k) {
            log_[x] = k;
            x = mul_mod(x, g_, p_);
        }
    }

    std::uint64_t modulus() const { return p_; }
    std::uint64_t order() const { return n_; }
    std::uint64_t generator() const { return g_; }

    /// ind_g(x) for x != 0 (mod p).
    std::uint64_t log(std::uint64_t x) const {
        x %= p_;
        if (x == 0) throw std::domain_error("Character: log of 0 mod p");
        return log_[x];
    }

    /// chi(x); evaluating at x = 0 (mod p) is a precondition violation.
    std::complex<double> operator()(std::uint64_t x) const {
        return root_of_unity(n_, static_cast<std::int64_t>(log(x) % n_));
    }

    /// chi(x)^e with the exponent applied to the exact phase index.
    std::complex<double> pow(std::uint64_t x, std::uint64_t e) const {
        std::uint64_t k = mul_mod(log(x) % n_, e % n_, n_);
        return root_of_unity(n_, static_cast<std::int64_t>(k));
    }

private:
    std::uint64_t p_, n_, g_;
    std::vector<std::uint64_t> log_;
};

inline Character character_of_order(std::uint64_t p, std::uint64_t n) {
    return Character(p, n);
}

/// U_n = { x in F_p^x : x^n = 1 }, listed in ascending order.
struct SubgroupUn {
    std::uint64_t modulus = 0;
    std::uint64_t order = 0;
    std::vector<std::uint64_t> elements;
};

inline SubgroupUn subgroup_un(std::uint64_t p, std::uint64_t n) {
    if (!is_prime(p)) throw std::invalid_argument("subgroup_un: p must be prime");
    if (n < 1 || (p - 1) % n != 0)
        throw std::invalid_argument("subgroup_un: n must divide p-1");
    std::uint64_t g = find_primitive_root(p);
    std::uint64_t h = pow_mod(g, (p - 1) / n, p);
    SubgroupUn u{p, n, {}};
    u.elements.reserve(n);
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k < n; ++k) {
        u.elements.push_back(x);
        x = mul_mod(x, h, p);
    }
    std::sort(u.elements.begin(), u.elements.end());
    return u;
}

} // namespace asicpovm::nt
