#pragma once

#include <tproot/tproot.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace tproot::testing {

inline std::vector<i64> odd_primes_up_to(i64 bound)
{
    std::vector<i64> out;
    for (i64 n = 3; n <= bound; n += 2)
        if (is_prime(n))
            out.push_back(n);
    return out;
}

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed0000ULL + salt); }

inline i64 uniform(std::mt19937_64& g, i64 lo, i64 hi)
{
    return lo + static_cast<i64>(g() % static_cast<u64>(hi - lo + 1));
}

/// Random element of Q(zeta_m) with small integer coefficients on a few exponents.
inline CyclotomicNumber random_cyclotomic(std::mt19937_64& g, u64 m, int terms = 4)
{
    std::vector<Rational> c(m, 0);
    for (int t = 0; t < terms; ++t)
        c[static_cast<std::size_t>(g() % m)] += Rational(uniform(g, -5, 5), static_cast<unsigned long>(uniform(g, 1, 3)));
    return {m, c};
}

inline std::array<std::array<int, 3>, 8> all_sign_patterns()
{
    std::array<std::array<int, 3>, 8> out{};
    for (int mask = 0; mask < 8; ++mask)
        for (int i = 0; i < 3; ++i)
            out[static_cast<std::size_t>(mask)][static_cast<std::size_t>(i)] = (mask >> i) & 1 ? -1 : 1;
    return out;
}

inline Integer ipow(i64 base, unsigned long e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

} // namespace tproot::testing
