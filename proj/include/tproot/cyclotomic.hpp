#pragma once

// Exact arithmetic in Q(zeta_m).
//
// A value is stored as an element of the group ring Q[x]/(x^m - 1) and read in
// Q(zeta_m) through x -> zeta_m = exp(2 pi i / m). Two group-ring elements are
// equal as cyclotomic numbers when their difference is divisible by Phi_m.
// That test is carried out on a canonical form: for each prime power r^a || m
// the relation 1 + y + ... + y^{r-1} = 0 with y = x^{m/r} removes every exponent
// whose r^a-component has top base-r digit r - 1. What is left is the tensor
// product of the power bases of Q(zeta_{r^a}), which has phi(m) elements.

#include "errors.hpp"
#include "field_core.hpp"

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tproot {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(Rational const& r)
{
    return r.get_str();
}

/// Integer polynomial, low degree first.
using IntPoly = std::vector<Integer>;

/// Phi_m by recursive exact division of x^m - 1 by Phi_d for d | m, d < m.
inline IntPoly cyclotomic_polynomial(u64 m)
{
    if (m == 0)
        throw PreconditionError("cyclotomic_polynomial: modulus must be positive");
    IntPoly num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (u64 const d : divisors(m)) {
        if (d == m)
            continue;
        IntPoly const den = cyclotomic_polynomial(d);
        // exact division by a monic polynomial
        std::size_t const dq = num.size() - den.size();
        IntPoly quot(dq + 1, 0);
        for (std::size_t i = dq + 1; i-- > 0;) {
            Integer const c = num[i + den.size() - 1];
            quot[i] = c;
            if (c != 0)
                for (std::size_t j = 0; j < den.size(); ++j)
                    num[i + j] -= c * den[j];
        }
        num = std::move(quot);
    }
    return num;
}

class CyclotomicNumber
{
public:
    /// Zero in Q(zeta_1) = Q.
    CyclotomicNumber() : m_(1), c_(1, 0) {}

    explicit CyclotomicNumber(u64 modulus) : m_(modulus), c_(modulus, 0)
    {
        if (modulus == 0)
            throw PreconditionError("CyclotomicNumber: modulus must be positive");
    }

    CyclotomicNumber(u64 modulus, std::vector<Rational> coeffs) : m_(modulus), c_(std::move(coeffs))
    {
        if (modulus == 0 || c_.size() != modulus)
            throw PreconditionError("CyclotomicNumber: coefficient vector must have length m");
        for (auto& x : c_)
            x.canonicalize();
    }

    // NOLINTNEXTLINE(google-explicit-constructor)
    CyclotomicNumber(Rational const& r) : m_(1), c_(1, r) { c_[0].canonicalize(); }
    // NOLINTNEXTLINE(google-explicit-constructor)
    CyclotomicNumber(long v) : CyclotomicNumber(Rational(v)) {}
    // NOLINTNEXTLINE(google-explicit-constructor)
    CyclotomicNumber(int v) : CyclotomicNumber(Rational(v)) {}

    /// zeta_m^k.
    static CyclotomicNumber zeta(u64 m, i64 k = 1)
    {
        CyclotomicNumber z(m);
        z.c_[mod(k, m)] = 1;
        return z;
    }

    [[nodiscard]] u64 modulus() const { return m_; }
    [[nodiscard]] std::vector<Rational> const& coeffs() const { return c_; }

    /// Same value viewed in Q(zeta_M); M must be a multiple of the modulus.
    [[nodiscard]] CyclotomicNumber lift(u64 M) const
    {
        if (M % m_ != 0)
            throw PreconditionError("CyclotomicNumber::lift: target modulus is not a multiple");
        if (M == m_)
            return *this;
        CyclotomicNumber out(M);
        u64 const step = M / m_;
        for (u64 k = 0; k < m_; ++k)
            out.c_[k * step] = c_[k];
        return out;
    }

    friend CyclotomicNumber operator+(CyclotomicNumber const& a, CyclotomicNumber const& b)
    {
        u64 const M = std::lcm(a.m_, b.m_);
        CyclotomicNumber out = a.lift(M);
        u64 const step = M / b.m_;
        for (u64 k = 0; k < b.m_; ++k)
            if (sgn(b.c_[k]) != 0)
                out.c_[k * step] += b.c_[k];
        return out;
    }

    CyclotomicNumber operator-() const
    {
        CyclotomicNumber out = *this;
        for (auto& c : out.c_)
            c = -c;
        return out;
    }

    friend CyclotomicNumber operator-(CyclotomicNumber const& a, CyclotomicNumber const& b)
    {
        return a + (-b);
    }

    friend CyclotomicNumber operator*(CyclotomicNumber const& a, CyclotomicNumber const& b)
    {
        u64 const M = std::lcm(a.m_, b.m_);
        u64 const sa = M / a.m_, sb = M / b.m_;
        std::vector<std::pair<u64, Rational const*>> nb;
        for (u64 j = 0; j < b.m_; ++j)
            if (sgn(b.c_[j]) != 0)
                nb.emplace_back(j * sb, &b.c_[j]);
        CyclotomicNumber out(M);
        Rational tmp;
        for (u64 i = 0; i < a.m_; ++i) {
            if (sgn(a.c_[i]) == 0)
                continue;
            u64 const ei = i * sa;
            for (auto const& [ej, cj] : nb) {
                u64 k = ei + ej;
                if (k >= M)
                    k -= M;
                mpq_mul(tmp.get_mpq_t(), a.c_[i].get_mpq_t(), cj->get_mpq_t());
                out.c_[k] += tmp;
            }
        }
        return out;
    }

    CyclotomicNumber& operator+=(CyclotomicNumber const& b) { return *this = *this + b; }
    CyclotomicNumber& operator*=(CyclotomicNumber const& b) { return *this = *this * b; }

    [[nodiscard]] CyclotomicNumber pow(u64 e) const
    {
        CyclotomicNumber result = Rational(1);
        CyclotomicNumber base = *this;
        while (e > 0) {
            if (e & 1U)
                result = result * base;
            e >>= 1U;
            if (e > 0)
                base = (base * base).canonical();
        }
        return result.canonical();
    }

    /// Complex conjugation, x^k -> x^{-k}.
    [[nodiscard]] CyclotomicNumber conjugate() const { return galois(static_cast<i64>(m_) - 1); }

    /// The automorphism zeta_m -> zeta_m^i; i must be coprime to m.
    [[nodiscard]] CyclotomicNumber galois(i64 i) const
    {
        u64 const ui = mod(i, m_);
        if (std::gcd(ui, m_) != 1)
            throw PreconditionError("CyclotomicNumber::galois: exponent not coprime to modulus");
        CyclotomicNumber out(m_);
        for (u64 k = 0; k < m_; ++k)
            if (sgn(c_[k]) != 0)
                out.c_[mul_mod(k, ui, m_)] += c_[k];
        return out;
    }

    /// Canonical representative modulo Phi_m (see file comment).
    [[nodiscard]] CyclotomicNumber canonical() const
    {
        CyclotomicNumber out = *this;
        u64 rest = m_;
        for (u64 const r : prime_divisors(m_)) {
            u64 ra = 1;
            while (rest % r == 0) {
                rest /= r;
                ra *= r;
            }
            u64 const top = (r - 1) * (ra / r); // first exponent with top digit r-1
            u64 const shift = m_ / r;
            for (u64 k = 0; k < m_; ++k) {
                if (k % ra < top || sgn(out.c_[k]) == 0)
                    continue;
                Rational const c = out.c_[k];
                out.c_[k] = 0;
                u64 t = k;
                for (u64 j = 1; j < r; ++j) {
                    t += shift;
                    if (t >= m_)
                        t -= m_;
                    out.c_[t] -= c;
                }
            }
        }
        return out;
    }

    [[nodiscard]] bool is_zero() const
    {
        auto const c = canonical();
        return std::all_of(c.c_.begin(), c.c_.end(), [](Rational const& v) { return sgn(v) == 0; });
    }

    friend bool operator==(CyclotomicNumber const& a, CyclotomicNumber const& b)
    {
        return (a - b).is_zero();
    }

    /// The rational value if this number lies in Q.
    [[nodiscard]] std::optional<Rational> as_rational() const
    {
        auto const c = canonical();
        for (u64 k = 1; k < c.m_; ++k)
            if (sgn(c.c_[k]) != 0)
                return std::nullopt;
        return c.c_[0];
    }

    /// The same number over an even modulus, where -1 is a power of zeta.
    [[nodiscard]] CyclotomicNumber even_lift() const { return m_ % 2 == 0 ? *this : lift(2 * m_); }

    /// If the value is r * zeta_m^k with r rational, returns (r, k) with r > 0.
    /// Negative multiples are only found when m is even; see even_lift().
    [[nodiscard]] std::optional<std::pair<Rational, u64>> as_scaled_root_of_unity() const
    {
        auto const c = canonical();
        for (u64 k = 0; k < m_; ++k) {
            auto const r = (c * zeta(m_, -static_cast<i64>(k))).as_rational();
            if (r && sgn(*r) > 0)
                return std::make_pair(*r, k);
        }
        return std::nullopt;
    }

    /// Value under the fixed embedding zeta_m = exp(2 pi i / m).
    [[nodiscard]] std::complex<double> to_complex() const
    {
        std::complex<double> z{0.0, 0.0};
        for (u64 k = 0; k < m_; ++k) {
            if (sgn(c_[k]) == 0)
                continue;
            double const angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m_);
            z += c_[k].get_d() * std::polar(1.0, angle);
        }
        return z;
    }

    /// Human-readable canonical form, e.g. "-1" or "1 + 2*z^3" (z = zeta_m).
    [[nodiscard]] std::string to_string() const
    {
        auto const c = canonical();
        if (auto r = c.as_rational())
            return r->get_str();
        std::ostringstream out;
        bool first = true;
        for (u64 k = 0; k < m_; ++k) {
            if (sgn(c.c_[k]) == 0)
                continue;
            Rational v = c.c_[k];
            if (!first)
                out << (sgn(v) < 0 ? " - " : " + ");
            else if (sgn(v) < 0)
                out << "-";
            first = false;
            v = abs(v);
            if (k == 0) {
                out << v.get_str();
                continue;
            }
            if (v != 1)
                out << v.get_str() << "*";
            out << "z" << m_ << "^" << k;
        }
        return out.str();
    }

private:
    u64 m_;
    std::vector<Rational> c_;
};

/// Remainder of a group-ring element (as a polynomial of degree < m) modulo
/// Phi_m, computed by long division. Independent of `canonical()`.
inline std::vector<Rational> reduce_by_cyclotomic_polynomial(CyclotomicNumber const& a)
{
    IntPoly const phi = cyclotomic_polynomial(a.modulus());
    std::vector<Rational> r = a.coeffs();
    std::size_t const deg = phi.size() - 1;
    for (std::size_t i = r.size(); i-- > deg;) {
        if (sgn(r[i]) == 0)
            continue;
        Rational const c = r[i];
        for (std::size_t j = 0; j <= deg; ++j)
            r[i - deg + j] -= c * Rational(phi[j]);
    }
    r.resize(deg);
    return r;
}

} // namespace tproot
