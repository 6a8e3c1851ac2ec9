#pragma once

// Prime fields, extension fields F_{l^k} and the small number-theoretic
// helpers shared by the rest of the library.

#include "errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace tproot {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// ---------------------------------------------------------------------------
// Integer helpers
// ---------------------------------------------------------------------------

/// Trial division; adequate for the sizes handled here.
constexpr bool is_prime(i64 n)
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (i64 d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

/// Non-negative residue of a modulo m.
constexpr u64 mod(i64 a, u64 m)
{
    i64 const r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

constexpr u64 mul_mod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

constexpr u64 pow_mod(u64 base, u64 exp, u64 m)
{
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U)
            result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

/// Inverse of a modulo a prime q (a must be a unit).
inline u64 inv_mod(u64 a, u64 q)
{
    i64 t = 0, new_t = 1;
    i64 r = static_cast<i64>(q), new_r = static_cast<i64>(a % q);
    while (new_r != 0) {
        i64 const quotient = r / new_r;
        t = std::exchange(new_t, t - quotient * new_t);
        r = std::exchange(new_r, r - quotient * new_r);
    }
    if (r != 1)
        throw ZeroArgument("inv_mod: " + std::to_string(a) + " is not invertible modulo " +
                           std::to_string(q));
    return mod(t, q);
}

/// Distinct prime divisors in increasing order.
inline std::vector<u64> prime_divisors(u64 n)
{
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

/// All positive divisors in increasing order.
inline std::vector<u64> divisors(u64 n)
{
    std::vector<u64> small, large;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d)
                large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline u64 euler_phi(u64 n)
{
    u64 result = n;
    for (u64 const r : prime_divisors(n))
        result = result / r * (r - 1);
    return result;
}

/// Multiplicative order of a modulo n (a must be a unit).
inline u64 multiplicative_order(u64 a, u64 n)
{
    a %= n;
    if (std::gcd(a, n) != 1)
        throw PreconditionError("multiplicative_order: not a unit");
    u64 const phi = euler_phi(n);
    for (u64 const d : divisors(phi))
        if (pow_mod(a, d, n) == 1 % n)
            return d;
    return phi;
}

inline void require_prime(i64 q, char const* where)
{
    if (!is_prime(q))
        throw InvalidField(std::string(where) + ": " + std::to_string(q) + " is not prime");
}

inline void require_odd_prime(i64 p, char const* where)
{
    if (p == 2 || !is_prime(p))
        throw InvalidField(std::string(where) + ": " + std::to_string(p) +
                           " is not an odd prime");
}

/// Quadratic residue symbol (a/p) for an odd prime p.
inline int legendre_symbol(i64 a, i64 p)
{
    require_odd_prime(p, "legendre_symbol");
    u64 const r = mod(a, static_cast<u64>(p));
    if (r == 0)
        return 0;
    return pow_mod(r, static_cast<u64>(p - 1) / 2, static_cast<u64>(p)) == 1 ? 1 : -1;
}

inline bool is_square_unit(i64 a, i64 p) { return legendre_symbol(a, p) == 1; }

/// Smallest positive non-square modulo the odd prime p.
inline u64 smallest_nonsquare(i64 p)
{
    for (i64 a = 2; a < p; ++a)
        if (legendre_symbol(a, p) == -1)
            return static_cast<u64>(a);
    throw InvalidField("smallest_nonsquare: no non-square modulo " + std::to_string(p));
}

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

class FpElement
{
public:
    FpElement() = default;
    FpElement(i64 value, u64 modulus) : value_(mod(value, modulus)), modulus_(modulus) {}

    [[nodiscard]] u64 value() const { return value_; }
    [[nodiscard]] u64 modulus() const { return modulus_; }
    [[nodiscard]] bool is_zero() const { return value_ == 0; }

    /// Representative in (-q/2, q/2].
    [[nodiscard]] i64 centered() const
    {
        auto const v = static_cast<i64>(value_);
        return 2 * value_ > modulus_ ? v - static_cast<i64>(modulus_) : v;
    }

    friend bool operator==(FpElement const&, FpElement const&) = default;

    friend FpElement operator+(FpElement a, FpElement const& b)
    {
        check(a, b);
        a.value_ = (a.value_ + b.value_) % a.modulus_;
        return a;
    }
    friend FpElement operator-(FpElement a, FpElement const& b)
    {
        check(a, b);
        a.value_ = (a.value_ + a.modulus_ - b.value_) % a.modulus_;
        return a;
    }
    friend FpElement operator*(FpElement a, FpElement const& b)
    {
        check(a, b);
        a.value_ = mul_mod(a.value_, b.value_, a.modulus_);
        return a;
    }
    FpElement operator-() const { return {static_cast<i64>(modulus_ - value_) % static_cast<i64>(modulus_), modulus_}; }

    [[nodiscard]] FpElement inverse() const
    {
        if (is_zero())
            throw ZeroArgument("FpElement::inverse of zero");
        return {static_cast<i64>(inv_mod(value_, modulus_)), modulus_};
    }
    friend FpElement operator/(FpElement const& a, FpElement const& b) { return a * b.inverse(); }

    [[nodiscard]] FpElement pow(u64 e) const
    {
        return {static_cast<i64>(pow_mod(value_, e, modulus_)), modulus_};
    }

private:
    static void check(FpElement const& a, FpElement const& b)
    {
        if (a.modulus_ != b.modulus_)
            throw PrimeMismatch("FpElement: mixed moduli");
    }

    u64 value_ = 0;
    u64 modulus_ = 2;
};

/// Factory for elements of F_q that validates the modulus once.
class PrimeField
{
public:
    explicit PrimeField(i64 q) : q_(static_cast<u64>(q)) { require_prime(q, "PrimeField"); }

    [[nodiscard]] u64 order() const { return q_; }
    [[nodiscard]] FpElement operator()(i64 v) const { return {v, q_}; }
    [[nodiscard]] FpElement zero() const { return {0, q_}; }
    [[nodiscard]] FpElement one() const { return {1, q_}; }

private:
    u64 q_;
};

/// Smallest positive integer generating F_q^x.
inline FpElement primitive_root(i64 q)
{
    require_prime(q, "primitive_root");
    auto const uq = static_cast<u64>(q);
    if (q == 2)
        return {1, uq};
    auto const factors = prime_divisors(uq - 1);
    for (u64 g = 2; g < uq; ++g) {
        bool const generates = std::all_of(factors.begin(), factors.end(), [&](u64 r) {
            return pow_mod(g, (uq - 1) / r, uq) != 1;
        });
        if (generates)
            return {static_cast<i64>(g), uq};
    }
    throw InternalInconsistency("primitive_root: no generator found");
}

/// Discrete logarithm by scanning exponents 0..order-1. The base must have
/// exact prime order `order`.
template <typename Element, typename Mul, typename Eq>
u64 discrete_log(Element const& base, Element const& value, u64 order, Element const& one,
                 Mul mul, Eq equal)
{
    Element acc = one;
    for (u64 e = 0; e < order; ++e) {
        if (equal(acc, value))
            return e;
        acc = mul(acc, base);
    }
    if (!equal(acc, one))
        throw PreconditionError("discrete_log: base does not have the stated order");
    throw NotInSubgroup("discrete_log: value is not a power of the base");
}

/// Discrete log in F_q^x with respect to a base of exact prime order `order`.
inline u64 discrete_log(FpElement const& base, FpElement const& value, u64 order)
{
    FpElement const one{1, base.modulus()};
    if (base == one || base.pow(order) != one)
        throw PreconditionError("discrete_log: base does not have exact order " +
                                std::to_string(order));
    return discrete_log(
        base, value, order, one, [](auto const& a, auto const& b) { return a * b; },
        [](auto const& a, auto const& b) { return a == b; });
}

// ---------------------------------------------------------------------------
// Polynomials over F_l (coefficients low degree first, no trailing zeros)
// ---------------------------------------------------------------------------

namespace poly {

using Poly = std::vector<u64>;

inline void trim(Poly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

inline Poly sub(Poly a, Poly const& b, u64 l)
{
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = (a[i] + l - b[i]) % l;
    trim(a);
    return a;
}

inline Poly mul(Poly const& a, Poly const& b, u64 l)
{
    if (a.empty() || b.empty())
        return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + mul_mod(a[i], b[j], l)) % l;
    }
    trim(out);
    return out;
}

/// Quotient and remainder; divisor must be non-zero.
inline std::pair<Poly, Poly> divmod(Poly a, Poly const& b, u64 l)
{
    trim(a);
    if (b.empty())
        throw ZeroArgument("poly::divmod by zero polynomial");
    if (a.size() < b.size())
        return {{}, a};
    u64 const lead_inv = inv_mod(b.back(), l);
    Poly q(a.size() - b.size() + 1, 0);
    for (std::size_t i = a.size() - 1; i + 1 >= b.size(); --i) {
        u64 const c = mul_mod(a[i], lead_inv, l);
        std::size_t const shift = i - (b.size() - 1);
        q[shift] = c;
        if (c != 0)
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] = (a[shift + j] + l - mul_mod(c, b[j], l)) % l;
        if (i == 0)
            break;
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline Poly rem(Poly const& a, Poly const& b, u64 l) { return divmod(a, b, l).second; }

inline Poly gcd(Poly a, Poly b, u64 l)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, l);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 const inv = inv_mod(a.back(), l);
        for (auto& c : a)
            c = mul_mod(c, inv, l);
    }
    return a;
}

/// base^exp mod f.
inline Poly powmod(Poly base, mpz_class exp, Poly const& f, u64 l)
{
    Poly result{1 % l};
    trim(result);
    base = rem(base, f, l);
    while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t()))
            result = rem(mul(result, base, l), f, l);
        base = rem(mul(base, base, l), f, l);
        exp >>= 1;
    }
    return result;
}

inline std::string to_string(Poly const& f)
{
    if (f.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = f.size(); i-- > 0;) {
        if (f[i] == 0)
            continue;
        if (!first)
            out << " + ";
        first = false;
        if (i == 0 || f[i] != 1)
            out << f[i];
        if (i > 0)
            out << "x" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    return out.str();
}

} // namespace poly

/// True iff the monic polynomial f of degree k has no factor of degree d < k,
/// tested through gcd(f, x^{l^d} - x) for every proper divisor d of k.
inline bool is_irreducible(poly::Poly const& f, u64 l)
{
    std::size_t const k = f.size() - 1;
    if (k == 1)
        return true;
    poly::Poly const x{0, 1};
    poly::Poly xpow = x;
    std::vector<poly::Poly> frobenius_powers; // x^{l^d} mod f, d = 1..k
    for (std::size_t d = 1; d <= k; ++d) {
        xpow = poly::powmod(xpow, mpz_class(static_cast<unsigned long>(l)), f, l);
        frobenius_powers.push_back(xpow);
    }
    if (poly::sub(frobenius_powers.back(), x, l) != poly::Poly{})
        return false;
    for (std::size_t d = 1; d < k; ++d) {
        if (k % d != 0)
            continue;
        auto const g = poly::gcd(f, poly::sub(frobenius_powers[d - 1], x, l), l);
        if (g.size() > 1)
            return false;
    }
    return true;
}

/// F_{l^k} = F_l[x]/(modulus).
struct ExtField
{
    u64 characteristic;
    std::size_t degree;
    poly::Poly modulus; ///< monic, degree `degree`, low degree first

    [[nodiscard]] mpz_class order() const
    {
        mpz_class q;
        mpz_ui_pow_ui(q.get_mpz_t(), characteristic, degree);
        return q;
    }
};

using ExtFieldPtr = std::shared_ptr<ExtField const>;

/// Descriptor for F_{l^k} with the lexicographically smallest monic irreducible
/// polynomial of degree k (coefficients compared from x^{k-1} down to x^0).
inline ExtFieldPtr build_extension(i64 l, std::size_t k)
{
    require_prime(l, "build_extension");
    if (k == 0)
        throw PreconditionError("build_extension: degree must be positive");
    auto const ul = static_cast<u64>(l);
    if (k == 1)
        return std::make_shared<ExtField const>(ExtField{ul, 1, {0, 1}});

    std::vector<u64> digits(k, 0); // digits[0] is the x^{k-1} coefficient
    while (true) {
        poly::Poly f(k + 1, 0);
        f[k] = 1;
        for (std::size_t i = 0; i < k; ++i)
            f[k - 1 - i] = digits[i];
        if (f[0] != 0 && is_irreducible(f, ul))
            return std::make_shared<ExtField const>(ExtField{ul, k, f});
        std::size_t pos = k;
        while (pos-- > 0) {
            if (++digits[pos] < ul)
                break;
            digits[pos] = 0;
        }
        if (pos == static_cast<std::size_t>(-1))
            throw InternalInconsistency("build_extension: no irreducible polynomial found");
    }
}

/// Element of F_{l^k}; coefficients low degree first, always length k.
class ExtFieldElement
{
public:
    ExtFieldElement() = default;
    explicit ExtFieldElement(ExtFieldPtr field) : field_(std::move(field)), coeffs_(field_->degree, 0) {}
    ExtFieldElement(ExtFieldPtr field, std::vector<u64> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs))
    {
        coeffs_.resize(field_->degree, 0);
        for (auto& c : coeffs_)
            c %= field_->characteristic;
    }

    static ExtFieldElement constant(ExtFieldPtr const& field, i64 v)
    {
        ExtFieldElement e(field);
        e.coeffs_[0] = mod(v, field->characteristic);
        return e;
    }

    [[nodiscard]] ExtFieldPtr const& field() const { return field_; }
    [[nodiscard]] std::vector<u64> const& coeffs() const { return coeffs_; }
    [[nodiscard]] bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
    }
    [[nodiscard]] bool is_one() const
    {
        return coeffs_[0] == 1 % field_->characteristic &&
               std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](u64 c) { return c == 0; });
    }

    friend bool operator==(ExtFieldElement const& a, ExtFieldElement const& b)
    {
        return a.coeffs_ == b.coeffs_;
    }

    friend ExtFieldElement operator+(ExtFieldElement a, ExtFieldElement const& b)
    {
        u64 const l = a.field_->characteristic;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            a.coeffs_[i] = (a.coeffs_[i] + b.coeffs_[i]) % l;
        return a;
    }
    friend ExtFieldElement operator-(ExtFieldElement a, ExtFieldElement const& b)
    {
        u64 const l = a.field_->characteristic;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            a.coeffs_[i] = (a.coeffs_[i] + l - b.coeffs_[i]) % l;
        return a;
    }
    ExtFieldElement operator-() const { return ExtFieldElement(field_) - *this; }

    friend ExtFieldElement operator*(ExtFieldElement const& a, ExtFieldElement const& b)
    {
        auto const& F = *a.field_;
        u64 const l = F.characteristic;
        std::size_t const k = F.degree;
        std::vector<unsigned __int128> acc(2 * k - 1, 0);
        for (std::size_t i = 0; i < k; ++i) {
            if (a.coeffs_[i] == 0)
                continue;
            for (std::size_t j = 0; j < k; ++j)
                acc[i + j] += static_cast<unsigned __int128>(a.coeffs_[i]) * b.coeffs_[j];
        }
        std::vector<u64> prod(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i)
            prod[i] = static_cast<u64>(acc[i] % l);
        // reduce with the monic modulus: x^k = -sum_{i<k} m_i x^i
        for (std::size_t i = prod.size(); i-- > k;) {
            u64 const c = prod[i];
            if (c == 0)
                continue;
            prod[i] = 0;
            for (std::size_t j = 0; j < k; ++j)
                prod[i - k + j] = (prod[i - k + j] + l - mul_mod(c, F.modulus[j], l)) % l;
        }
        prod.resize(k);
        return {a.field_, std::move(prod)};
    }

    [[nodiscard]] ExtFieldElement inverse() const
    {
        if (is_zero())
            throw ZeroArgument("ExtFieldElement::inverse of zero");
        u64 const l = field_->characteristic;
        // extended Euclid on (modulus, self)
        poly::Poly r0 = field_->modulus, r1 = coeffs_;
        poly::trim(r1);
        poly::Poly t0{}, t1{1};
        while (r1.size() > 1) {
            auto [q, r] = poly::divmod(r0, r1, l);
            poly::Poly t = poly::sub(t0, poly::mul(q, t1, l), l);
            r0 = std::move(r1);
            r1 = std::move(r);
            t0 = std::move(t1);
            t1 = std::move(t);
        }
        u64 const c = inv_mod(r1[0], l);
        std::vector<u64> out(field_->degree, 0);
        for (std::size_t i = 0; i < t1.size(); ++i)
            out[i] = mul_mod(t1[i], c, l);
        return {field_, std::move(out)};
    }

    friend ExtFieldElement operator/(ExtFieldElement const& a, ExtFieldElement const& b)
    {
        return a * b.inverse();
    }

    [[nodiscard]] ExtFieldElement pow(mpz_class e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        ExtFieldElement result = constant(field_, 1);
        ExtFieldElement base = *this;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t()))
                result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }
    [[nodiscard]] ExtFieldElement pow(u64 e) const { return pow(mpz_class(static_cast<unsigned long>(e))); }

    [[nodiscard]] std::string to_string() const
    {
        poly::Poly p = coeffs_;
        poly::trim(p);
        return poly::to_string(p);
    }

private:
    ExtFieldPtr field_;
    std::vector<u64> coeffs_;
};

/// Discrete log in F_{l^k}^x with respect to a base of exact prime order.
inline u64 discrete_log(ExtFieldElement const& base, ExtFieldElement const& value, u64 order)
{
    auto const one = ExtFieldElement::constant(base.field(), 1);
    if (base.is_one() || !base.pow(order).is_one())
        throw PreconditionError("discrete_log: base does not have exact order " +
                                std::to_string(order));
    return discrete_log(
        base, value, order, one, [](auto const& a, auto const& b) { return a * b; },
        [](auto const& a, auto const& b) { return a == b; });
}

} // namespace tproot
