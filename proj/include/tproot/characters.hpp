#pragma once

// Characters of Q_q^x, additive characters of level zero, Gauss sums and the
// epsilon factor of a tamely ramified or unramified character.

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "field_core.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tproot {

/// Character of F_q^x, chi(g^k) = zeta_{q-1}^{e k} for g = primitive_root(q).
class MultiplicativeCharacter
{
public:
    MultiplicativeCharacter(i64 q, i64 exponent) : q_(static_cast<u64>(q))
    {
        require_prime(q, "MultiplicativeCharacter");
        e_ = mod(exponent, q_ - 1);
        generator_ = primitive_root(q).value();
    }

    static MultiplicativeCharacter trivial(i64 q) { return {q, 0}; }
    static MultiplicativeCharacter legendre(i64 q)
    {
        require_odd_prime(q, "MultiplicativeCharacter::legendre");
        return {q, (q - 1) / 2};
    }

    [[nodiscard]] u64 modulus() const { return q_; }
    [[nodiscard]] u64 exponent() const { return e_; }
    [[nodiscard]] u64 order() const { return (q_ - 1) / std::gcd(e_, q_ - 1); }
    [[nodiscard]] bool is_trivial() const { return e_ == 0; }

    [[nodiscard]] MultiplicativeCharacter inverse() const
    {
        return {static_cast<i64>(q_), -static_cast<i64>(e_)};
    }

    friend MultiplicativeCharacter operator*(MultiplicativeCharacter const& a,
                                             MultiplicativeCharacter const& b)
    {
        if (a.q_ != b.q_)
            throw PrimeMismatch("MultiplicativeCharacter: different moduli");
        return {static_cast<i64>(a.q_), static_cast<i64>(a.e_ + b.e_)};
    }

    friend bool operator==(MultiplicativeCharacter const& a, MultiplicativeCharacter const& b)
    {
        return a.q_ == b.q_ && a.e_ == b.e_;
    }

    /// Exponent j with chi(x) = zeta_d^j, d = order(); x must be a unit mod q.
    [[nodiscard]] u64 value_exponent(u64 x) const
    {
        x %= q_;
        if (x == 0)
            throw ZeroArgument("MultiplicativeCharacter: argument divisible by q");
        u64 const g = std::gcd(e_, q_ - 1);
        u64 const d = (q_ - 1) / g;
        FpElement const base{static_cast<i64>(generator_), q_};
        u64 const k = discrete_log_unit(base, FpElement{static_cast<i64>(x), q_});
        return mul_mod(e_ / g, k, d);
    }

private:
    /// Log to the primitive root; the multiplicative group has order q - 1.
    [[nodiscard]] u64 discrete_log_unit(FpElement const& g, FpElement const& x) const
    {
        FpElement acc{1, q_};
        for (u64 k = 0; k + 1 < q_; ++k) {
            if (acc == x)
                return k;
            acc = acc * g;
        }
        throw InternalInconsistency("MultiplicativeCharacter: primitive root does not generate");
    }

    u64 q_;
    u64 e_;
    u64 generator_;
};

/// mu(x) for x in F_q^x as an element of Q(zeta_d). With `strict` false a zero
/// argument maps to 0 instead of raising.
inline CyclotomicNumber char_eval(MultiplicativeCharacter const& mu, FpElement const& x,
                                  bool strict = true)
{
    if (x.modulus() != mu.modulus())
        throw PrimeMismatch("char_eval: element and character have different moduli");
    if (x.is_zero()) {
        if (strict)
            throw ZeroArgument("char_eval: character evaluated at 0");
        return CyclotomicNumber{};
    }
    return CyclotomicNumber::zeta(mu.order(), static_cast<i64>(mu.value_exponent(x.value())));
}

inline CyclotomicNumber char_eval(MultiplicativeCharacter const& mu, i64 x, bool strict = true)
{
    return char_eval(mu, FpElement{x, mu.modulus()}, strict);
}

/// G(mu) = sum_{b in F_q^x} mu(b) zeta_q^b, an element of Q(zeta_{q d}).
inline CyclotomicNumber gauss_sum(MultiplicativeCharacter const& mu)
{
    require_odd_prime(static_cast<i64>(mu.modulus()), "gauss_sum");
    u64 const q = mu.modulus();
    u64 const d = mu.order();
    u64 const m = q * d;
    CyclotomicNumber g(m);
    std::vector<Rational> coeffs(m, 0);
    for (u64 b = 1; b < q; ++b) {
        u64 const j = mu.value_exponent(b);
        coeffs[(q * j + d * b) % m] += 1;
    }
    return {m, std::move(coeffs)};
}

/// Value of a character on a uniformizer: an exact cyclotomic scalar times a
/// monomial in opaque unit symbols. The symbols stand for unramified
/// characters whose Frobenius value is never pinned down.
class FrobeniusValue
{
public:
    // NOLINTNEXTLINE(google-explicit-constructor)
    FrobeniusValue(CyclotomicNumber scalar = Rational(1)) : scalar_(std::move(scalar)) {}
    // NOLINTNEXTLINE(google-explicit-constructor)
    FrobeniusValue(Rational const& r) : scalar_(r) {}

    static FrobeniusValue formal(std::string const& symbol, int exponent = 1)
    {
        FrobeniusValue v;
        if (exponent != 0)
            v.formal_[symbol] = exponent;
        return v;
    }

    [[nodiscard]] CyclotomicNumber const& scalar() const { return scalar_; }
    [[nodiscard]] std::map<std::string, int> const& formal_part() const { return formal_; }
    [[nodiscard]] bool is_concrete() const { return formal_.empty(); }

    [[nodiscard]] CyclotomicNumber const& concrete() const
    {
        if (!is_concrete())
            throw PreconditionError("FrobeniusValue: value involves formal units (" + to_string() + ")");
        return scalar_;
    }

    friend FrobeniusValue operator*(FrobeniusValue const& a, FrobeniusValue const& b)
    {
        FrobeniusValue out((a.scalar_ * b.scalar_).canonical());
        out.formal_ = a.formal_;
        for (auto const& [sym, e] : b.formal_) {
            int const total = (out.formal_[sym] += e);
            if (total == 0)
                out.formal_.erase(sym);
        }
        return out;
    }

    /// Inverse; the scalar must be a rational multiple of a root of unity.
    [[nodiscard]] FrobeniusValue inverse() const
    {
        auto const lifted = scalar_.even_lift();
        auto const scaled = lifted.as_scaled_root_of_unity();
        if (!scaled)
            throw PreconditionError("FrobeniusValue::inverse: scalar is not r*zeta^k");
        auto const& [r, k] = *scaled;
        FrobeniusValue out(CyclotomicNumber(Rational(1) / r) *
                           CyclotomicNumber::zeta(lifted.modulus(), -static_cast<i64>(k)));
        out.scalar_ = out.scalar_.canonical();
        for (auto const& [sym, e] : formal_)
            out.formal_[sym] = -e;
        return out;
    }

    [[nodiscard]] FrobeniusValue pow(int e) const
    {
        FrobeniusValue base = e < 0 ? inverse() : *this;
        FrobeniusValue out;
        for (int i = 0; i < std::abs(e); ++i)
            out = out * base;
        return out;
    }

    friend bool operator==(FrobeniusValue const& a, FrobeniusValue const& b)
    {
        return a.formal_ == b.formal_ && a.scalar_ == b.scalar_;
    }

    [[nodiscard]] std::string to_string() const
    {
        std::string s = scalar_.to_string();
        if (s.find_first_of(" ") != std::string::npos)
            s = "(" + s + ")";
        for (auto const& [sym, e] : formal_)
            s += "*" + sym + (e == 1 ? "" : "^" + std::to_string(e));
        return s;
    }

private:
    CyclotomicNumber scalar_;
    std::map<std::string, int> formal_;
};

/// Character of Q_q^x: its value on the uniformizer q (equivalently on an
/// inverse Frobenius under the Artin map) and its restriction to Z_q^x, which
/// factors through F_q^x. Conductor is 0 or 1; `wild` builds a placeholder
/// for higher conductor that every epsilon computation rejects.
class LocalCharacter
{
public:
    LocalCharacter(i64 q, FrobeniusValue uniformizer_value, MultiplicativeCharacter ramified)
        : q_(static_cast<u64>(q)), u_(std::move(uniformizer_value)), ramified_(std::move(ramified))
    {
        if (ramified_.modulus() != q_)
            throw PrimeMismatch("LocalCharacter: ramified part has a different modulus");
        conductor_ = ramified_.is_trivial() ? 0 : 1;
    }

    static LocalCharacter trivial(i64 q) { return unramified(q, Rational(1)); }

    static LocalCharacter unramified(i64 q, FrobeniusValue u)
    {
        return {q, std::move(u), MultiplicativeCharacter::trivial(q)};
    }

    /// omega_q: unramified, inverse Frobenius -> q^{-1}.
    static LocalCharacter omega(i64 q) { return unramified(q, Rational(1, static_cast<unsigned long>(q))); }

    static LocalCharacter formal_unramified(i64 q, std::string const& symbol, int exponent = 1)
    {
        return unramified(q, FrobeniusValue::formal(symbol, exponent));
    }

    static LocalCharacter wild(i64 q, int conductor)
    {
        LocalCharacter c = trivial(q);
        c.conductor_ = conductor;
        return c;
    }

    [[nodiscard]] u64 prime() const { return q_; }
    [[nodiscard]] FrobeniusValue const& uniformizer_value() const { return u_; }
    [[nodiscard]] MultiplicativeCharacter const& ramified_part() const { return ramified_; }
    [[nodiscard]] int conductor() const { return conductor_; }
    [[nodiscard]] bool is_unramified() const { return conductor_ == 0; }

    friend LocalCharacter operator*(LocalCharacter const& a, LocalCharacter const& b)
    {
        if (a.q_ != b.q_)
            throw PrimeMismatch("LocalCharacter: product of characters at different primes");
        if (a.conductor_ > 1 || b.conductor_ > 1)
            throw UnsupportedConductor("LocalCharacter: product with a wildly ramified character");
        return {static_cast<i64>(a.q_), a.u_ * b.u_, a.ramified_ * b.ramified_};
    }

    [[nodiscard]] LocalCharacter inverse() const
    {
        return {static_cast<i64>(q_), u_.inverse(), ramified_.inverse()};
    }

    [[nodiscard]] LocalCharacter pow(int e) const
    {
        LocalCharacter base = e < 0 ? inverse() : *this;
        LocalCharacter out = trivial(static_cast<i64>(q_));
        for (int i = 0; i < std::abs(e); ++i)
            out = out * base;
        return out;
    }

    friend bool operator==(LocalCharacter const& a, LocalCharacter const& b)
    {
        return a.q_ == b.q_ && a.conductor_ == b.conductor_ && a.ramified_ == b.ramified_ &&
               a.u_ == b.u_;
    }

    /// mu(x) for x in Q^x viewed in Q_q^x: u^{ord_q x} times the ramified part
    /// at the unit part of x modulo q.
    [[nodiscard]] FrobeniusValue evaluate(Rational const& x) const
    {
        if (sgn(x) == 0)
            throw ZeroArgument("LocalCharacter::evaluate at 0");
        if (conductor_ > 1)
            throw UnsupportedConductor("LocalCharacter::evaluate: wild character");
        Integer num = x.get_num(), den = x.get_den();
        int valuation = 0;
        Integer const uq(static_cast<unsigned long>(q_));
        while (num % uq == 0) {
            num /= uq;
            ++valuation;
        }
        while (den % uq == 0) {
            den /= uq;
            --valuation;
        }
        Integer const num_mod = ((num % uq) + uq) % uq;
        Integer const den_mod = ((den % uq) + uq) % uq;
        u64 const unit = mul_mod(num_mod.get_ui(), inv_mod(den_mod.get_ui(), q_), q_);
        FrobeniusValue out = u_.pow(valuation);
        if (!ramified_.is_trivial())
            out = out * FrobeniusValue(char_eval(ramified_, static_cast<i64>(unit)));
        return out;
    }

    [[nodiscard]] std::string to_string() const
    {
        std::string s = "[q=" + std::to_string(q_) + ", u=" + u_.to_string();
        if (!ramified_.is_trivial())
            s += ", ramified exponent " + std::to_string(ramified_.exponent());
        return s + "]";
    }

private:
    u64 q_;
    FrobeniusValue u_;
    MultiplicativeCharacter ramified_;
    int conductor_ = 0;
};

/// psi_c on Q_q with n(psi) = 0 and psi(1/q) = exp(2 pi i c / q).
class AdditiveCharacter
{
public:
    AdditiveCharacter(i64 q, i64 c) : q_(static_cast<u64>(q)), c_(mod(c, static_cast<u64>(q)))
    {
        require_prime(q, "AdditiveCharacter");
        if (c_ == 0)
            throw PreconditionError("AdditiveCharacter: c must be a unit modulo q");
    }

    [[nodiscard]] u64 prime() const { return q_; }
    [[nodiscard]] u64 c() const { return c_; }
    [[nodiscard]] static int level() { return 0; }
    [[nodiscard]] CyclotomicNumber value_at_inverse_uniformizer() const
    {
        return CyclotomicNumber::zeta(q_, static_cast<i64>(c_));
    }

private:
    u64 q_;
    u64 c_;
};

/// Haar measure on Q_q with vol(Z_q) = 1; the only normalisation supported.
struct HaarMeasure
{
    u64 q;
    [[nodiscard]] static Rational volume_of_integers() { return 1; }
};

/// epsilon(mu, psi_c, dx) for n(psi) = 0 and vol(Z_q) = 1: 1 when mu is
/// unramified, mu(c) mu(q) G(mu^{-1}) when mu has conductor 1.
inline CyclotomicNumber eps_character(LocalCharacter const& mu, AdditiveCharacter const& psi,
                                      HaarMeasure const& dx)
{
    if (mu.prime() != psi.prime() || mu.prime() != dx.q)
        throw PrimeMismatch("eps_character: character, additive character and measure disagree on q");
    if (mu.conductor() > 1)
        throw UnsupportedConductor("eps_character: conductor " + std::to_string(mu.conductor()) +
                                   " is not supported");
    if (mu.is_unramified())
        return CyclotomicNumber(HaarMeasure::volume_of_integers());
    auto const& ram = mu.ramified_part();
    CyclotomicNumber const at_c = char_eval(ram, static_cast<i64>(psi.c()));
    CyclotomicNumber const& at_q = mu.uniformizer_value().concrete();
    return (at_c * at_q * gauss_sum(ram.inverse())).canonical();
}

/// epsilon(sigma (x) mu) = mu(q)^{a(sigma)} epsilon(sigma) for unramified mu
/// and n(psi) = 0; `dimension` only enters through n(psi) dim(sigma) = 0.
inline CyclotomicNumber eps_unramified_twist(int conductor, int dimension, LocalCharacter const& mu,
                                             CyclotomicNumber const& eps_base)
{
    if (!mu.is_unramified())
        throw PreconditionError("eps_unramified_twist: twisting character must be unramified");
    if (conductor < 0 || dimension < 1)
        throw PreconditionError("eps_unramified_twist: need conductor >= 0 and dimension >= 1");
    int const exponent = AdditiveCharacter::level() * dimension + conductor;
    if (exponent == 0)
        return eps_base;
    return (mu.uniformizer_value().pow(exponent).concrete() * eps_base).canonical();
}

/// Place of Q: 0 stands for the archimedean place, otherwise a prime.
using Place = u64;
inline constexpr Place kInfinity = 0;

/// Local components of the unitary Hecke character lifting the Legendre
/// symbol modulo p.
class HeckeCharacterFamily
{
public:
    explicit HeckeCharacterFamily(i64 p) : p_(p) { require_odd_prime(p, "HeckeCharacterFamily"); }

    [[nodiscard]] i64 p() const { return p_; }

    /// chi_infinity on a non-zero real number of the given sign.
    [[nodiscard]] int at_infinity(int sign) const
    {
        if (legendre_symbol(-1, p_) == 1)
            return 1;
        return sign > 0 ? 1 : -1;
    }

    /// chi_l as a character of Q_l^x.
    [[nodiscard]] LocalCharacter at(i64 l) const
    {
        require_prime(l, "HeckeCharacterFamily::at");
        if (l == p_)
            return {p_, Rational(1), MultiplicativeCharacter::legendre(p_)};
        return LocalCharacter::unramified(l, Rational(legendre_symbol(l, p_)));
    }

    [[nodiscard]] CyclotomicNumber evaluate(Place v, Rational const& x) const
    {
        if (v == kInfinity)
            return Rational(at_infinity(sgn(x)));
        return at(static_cast<i64>(v)).evaluate(x).concrete();
    }

private:
    i64 p_;
};

inline HeckeCharacterFamily hecke_lift(i64 p) { return HeckeCharacterFamily(p); }

/// prod_v chi_v(x) over the places where chi_v(x) can differ from 1.
inline CyclotomicNumber hecke_product_check(HeckeCharacterFamily const& family, Rational const& x)
{
    if (sgn(x) == 0)
        throw ZeroArgument("hecke_product_check: x must be non-zero");
    std::vector<Place> places{kInfinity, static_cast<Place>(family.p())};
    for (Integer n : {Integer(abs(x.get_num())), Integer(x.get_den())}) {
        if (!n.fits_ulong_p())
            throw ResourceLimit("hecke_product_check: argument too large to factor");
        for (u64 const r : prime_divisors(n.get_ui()))
            if (std::find(places.begin(), places.end(), r) == places.end())
                places.push_back(r);
    }
    CyclotomicNumber product = Rational(1);
    for (Place const v : places)
        product = product * family.evaluate(v, x);
    return product.canonical();
}

} // namespace tproot
