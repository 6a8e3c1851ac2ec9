#pragma once

// Elliptic curves y^2 = x^3 + Ax + B over F_l and F_{l^k}, p-torsion bases,
// the Weil pairing by Miller's algorithm and the quadratic class o(E; C1, C2, C3).

#include "cycle_orbits.hpp"
#include "errors.hpp"
#include "field_core.hpp"

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace tproot {

struct CurveSpec
{
    u64 ell = 0;
    u64 A = 0;
    u64 B = 0;

    /// 4A^3 + 27B^2 mod l.
    [[nodiscard]] u64 discriminant_part() const
    {
        u64 const a3 = mul_mod(mul_mod(A, A, ell), A, ell);
        u64 const b2 = mul_mod(B, B, ell);
        return (mul_mod(4, a3, ell) + mul_mod(27, b2, ell)) % ell;
    }

    void validate() const
    {
        if (ell <= 3 || !is_prime(static_cast<i64>(ell)))
            throw InvalidCurve("CurveSpec: base prime must be a prime > 3, got " + std::to_string(ell));
        if (A >= ell || B >= ell)
            throw InvalidCurve("CurveSpec: coefficients must be reduced modulo l");
        if (discriminant_part() == 0)
            throw InvalidCurve("CurveSpec: singular curve (4A^3 + 27B^2 = 0)");
    }

    [[nodiscard]] std::string to_string() const
    {
        return "y^2 = x^3 + " + std::to_string(A) + "x + " + std::to_string(B) + " over F_" + std::to_string(ell);
    }
};

inline constexpr u64 kMaxPointCountPrime = 10000;

/// #E(F_l) by scanning x with the Legendre symbol.
inline Integer point_count(CurveSpec const& curve)
{
    curve.validate();
    u64 const l = curve.ell;
    if (l > kMaxPointCountPrime)
        throw ResourceLimit("point_count: l exceeds " + std::to_string(kMaxPointCountPrime));
    i64 n = 1;
    for (u64 x = 0; x < l; ++x) {
        u64 const rhs = (mul_mod(mul_mod(x, x, l), x, l) + mul_mod(curve.A, x, l) + curve.B) % l;
        n += 1 + legendre_symbol(static_cast<i64>(rhs), static_cast<i64>(l));
    }
    auto const dev = static_cast<double>(n - static_cast<i64>(l) - 1);
    if (dev * dev > 4.0 * static_cast<double>(l))
        throw InternalInconsistency("point_count: Hasse bound violated");
    return n;
}

/// #E(F_{l^k}) = l^k + 1 - s_k with s_0 = 2, s_1 = t, s_j = t s_{j-1} - l s_{j-2}.
inline Integer point_count_extension(CurveSpec const& curve, std::size_t k)
{
    if (k == 0)
        throw PreconditionError("point_count_extension: degree must be positive");
    Integer const l = static_cast<unsigned long>(curve.ell);
    Integer const t = l + 1 - point_count(curve);
    Integer s_prev = 2, s = t;
    for (std::size_t j = 2; j <= k; ++j) {
        Integer const next = t * s - l * s_prev;
        s_prev = s;
        s = next;
    }
    Integer q;
    mpz_pow_ui(q.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(k));
    return q + 1 - s;
}

struct EcPoint
{
    bool infinity = true;
    ExtFieldElement x;
    ExtFieldElement y;

    static EcPoint at_infinity() { return {}; }
    static EcPoint affine(ExtFieldElement x, ExtFieldElement y) { return {false, std::move(x), std::move(y)}; }

    friend bool operator==(EcPoint const& a, EcPoint const& b)
    {
        if (a.infinity || b.infinity)
            return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }

    [[nodiscard]] std::string to_string() const
    {
        return infinity ? std::string("O") : "(" + x.to_string() + ", " + y.to_string() + ")";
    }
};

/// The curve base-changed to F_{l^k}.
class EcCurve
{
public:
    EcCurve(CurveSpec spec, ExtFieldPtr field) : spec_(spec), field_(std::move(field))
    {
        spec_.validate();
        if (field_->characteristic != spec_.ell)
            throw InvalidField("EcCurve: field characteristic differs from the curve's base prime");
        a_ = ExtFieldElement::constant(field_, static_cast<i64>(spec_.A));
        b_ = ExtFieldElement::constant(field_, static_cast<i64>(spec_.B));
    }

    [[nodiscard]] CurveSpec const& spec() const { return spec_; }
    [[nodiscard]] ExtFieldPtr const& field() const { return field_; }

    [[nodiscard]] ExtFieldElement rhs(ExtFieldElement const& x) const { return x * x * x + a_ * x + b_; }

    [[nodiscard]] bool contains(EcPoint const& P) const { return P.infinity || P.y * P.y == rhs(P.x); }

    [[nodiscard]] EcPoint point(ExtFieldElement x, ExtFieldElement y) const
    {
        auto P = EcPoint::affine(std::move(x), std::move(y));
        if (!contains(P))
            throw NotInGroup("EcCurve::point: not on the curve");
        return P;
    }

    [[nodiscard]] EcPoint neg(EcPoint const& P) const
    {
        return P.infinity ? P : EcPoint::affine(P.x, -P.y);
    }

    [[nodiscard]] EcPoint add(EcPoint const& P, EcPoint const& Q) const
    {
        if (P.infinity)
            return Q;
        if (Q.infinity)
            return P;
        ExtFieldElement lambda;
        if (P.x == Q.x) {
            if (!(P.y == Q.y) || P.y.is_zero())
                return EcPoint::at_infinity();
            auto const three = ExtFieldElement::constant(field_, 3);
            auto const two = ExtFieldElement::constant(field_, 2);
            lambda = (three * P.x * P.x + a_) / (two * P.y);
        } else {
            lambda = (Q.y - P.y) / (Q.x - P.x);
        }
        auto const x3 = lambda * lambda - P.x - Q.x;
        return EcPoint::affine(x3, lambda * (P.x - x3) - P.y);
    }

    [[nodiscard]] EcPoint sub(EcPoint const& P, EcPoint const& Q) const { return add(P, neg(Q)); }

    [[nodiscard]] EcPoint mul(Integer n, EcPoint const& P) const
    {
        if (n < 0)
            return mul(-n, neg(P));
        EcPoint result, base = P;
        while (n > 0) {
            if (mpz_odd_p(n.get_mpz_t()))
                result = add(result, base);
            base = add(base, base);
            n >>= 1;
        }
        return result;
    }
    [[nodiscard]] EcPoint mul(i64 n, EcPoint const& P) const { return mul(Integer(static_cast<long>(n)), P); }

    /// Order of P, given that it divides p^e (p prime); returns the exponent.
    [[nodiscard]] unsigned p_power_order(EcPoint P, u64 p) const
    {
        unsigned e = 0;
        while (!P.infinity) {
            P = mul(static_cast<i64>(p), P);
            if (++e > 64)
                throw InternalInconsistency("p_power_order: point is not of p-power order");
        }
        return e;
    }

private:
    CurveSpec spec_;
    ExtFieldPtr field_;
    ExtFieldElement a_, b_;
};

/// Uniform element of F_{l^k} from a 64-bit engine (reduction mod l keeps the
/// sequence identical across standard libraries).
inline ExtFieldElement random_element(ExtFieldPtr const& F, std::mt19937_64& rng)
{
    std::vector<u64> c(F->degree);
    for (auto& v : c)
        v = rng() % F->characteristic;
    return {F, std::move(c)};
}

/// A square root in F_{l^k} by Tonelli-Shanks, or nullopt for non-squares.
inline std::optional<ExtFieldElement> sqrt_ext(ExtFieldElement const& a, std::mt19937_64& rng)
{
    if (a.is_zero())
        return a;
    auto const& F = a.field();
    Integer const q = F->order();
    Integer const half = (q - 1) / 2;
    if (!a.pow(half).is_one())
        return std::nullopt;
    Integer t = q - 1;
    unsigned s = 0;
    while (mpz_even_p(t.get_mpz_t())) {
        t >>= 1;
        ++s;
    }
    ExtFieldElement z;
    do
        z = random_element(F, rng);
    while (z.is_zero() || z.pow(half).is_one());

    auto c = z.pow(t);
    auto x = a.pow((t + 1) / 2);
    auto b = a.pow(t);
    unsigned m = s;
    while (!b.is_one()) {
        unsigned i = 0;
        for (auto b2 = b; !b2.is_one(); b2 = b2 * b2)
            ++i;
        auto g = c;
        for (unsigned j = 0; j + i + 1 < m; ++j)
            g = g * g;
        x = x * g;
        c = g * g;
        b = b * c;
        m = i;
    }
    return x;
}

inline EcPoint random_point(EcCurve const& E, std::mt19937_64& rng)
{
    while (true) {
        auto x = random_element(E.field(), rng);
        if (auto y = sqrt_ext(E.rhs(x), rng)) {
            if (rng() & 1U)
                *y = -*y;
            return EcPoint::affine(std::move(x), std::move(*y));
        }
    }
}

inline constexpr std::size_t kDefaultMaxExtensionDegree = 24;
inline constexpr int kTorsionSearchTrials = 256;

struct TorsionBasis
{
    EcPoint P;
    EcPoint Q;
    ExtFieldElement zeta; ///< e_p(P, Q)
};

/// Is Z one of 0, P, ..., (p-1)P?  Returns the multiple.
inline std::optional<u64> multiple_of(EcCurve const& E, EcPoint const& Z, EcPoint const& P, u64 p)
{
    EcPoint acc;
    for (u64 c = 0; c < p; ++c) {
        if (acc == Z)
            return c;
        acc = E.add(acc, P);
    }
    return std::nullopt;
}

/// Two points spanning E[p] inside E(F_{l^k}), or nullopt if the random
/// search finds only a cyclic p-part. Points are drawn from the p-Sylow
/// subgroup, and each new one is reduced against a point of maximal order
/// until its order-p multiple leaves the line already found.
inline std::optional<std::pair<EcPoint, EcPoint>> find_ep_basis(EcCurve const& E, u64 p, Integer const& n_points,
                                                                std::mt19937_64& rng,
                                                                int trials = kTorsionSearchTrials)
{
    Integer cofactor = n_points;
    unsigned v = 0;
    while (mpz_divisible_ui_p(cofactor.get_mpz_t(), static_cast<unsigned long>(p))) {
        cofactor /= static_cast<unsigned long>(p);
        ++v;
    }
    if (v < 2)
        return std::nullopt;

    EcPoint R1;
    unsigned a = 0;
    EcPoint P;
    for (int trial = 0; trial < trials; ++trial) {
        EcPoint R = E.mul(cofactor, random_point(E, rng));
        unsigned e = E.p_power_order(R, p);
        if (e == 0)
            continue;
        if (e > a) {
            R1 = R;
            a = e;
            P = R1;
            for (unsigned j = 1; j < a; ++j)
                P = E.mul(static_cast<i64>(p), P);
            continue;
        }
        while (e > 0) {
            EcPoint Z = R;
            for (unsigned j = 1; j < e; ++j)
                Z = E.mul(static_cast<i64>(p), Z);
            auto const c = multiple_of(E, Z, P, p);
            if (!c)
                return std::make_pair(P, Z);
            Integer shift = static_cast<unsigned long>(*c);
            for (unsigned j = e; j < a; ++j)
                shift *= static_cast<unsigned long>(p);
            R = E.sub(R, E.mul(shift, R1));
            e = E.p_power_order(R, p);
        }
    }
    return std::nullopt;
}

/// f_{p,P}(R) as (numerator, denominator), div f = p(P) - p(O). nullopt when a
/// line or vertical through the Miller chain vanishes at R.
inline std::optional<std::pair<ExtFieldElement, ExtFieldElement>> miller(EcCurve const& E, EcPoint const& P,
                                                                         EcPoint const& R, u64 n)
{
    auto const& F = E.field();
    auto const one = ExtFieldElement::constant(F, 1);
    auto const three = ExtFieldElement::constant(F, 3);
    auto const two = ExtFieldElement::constant(F, 2);
    auto const a = ExtFieldElement::constant(F, static_cast<i64>(E.spec().A));

    // line through T and U evaluated at R, divided by the vertical at T + U
    auto const step = [&](EcPoint const& T, EcPoint const& U, ExtFieldElement& num,
                          ExtFieldElement& den) -> std::optional<EcPoint> {
        EcPoint const W = E.add(T, U);
        ExtFieldElement l_val, v_val = one;
        if (W.infinity) {
            l_val = R.x - T.x;
        } else {
            ExtFieldElement const lambda =
                T == U ? (three * T.x * T.x + a) / (two * T.y) : (U.y - T.y) / (U.x - T.x);
            l_val = R.y - T.y - lambda * (R.x - T.x);
            v_val = R.x - W.x;
        }
        if (l_val.is_zero() || v_val.is_zero())
            return std::nullopt;
        num = num * l_val;
        den = den * v_val;
        return W;
    };

    if (R.infinity)
        return std::nullopt;
    ExtFieldElement num = one, den = one;
    EcPoint T = P;
    int top = 63;
    while (((n >> top) & 1U) == 0)
        --top;
    for (int bit = top - 1; bit >= 0; --bit) {
        num = num * num;
        den = den * den;
        auto W = step(T, T, num, den);
        if (!W)
            return std::nullopt;
        T = *W;
        if ((n >> bit) & 1U) {
            W = step(T, P, num, den);
            if (!W)
                return std::nullopt;
            T = *W;
        }
    }
    if (!T.infinity)
        throw PreconditionError("miller: point is not killed by n");
    return std::make_pair(num, den);
}

inline constexpr int kMaxShiftRetries = 32;

/// e_p(P, Q) = [f_P(Q+S) f_Q(-S)] / [f_P(S) f_Q(P-S)] for a shift S drawn from
/// the seeded sequence.
inline ExtFieldElement weil_pairing(EcCurve const& E, EcPoint const& P, EcPoint const& Q, u64 p,
                                    std::uint64_t seed = 0)
{
    auto const one = ExtFieldElement::constant(E.field(), 1);
    if (!E.contains(P) || !E.contains(Q))
        throw NotInGroup("weil_pairing: point not on the curve");
    if (!E.mul(static_cast<i64>(p), P).infinity || !E.mul(static_cast<i64>(p), Q).infinity)
        throw NotInSubgroup("weil_pairing: points must lie in E[p]");
    if (P.infinity || Q.infinity || P == Q)
        return one;
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kMaxShiftRetries; ++attempt) {
        EcPoint const S = random_point(E, rng);
        auto const f1 = miller(E, P, E.add(Q, S), p);
        auto const f2 = miller(E, P, S, p);
        auto const g1 = miller(E, Q, E.neg(S), p);
        auto const g2 = miller(E, Q, E.sub(P, S), p);
        if (!f1 || !f2 || !g1 || !g2)
            continue;
        auto const num = f1->first * f2->second * g1->first * g2->second;
        auto const den = f1->second * f2->first * g1->second * g2->first;
        if (num.is_zero() || den.is_zero())
            continue;
        return num / den;
    }
    throw RetryExhausted("weil_pairing: every shift point hit a divisor support");
}

struct TorsionFieldResult
{
    std::size_t k;
    ExtFieldPtr field;
    Integer n_points;      ///< #E(F_{l^k})
    TorsionBasis basis;
};

/// Smallest k (a multiple of ord_p(l)) with E[p] inside E(F_{l^k}), together
/// with a basis found by the seeded search.
inline TorsionFieldResult full_torsion_field(CurveSpec const& curve, u64 p,
                                             std::size_t max_k = kDefaultMaxExtensionDegree, std::uint64_t seed = 0)
{
    curve.validate();
    require_odd_prime(static_cast<i64>(p), "full_torsion_field");
    if (curve.ell == p)
        throw PreconditionError("full_torsion_field: p must differ from l");
    auto const d = static_cast<std::size_t>(multiplicative_order(curve.ell % p, p));
    for (std::size_t k = d; k <= max_k; k += d) {
        Integer const n = point_count_extension(curve, k);
        Integer const p2 = static_cast<unsigned long>(p * p);
        if (!mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t()))
            continue;
        auto const F = build_extension(static_cast<i64>(curve.ell), k);
        EcCurve const E(curve, F);
        std::mt19937_64 rng(seed);
        auto const pq = find_ep_basis(E, p, n, rng);
        if (!pq)
            continue;
        auto const zeta = weil_pairing(E, pq->first, pq->second, p, seed);
        if (zeta.is_one() || !zeta.pow(p).is_one())
            throw InternalInconsistency("full_torsion_field: independent p-torsion points pair trivially");
        return {k, F, n, {pq->first, pq->second, zeta}};
    }
    throw ResourceLimit("full_torsion_field: E[p] not rational over F_{l^k} for k <= " + std::to_string(max_k));
}

/// Basis of E[p] over the given field.
inline TorsionBasis torsion_basis(CurveSpec const& curve, u64 p, std::size_t k, std::uint64_t seed = 0)
{
    auto const F = build_extension(static_cast<i64>(curve.ell), k);
    EcCurve const E(curve, F);
    std::mt19937_64 rng(seed);
    auto const pq = find_ep_basis(E, p, point_count_extension(curve, k), rng);
    if (!pq)
        throw InternalInconsistency("torsion_basis: no basis of E[p] over F_{l^" + std::to_string(k) + "}");
    return {pq->first, pq->second, weil_pairing(E, pq->first, pq->second, p, seed)};
}

struct CurveManifest
{
    u64 p;
    CurveSpec curve;
    Integer n_base;   ///< #E(F_l)
    std::size_t k;
    Integer n_ext;    ///< #E(F_{l^k})
    std::string field_modulus;
    std::uint64_t seed;
    std::vector<std::string> skipped; ///< curves with p | #E(F_l) whose torsion field exceeded the bound
};

struct CurveSelection
{
    CurveManifest manifest;
    TorsionFieldResult torsion;
};

inline constexpr u64 kDefaultMaxEll = 5000;

/// Smallest l > 3 (l != p), then lexicographically smallest (A, B), with
/// p | #E(F_l) and E[p] rational over some F_{l^k}, k <= max_k.
inline CurveSelection select_curve(u64 p, u64 max_ell = kDefaultMaxEll, std::size_t max_k = kDefaultMaxExtensionDegree,
                                   std::uint64_t seed = 0)
{
    require_odd_prime(static_cast<i64>(p), "select_curve");
    std::vector<std::string> skipped;
    for (u64 l = 5; l <= max_ell; ++l) {
        if (l == p || !is_prime(static_cast<i64>(l)))
            continue;
        for (u64 A = 0; A < l; ++A)
            for (u64 B = 0; B < l; ++B) {
                CurveSpec const c{l, A, B};
                if (c.discriminant_part() == 0)
                    continue;
                Integer const n = point_count(c);
                if (!mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)))
                    continue;
                try {
                    auto t = full_torsion_field(c, p, max_k, seed);
                    CurveManifest m{p, c, n, t.k, t.n_points, poly::to_string(t.field->modulus), seed, skipped};
                    return {std::move(m), std::move(t)};
                } catch (ResourceLimit const&) {
                    skipped.push_back(c.to_string());
                }
            }
    }
    throw ResourceLimit("select_curve: no curve with l <= " + std::to_string(max_ell) + " and k <= " +
                        std::to_string(max_k));
}

struct OInvariant
{
    std::array<u64, 3> exponents{}; ///< (a, b, c): e(P2,P3) = zeta^a, e(P3,P1) = zeta^b, e(P1,P2) = zeta^c
    QuadraticClass cls = QuadraticClass::degenerate;
};

/// o(E; <P1>, <P2>, <P3>) relative to zeta, a generator of mu_p.
inline OInvariant o_invariant(EcCurve const& E, std::array<EcPoint, 3> const& gens, ExtFieldElement const& zeta,
                              u64 p, std::uint64_t seed = 0)
{
    for (auto const& g : gens)
        if (g.infinity || E.p_power_order(g, p) != 1)
            throw NotInSubgroup("o_invariant: generators must have exact order p");
    OInvariant out;
    std::array<std::pair<int, int>, 3> const pairs{{{1, 2}, {2, 0}, {0, 1}}};
    for (std::size_t i = 0; i < 3; ++i) {
        auto const e = weil_pairing(E, gens[static_cast<std::size_t>(pairs[i].first)],
                                    gens[static_cast<std::size_t>(pairs[i].second)], p, seed);
        out.exponents[i] = discrete_log(zeta, e, p);
    }
    u64 const prod = mul_mod(mul_mod(out.exponents[0], out.exponents[1], p), out.exponents[2], p);
    out.cls = quadratic_class(prod, p);
    return out;
}

/// a P + b Q.
inline EcPoint combine(EcCurve const& E, TorsionBasis const& basis, Vec2 const& coeff)
{
    return E.add(E.mul(static_cast<i64>(coeff.a), basis.P), E.mul(static_cast<i64>(coeff.b), basis.Q));
}

struct BridgeResult
{
    OInvariant o;
    DetClass det;
    bool passed;
};

/// With C_i = <a_i P + b_i Q> and zeta = e_p(P, Q): every pairing exponent
/// equals the matching Det component, so the classes agree.
inline BridgeResult o_det_bridge(EcCurve const& E, TorsionBasis const& basis, MarkingTriple const& coeffs,
                                 std::uint64_t seed = 0)
{
    u64 const p = coeffs.p();
    std::array<EcPoint, 3> gens;
    for (std::size_t i = 0; i < 3; ++i)
        gens[i] = combine(E, basis, coeffs[i]);
    BridgeResult r{o_invariant(E, gens, basis.zeta, p, seed), det_invariant(coeffs), false};
    r.passed = r.o.exponents == r.det.dets && r.o.cls == r.det.product_class;
    return r;
}

inline bool o_det_bridge_check(EcCurve const& E, TorsionBasis const& basis, MarkingTriple const& coeffs,
                               std::uint64_t seed = 0)
{
    return o_det_bridge(E, basis, coeffs, seed).passed;
}

} // namespace tproot
