#include "support.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace tproot;
using namespace tproot::testing;

namespace {

/// #E(F_l) by enumerating every pair (x, y).
i64 count_by_pairs(CurveSpec const& c)
{
    i64 n = 1;
    u64 const l = c.ell;
    for (u64 x = 0; x < l; ++x)
        for (u64 y = 0; y < l; ++y)
            n += mul_mod(y, y, l) == (mul_mod(mul_mod(x, x, l), x, l) + mul_mod(c.A, x, l) + c.B) % l;
    return n;
}

/// #E(F_{l^k}) by enumerating every x in the field and testing squareness.
Integer count_over_field(CurveSpec const& c, std::size_t k)
{
    auto const F = build_extension(static_cast<i64>(c.ell), k);
    EcCurve const E(c, F);
    Integer const half = (F->order() - 1) / 2;
    Integer n = 1;
    std::vector<u64> digits(k, 0);
    while (true) {
        auto const r = E.rhs(ExtFieldElement(F, digits));
        n += r.is_zero() ? 1 : (r.pow(half).is_one() ? 2 : 0);
        std::size_t pos = 0;
        while (pos < k && ++digits[pos] == c.ell)
            digits[pos++] = 0;
        if (pos == k)
            break;
    }
    return n;
}

struct Fixture
{
    CurveSelection sel;
    EcCurve E;
    u64 p;

    explicit Fixture(u64 prime) : sel(select_curve(prime)), E(sel.manifest.curve, sel.torsion.field), p(prime) {}
    [[nodiscard]] TorsionBasis const& basis() const { return sel.torsion.basis; }
};

Fixture const& fixture(u64 p)
{
    static std::map<u64, Fixture> cache;
    auto it = cache.find(p);
    if (it == cache.end())
        it = cache.emplace(p, Fixture(p)).first;
    return it->second;
}

} // namespace

TEST(PointCount, AgreesWithPairEnumeration)
{
    EXPECT_EQ(point_count({5, 0, 1}), count_by_pairs({5, 0, 1}));
    EXPECT_EQ(point_count({5, 0, 1}), 6);
    auto g = rng(9);
    for (int i = 0; i < 60; ++i) {
        u64 const l = std::vector<u64>{5, 7, 11, 13, 29, 101}[g() % 6];
        CurveSpec const c{l, g() % l, g() % l};
        if (c.discriminant_part() == 0)
            continue;
        EXPECT_EQ(point_count(c), count_by_pairs(c)) << c.to_string();
    }
}

TEST(PointCount, TwistConsistencyAndHasse)
{
    for (u64 const l : {5u, 7u, 11u, 13u, 97u}) {
        u64 const d = smallest_nonsquare(static_cast<i64>(l));
        for (u64 A = 0; A < l; A += 2)
            for (u64 B = 0; B < l; B += 3) {
                CurveSpec const c{l, A, B};
                if (c.discriminant_part() == 0)
                    continue;
                // quadratic twist y^2 = x^3 + d^2 A x + d^3 B
                CurveSpec const t{l, mul_mod(mul_mod(d, d, l), A, l), mul_mod(mul_mod(mul_mod(d, d, l), d, l), B, l)};
                Integer const n = point_count(c);
                EXPECT_EQ(n + point_count(t), Integer(static_cast<unsigned long>(2 * l + 2)));
                double const dev = std::abs(n.get_d() - static_cast<double>(l) - 1.0);
                EXPECT_LE(dev, 2.0 * std::sqrt(static_cast<double>(l)));
            }
    }
}

TEST(PointCount, ExtensionRecurrenceMatchesEnumeration)
{
    for (auto const& [c, k] : {std::pair{CurveSpec{5, 0, 1}, std::size_t{2}}, {CurveSpec{7, 1, 1}, 2},
                               {CurveSpec{5, 2, 1}, 3}, {CurveSpec{7, 3, 4}, 3}})
        EXPECT_EQ(point_count_extension(c, k), count_over_field(c, k)) << c.to_string() << " k=" << k;
}

TEST(PointCount, InvalidCurves)
{
    EXPECT_THROW(point_count({5, 0, 0}), InvalidCurve);
    EXPECT_THROW(point_count({3, 1, 1}), InvalidCurve);
    EXPECT_THROW(point_count({9, 1, 1}), InvalidCurve);
    EXPECT_THROW(point_count({7, 8, 1}), InvalidCurve);
    EXPECT_THROW(point_count({10007, 1, 1}), ResourceLimit);
}

TEST(CurveArithmetic, GroupLawOnRandomPoints)
{
    auto const F = build_extension(7, 3);
    EcCurve const E({7, 3, 4}, F);
    Integer const n = point_count_extension({7, 3, 4}, 3);
    std::mt19937_64 g(11);
    for (int i = 0; i < 30; ++i) {
        auto const P = random_point(E, g), Q = random_point(E, g), R = random_point(E, g);
        ASSERT_TRUE(E.contains(P));
        EXPECT_EQ(E.add(P, Q), E.add(Q, P));
        EXPECT_EQ(E.add(E.add(P, Q), R), E.add(P, E.add(Q, R)));
        EXPECT_TRUE(E.add(P, E.neg(P)).infinity);
        EXPECT_TRUE(E.mul(n, P).infinity);
        EXPECT_EQ(E.mul(5, P), E.add(E.mul(2, P), E.mul(3, P)));
    }
    EXPECT_THROW(E.point(ExtFieldElement::constant(F, 1), ExtFieldElement::constant(F, 2)), NotInGroup);
}

TEST(CurveSelection, ManifestsForSmallPrimes)
{
    for (u64 const p : {3u, 5u, 7u}) {
        auto const& fx = fixture(p);
        auto const& m = fx.sel.manifest;
        EXPECT_NE(m.curve.ell, p);
        EXPECT_TRUE(mpz_divisible_ui_p(m.n_base.get_mpz_t(), p));
        EXPECT_EQ(m.k % multiplicative_order(m.curve.ell % p, p), 0u);
        // nothing smaller qualified: every earlier (l, A, B) has p not dividing #E(F_l)
        for (u64 l = 5; l <= m.curve.ell; ++l) {
            if (!is_prime(static_cast<i64>(l)) || l == p)
                continue;
            for (u64 A = 0; A < l; ++A)
                for (u64 B = 0; B < l; ++B) {
                    if (l == m.curve.ell && (A > m.curve.A || (A == m.curve.A && B >= m.curve.B)))
                        continue;
                    CurveSpec const c{l, A, B};
                    if (c.discriminant_part() != 0) {
                        EXPECT_FALSE(mpz_divisible_ui_p(point_count(c).get_mpz_t(), p)) << c.to_string();
                    }
                }
        }
        // doubling k keeps the full torsion
        EXPECT_TRUE(mpz_divisible_ui_p(point_count_extension(m.curve, 2 * m.k).get_mpz_t(), p * p));
    }
    EXPECT_EQ(fixture(3).sel.manifest.curve.ell, 5u);
    EXPECT_EQ(fixture(5).sel.manifest.curve.ell, 7u);
    EXPECT_EQ(fixture(7).sel.manifest.curve.ell, 5u);
}

TEST(CurveSelection, TorsionSubgroupHasOrderPSquared)
{
    for (u64 const p : {3u, 5u, 7u}) {
        auto const& fx = fixture(p);
        std::set<std::string> pts;
        for (u64 a = 0; a < p; ++a)
            for (u64 b = 0; b < p; ++b) {
                auto const X = combine(fx.E, fx.basis(), {a, b});
                EXPECT_TRUE(fx.E.mul(static_cast<i64>(p), X).infinity);
                pts.insert(X.to_string());
            }
        EXPECT_EQ(pts.size(), p * p);
    }
}

TEST(CurveSelection, TorsionBasisIsReproducible)
{
    auto const& fx = fixture(5);
    auto const again = torsion_basis(fx.sel.manifest.curve, 5, fx.sel.manifest.k, 0);
    EXPECT_EQ(again.P, fx.basis().P);
    EXPECT_EQ(again.Q, fx.basis().Q);
    EXPECT_EQ(again.zeta, fx.basis().zeta);
    EXPECT_THROW(full_torsion_field({5, 0, 1}, 3, 1), ResourceLimit);
    EXPECT_THROW(full_torsion_field({5, 0, 1}, 5), PreconditionError);
}

TEST(WeilPairing, BilinearAlternatingNondegenerate)
{
    for (u64 const p : {3u, 5u, 7u}) {
        auto const& fx = fixture(p);
        auto const& B = fx.basis();
        EXPECT_FALSE(B.zeta.is_one());
        EXPECT_TRUE(B.zeta.pow(p).is_one());
        u64 const step = p <= 5 ? 1 : 3; // exhaustive for p <= 5, sampled for p = 7
        for (u64 a = 0; a < p; ++a)
            for (u64 b = 0; b < p; ++b)
                for (u64 c = 0; c < p; c += step)
                    for (u64 d = 0; d < p; d += step) {
                        auto const X = combine(fx.E, B, {a, b}), Y = combine(fx.E, B, {c, d});
                        u64 const e = (mul_mod(a, d, p) + p - mul_mod(b, c, p)) % p;
                        ASSERT_EQ(weil_pairing(fx.E, X, Y, p), B.zeta.pow(e)) << p;
                    }
        EXPECT_TRUE(weil_pairing(fx.E, B.P, B.P, p).is_one());
        EXPECT_TRUE(weil_pairing(fx.E, B.P, EcPoint::at_infinity(), p).is_one());
        EXPECT_TRUE((weil_pairing(fx.E, B.P, B.Q, p) * weil_pairing(fx.E, B.Q, B.P, p)).is_one());
        for (u64 m = 1; m < p; ++m)
            EXPECT_EQ(weil_pairing(fx.E, fx.E.mul(static_cast<i64>(m), B.P), B.Q, p), B.zeta.pow(m));
    }
}

TEST(WeilPairing, IndependentOfShiftSeed)
{
    auto const& fx = fixture(5);
    auto const X = combine(fx.E, fx.basis(), {2, 3}), Y = combine(fx.E, fx.basis(), {4, 1});
    auto const ref = weil_pairing(fx.E, X, Y, 5, 0);
    for (std::uint64_t seed = 1; seed < 20; ++seed)
        EXPECT_EQ(weil_pairing(fx.E, X, Y, 5, seed), ref);
}

TEST(WeilPairing, GaloisEquivariance)
{
    auto const& fx = fixture(7);
    auto const frob = [&](EcPoint const& P) {
        return EcPoint::affine(P.x.pow(fx.sel.manifest.curve.ell), P.y.pow(fx.sel.manifest.curve.ell));
    };
    auto const& B = fx.basis();
    auto const lhs = weil_pairing(fx.E, frob(B.P), frob(B.Q), 7);
    EXPECT_EQ(lhs, B.zeta.pow(fx.sel.manifest.curve.ell));
}

TEST(WeilPairing, RejectsPointsOutsideTorsion)
{
    auto const& fx = fixture(5);
    std::mt19937_64 g(3);
    EcPoint R;
    do
        R = random_point(fx.E, g);
    while (fx.E.mul(5, R).infinity);
    EXPECT_THROW(weil_pairing(fx.E, R, fx.basis().P, 5), NotInSubgroup);
}

TEST(OInvariant, ExamplesAndDegenerateInput)
{
    for (u64 const p : {3u, 5u, 7u}) {
        auto const& fx = fixture(p);
        auto const& B = fx.basis();
        auto const o = o_invariant(fx.E, {B.P, B.Q, fx.E.add(B.P, B.Q)}, B.zeta, p);
        // e(Q, P+Q) = zeta^-1, e(P+Q, P) = zeta^-1, e(P, Q) = zeta
        EXPECT_EQ(o.exponents, (std::array<u64, 3>{p - 1, p - 1, 1}));
        EXPECT_EQ(o.cls, QuadraticClass::square);
        u64 const a = smallest_nonsquare(static_cast<i64>(p));
        auto const o2 = o_invariant(fx.E, {B.P, B.Q, combine(fx.E, B, {a, 1})}, B.zeta, p);
        EXPECT_EQ(o2.cls, QuadraticClass::nonsquare);
        auto const o3 = o_invariant(fx.E, {B.P, B.P, B.Q}, B.zeta, p);
        EXPECT_EQ(o3.cls, QuadraticClass::degenerate);
        EXPECT_THROW(o_invariant(fx.E, {B.P, EcPoint::at_infinity(), B.Q}, B.zeta, p), NotInSubgroup);
    }
}

TEST(OInvariant, IndependentOfGenerators)
{
    for (u64 const p : {3u, 5u, 7u}) {
        auto const& fx = fixture(p);
        auto const& B = fx.basis();
        std::array<EcPoint, 3> const gens{B.P, B.Q, combine(fx.E, B, {1, 2})};
        auto const ref = o_invariant(fx.E, gens, B.zeta, p).cls;
        auto g = rng(p);
        auto const check = [&](u64 u1, u64 u2, u64 u3) {
            std::array<EcPoint, 3> const scaled{fx.E.mul(static_cast<i64>(u1), gens[0]),
                                                fx.E.mul(static_cast<i64>(u2), gens[1]),
                                                fx.E.mul(static_cast<i64>(u3), gens[2])};
            EXPECT_EQ(o_invariant(fx.E, scaled, B.zeta, p).cls, ref);
        };
        if (p <= 5) {
            for (u64 u1 = 1; u1 < p; ++u1)
                for (u64 u2 = 1; u2 < p; ++u2)
                    for (u64 u3 = 1; u3 < p; ++u3)
                        check(u1, u2, u3);
        } else {
            for (int i = 0; i < 100; ++i)
                check(1 + g() % (p - 1), 1 + g() % (p - 1), 1 + g() % (p - 1));
        }
    }
}

TEST(OInvariant, SquareScalingOfZetaKeepsClass)
{
    auto const& fx = fixture(7);
    auto const& B = fx.basis();
    std::array<EcPoint, 3> const gens{B.P, B.Q, combine(fx.E, B, {3, 1})};
    auto const ref = o_invariant(fx.E, gens, B.zeta, 7).cls;
    for (u64 t = 1; t < 7; ++t) {
        auto const cls = o_invariant(fx.E, gens, B.zeta.pow(t), 7).cls;
        if (legendre_symbol(static_cast<i64>(t), 7) == 1)
            EXPECT_EQ(cls, ref);
        else
            EXPECT_NE(cls, ref); // t^-3 has the class of t
    }
}

TEST(Bridge, ExhaustiveForSmallPrimes)
{
    for (u64 const p : {3u, 5u}) {
        auto const& fx = fixture(p);
        std::vector<Vec2> lines;
        for (u64 a = 0; a < p; ++a)
            for (u64 b = 0; b < p; ++b)
                if (a || b)
                    lines.push_back({a, b});
        int checked = 0;
        for (auto const& x1 : lines)
            for (auto const& x2 : lines)
                for (auto const& x3 : lines) {
                    MarkingTriple const t(p, {x1, x2, x3});
                    if (!det_invariant(t).nondegenerate())
                        continue;
                    auto const r = o_det_bridge(fx.E, fx.basis(), t);
                    ASSERT_TRUE(r.passed) << t.to_string();
                    ASSERT_EQ(pm_of(r.o.cls), classify_pm(t));
                    ++checked;
                }
        EXPECT_EQ(checked, static_cast<int>((p * p - 1) * (p * p - p) * (p - 1) * (p - 1)));
    }
}

TEST(Bridge, RandomTriplesAndBasisChanges)
{
    for (u64 const p : {7u}) {
        auto const& fx = fixture(p);
        auto g = rng(200 + p);
        int checked = 0;
        while (checked < 200) {
            auto const t = random_triple(static_cast<i64>(p), g);
            if (!det_invariant(t).nondegenerate())
                continue;
            auto const r = o_det_bridge(fx.E, fx.basis(), t);
            ASSERT_TRUE(r.passed) << t.to_string();
            ASSERT_EQ(pm_of(r.o.cls), classify_pm(t));
            ++checked;
        }
        // (P, Q) -> (alpha P + beta Q, gamma P + delta Q) with determinant one keeps zeta
        for (int i = 0; i < 20; ++i) {
            auto const k = random_sl2(static_cast<i64>(p), g);
            TorsionBasis nb{combine(fx.E, fx.basis(), {k.alpha(), k.beta()}),
                            combine(fx.E, fx.basis(), {k.gamma(), k.delta()}), fx.basis().zeta};
            EXPECT_EQ(weil_pairing(fx.E, nb.P, nb.Q, p), nb.zeta);
            auto const t = random_triple(static_cast<i64>(p), g);
            if (det_invariant(t).nondegenerate()) {
                EXPECT_TRUE(o_det_bridge_check(fx.E, nb, t));
            }
        }
    }
}

TEST(Bridge, ElevenTorsionSampled)
{
    auto const& fx = fixture(11);
    auto g = rng(211);
    int checked = 0;
    while (checked < 20) {
        auto const t = random_triple(11, g);
        if (!det_invariant(t).nondegenerate())
            continue;
        EXPECT_TRUE(o_det_bridge_check(fx.E, fx.basis(), t)) << t.to_string();
        ++checked;
    }
}
