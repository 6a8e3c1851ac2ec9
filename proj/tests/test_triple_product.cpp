#include "support.hpp"

#include <gtest/gtest.h>

using namespace tproot;
using namespace tproot::testing;

namespace {

/// Genus of X_0(p) by Riemann-Hurwitz over the j-line, counting elliptic
/// points by solving x^2 + 1 = 0 and x^2 + x + 1 = 0 modulo p.
i64 genus_by_point_count(i64 p)
{
    i64 nu2 = 0, nu3 = 0;
    for (i64 x = 0; x < p; ++x) {
        nu2 += (x * x + 1) % p == 0;
        nu3 += (x * x + x + 1) % p == 0;
    }
    i64 const index = p + 1, cusps = 2;
    // 12 g = 12 + index - 3 nu2 - 4 nu3 - 6 cusps
    return (12 + index - 3 * nu2 - 4 * nu3 - 6 * cusps) / 12;
}

} // namespace

TEST(TripleProduct, GenusOfX0)
{
    for (i64 const p : odd_primes_up_to(200))
        EXPECT_EQ(genus_x0(p), genus_by_point_count(p)) << p;
    EXPECT_EQ(genus_x0(11), 1);
    EXPECT_EQ(genus_x0(13), 0);
    EXPECT_EQ(genus_x0(23), 2);
    EXPECT_EQ(genus_x0(37), 2);
    EXPECT_EQ(genus_x0(2), 0);
}

TEST(TripleProduct, TwistedRootNumberIsMinusOne)
{
    for (i64 const p : {11, 13, 17, 19, 23, 29, 31}) {
        for (auto const& signs : all_sign_patterns()) {
            TripleProductSpec const spec{p, signs, true};
            auto const r = global_root_number(spec);
            EXPECT_EQ(r.W_global, -1) << p;
            EXPECT_TRUE(r.epsilon_p == CyclotomicNumber(Rational(ipow(p, 16))));
            EXPECT_TRUE(r.delta_p == FrobeniusValue());
            EXPECT_EQ(r.conductor_exponent, 8);
            EXPECT_EQ(r.conductor, ipow(p, 8));
            EXPECT_EQ(r.genus_condition, p != 13);
        }
    }
}

TEST(TripleProduct, UntwistedRootNumberIsProductOfSigns)
{
    for (i64 const p : {11, 17, 19, 23}) {
        for (auto const& signs : all_sign_patterns()) {
            TripleProductSpec const spec{p, signs, false};
            auto const r = global_root_number(spec);
            EXPECT_EQ(r.W_global, spec.sign_product());
            EXPECT_TRUE(r.epsilon_p == CyclotomicNumber(1));
            EXPECT_TRUE(r.delta_p == FrobeniusValue(Rational(-ipow(p, 10) * spec.sign_product())));
            EXPECT_EQ(r.conductor_exponent, 5);
            EXPECT_EQ(global_conductor(spec).to_string(), std::to_string(p) + "^5");
        }
    }
}

TEST(TripleProduct, LocalRootNumbersAwayFromPAreOne)
{
    TripleProductSpec const spec{11, {1, -1, -1}, true};
    auto const r = global_root_number(spec, {2, 3, 5, 7, 13, 17, 19, 23});
    for (auto const& [q, w] : r.local_W)
        if (q != 11) {
            EXPECT_EQ(w, 1) << q;
        }
    EXPECT_EQ(r.local_W.at(11), 1);
    EXPECT_EQ(r.W_infinity, -1);
}

TEST(TripleProduct, Sp2CubeModelAgrees)
{
    for (i64 const p : {11, 19}) {
        for (bool const twisted : {false, true}) {
            for (auto const& signs : all_sign_patterns()) {
                TripleProductSpec const spec{p, signs, twisted};
                auto const a = assemble_local(spec, p), b = assemble_at_p_from_sp2_cube(spec);
                AdditiveCharacter const psi(p, 1);
                HaarMeasure const dx{static_cast<u64>(p)};
                EXPECT_TRUE(epsilon_weil(a, psi, dx) == epsilon_weil(b, psi, dx));
                EXPECT_TRUE(delta_factor(a).delta == delta_factor(b).delta);
                EXPECT_EQ(wd_conductor(a), wd_conductor(b));
            }
        }
    }
}

TEST(TripleProduct, DeltaRanksPerWeight)
{
    // untwisted at p: the quotient V^I / (V^I cap ker N) has dimension 5
    auto const rho = assemble_local({11, {1, 1, 1}, false}, 11);
    auto const d = delta_factor(rho);
    EXPECT_EQ(d.inertia_invariant_indices.size(), 8u);
    EXPECT_EQ(d.quotient_indices.size(), 5u);
    EXPECT_EQ(d.kernel_intersection_dim, 3u);
}

TEST(TripleProduct, SingleFormRootNumbers)
{
    for (i64 const p : {11, 17, 19, 23}) {
        for (int const a : {1, -1}) {
            auto const r = single_form_root_numbers(p, a);
            EXPECT_EQ(r.W_f, a);
            EXPECT_EQ(r.W_f_chi, -legendre_symbol(-1, p));
            // the twisted value comes from chi_p(-1) p^2 through epsilon'
            EXPECT_TRUE(r.epsilon_prime_p_twisted ==
                        CyclotomicNumber(Rational(legendre_symbol(-1, p) * p * p)));
        }
    }
    EXPECT_THROW(single_form_root_numbers(11, 0), PreconditionError);
}

TEST(TripleProduct, FunctionalEquationData)
{
    auto const fe = functional_equation_data({11, {1, 1, 1}, true});
    EXPECT_EQ(fe.sign, -1);
    EXPECT_EQ(fe.h30, 1);
    EXPECT_EQ(fe.h21, 3);
    EXPECT_EQ(fe.conductor_exponent, 8);
    EXPECT_EQ(FunctionalEquationData::reflect(Rational(1, 2)), Rational(7, 2));
    EXPECT_EQ(FunctionalEquationData::reflect(fe.center), fe.center);
}

TEST(TripleProduct, InvalidInput)
{
    EXPECT_THROW(global_root_number({2, {1, 1, 1}, true}), InvalidField);
    EXPECT_THROW(global_root_number({15, {1, 1, 1}, true}), InvalidField);
    EXPECT_THROW(global_root_number({11, {1, 0, 1}, true}), PreconditionError);
}
