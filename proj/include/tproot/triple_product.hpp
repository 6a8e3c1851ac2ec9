#pragma once

// Local Weil-Deligne representations of f1 (x) f2 (x) f3 (optionally twisted by
// the Legendre character), global root numbers and conductors.
//
// Prime-level newforms enter only through a_p(f_i) in {+1, -1}.

#include "characters.hpp"
#include "weil_deligne.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace tproot {

/// Genus of X_0(p) for a prime p.
inline Integer genus_x0(i64 p)
{
    require_prime(p, "genus_x0");
    Rational const mu(p + 1);
    Rational const nu2 = p == 2 ? Rational(1) : Rational(1 + legendre_symbol(-1, p));
    Rational const nu3 = p == 3 ? Rational(1) : (p == 2 ? Rational(0) : Rational(1 + legendre_symbol(-3, p)));
    Rational const g = 1 + mu / 12 - nu2 / 4 - nu3 / 3 - Rational(2) / 2;
    if (g.get_den() != 1)
        throw InternalInconsistency("genus_x0: non-integral genus");
    return g.get_num();
}

struct TripleProductSpec
{
    i64 p;
    std::array<int, 3> signs; ///< a_p(f1), a_p(f2), a_p(f3)
    bool twisted;

    void validate() const
    {
        require_odd_prime(p, "TripleProductSpec");
        for (int const s : signs)
            if (s != 1 && s != -1)
                throw PreconditionError("TripleProductSpec: a_p(f_i) must be +1 or -1");
    }

    [[nodiscard]] int sign_product() const { return signs[0] * signs[1] * signs[2]; }

    /// The cycle-theoretic setting needs X_0(p) of positive genus.
    [[nodiscard]] bool genus_condition_holds() const { return genus_x0(p) > 0; }
};

inline std::string xi_symbol(int form, i64 q)
{
    return "xi" + std::to_string(form) + "_" + std::to_string(q);
}

/// sigma'_{f,q} for a prime-level newform with a_p(f) = sign: at q = p it is
/// lambda omega^{-1} (x) sp(2) with lambda(Phi) = a_p(f); at q != p it is
/// xi (+) xi^{-1} omega^{-1} with N = 0 and xi formal.
inline WDRep newform_local(i64 p, int sign, int form_index, i64 q)
{
    require_prime(q, "newform_local");
    auto const omega_inv = LocalCharacter::omega(q).inverse();
    if (q == p) {
        auto const lambda = LocalCharacter::unramified(q, Rational(sign));
        return wd_twist(wd_sp2(q), lambda * omega_inv);
    }
    auto const xi = LocalCharacter::formal_unramified(q, xi_symbol(form_index, q));
    return wd_sum(wd_character(xi), wd_character(xi.inverse() * omega_inv));
}

/// sigma'_{F(,chi),q} = sigma'_{f1,q} (x) sigma'_{f2,q} (x) sigma'_{f3,q} (x) chi_q.
inline WDRep assemble_local(TripleProductSpec const& spec, i64 q)
{
    spec.validate();
    WDRep rho = newform_local(spec.p, spec.signs[0], 1, q);
    rho = wd_tensor(rho, newform_local(spec.p, spec.signs[1], 2, q));
    rho = wd_tensor(rho, newform_local(spec.p, spec.signs[2], 3, q));
    if (spec.twisted)
        rho = wd_twist(rho, hecke_lift(spec.p).at(q));
    return rho;
}

/// The same representation at p written as (chi_p) lambda omega^{-3} (x) sp(2)^{(x)3}.
inline WDRep assemble_at_p_from_sp2_cube(TripleProductSpec const& spec)
{
    spec.validate();
    i64 const p = spec.p;
    WDRep cube = wd_tensor(wd_tensor(wd_sp2(p), wd_sp2(p)), wd_sp2(p));
    auto twist = LocalCharacter::unramified(p, Rational(spec.sign_product())) * LocalCharacter::omega(p).pow(-3);
    if (spec.twisted)
        twist = twist * hecke_lift(p).at(p);
    return wd_twist(cube, twist);
}

/// First `count` primes different from p.
inline std::vector<i64> sample_primes_away_from(i64 p, std::size_t count = 5)
{
    std::vector<i64> out;
    for (i64 q = 2; out.size() < count; ++q)
        if (q != p && is_prime(q))
            out.push_back(q);
    return out;
}

struct GlobalRootNumberReport
{
    int W_infinity = -1;
    std::map<i64, int> local_W;
    int W_global = 0;
    CyclotomicNumber epsilon_p;  ///< epsilon of the Weil representation at p
    FrobeniusValue delta_p;      ///< delta of the Weil-Deligne representation at p
    CyclotomicNumber epsilon_prime_p;
    int conductor_exponent = 0;  ///< a(sigma'_p); all other exponents vanish
    Integer conductor;
    bool genus_condition = true;
};

/// Archimedean root number of weight-2 triple products, twisted or not.
inline constexpr int kTripleProductInfinityRootNumber = -1;
/// Archimedean root number of a single weight-2 form.
inline constexpr int kWeightTwoInfinityRootNumber = -1;

inline int exact_sign(RootNumber const& w, char const* where)
{
    auto const s = w.sign();
    if (!s)
        throw InternalInconsistency(std::string(where) + ": local root number is not +-1");
    return *s;
}

inline GlobalRootNumberReport global_root_number(TripleProductSpec const& spec,
                                                 std::vector<i64> const& other_primes = {})
{
    spec.validate();
    GlobalRootNumberReport report;
    report.genus_condition = spec.genus_condition_holds();
    report.W_infinity = kTripleProductInfinityRootNumber;

    auto const at_p = assemble_local(spec, spec.p);
    AdditiveCharacter const psi_p(spec.p, 1);
    HaarMeasure const dx_p{static_cast<u64>(spec.p)};
    report.epsilon_p = epsilon_weil(at_p, psi_p, dx_p);
    report.delta_p = delta_factor(at_p).delta;
    report.epsilon_prime_p = epsilon_prime(at_p, psi_p, dx_p);
    report.local_W[spec.p] = exact_sign(root_number_of(report.epsilon_prime_p), "global_root_number");
    report.conductor_exponent = wd_conductor(at_p);

    auto const primes = other_primes.empty() ? sample_primes_away_from(spec.p) : other_primes;
    for (i64 const q : primes) {
        if (q == spec.p)
            continue;
        auto const rho = assemble_local(spec, q);
        report.local_W[q] = exact_sign(local_root_number(rho, AdditiveCharacter(q, 1)), "global_root_number");
        if (wd_conductor(rho) != 0)
            throw InternalInconsistency("global_root_number: ramification away from p");
    }

    int w = report.W_infinity;
    for (auto const& [q, wq] : report.local_W)
        w *= wq;
    report.W_global = w;
    mpz_ui_pow_ui(report.conductor.get_mpz_t(), static_cast<unsigned long>(spec.p),
                  static_cast<unsigned long>(report.conductor_exponent));
    return report;
}

/// prod_q q^{a(sigma'_q)} over the given local representations.
inline Integer conductor_from_local(std::map<i64, WDRep> const& local)
{
    Integer n = 1;
    for (auto const& [q, rho] : local) {
        Integer term;
        mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(q),
                      static_cast<unsigned long>(wd_conductor(rho)));
        n *= term;
    }
    return n;
}

struct ConductorReport
{
    i64 p;
    int exponent;
    Integer value;

    [[nodiscard]] std::string to_string() const { return std::to_string(p) + "^" + std::to_string(exponent); }
};

inline ConductorReport global_conductor(TripleProductSpec const& spec)
{
    spec.validate();
    std::map<i64, WDRep> local;
    local.emplace(spec.p, assemble_local(spec, spec.p));
    for (i64 const q : sample_primes_away_from(spec.p))
        local.emplace(q, assemble_local(spec, q));
    return {spec.p, wd_conductor(local.at(spec.p)), conductor_from_local(local)};
}

struct SingleFormRootNumbers
{
    int W_f;
    int W_f_chi;
    CyclotomicNumber epsilon_prime_p;
    CyclotomicNumber epsilon_prime_p_twisted;
};

/// W(f) and W(f, chi) for a weight-2 newform of level p with the given a_p.
inline SingleFormRootNumbers single_form_root_numbers(i64 p, int a_p)
{
    require_odd_prime(p, "single_form_root_numbers");
    if (a_p != 1 && a_p != -1)
        throw PreconditionError("single_form_root_numbers: a_p must be +1 or -1");
    AdditiveCharacter const psi(p, 1);
    HaarMeasure const dx{static_cast<u64>(p)};
    auto const untwisted = newform_local(p, a_p, 1, p);
    auto const twisted = wd_twist(untwisted, hecke_lift(p).at(p));

    SingleFormRootNumbers out{0, 0, epsilon_prime(untwisted, psi, dx), epsilon_prime(twisted, psi, dx)};
    out.W_f = kWeightTwoInfinityRootNumber * exact_sign(root_number_of(out.epsilon_prime_p), "single_form");
    out.W_f_chi =
        kWeightTwoInfinityRootNumber * exact_sign(root_number_of(out.epsilon_prime_p_twisted), "single_form");
    for (i64 const q : sample_primes_away_from(p, 3)) {
        auto const rho = newform_local(p, a_p, 1, q);
        if (exact_sign(local_root_number(rho, AdditiveCharacter(q, 1)), "single_form") != 1 ||
            exact_sign(local_root_number(wd_twist(rho, hecke_lift(p).at(q)), AdditiveCharacter(q, 1)),
                       "single_form") != 1)
            throw InternalInconsistency("single_form_root_numbers: non-trivial root number away from p");
    }
    if (out.W_f != a_p)
        throw InternalInconsistency("single_form_root_numbers: W(f) != a_p");
    if (out.W_f_chi != -legendre_symbol(-1, p))
        throw InternalInconsistency("single_form_root_numbers: W(f, chi) != -chi(-1)");
    return out;
}

struct FunctionalEquationData
{
    std::string gamma_factor = "2^4 (2 pi)^(3-4s) Gamma(s-1)^3 Gamma(s)";
    std::string completed_form = "Lambda*(s) = cond^(s/2) * Lambda(s)";
    std::string alternate_rendering; ///< 2^4 p^{4s} (2 pi)^{3-4s} Gamma(s-1)^3 Gamma(s) L(s)
    int h30 = 1;
    int h21 = 3;
    Rational center = 2;
    int sign = 0;
    i64 p = 0;
    int conductor_exponent = 0;

    /// s -> 4 - s.
    [[nodiscard]] static Rational reflect(Rational const& s) { return 4 - s; }
};

inline FunctionalEquationData functional_equation_data(TripleProductSpec const& spec)
{
    auto const report = global_root_number(spec);
    FunctionalEquationData fe;
    fe.sign = report.W_global;
    fe.p = spec.p;
    fe.conductor_exponent = report.conductor_exponent;
    fe.alternate_rendering = "2^4 " + std::to_string(spec.p) + "^(4s) (2 pi)^(3-4s) Gamma(s-1)^3 Gamma(s) L(s)";
    return fe;
}

} // namespace tproot
