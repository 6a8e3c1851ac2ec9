#pragma once

// Weil-Deligne representations at a finite prime q, restricted to the monomial
// case: V has a basis of lines on which the Weil group acts through characters,
// and N is an integer matrix in that basis.

#include "characters.hpp"
#include "cyclotomic.hpp"
#include "errors.hpp"

#include <complex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tproot {

using IntMatrix = std::vector<std::vector<i64>>;

inline IntMatrix zero_matrix(std::size_t n) { return IntMatrix(n, std::vector<i64>(n, 0)); }

class WDRep
{
public:
    /// Checks that N is square, nilpotent and that N[i][j] != 0 only when
    /// summand i equals summand j times omega_q.
    WDRep(i64 q, std::vector<LocalCharacter> summands, IntMatrix N)
        : q_(static_cast<u64>(q)), summands_(std::move(summands)), N_(std::move(N))
    {
        require_prime(q, "WDRep");
        std::size_t const n = summands_.size();
        if (N_.size() != n)
            throw PreconditionError("WDRep: N must be a square matrix of size dim V");
        for (auto const& row : N_)
            if (row.size() != n)
                throw PreconditionError("WDRep: N must be a square matrix of size dim V");
        for (auto const& s : summands_)
            if (s.prime() != q_)
                throw PrimeMismatch("WDRep: summand at a different prime");

        auto const omega = LocalCharacter::omega(q);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (N_[i][j] != 0 && !(summands_[i] == summands_[j] * omega))
                    throw PreconditionError("WDRep: N[" + std::to_string(i) + "][" + std::to_string(j) +
                                            "] violates sigma(g) N sigma(g)^-1 = omega(g) N");
        if (!is_nilpotent())
            throw PreconditionError("WDRep: N is not nilpotent");
    }

    [[nodiscard]] u64 prime() const { return q_; }
    [[nodiscard]] std::size_t dimension() const { return summands_.size(); }
    [[nodiscard]] std::vector<LocalCharacter> const& summands() const { return summands_; }
    [[nodiscard]] IntMatrix const& N() const { return N_; }

    /// Smallest k with N^k = 0.
    [[nodiscard]] std::size_t nilpotency_index() const
    {
        std::size_t const n = dimension();
        if (n == 0)
            return 0;
        std::vector<std::vector<Integer>> power(n, std::vector<Integer>(n));
        for (std::size_t i = 0; i < n; ++i)
            power[i][i] = 1;
        for (std::size_t k = 0; k <= n; ++k) {
            bool zero = true;
            for (auto const& row : power)
                for (auto const& v : row)
                    zero = zero && v == 0;
            if (zero)
                return k;
            std::vector<std::vector<Integer>> next(n, std::vector<Integer>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t l = 0; l < n; ++l)
                    if (N_[i][l] != 0)
                        for (std::size_t j = 0; j < n; ++j)
                            next[i][j] += Integer(static_cast<long>(N_[i][l])) * power[l][j];
            power = std::move(next);
        }
        return n + 1;
    }

private:
    [[nodiscard]] bool is_nilpotent() const { return nilpotency_index() <= dimension(); }

    u64 q_;
    std::vector<LocalCharacter> summands_;
    IntMatrix N_;
};

inline WDRep wd_character(LocalCharacter const& chi)
{
    return {static_cast<i64>(chi.prime()), {chi}, zero_matrix(1)};
}

/// sp(2): sigma = diag(1, omega_q), N = [[0,0],[1,0]].
inline WDRep wd_sp2(i64 q)
{
    return {q, {LocalCharacter::trivial(q), LocalCharacter::omega(q)}, {{0, 0}, {1, 0}}};
}

inline void require_same_prime(WDRep const& a, WDRep const& b, char const* where)
{
    if (a.prime() != b.prime())
        throw PrimeMismatch(std::string(where) + ": representations at different primes");
}

inline WDRep wd_sum(WDRep const& a, WDRep const& b)
{
    require_same_prime(a, b, "wd_sum");
    std::size_t const n1 = a.dimension(), n2 = b.dimension();
    auto summands = a.summands();
    summands.insert(summands.end(), b.summands().begin(), b.summands().end());
    IntMatrix N = zero_matrix(n1 + n2);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            N[i][j] = a.N()[i][j];
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            N[n1 + i][n1 + j] = b.N()[i][j];
    return {static_cast<i64>(a.prime()), std::move(summands), std::move(N)};
}

/// Basis e_i (x) f_j in lexicographic order (index i * dim b + j) and
/// N = N_a (x) 1 + 1 (x) N_b.
inline WDRep wd_tensor(WDRep const& a, WDRep const& b)
{
    require_same_prime(a, b, "wd_tensor");
    std::size_t const n1 = a.dimension(), n2 = b.dimension();
    std::vector<LocalCharacter> summands;
    summands.reserve(n1 * n2);
    for (auto const& s : a.summands())
        for (auto const& t : b.summands())
            summands.push_back(s * t);
    IntMatrix N = zero_matrix(n1 * n2);
    for (std::size_t i1 = 0; i1 < n1; ++i1)
        for (std::size_t i2 = 0; i2 < n2; ++i2)
            for (std::size_t j1 = 0; j1 < n1; ++j1)
                for (std::size_t j2 = 0; j2 < n2; ++j2) {
                    i64 v = 0;
                    if (i2 == j2)
                        v += a.N()[i1][j1];
                    if (i1 == j1)
                        v += b.N()[i2][j2];
                    N[i1 * n2 + i2][j1 * n2 + j2] = v;
                }
    return {static_cast<i64>(a.prime()), std::move(summands), std::move(N)};
}

inline WDRep wd_twist(WDRep const& rho, LocalCharacter const& mu)
{
    if (mu.prime() != rho.prime())
        throw PrimeMismatch("wd_twist: character at a different prime");
    std::vector<LocalCharacter> summands;
    summands.reserve(rho.dimension());
    for (auto const& s : rho.summands())
        summands.push_back(s * mu);
    return {static_cast<i64>(rho.prime()), std::move(summands), rho.N()};
}

/// Indices of the basis lines fixed by inertia (trivial ramified part).
inline std::vector<std::size_t> inertia_invariants(WDRep const& rho)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rho.dimension(); ++i)
        if (rho.summands()[i].is_unramified())
            out.push_back(i);
    return out;
}

struct DeltaQuotientReport
{
    std::vector<std::size_t> inertia_invariant_indices;
    std::size_t kernel_intersection_dim = 0;
    /// Basis lines spanning a complement of V^I cap ker N inside V^I.
    std::vector<std::size_t> quotient_indices;
    FrobeniusValue delta;
};

/// Pivot columns (lowest index first) of the submatrix of N on `indices`.
inline std::vector<std::size_t> pivot_columns(IntMatrix const& N, std::vector<std::size_t> const& indices)
{
    std::size_t const n = indices.size();
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            A[r][c] = static_cast<long>(N[indices[r]][indices[c]]);
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t sel = row;
        while (sel < n && sgn(A[sel][col]) == 0)
            ++sel;
        if (sel == n)
            continue;
        std::swap(A[row], A[sel]);
        for (std::size_t r = row + 1; r < n; ++r) {
            if (sgn(A[r][col]) == 0)
                continue;
            Rational const f = A[r][col] / A[row][col];
            for (std::size_t c = col; c < n; ++c)
                A[r][c] -= f * A[row][c];
        }
        pivots.push_back(indices[col]);
        ++row;
    }
    return pivots;
}

/// delta = det(-Phi | V^I / (V^I cap ker N)), Phi acting on line i by the
/// uniformizer value of summand i. Formal units stay symbolic.
inline DeltaQuotientReport delta_factor(WDRep const& rho)
{
    DeltaQuotientReport report;
    report.inertia_invariant_indices = inertia_invariants(rho);
    report.quotient_indices = pivot_columns(rho.N(), report.inertia_invariant_indices);
    report.kernel_intersection_dim = report.inertia_invariant_indices.size() - report.quotient_indices.size();
    FrobeniusValue delta;
    for (std::size_t const i : report.quotient_indices)
        delta = delta * (FrobeniusValue(Rational(-1)) * rho.summands()[i].uniformizer_value());
    report.delta = delta;
    return report;
}

/// a(sigma') = sum of the summand conductors + dim V^I / (V^I cap ker N).
inline int wd_conductor(WDRep const& rho)
{
    int a = 0;
    for (auto const& s : rho.summands())
        a += s.conductor();
    return a + static_cast<int>(pivot_columns(rho.N(), inertia_invariants(rho)).size());
}

/// epsilon of the underlying Weil representation, as the product of the
/// character epsilons over the summands.
inline CyclotomicNumber epsilon_weil(WDRep const& rho, AdditiveCharacter const& psi, HaarMeasure const& dx)
{
    CyclotomicNumber eps = Rational(1);
    for (auto const& s : rho.summands())
        eps = (eps * eps_character(s, psi, dx)).canonical();
    return eps;
}

/// epsilon' = epsilon * delta.
inline CyclotomicNumber epsilon_prime(WDRep const& rho, AdditiveCharacter const& psi, HaarMeasure const& dx)
{
    auto const report = delta_factor(rho);
    return (epsilon_weil(rho, psi, dx) * report.delta.concrete()).canonical();
}

/// epsilon' / |epsilon'|; `exact` is set whenever the quotient could be
/// written down in a cyclotomic field.
struct RootNumber
{
    std::complex<double> value;
    std::optional<CyclotomicNumber> exact;

    /// +1 or -1 when the root number is an exact sign.
    [[nodiscard]] std::optional<int> sign() const
    {
        if (!exact)
            return std::nullopt;
        auto const r = exact->as_rational();
        if (!r)
            return std::nullopt;
        return sgn(*r);
    }
};

inline RootNumber root_number_of(CyclotomicNumber const& eps_prime)
{
    constexpr double kTolerance = 1e-9;
    std::complex<double> const z = eps_prime.to_complex();
    double const magnitude = std::abs(z);
    if (!(magnitude > 0.0))
        throw NumericInstability("root number: epsilon' embeds to 0");
    RootNumber w{z / magnitude, std::nullopt};

    if (auto const r = eps_prime.as_rational()) {
        if (sgn(*r) == 0)
            throw InternalInconsistency("root number: epsilon' is exactly 0");
        w.exact = CyclotomicNumber(Rational(sgn(*r)));
    } else if (auto const scaled = eps_prime.even_lift().as_scaled_root_of_unity()) {
        w.exact = CyclotomicNumber::zeta(eps_prime.even_lift().modulus(), static_cast<i64>(scaled->second)).canonical();
    } else {
        // |eps'|^2 is rational; if eps'^2 / |eps'|^2 is a root of unity zeta_m^j
        // then W = +-zeta_{2m}^j, the sign fixed by the embedding.
        auto const norm = (eps_prime * eps_prime.conjugate()).as_rational();
        if (norm && sgn(*norm) > 0) {
            auto const square = (eps_prime * eps_prime * CyclotomicNumber(Rational(1) / *norm)).canonical().even_lift();
            auto const scaled = square.as_scaled_root_of_unity();
            if (scaled && scaled->first == 1) {
                u64 const m = square.modulus();
                auto candidate = CyclotomicNumber::zeta(2 * m, static_cast<i64>(scaled->second));
                if (std::abs(candidate.to_complex() - w.value) > std::abs(-candidate.to_complex() - w.value))
                    candidate = -candidate;
                w.exact = candidate.canonical();
            }
        }
    }
    if (w.exact && std::abs(w.exact->to_complex() - w.value) > kTolerance)
        throw NumericInstability("root number: exact value disagrees with the complex embedding");
    return w;
}

/// W(sigma', psi) using the measure with vol(Z_q) = 1.
inline RootNumber local_root_number(WDRep const& rho, AdditiveCharacter const& psi)
{
    return root_number_of(epsilon_prime(rho, psi, HaarMeasure{rho.prime()}));
}

} // namespace tproot
