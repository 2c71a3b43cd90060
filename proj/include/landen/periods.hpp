#ifndef LANDEN_PERIODS_HPP
#define LANDEN_PERIODS_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "chain.hpp"
#include "core.hpp"
#include "error.hpp"

namespace landen
{

/// Lagrange-reduced basis: omega1 shortest, omega2 shortest independent, Im(omega2/omega1) > 0.
template <typename T>
struct ReducedBasis {
    complex<T> omega1;
    complex<T> omega2;
};

/// eta_k = 2 zeta(omega_k / 2).
template <typename T>
struct QuasiPeriods {
    complex<T> eta1;
    complex<T> eta2;
};

/// Everything about a curve that does not depend on the evaluation point.
///
/// For rank-2 curves `roots` is properly ordered and `chain` is the optimal
/// Landen chain started from it; `omega` is the shortest period (rank 2) or
/// the generator (rank 1), and zero for the trivial group.
template <typename T>
struct Curve {
    Invariants<T> inv;
    Tolerances<T> tol;
    SubgroupRank rank = SubgroupRank::rank2;
    RootTriple<T> roots;
    LandenChain<T> chain;
    complex<T> omega;
};

namespace detail
{

template <typename T>
complex<T> rank1_generator(const Invariants<T> &inv)
{
    const T pi = std::numbers::pi_v<T>;
    // g3 / g2 = 2 pi^2 / (9 omega^2) fixes omega up to sign, including the
    // rotation that g2 alone leaves open.
    const complex<T> omega = normalize_sign(std::sqrt(T(2) * pi * pi * inv.g2 / (T(9) * inv.g3)));
    const complex<T> w2 = omega * omega;
    const complex<T> g2_pred = T(4) * pi * pi * pi * pi / (T(3) * w2 * w2);
    if (!isfinite(omega) || std::abs(inv.g2 - g2_pred) > T(1e-10) * std::abs(inv.g2)) {
        throw error(errc::inconsistent_invariants, "rank1_period: g2 and g3 do not describe a rank-1 group");
    }
    return omega;
}

template <typename T>
Curve<T> finish_curve(Curve<T> c)
{
    switch (c.rank) {
        case SubgroupRank::rank2:
            c.roots = order_properly(c.roots);
            c.chain = iterate_optimal(c.roots, c.tol);
            c.omega = c.chain.omega;
            break;
        case SubgroupRank::rank1:
            c.roots = order_properly(c.roots);
            c.omega = rank1_generator(c.inv);
            break;
        case SubgroupRank::rank0:
            c.omega = complex<T>(0);
            break;
    }
    return c;
}

} // namespace detail

template <typename T>
Curve<T> make_curve(const Invariants<T> &inv, const Tolerances<T> &tol = {})
{
    Curve<T> c;
    c.inv = inv;
    c.tol = tol;
    c.rank = classify(inv, tol);
    c.roots = solve_cubic(inv);
    return detail::finish_curve(std::move(c));
}

/// Curve given by its roots directly, bypassing the cubic solver.
///
/// Near-degenerate curves lose accuracy when passed through (g2, g3); the
/// roots are used as given here.
template <typename T>
Curve<T> make_curve(const RootTriple<T> &roots, const Tolerances<T> &tol = {})
{
    Curve<T> c;
    c.inv = invariants_from_roots(roots);
    c.tol = tol;
    if (!isfinite(c.inv.g2) || !isfinite(c.inv.g3)) {
        throw error(errc::non_finite, "make_curve: roots must be finite");
    }
    c.rank = classify(c.inv, tol);
    c.roots = roots;
    return detail::finish_curve(std::move(c));
}

template <typename T>
complex<T> rank1_period(const Invariants<T> &inv, const Tolerances<T> &tol = {})
{
    if (classify(inv, tol) != SubgroupRank::rank1) {
        throw error(errc::degenerate_curve, "rank1_period: invariants do not describe a rank-1 group");
    }
    return detail::rank1_generator(inv);
}

template <typename T>
complex<T> smallest_period(const Invariants<T> &inv, const Tolerances<T> &tol = {})
{
    if (classify(inv, tol) != SubgroupRank::rank2) {
        throw error(errc::degenerate_curve, "smallest_period: curve is singular");
    }
    return make_curve(inv, tol).omega;
}

/// Reduced basis from the curve's chain and a second, non-optimal Landen descent.
///
/// The second descent keeps selecting the subgroup that doubles the shortest
/// period and retains the second one, until the doubled period is no longer
/// the shortest; the shortest period of the resulting lattice is omega2.
template <typename T>
ReducedBasis<T> reduced_basis(const Curve<T> &curve)
{
    if (curve.rank != SubgroupRank::rank2) {
        throw error(errc::degenerate_curve, "reduced_basis: curve is singular");
    }
    const RootTriple<T> &e = curve.roots;
    const complex<T> omega1 = curve.omega;

    SelectedRoots<T> h = landen_step(SelectedRoots<T>{e.e2, {e.e1, e.e3}});
    int iter = 0;
    while (true) {
        const complex<T> h1 = h.selected;
        const complex<T> a = h.pair[0];
        const complex<T> b = h.pair[1];
        const T dp = std::abs(a - b);
        if (!(std::abs(h1 - a) >= dp && std::abs(h1 - b) >= dp)) {
            break;
        }
        if (++iter > curve.tol.max_iter) {
            throw error(errc::no_convergence, "reduced_basis: second-period descent did not terminate");
        }
        // Properly ordered arrangement keeping h1 first.
        const RootTriple<T> c1{h1, a, b};
        const RootTriple<T> c2{h1, b, a};
        RootTriple<T> ht = c1;
        if (!is_properly_ordered(c1) || (is_properly_ordered(c2) && detail::lex_less(b, a))) {
            ht = c2;
        }
        h = landen_step(SelectedRoots<T>{ht.e2, {ht.e1, ht.e3}});
    }

    const LandenChain<T> k = iterate_optimal(order_properly(h.triple()), curve.tol);
    complex<T> omega2 = k.omega;

    const T m = std::round((omega2 / omega1).real());
    if (m != T(0)) {
        const complex<T> cand = omega2 - m * omega1;
        if (std::abs(cand) < std::abs(omega2)) {
            omega2 = cand;
        }
    }
    if ((omega2 / omega1).imag() < 0) {
        omega2 = -omega2;
    }
    return {omega1, omega2};
}

template <typename T>
ReducedBasis<T> reduced_basis(const Invariants<T> &inv, const Tolerances<T> &tol = {})
{
    if (classify(inv, tol) != SubgroupRank::rank2) {
        throw error(errc::degenerate_curve, "reduced_basis: curve is singular");
    }
    return reduced_basis(make_curve(inv, tol));
}

} // namespace landen

#endif
