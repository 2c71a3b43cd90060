#ifndef LANDEN_CHAIN_HPP
#define LANDEN_CHAIN_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "core.hpp"
#include "error.hpp"

namespace landen
{

/// Landen transformation: roots of the index-2 subgroup selected by `s.selected`.
///
/// The result is (-e1/2, {e1/4 + r, e1/4 - r}) with 16 r^2 = 4 (e1 - e2)(e1 - e3).
/// The member of the pair that lies close to -e1/2 is formed from the
/// cancellation-free expression -e1/2 + (e2 - e3)^2 / (16 (3 e1/4 + r)).
template <typename T>
SelectedRoots<T> landen_step(const SelectedRoots<T> &s)
{
    using C = complex<T>;
    const C e1 = s.selected;
    const C e2 = s.pair[0];
    const C e3 = s.pair[1];

    const C f1 = -e1 / T(2);
    const C c = T(3) * e1 / T(4);
    C r = std::sqrt((e1 - e2) * (e1 - e3)) / T(2);
    if (std::abs(c + r) < std::abs(c - r)) {
        r = -r;
    }
    const C far = e1 / T(4) + r;
    const C denom = T(16) * (c + r);
    const C d = e2 - e3;
    const C close = denom == C(0) ? e1 / T(4) - r : f1 + d * d / denom;
    return {f1, {far, close}};
}

/// Ratio of the smallest to the largest pairwise distance of a triple.
template <typename T>
T gap_ratio(const RootTriple<T> &t)
{
    const RootTriple<T> o = order_properly(t);
    return std::abs(o.e2 - o.e3) / std::abs(o.e1 - o.e2);
}

/// Optimal selection: the root isolated from the closest pair.
template <typename T>
SelectedRoots<T> select_optimal(const RootTriple<T> &t)
{
    const RootTriple<T> o = order_properly(t);
    return {o.e1, {o.e2, o.e3}};
}

/// Sequence of optimal index-2 subgroups Gamma_1, Gamma_2, ... of a lattice.
///
/// `steps[n-1]` holds the roots of Gamma_n with the root produced as -e1/2
/// first; `sources[n-1]` is the selection of Gamma_{n-1} roots it came from.
template <typename T>
struct LandenChain {
    std::vector<SelectedRoots<T>> sources;
    std::vector<SelectedRoots<T>> steps;
    /// Limit period i pi / sqrt(3 e1^(N)), sign-normalized.
    complex<T> omega;

    std::size_t length() const
    {
        return steps.size();
    }
};

namespace detail
{

template <typename T>
complex<T> limit_period(const complex<T> &selected)
{
    const complex<T> ipi(T(0), std::numbers::pi_v<T>);
    return normalize_sign(ipi / std::sqrt(T(3) * selected));
}

} // namespace detail

/// Iterates optimal Landen steps from a properly ordered triple of distinct roots.
///
/// Stops once the closest pair of the current triple is within `eps_stop`
/// of the largest pairwise distance. `max_steps` (if positive) truncates the
/// chain early without error; this is only used to study convergence.
template <typename T>
LandenChain<T> iterate_optimal(const RootTriple<T> &t, const Tolerances<T> &tol = {}, int max_steps = 0)
{
    if (std::abs(t.e1 - t.e2) == T(0) || !isfinite(t.e1) || !isfinite(t.e2) || !isfinite(t.e3)) {
        throw error(errc::degenerate_curve, "iterate_optimal: roots must be finite and distinct");
    }
    LandenChain<T> chain;
    SelectedRoots<T> src{t.e1, {t.e2, t.e3}};
    while (true) {
        chain.sources.push_back(src);
        chain.steps.push_back(landen_step(src));
        const int n = static_cast<int>(chain.steps.size());
        const RootTriple<T> next = order_properly(chain.steps.back().triple());
        const T gap = std::abs(next.e2 - next.e3);
        if (gap <= tol.eps_stop * std::abs(next.e1 - next.e2) || n == max_steps) {
            break;
        }
        if (n >= tol.max_iter) {
            throw error(errc::no_convergence,
                        "iterate_optimal: no convergence after " + std::to_string(n) + " steps");
        }
        src = {next.e1, {next.e2, next.e3}};
    }
    chain.omega = detail::limit_period(chain.steps.back().selected);
    return chain;
}

template <typename T>
struct ChainLevel {
    Invariants<T> inv;
    complex<T> delta;
};

/// Invariants and discriminant of Gamma_1 ... Gamma_N from the selections that produced them.
template <typename T>
std::vector<ChainLevel<T>> chain_invariant_deltas(const LandenChain<T> &chain)
{
    std::vector<ChainLevel<T>> out;
    out.reserve(chain.sources.size());
    for (const auto &s : chain.sources) {
        const complex<T> e1 = s.selected;
        const complex<T> prod = (e1 - s.pair[0]) * (e1 - s.pair[1]);
        const complex<T> d = s.pair[0] - s.pair[1];
        const complex<T> d2 = d * d;
        const Invariants<T> inv{T(3) * e1 * e1 / T(4) + prod, -e1 * e1 * e1 / T(8) + e1 / T(2) * prod};
        out.push_back({inv, prod * d2 * d2 / T(16)});
    }
    return out;
}

} // namespace landen

#endif
