#ifndef LANDEN_CORE_HPP
#define LANDEN_CORE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>

#include "error.hpp"

namespace landen
{

template <typename T>
using complex = std::complex<T>;

template <typename T>
inline bool isfinite(const complex<T> &c)
{
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}

/// Weierstrass invariants (g2, g3) of the curve y^2 = 4x^3 - g2 x - g3.
template <typename T>
struct Invariants {
    static_assert(std::is_floating_point_v<T>, "Invariants requires a real floating-point type.");
    complex<T> g2;
    complex<T> g3;
};

/// Roots of 4x^3 - g2 x - g3 in a definite order.
template <typename T>
struct RootTriple {
    complex<T> e1;
    complex<T> e2;
    complex<T> e3;

    std::array<complex<T>, 3> as_array() const
    {
        return {e1, e2, e3};
    }
};

/// A distinguished root together with the unordered remaining pair.
///
/// Consumers never depend on the order of `pair`.
template <typename T>
struct SelectedRoots {
    complex<T> selected;
    std::array<complex<T>, 2> pair;

    /// Forget the selection.
    RootTriple<T> triple() const
    {
        return {selected, pair[0], pair[1]};
    }
};

enum class SubgroupRank { rank2, rank1, rank0 };

inline const char *to_string(SubgroupRank r)
{
    switch (r) {
        case SubgroupRank::rank2:
            return "rank2";
        case SubgroupRank::rank1:
            return "rank1";
        case SubgroupRank::rank0:
            return "rank0";
    }
    return "unknown";
}

template <typename T>
struct Tolerances {
    /// Relative stopping threshold of the Landen iteration.
    T eps_stop = std::numeric_limits<T>::epsilon();
    int max_iter = 64;
    /// Relative discriminant threshold below which a curve is treated as degenerate.
    T eps_degenerate = std::ldexp(T(1), -40);
    /// Relative distance (in units of the shortest period) below which z counts as a pole.
    T eps_pole = std::ldexp(T(1), -48);
};

namespace detail
{

template <typename T>
inline void require_finite(const Invariants<T> &inv, const char *where)
{
    if (!isfinite(inv.g2) || !isfinite(inv.g3)) {
        throw error(errc::non_finite, std::string(where) + ": invariants must be finite");
    }
}

template <typename T>
inline bool lex_less(const complex<T> &a, const complex<T> &b)
{
    if (a.real() != b.real()) {
        return a.real() < b.real();
    }
    return a.imag() < b.imag();
}

template <typename T>
inline complex<T> cubic_value(const Invariants<T> &inv, const complex<T> &x)
{
    return (T(4) * x * x - inv.g2) * x - inv.g3;
}

template <typename T>
inline complex<T> principal_cbrt(const complex<T> &w)
{
    return std::polar(std::cbrt(std::abs(w)), std::arg(w) / T(3));
}

// Normalization of a period defined up to sign: Re > 0, or Re == 0 and Im > 0.
template <typename T>
inline complex<T> normalize_sign(const complex<T> &w)
{
    if (w.real() < 0 || (w.real() == 0 && w.imag() < 0)) {
        return -w;
    }
    return w;
}

} // namespace detail

template <typename T>
inline complex<T> discriminant(const Invariants<T> &inv)
{
    detail::require_finite(inv, "discriminant");
    return inv.g2 * inv.g2 * inv.g2 - T(27) * inv.g3 * inv.g3;
}

template <typename T>
inline Invariants<T> invariants_from_roots(const RootTriple<T> &t)
{
    return {T(2) * (t.e1 * t.e1 + t.e2 * t.e2 + t.e3 * t.e3), T(4) * t.e1 * t.e2 * t.e3};
}

/// Roots of 4x^3 - g2 x - g3, in unspecified order, with their sum forced to zero.
///
/// Cardano on the depressed cubic x^3 + px + q with p = -g2/4, q = -g3/4, the
/// larger of the two candidate u^3 taken to avoid cancellation, then one Newton
/// step per root that is kept only if it lowers the residual.
template <typename T>
RootTriple<T> solve_cubic(const Invariants<T> &inv)
{
    detail::require_finite(inv, "solve_cubic");
    using C = complex<T>;

    const C p = -inv.g2 / T(4);
    const C q = -inv.g3 / T(4);
    if (p == C(0) && q == C(0)) {
        return {C(0), C(0), C(0)};
    }

    const C s = std::sqrt(q * q / T(4) + p * p * p / T(27));
    const C a = -q / T(2) + s;
    const C b = -q / T(2) - s;
    const C u = detail::principal_cbrt(std::abs(a) >= std::abs(b) ? a : b);
    const C v = -p / (T(3) * u);

    const C w(T(-0.5), std::sqrt(T(3)) / T(2));
    std::array<C, 3> x{u + v, w * u + std::conj(w) * v, std::conj(w) * u + w * v};

    for (auto &r : x) {
        const C fx = detail::cubic_value(inv, r);
        const C dfx = T(12) * r * r - inv.g2;
        if (dfx == C(0)) {
            continue;
        }
        const C polished = r - fx / dfx;
        if (std::abs(detail::cubic_value(inv, polished)) < std::abs(fx)) {
            r = polished;
        }
    }

    const C mean = (x[0] + x[1] + x[2]) / T(3);
    return {x[0] - mean, x[1] - mean, x[2] - mean};
}

/// True if |e2 - e3| <= |e1 - e3| <= |e1 - e2|.
template <typename T>
inline bool is_properly_ordered(const RootTriple<T> &t)
{
    const T d23 = std::abs(t.e2 - t.e3);
    const T d13 = std::abs(t.e1 - t.e3);
    const T d12 = std::abs(t.e1 - t.e2);
    return d23 <= d13 && d13 <= d12;
}

/// Permutation of `t` that is properly ordered.
///
/// Among admissible permutations the one with lexicographically smallest
/// (Re, Im) of e1, then of e2, is returned.
template <typename T>
RootTriple<T> order_properly(const RootTriple<T> &t)
{
    static constexpr std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    const auto e = t.as_array();

    bool found = false;
    RootTriple<T> best{};
    for (const auto &p : perms) {
        const RootTriple<T> cand{e[p[0]], e[p[1]], e[p[2]]};
        if (!is_properly_ordered(cand)) {
            continue;
        }
        if (!found || detail::lex_less(cand.e1, best.e1)
            || (cand.e1 == best.e1 && detail::lex_less(cand.e2, best.e2))) {
            best = cand;
            found = true;
        }
    }
    // Always reached: the pair at minimal distance followed by the nearer-first
    // assignment is admissible.
    return best;
}

template <typename T>
SubgroupRank classify(const Invariants<T> &inv, const Tolerances<T> &tol = {})
{
    detail::require_finite(inv, "classify");
    const T a2 = std::abs(inv.g2);
    const T a3 = std::abs(inv.g3);
    if (std::max(a2, std::pow(a3, T(2) / T(3))) <= tol.eps_degenerate) {
        return SubgroupRank::rank0;
    }
    const T scale = std::max(a2 * a2 * a2, T(27) * a3 * a3);
    if (std::abs(discriminant(inv)) <= tol.eps_degenerate * scale) {
        return SubgroupRank::rank1;
    }
    return SubgroupRank::rank2;
}

} // namespace landen

#endif
