#ifndef LANDEN_FUNCTIONS_HPP
#define LANDEN_FUNCTIONS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

#include "chain.hpp"
#include "core.hpp"
#include "error.hpp"
#include "periods.hpp"

namespace landen
{

/// Values of wp, wp', zeta and sigma at one argument.
///
/// Members that were not requested through a FunctionSet are NaN.
template <typename T>
struct WeierstrassValues {
    complex<T> p;
    complex<T> dp;
    complex<T> zeta;
    complex<T> sigma;
};

/// A point (x, y) on y^2 = 4x^3 - g2 x - g3.
template <typename T>
struct CurvePoint {
    complex<T> x;
    complex<T> y;
};

/// Subset of functions to evaluate.
enum class FunctionSet : unsigned {
    p = 1u,
    dp = 2u,
    zeta = 4u,
    sigma = 8u,
    all = 15u,
};

constexpr FunctionSet operator|(FunctionSet a, FunctionSet b)
{
    return static_cast<FunctionSet>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}

constexpr bool contains(FunctionSet set, FunctionSet f)
{
    return (static_cast<unsigned>(set) & static_cast<unsigned>(f)) != 0u;
}

namespace detail
{

template <typename T>
complex<T> nan_complex()
{
    const T n = std::numeric_limits<T>::quiet_NaN();
    return {n, n};
}

template <typename T>
WeierstrassValues<T> nan_values()
{
    return {nan_complex<T>(), nan_complex<T>(), nan_complex<T>(), nan_complex<T>()};
}

template <typename T>
bool finite_values(const WeierstrassValues<T> &v, FunctionSet set)
{
    return isfinite(v.p) && (!contains(set, FunctionSet::dp) || isfinite(v.dp))
           && (!contains(set, FunctionSet::zeta) || isfinite(v.zeta))
           && (!contains(set, FunctionSet::sigma) || isfinite(v.sigma));
}

// Rank-1 group omega Z.
template <typename T>
WeierstrassValues<T> rank1_values(const complex<T> &omega, const complex<T> &z)
{
    const T pi = std::numbers::pi_v<T>;
    const complex<T> k = pi / omega;
    const complex<T> a = k * z;
    const complex<T> s = std::sin(a);
    const complex<T> c = std::cos(a);
    const complex<T> k2 = k * k;
    return {k2 * (T(1) / (s * s) - T(1) / T(3)), T(-2) * k2 * k * c / (s * s * s),
            k2 * z / T(3) + k * c / s, std::exp(k2 * z * z / T(6)) * s / k};
}

// Landen descent of Algorithm 5.1 at argument w, returning (wp, wp', zeta, sigma^2).
template <typename T>
WeierstrassValues<T> descend(const LandenChain<T> &chain, const complex<T> &w, FunctionSet set)
{
    const bool want_dp = contains(set, FunctionSet::dp) || contains(set, FunctionSet::zeta)
                         || contains(set, FunctionSet::sigma);
    const bool want_zeta = contains(set, FunctionSet::zeta);
    const bool want_sigma = contains(set, FunctionSet::sigma);

    WeierstrassValues<T> v = rank1_values(chain.omega, w);
    v.sigma *= v.sigma;
    const complex<T> w2 = w * w;
    for (auto it = chain.steps.rbegin(); it != chain.steps.rend(); ++it) {
        const complex<T> e1 = it->selected;
        const complex<T> c = (it->pair[0] - e1) * (it->pair[1] - e1);
        const complex<T> den = v.p - e1;
        const complex<T> q = c / den;
        if (want_zeta) {
            v.zeta = T(2) * v.zeta + v.dp / (T(2) * den) + e1 * w;
        }
        if (want_sigma) {
            v.sigma = std::exp(e1 * w2) * den * v.sigma * v.sigma;
        }
        if (want_dp) {
            v.dp *= T(1) - q / den;
        }
        v.p += q;
    }
    return v;
}

} // namespace detail

/// Values on a curve without argument reduction.
///
/// Rank 2: Landen descent along the curve's chain. If sigma is requested
/// the descent runs at z/2 carrying sigma^2 and the duplication formulas lift
/// the result to z; otherwise it runs at z directly.
template <typename T>
WeierstrassValues<T> weierstrass_all(const Curve<T> &curve, const complex<T> &z, FunctionSet set = FunctionSet::all)
{
    if (!isfinite(z)) {
        throw error(errc::non_finite, "weierstrass_all: argument must be finite");
    }
    WeierstrassValues<T> v = detail::nan_values<T>();
    switch (curve.rank) {
        case SubgroupRank::rank0:
            if (z == complex<T>(0)) {
                throw error(errc::pole_proximity, "weierstrass_all: z is a pole");
            }
            v = {T(1) / (z * z), T(-2) / (z * z * z), T(1) / z, z};
            break;
        case SubgroupRank::rank1: {
            const complex<T> t = z / curve.omega;
            const complex<T> off = (t - std::round(t.real())) * curve.omega;
            if (std::abs(off) <= curve.tol.eps_pole * std::abs(curve.omega)) {
                throw error(errc::pole_proximity, "weierstrass_all: z is too close to a pole");
            }
            v = detail::rank1_values(curve.omega, z);
            break;
        }
        case SubgroupRank::rank2: {
            if (std::abs(z) <= curve.tol.eps_pole * std::abs(curve.omega)) {
                throw error(errc::pole_proximity, "weierstrass_all: z is too close to a pole");
            }
            if (!contains(set, FunctionSet::sigma)) {
                v = detail::descend(curve.chain, z, set);
                break;
            }
            const WeierstrassValues<T> h = detail::descend(curve.chain, z / T(2), set);
            const complex<T> a = T(6) * h.p * h.p - curve.inv.g2 / T(2);
            const complex<T> t = a / (T(2) * h.dp);
            v.p = T(-2) * h.p + t * t;
            v.dp = -h.dp + a / (T(4) * h.dp) * (T(12) * h.p - (a / h.dp) * (a / h.dp));
            v.zeta = T(2) * h.zeta + t;
            v.sigma = -h.dp * h.sigma * h.sigma;
            break;
        }
    }
    if (!contains(set, FunctionSet::dp)) {
        v.dp = detail::nan_complex<T>();
    }
    if (!contains(set, FunctionSet::zeta)) {
        v.zeta = detail::nan_complex<T>();
    }
    if (!contains(set, FunctionSet::sigma)) {
        v.sigma = detail::nan_complex<T>();
    }
    if (!detail::finite_values(v, set)) {
        throw error(errc::pole_proximity, "weierstrass_all: evaluation hit a pole");
    }
    return v;
}

template <typename T>
WeierstrassValues<T> weierstrass_all(const Invariants<T> &inv, const complex<T> &z, const Tolerances<T> &tol = {},
                                     FunctionSet set = FunctionSet::all)
{
    return weierstrass_all(make_curve(inv, tol), z, set);
}

template <typename T>
QuasiPeriods<T> quasi_periods(const Curve<T> &curve, const ReducedBasis<T> &basis)
{
    const auto z1 = weierstrass_all(curve, basis.omega1 / T(2), FunctionSet::zeta);
    const auto z2 = weierstrass_all(curve, basis.omega2 / T(2), FunctionSet::zeta);
    return {T(2) * z1.zeta, T(2) * z2.zeta};
}

template <typename T>
QuasiPeriods<T> quasi_periods(const ReducedBasis<T> &basis, const Invariants<T> &inv, const Tolerances<T> &tol = {})
{
    return quasi_periods(make_curve(inv, tol), basis);
}

/// z = z0 + m omega1 + n omega2 with lattice coordinates of z0 in [-1/2, 1/2).
template <typename T>
struct ReducedArgument {
    complex<T> z0;
    std::int64_t m = 0;
    std::int64_t n = 0;
};

template <typename T>
ReducedArgument<T> reduce_argument(const complex<T> &z, const ReducedBasis<T> &basis)
{
    const complex<T> &w1 = basis.omega1;
    const complex<T> &w2 = basis.omega2;
    const T a = (std::conj(w2) * z).imag() / (std::conj(w2) * w1).imag();
    const T b = (std::conj(w1) * z).imag() / (std::conj(w1) * w2).imag();
    const T m = std::floor(a + T(0.5));
    const T n = std::floor(b + T(0.5));
    return {z - m * w1 - n * w2, static_cast<std::int64_t>(m), static_cast<std::int64_t>(n)};
}

/// Curve with its reduced basis and quasi-periods, for evaluation at arbitrary z.
template <typename T>
struct Lattice {
    Curve<T> curve;
    ReducedBasis<T> basis;
    QuasiPeriods<T> eta;
};

template <typename T>
Lattice<T> make_lattice(Curve<T> curve)
{
    if (curve.rank != SubgroupRank::rank2) {
        throw error(errc::degenerate_curve, "make_lattice: curve is singular");
    }
    Lattice<T> l;
    l.basis = reduced_basis(curve);
    l.eta = quasi_periods(curve, l.basis);
    l.curve = std::move(curve);
    return l;
}

template <typename T>
WeierstrassValues<T> weierstrass_at(const Lattice<T> &lat, const complex<T> &z, FunctionSet set = FunctionSet::all)
{
    if (!isfinite(z)) {
        throw error(errc::non_finite, "weierstrass_at: argument must be finite");
    }
    const ReducedArgument<T> r = reduce_argument(z, lat.basis);
    if (std::abs(r.z0) <= lat.curve.tol.eps_pole * std::abs(lat.basis.omega1)) {
        throw error(errc::pole_proximity, "weierstrass_at: z is too close to a lattice point");
    }
    WeierstrassValues<T> v = weierstrass_all(lat.curve, r.z0, set);
    if (r.m == 0 && r.n == 0) {
        return v;
    }
    const T m = static_cast<T>(r.m);
    const T n = static_cast<T>(r.n);
    const complex<T> eta = m * lat.eta.eta1 + n * lat.eta.eta2;
    const complex<T> u = m * lat.basis.omega1 + n * lat.basis.omega2;
    if (contains(set, FunctionSet::zeta)) {
        v.zeta += eta;
    }
    if (contains(set, FunctionSet::sigma)) {
        const bool odd = ((r.m + r.n + r.m * r.n) & 1) != 0;
        v.sigma *= std::exp(eta * (r.z0 + u / T(2)));
        if (odd) {
            v.sigma = -v.sigma;
        }
    }
    return v;
}

/// Values at any z; rank-2 curves are evaluated at the reduced argument.
template <typename T>
WeierstrassValues<T> weierstrass_at(const Invariants<T> &inv, const complex<T> &z, const Tolerances<T> &tol = {},
                                    FunctionSet set = FunctionSet::all)
{
    Curve<T> curve = make_curve(inv, tol);
    if (curve.rank != SubgroupRank::rank2) {
        return weierstrass_all(curve, z, set);
    }
    return weierstrass_at(make_lattice(std::move(curve)), z, set);
}

namespace detail
{

template <typename T>
complex<T> abel_rank1(const complex<T> &omega, const complex<T> &x, const complex<T> &y)
{
    const T pi = std::numbers::pi_v<T>;
    const complex<T> w2 = omega * omega;
    return -omega / pi * std::atan((T(6) * pi * w2 * x + T(2) * pi * pi * pi) / (T(3) * w2 * omega * y));
}

template <typename T>
T curve_scale(const Invariants<T> &inv, const CurvePoint<T> &pt)
{
    const T ax = std::abs(pt.x);
    return std::max({std::norm(pt.y), T(4) * ax * ax * ax, std::abs(inv.g2) * ax, std::abs(inv.g3)});
}

} // namespace detail

/// Abel map: some z with (wp(z), wp'(z)) = (x, y), defined modulo the lattice.
///
/// Rank 2 lifts the point up the optimal chain, picking at each level the
/// preimage closer to the previous x, and finishes with the rank-1 integral.
/// The representative is the raw arctangent branch; no reduction is applied.
/// Points of order two map straight to the matching half period.
template <typename T>
complex<T> abel_map(const Curve<T> &curve, const CurvePoint<T> &pt)
{
    using C = complex<T>;
    if (!isfinite(pt.x) || !isfinite(pt.y)) {
        throw error(errc::non_finite, "abel_map: point must be finite");
    }
    const T scale = detail::curve_scale(curve.inv, pt);
    const C residual = pt.y * pt.y - detail::cubic_value(curve.inv, pt.x);
    if (std::abs(residual) > T(1e-10) * scale) {
        throw error(errc::off_curve, "abel_map: point does not lie on the curve");
    }
    switch (curve.rank) {
        case SubgroupRank::rank0:
            return T(-2) * pt.x / pt.y;
        case SubgroupRank::rank1:
            return detail::abel_rank1(curve.omega, pt.x, pt.y);
        case SubgroupRank::rank2:
            break;
    }

    if (std::abs(pt.y) <= T(1e-12) * std::sqrt(scale)) {
        const auto &e = curve.roots;
        T best_root = std::numeric_limits<T>::infinity();
        for (const C &r : e.as_array()) {
            best_root = std::min(best_root, std::abs(pt.x - r));
        }
        if (best_root <= T(1e-10) * std::max(T(1), std::abs(pt.x))) {
            const ReducedBasis<T> b = reduced_basis(curve);
            const std::array<C, 3> halves{b.omega1 / T(2), b.omega2 / T(2), (b.omega1 + b.omega2) / T(2)};
            C best = halves[0];
            T dist = std::numeric_limits<T>::infinity();
            for (const C &h : halves) {
                const T d = std::abs(weierstrass_all(curve, h, FunctionSet::p).p - pt.x);
                if (d < dist) {
                    dist = d;
                    best = h;
                }
            }
            return best;
        }
    }

    C x = pt.x;
    C y = pt.y;
    for (const auto &step : curve.chain.steps) {
        const C e1 = step.selected;
        const C c = (step.pair[0] - e1) * (step.pair[1] - e1);
        // x_n^2 - (e1 + x_{n-1}) x_n + (c + e1 x_{n-1}) = 0
        const C b = e1 + x;
        const C k = c + e1 * x;
        const C s = std::sqrt(b * b - T(4) * k);
        const C big = std::abs(b + s) >= std::abs(b - s) ? (b + s) / T(2) : (b - s) / T(2);
        const C small = big == C(0) ? C(0) : k / big;
        const C xn = std::abs(big - x) <= std::abs(small - x) ? big : small;
        const C d = xn - e1;
        y /= T(1) - c / (d * d);
        x = xn;
    }
    return detail::abel_rank1(curve.omega, x, y);
}

template <typename T>
complex<T> abel_map(const Invariants<T> &inv, const CurvePoint<T> &pt, const Tolerances<T> &tol = {})
{
    return abel_map(make_curve(inv, tol), pt);
}

} // namespace landen

#endif
