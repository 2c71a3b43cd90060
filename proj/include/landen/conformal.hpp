#ifndef LANDEN_CONFORMAL_HPP
#define LANDEN_CONFORMAL_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "core.hpp"
#include "error.hpp"
#include "functions.hpp"
#include "periods.hpp"

namespace landen
{

/// Roots (gamma - 1/2, -2 gamma, gamma + 1/2) of the one-parameter channel family.
///
/// The middle root is formed as -(e1 + e3), which is exact for |gamma| < 1/6,
/// so the triple sums to zero in floating point.
template <typename T>
RootTriple<T> curve_from_gamma(T gamma)
{
    if (!(gamma > T(-1) / T(6) && gamma < T(1) / T(6))) {
        throw error(errc::out_of_range, "curve_from_gamma: gamma must lie in (-1/6, 1/6)");
    }
    const T e1 = gamma - T(0.5);
    const T e3 = gamma + T(0.5);
    return {complex<T>(e1), complex<T>(-(e1 + e3)), complex<T>(e3)};
}

/// Parameters of Q(z) = D z + (h-/pi) log(sigma(z - z-)/sigma(z + z-))
///                        - (h+/pi) log(sigma(z - z+)/sigma(z + z+)) - i (h- - h+).
template <typename T>
struct ConformalParams {
    complex<T> D;
    complex<T> zplus;
    complex<T> zminus;
    T hplus = 0;
    T hminus = 0;
    Invariants<T> inv;
};

/// Real and imaginary generators of a rectangular lattice.
template <typename T>
struct RectangularBasis {
    T real_period;
    T imag_period;
};

template <typename T>
RectangularBasis<T> rectangular_basis(const ReducedBasis<T> &b)
{
    auto is_real = [](const complex<T> &w) { return std::abs(w.imag()) <= T(1e-10) * std::abs(w); };
    auto is_imag = [](const complex<T> &w) { return std::abs(w.real()) <= T(1e-10) * std::abs(w); };
    if (is_real(b.omega1) && is_imag(b.omega2)) {
        return {std::abs(b.omega1.real()), std::abs(b.omega2.imag())};
    }
    if (is_imag(b.omega1) && is_real(b.omega2)) {
        return {std::abs(b.omega2.real()), std::abs(b.omega1.imag())};
    }
    throw error(errc::out_of_range, "rectangular_basis: lattice is not rectangular");
}

/// Q(z) bound to one lattice, for repeated evaluation.
template <typename T>
class ConformalMap
{
public:
    ConformalMap(const ConformalParams<T> &params, Lattice<T> lattice)
        : params_(params), lattice_(std::move(lattice)), rect_(rectangular_basis(lattice_.basis))
    {
        validate();
    }

    const ConformalParams<T> &params() const
    {
        return params_;
    }

    const Lattice<T> &lattice() const
    {
        return lattice_;
    }

    const RectangularBasis<T> &rectangle() const
    {
        return rect_;
    }

    /// The two logarithms with principal branches.
    ///
    /// Quotients within rounding of the negative real axis take the +i pi
    /// branch, so Q(0) = 0 whatever the sign of the residual imaginary part.
    std::pair<complex<T>, complex<T>> logs(const complex<T> &z) const
    {
        return {principal_log(quotient(z, params_.zminus)), principal_log(quotient(z, params_.zplus))};
    }

    complex<T> combine(const complex<T> &z, const complex<T> &log_minus, const complex<T> &log_plus) const
    {
        const T pi = std::numbers::pi_v<T>;
        const auto &p = params_;
        return p.D * z + p.hminus / pi * log_minus - p.hplus / pi * log_plus
               - complex<T>(0, p.hminus - p.hplus);
    }

    complex<T> operator()(const complex<T> &z) const
    {
        const auto [lm, lp] = logs(z);
        return combine(z, lm, lp);
    }

    /// Q along a path; each logarithm is continued from the previous sample.
    std::vector<complex<T>> trace(std::span<const complex<T>> path) const
    {
        const T two_pi = T(2) * std::numbers::pi_v<T>;
        std::vector<complex<T>> out;
        out.reserve(path.size());
        complex<T> prev_m;
        complex<T> prev_p;
        for (std::size_t k = 0; k < path.size(); ++k) {
            auto [lm, lp] = logs(path[k]);
            if (k > 0) {
                lm += complex<T>(0, two_pi * std::round((prev_m.imag() - lm.imag()) / two_pi));
                lp += complex<T>(0, two_pi * std::round((prev_p.imag() - lp.imag()) / two_pi));
            }
            prev_m = lm;
            prev_p = lp;
            out.push_back(combine(path[k], lm, lp));
        }
        return out;
    }

private:
    void validate() const
    {
        const auto &p = params_;
        const T tiny = T(1e-12);
        if (std::abs(p.D.real()) > tiny * std::abs(p.D) || std::abs(p.zplus.real()) > tiny * std::abs(p.zplus)
            || std::abs(p.zminus.real()) > tiny * std::abs(p.zminus)) {
            throw error(errc::out_of_range, "ConformalMap: D and z+- must be purely imaginary");
        }
        if (!(T(0) < p.zminus.imag() && p.zminus.imag() < p.zplus.imag() && p.zplus.imag() < rect_.imag_period)) {
            throw error(errc::out_of_range, "ConformalMap: need 0 < z-/i < z+/i < omega2/i");
        }
    }

    static complex<T> principal_log(complex<T> q)
    {
        if (q.real() < 0 && std::abs(q.imag()) <= T(64) * std::numeric_limits<T>::epsilon() * std::abs(q)) {
            q = complex<T>(q.real(), T(0));
        }
        return std::log(q);
    }

    complex<T> quotient(const complex<T> &z, const complex<T> &zs) const
    {
        const T guard = lattice_.curve.tol.eps_pole * std::abs(lattice_.basis.omega1);
        for (const complex<T> &a : {z - zs, z + zs}) {
            if (std::abs(reduce_argument(a, lattice_.basis).z0) <= guard) {
                throw error(errc::log_singularity, "eval_Q: z coincides with a zero of sigma");
            }
        }
        const auto num = weierstrass_at(lattice_, z - zs, FunctionSet::sigma);
        const auto den = weierstrass_at(lattice_, z + zs, FunctionSet::sigma);
        return num.sigma / den.sigma;
    }

    ConformalParams<T> params_;
    Lattice<T> lattice_;
    RectangularBasis<T> rect_;
};

template <typename T>
ConformalMap<T> make_conformal_map(const ConformalParams<T> &params, const Tolerances<T> &tol = {})
{
    return ConformalMap<T>(params, make_lattice(make_curve(params.inv, tol)));
}

/// Map whose lattice is built from given roots (e.g. from curve_from_gamma).
template <typename T>
ConformalMap<T> make_conformal_map(ConformalParams<T> params, const RootTriple<T> &roots, const Tolerances<T> &tol = {})
{
    Curve<T> curve = make_curve(roots, tol);
    params.inv = curve.inv;
    return ConformalMap<T>(params, make_lattice(std::move(curve)));
}

template <typename T>
complex<T> eval_Q(const ConformalParams<T> &params, const complex<T> &z, const Tolerances<T> &tol = {})
{
    return make_conformal_map(params, tol)(z);
}

} // namespace landen

#endif
