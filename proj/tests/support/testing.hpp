#ifndef LANDEN_TESTS_TESTING_HPP
#define LANDEN_TESTS_TESTING_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include <landen/core.hpp>
#include <landen/periods.hpp>

namespace landen::testing
{

using C = std::complex<double>;

inline double rel_err(const C &got, const C &want)
{
    return std::abs(got - want) / std::abs(want);
}

inline C random_in_disk(std::mt19937_64 &gen, double radius = 1.0)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        const C z(u(gen), u(gen));
        if (std::norm(z) <= 1.0) {
            return radius * z;
        }
    }
}

inline double min_gap(const RootTriple<double> &t)
{
    return std::min({std::abs(t.e1 - t.e2), std::abs(t.e1 - t.e3), std::abs(t.e2 - t.e3)});
}

/// Zero-sum roots in the unit disk with pairwise distances at least `gap`.
inline RootTriple<double> random_roots(std::mt19937_64 &gen, double gap = 0.05)
{
    while (true) {
        const C a = random_in_disk(gen);
        const C b = random_in_disk(gen);
        const RootTriple<double> t{a, b, -a - b};
        if (std::abs(t.e3) <= 1.0 && min_gap(t) >= gap) {
            return t;
        }
    }
}

/// A point of the fundamental cell at least `margin` |omega1| away from every lattice point.
inline C random_in_cell(std::mt19937_64 &gen, const ReducedBasis<double> &b, double margin = 0.1)
{
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    while (true) {
        const double s = u(gen);
        const double t = u(gen);
        const C z = s * b.omega1 + t * b.omega2;
        double nearest = std::numeric_limits<double>::infinity();
        for (int m = -1; m <= 1; ++m) {
            for (int n = -1; n <= 1; ++n) {
                nearest = std::min(nearest, std::abs(z - double(m) * b.omega1 - double(n) * b.omega2));
            }
        }
        if (nearest >= margin * std::abs(b.omega1)) {
            return z;
        }
    }
}

/// Largest root distance under the best of the six matchings.
inline double multiset_distance(const RootTriple<double> &a, const RootTriple<double> &b)
{
    const auto x = a.as_array();
    std::array<C, 3> y = b.as_array();
    std::array<int, 3> idx{0, 1, 2};
    double best = std::numeric_limits<double>::infinity();
    do {
        double d = 0.0;
        for (int k = 0; k < 3; ++k) {
            d = std::max(d, std::abs(x[k] - y[idx[k]]));
        }
        best = std::min(best, d);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

inline double max_abs(const RootTriple<double> &t)
{
    return std::max({std::abs(t.e1), std::abs(t.e2), std::abs(t.e3)});
}

} // namespace landen::testing

#endif
