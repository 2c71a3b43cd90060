#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include <landen/chain.hpp>
#include <landen/core.hpp>

#include "support/testing.hpp"

using namespace landen;
using landen::testing::C;
using landen::testing::rel_err;

namespace
{

const Invariants<double> kSample{C(3, 1), C(2)};

LandenChain<double> sample_chain()
{
    return iterate_optimal(order_properly(solve_cubic(kSample)));
}

} // namespace

TEST_CASE("landen_step on a rank-1 pattern")
{
    const auto s = landen_step(SelectedRoots<double>{C(1), {C(-0.5), C(-0.5)}});
    CHECK(s.selected == C(-0.5));
    CHECK(testing::multiset_distance(s.triple(), {C(-0.5), C(1), C(-0.5)}) <= 1e-16);
}

TEST_CASE("landen_step with a zero selected root")
{
    const C c(0.3, 0.7);
    const auto s = landen_step(SelectedRoots<double>{C(0), {c, -c}});
    CHECK(s.selected == C(0));
    CHECK(std::abs(s.pair[0] + s.pair[1]) <= 1e-16);
    CHECK(rel_err(16.0 * (s.pair[0] - s.selected) * (s.pair[1] - s.selected), 4.0 * c * c) <= 1e-15);
}

TEST_CASE("landen_step postcondition and pair symmetry")
{
    std::mt19937_64 gen(21);
    for (int k = 0; k < 300; ++k) {
        const auto t = testing::random_roots(gen, 1e-3);
        const SelectedRoots<double> a{t.e1, {t.e2, t.e3}};
        const SelectedRoots<double> b{t.e1, {t.e3, t.e2}};
        const auto fa = landen_step(a);
        const auto fb = landen_step(b);
        CHECK(fa.selected == -t.e1 / 2.0);
        const C d = t.e2 - t.e3;
        CHECK(rel_err(16.0 * (fa.pair[0] - fa.selected) * (fa.pair[1] - fa.selected), d * d) <= 1e-12);
        CHECK(std::abs(fa.selected + fa.pair[0] + fa.pair[1]) <= 1e-14 * testing::max_abs(t));
        CHECK(testing::multiset_distance(fa.triple(), fb.triple()) <= 1e-15 * testing::max_abs(t));
    }
}

TEST_CASE("two steps with the same selection undo each other up to scale")
{
    std::mt19937_64 gen(22);
    for (int k = 0; k < 50; ++k) {
        const auto t = testing::random_roots(gen, 0.05);
        const auto f = landen_step(SelectedRoots<double>{t.e1, {t.e2, t.e3}});
        const auto g = landen_step(f);
        const RootTriple<double> quarter{t.e1 / 4.0, t.e2 / 4.0, t.e3 / 4.0};
        CHECK(testing::multiset_distance(g.triple(), quarter) <= 1e-13 * testing::max_abs(t));
    }
}

TEST_CASE("select_optimal")
{
    const auto s = select_optimal(RootTriple<double>{C(1), C(-1), C(0)});
    // Pairs (1, 0) and (-1, 0) tie; the lexicographic rule keeps -1 isolated.
    CHECK(s.selected == C(-1));

    const auto r = solve_cubic(kSample);
    CHECK(select_optimal(r).selected == order_properly(r).e1);

    const C w(-0.5, std::sqrt(3.0) / 2);
    const RootTriple<double> eq{C(1), w, std::conj(w)};
    const auto a = select_optimal(eq);
    const auto b = select_optimal(RootTriple<double>{w, std::conj(w), C(1)});
    CHECK(a.selected == b.selected);
    CHECK(a.selected == std::conj(w));
}

TEST_CASE("optimal chain for (3+i, 2)")
{
    const auto chain = sample_chain();
    // The stopping rule is met after four steps in binary64.
    CHECK(chain.length() == 4);
    const C omega(2.417537043081800860284148042662, -0.086555072799597063046083291895);
    CHECK(rel_err(chain.omega, omega) <= 1e-13);

    const auto levels = chain_invariant_deltas(chain);
    REQUIRE(levels.size() == 4);
    CHECK(rel_err(levels[0].inv.g2, C(3.754046867215436982426029182236, 0.540233967914303556235718229303))
          <= 1e-13);
    CHECK(rel_err(levels[0].inv.g3, C(1.388499235514097862630349344347, 0.303503045561126645130957672495))
          <= 1e-13);
    CHECK(std::abs(levels[1].delta) == doctest::Approx(8.5574e-8).epsilon(1e-3));
    CHECK(std::abs(levels[3].delta) > 1e-45);
    CHECK(std::abs(levels[3].delta) < 1e-43);
}

// Relative sensitivity of g2^3 - 27 g3^2 to rounding in its terms.
double discriminant_condition(const Invariants<double> &inv, const C &delta)
{
    return (std::pow(std::abs(inv.g2), 3) + 27 * std::norm(inv.g3)) / std::abs(delta);
}

TEST_CASE("chain recurrences")
{
    std::mt19937_64 gen(23);
    for (int k = 0; k < 40; ++k) {
        const auto t = order_properly(testing::random_roots(gen, 0.05));
        const auto chain = iterate_optimal(t);
        const auto levels = chain_invariant_deltas(chain);
        Invariants<double> prev = invariants_from_roots(t);
        C prev_delta = discriminant(prev);
        for (std::size_t n = 0; n < chain.length(); ++n) {
            const auto &src = chain.sources[n];
            const auto &dst = chain.steps[n];
            const C e1 = src.selected;
            const C d = src.pair[0] - src.pair[1];
            const C a = e1 - src.pair[0];
            const C b = e1 - src.pair[1];
            CHECK(dst.selected == -e1 / 2.0);

            const auto &cur = levels[n].inv;
            const double s2 = std::max(std::abs(prev.g2), 1e-300);
            const double s3 = std::max(std::abs(prev.g3), std::abs(e1) * std::norm(d));
            CHECK(std::abs((cur.g2 - prev.g2) - (-1.25 * d * d)) <= 1e-10 * s2);
            CHECK(std::abs((cur.g3 - prev.g3) - (0.875 * e1 * d * d)) <= 1e-10 * std::max(s3, std::abs(prev.g3)));

            // The gap d is a difference of nearby roots, and g2^3 - 27 g3^2 cancels as the chain converges.
            const double eps = std::numeric_limits<double>::epsilon();
            const double gap_cond = std::max(std::abs(a), std::abs(b)) / std::abs(d);
            const double prev_cond = n == 0 ? discriminant_condition(prev, prev_delta) : 1.0;
            const C predicted = prev_delta * prev_delta / (4096.0 * a * a * a * b * b * b);
            if (std::abs(prev_delta) > 1e-250) {
                CHECK(rel_err(levels[n].delta, predicted) <= 1e-12 + 64 * eps * (gap_cond + prev_cond));
            }
            const C direct = discriminant(cur);
            if (std::abs(levels[n].delta) > 1e-250) {
                CHECK(rel_err(direct, levels[n].delta) <= 1e-12 + 64 * eps * discriminant_condition(cur, levels[n].delta));
            }
            prev = cur;
            prev_delta = levels[n].delta;
        }
        const auto last = order_properly(chain.steps.back().triple());
        CHECK(std::abs(last.e2 - last.e3) <= std::numeric_limits<double>::epsilon() * std::abs(last.e1 - last.e2));
    }
}

TEST_CASE("near rank-1 input converges quickly")
{
    const double xi = 1e-12;
    const RootTriple<double> e{C(1 + 1e-9), C(-0.5 - xi), C(-0.5 + xi - 1e-9)};
    const auto chain = iterate_optimal(order_properly(e));
    CHECK(chain.length() <= 2);
}

TEST_CASE("iterate_optimal errors")
{
    CHECK_THROWS_AS(iterate_optimal(RootTriple<double>{}), landen::error);
    Tolerances<double> tight;
    tight.max_iter = 1;
    try {
        iterate_optimal(order_properly(solve_cubic(kSample)), tight);
        FAIL("expected NoConvergence");
    } catch (const landen::error &e) {
        CHECK(e.code() == errc::no_convergence);
    }
}

TEST_CASE("truncated chains approach the limit period quadratically")
{
    const auto t = order_properly(solve_cubic(kSample));
    const auto full = iterate_optimal(t);
    double prev = 1.0;
    for (int n = 1; n < static_cast<int>(full.length()); ++n) {
        const double err = rel_err(iterate_optimal(t, {}, n).omega, full.omega);
        if (err > 1e-15 && prev < 1e-2) {
            CHECK(std::log10(err) <= 2 * std::log10(prev) + 1.0);
        }
        prev = err;
    }
}

TEST_CASE("long double chain")
{
    using CL = std::complex<long double>;
    const auto t = order_properly(solve_cubic(Invariants<long double>{CL(3, 1), CL(2)}));
    const auto chain = iterate_optimal(t);
    const CL omega(2.417537043081800860284148042662L, -0.086555072799597063046083291895L);
    CHECK(std::abs(chain.omega - omega) / std::abs(omega) <= 1e-17L);
}
