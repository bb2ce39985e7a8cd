#include "tnf/mono_fn.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace tnf;
using Q = Rational;

namespace {

MonoFn<double> exp_shift() {
    return MonoFn<double>::single(AnalyticForm<double>::exponential(0.0, std::exp(-1.0), 1.0));
}

// 0.8x on [0,0.5), then 0.5 + 0.5 e^{2x-2} from 0.5 on.
MonoFn<double> ex41iii() {
    double e = std::exp(1.0);
    return MonoFn<double>({{0.0, AnalyticForm<double>::linear(0.8, 0.0), 0.0},
                           {0.5, AnalyticForm<double>::exponential(0.5, 0.5 / (e * e), 2.0),
                            0.5 + 0.5 / e}},
                          1.0);
}

// Bisection oracle for sup{x | f(x) < y}.
double bisect_pinv(const MonoFn<double>& f, double y) {
    if (!(f(0.0) < y)) return 0.0;
    double lo = 0.0, hi = 1.0;
    if (f(1.0) < y) return 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < y ? lo : hi) = mid;
    }
    return lo;
}

} // namespace

TEST_CASE("evaluation and side limits", "[mono_fn]") {
    auto id = MonoFn<Q>::identity();
    CHECK(id(rat(1, 2)) == rat(1, 2));
    CHECK(exp_shift()(0.0) == Catch::Approx(std::exp(-1.0)));

    MonoFn<Q> lin41ii({{Q(0), AnalyticForm<Q>::linear(rat(1, 5), rat(3, 10)), rat(3, 10)}}, rat(1, 2));
    CHECK(lin41ii(rat(1, 4)) == rat(7, 20));

    auto f = ex41iii();
    auto lim = f.side_limits(0.5);
    CHECK(lim.left == Catch::Approx(0.4));
    CHECK(lim.right == Catch::Approx(0.5 + 0.5 / std::exp(1.0)));
    CHECK(f.side_limits(0.0).left == f(0.0));
    auto mid = id.side_limits(rat(3, 10));
    CHECK(mid.left == rat(3, 10));
    CHECK(mid.right == rat(3, 10));

    CHECK_THROWS_AS(id(Q(2)), DomainError);
    CHECK_THROWS_AS(id.side_limits(Q(-1)), DomainError);
}

TEST_CASE("pseudo-inverse", "[mono_fn]") {
    auto id = MonoFn<Q>::identity();
    CHECK(id.pseudo_inverse(rat(3, 10)) == rat(3, 10));
    auto g = exp_shift();
    CHECK(g.pseudo_inverse(0.2) == 0.0);
    CHECK(g.pseudo_inverse(std::exp(-0.5)) == Catch::Approx(0.5).margin(1e-12));
    CHECK(bisect_pinv(g, std::exp(-0.5)) == Catch::Approx(0.5).margin(1e-12));

    auto f = ex41iii();
    for (double y : {0.0, 0.1, 0.39, 0.4, 0.45, 0.6, 0.7, 0.9, 1.0})
        CHECK(f.pseudo_inverse(y) == Catch::Approx(bisect_pinv(f, y)).margin(1e-9));
    // the whole gap maps to the jump point
    CHECK(f.pseudo_inverse(0.45) == 0.5);
}

TEST_CASE("range and gaps", "[mono_fn]") {
    CHECK(MonoFn<Q>::identity().range() == IntervalSet<Q>::unit());
    auto m = exp_shift().range();
    REQUIRE(m.size() == 1);
    CHECK(m.inf() == Catch::Approx(std::exp(-1.0)));
    CHECK(m.sup() == 1.0);
    CHECK(m.inf_attained());

    auto r = ex41iii().range();
    REQUIRE(r.size() == 2);
    CHECK(r.components()[0].lo == 0.0);
    CHECK(r.components()[0].hi == Catch::Approx(0.4));
    CHECK_FALSE(r.components()[0].hi_closed);
    CHECK(r.components()[1].lo == Catch::Approx(0.5 + 0.5 / std::exp(1.0)));
    CHECK(r.components()[1].lo_closed);

    // dense sampling membership oracle
    auto f = ex41iii();
    for (int i = 0; i <= 1000; ++i) CHECK(r.contains_approx(f(i / 1000.0)));
    CHECK_FALSE(r.contains(0.45));
}

TEST_CASE("validation rejects broken generators", "[mono_fn]") {
    using F = AnalyticForm<Q>;
    CHECK_THROWS_AS(MonoFn<Q>({{Q(0), F::linear(Q(-1), Q(1)), Q(1)}}, Q(0)), GeneratorError);
    CHECK_THROWS_AS(MonoFn<Q>({{rat(1, 10), F::linear(Q(1), Q(0)), Q(0)}}, Q(1)), GeneratorError);
    // value at the breakpoint above the right limit
    CHECK_THROWS_AS(MonoFn<Q>({{Q(0), F::linear(rat(1, 2), Q(0)), Q(0)},
                               {rat(1, 2), F::linear(Q(1), Q(0)), rat(3, 4)}},
                              Q(1)),
                    GeneratorError);
    CHECK_THROWS_AS(MonoFn<Q>({{Q(0), F::linear(Q(2), Q(0)), Q(0)}}, Q(1)), GeneratorError);
}

TEST_CASE("window reparametrises a restriction", "[mono_fn]") {
    using F = AnalyticForm<Q>;
    MonoFn<Q> f({{Q(0), F::linear(rat(1, 2), Q(0)), Q(0)}, {rat(1, 2), F::linear(Q(1), Q(0)), rat(1, 4)}},
                Q(1));
    auto w = f.window(rat(1, 2), Q(1), rat(1, 2), Q(1), rat(1, 2), Q(1));
    CHECK(w(Q(0)) == Q(0));
    CHECK(w(rat(1, 2)) == rat(1, 2));
    CHECK(w(Q(1)) == Q(1));
    auto lo = f.window(Q(0), rat(1, 2), Q(0), rat(1, 2), Q(0), rat(1, 4));
    CHECK(lo(Q(1)) == rat(1, 2));
    CHECK(lo(rat(1, 2)) == rat(1, 4));
}
