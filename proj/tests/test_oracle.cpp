#include "tnf/fixtures.hpp"
#include "tnf/oracle.hpp"
#include "tnf/struct_verify.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace tnf;
using Q = Rational;

namespace {

template <class S>
Binary<S> as_binary(const GeneratedT<S>& t) {
    return [&t](const S& x, const S& y) { return t(x, y); };
}

template <class S>
GridSpec<S> fixture_grid(const Fixture& fx, const GeneratedT<S>& t, int n) {
    GridSpec<S> g{n, t.critical_points()};
    for (double x : fx.extra) g.extra.push_back(from_double<S>(x));
    return g;
}

} // namespace

TEST_CASE("grid specification", "[oracle]") {
    GridSpec<Q> g{3, {rat(1, 4), Q(1)}};
    auto p = g.points();
    REQUIRE(p.size() == 4);
    CHECK(p[1] == rat(1, 4));
    CHECK(p[2] == rat(1, 2));
    CHECK_THROWS_AS((GridSpec<Q>{1, {}}.points()), DomainError);
    CHECK_THROWS_AS((GridSpec<Q>{3, {Q(2)}}.points()), DomainError);
}

TEST_CASE("associativity search at the worked examples", "[oracle]") {
    SECTION("split generator fails on a grid through its jump") {
        const auto& fx = fixture("3.1.iv");
        GeneratedT<double> t(fx.f.cast<double>(), fx.F.cast<double>());
        auto w = grid_assoc_search<double>(as_binary(t), GridSpec<double>{11, {0.5, 0.75}}, 1e-9);
        REQUIRE(w);
        CHECK(std::abs(w->lhs - w->rhs) > 1e-6);
        CHECK(t(t(0.75, 0.75), 0.5) == 0.0);
        CHECK(t(0.75, t(0.75, 0.5)) == Catch::Approx(0.5));
    }
    SECTION("Lukasiewicz from the exponential generator") {
        const auto& fx = fixture("3.1.i");
        GeneratedT<double> t(fx.f.cast<double>(), fx.F.cast<double>());
        CHECK_FALSE(grid_assoc_search<double>(as_binary(t), GridSpec<double>{101, {}}, 1e-9));
    }
    SECTION("minimum composed with any generator") {
        for (const char* id : {"3.1.iv", "4.1.iii", "3.1.ii"}) {
            GeneratedT<double> t(fixture(id).f.cast<double>(), TNorm<double>::min());
            CHECK_FALSE(grid_assoc_search<double>(as_binary(t), GridSpec<double>{101, {}}, 1e-9));
        }
    }
    SECTION("scan order does not depend on the thread count") {
        GeneratedT<double> t(MonoFn<double>::identity(),
                             TNorm<double>::scaled(0.5, TNorm<double>::lukasiewicz()));
        auto one = grid_assoc_search<double>(as_binary(t), GridSpec<double>{21, {}}, 1e-9, 1);
        auto many = grid_assoc_search<double>(as_binary(t), GridSpec<double>{21, {}}, 1e-9, 7);
        REQUIRE(one);
        REQUIRE(many);
        CHECK(one->x == many->x);
        CHECK(one->y == many->y);
        CHECK(one->z == many->z);
    }
}

TEST_CASE("closed form comparison", "[oracle]") {
    const auto& i = fixture("3.1.i");
    GeneratedT<double> t(i.f.cast<double>(), i.F.cast<double>());
    CHECK(compare_closed_form<double>(as_binary(t), [](double x, double y) { return std::max(0.0, x + y - 1); },
                                      GridSpec<double>{101, {}}) <= 1e-9);
    CHECK(max_deviation<double>(as_binary(t), as_binary(t), GridSpec<double>{31, {}}) == 0);

    const auto& iii = fixture("4.1.iii");
    GeneratedT<double> u(iii.f.cast<double>(), iii.F.cast<double>());
    CHECK(compare_closed_form<double>(as_binary(u), iii.closed_form, fixture_grid(iii, u, 101)) <= 1e-9);

    // exact on a rational grid
    const auto& ii = fixture("3.1.ii");
    GeneratedT<Q> q(ii.f, ii.F);
    Binary<Q> ref = [](const Q& x, const Q& y) -> Q {
        Q h = rat(1, 2);
        if (x <= h && y <= h) return Q(0);
        if (x > h && y > h) return h + h * (2 * x - 1) * (2 * y - 1);
        return smin(x, y);
    };
    CHECK(max_deviation<Q>(as_binary(q), ref, fixture_grid(ii, q, 41)) == 0);
}

TEST_CASE("oracle agrees with the structural verdicts", "[oracle]") {
    for (const auto& fx : fixtures()) {
        INFO(fx.id);
        auto f = fx.f.cast<double>();
        auto F = fx.F.cast<double>();
        GeneratedT<double> t(f, F);
        auto v = check_assoc(f, F);
        auto grid = fixture_grid(fx, t, 101);
        CHECK(monotone_on_grid<double>(as_binary(t), grid));
        if (v.proven()) CHECK_FALSE(grid_assoc_search<double>(as_binary(t), grid, 1e-9));
        if (v.refuted()) {
            const auto& w = *v.witness;
            CHECK(std::abs(t(t(w.x, w.y), w.z) - t(w.x, t(w.y, w.z))) > 1e-6);
            CHECK(grid_assoc_search<double>(as_binary(t), grid, 1e-9));
        }
        if (fx.exact_capable()) {
            GeneratedT<Q> q(fx.f, fx.F);
            auto vq = check_assoc(fx.f, fx.F);
            auto gq = fixture_grid(fx, q, 25);
            if (vq.proven()) CHECK_FALSE(grid_assoc_search<Q>(as_binary(q), gq, Q(0)));
            if (vq.refuted()) CHECK(grid_assoc_search<Q>(as_binary(q), gq, Q(0)));
        }
    }
}
