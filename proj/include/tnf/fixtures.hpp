#pragma once

#include "mono_fn.hpp"
#include "tnorm.hpp"
#include "verdict.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tnf {

/**
 * A worked (f, F) pair with its expected outcomes. Generators are stored
 * with rational coefficients; transcendental constants are kept as the
 * rational of their nearest double so that casting to double is lossless.
 */
struct Fixture {
    std::string id;
    std::string description;
    MonoFn<Rational> f;
    TNorm<Rational> F = TNorm<Rational>::min();
    std::function<double(double, double)> closed_form;  // empty when none is known
    VerdictKind assoc = VerdictKind::Proven;
    std::optional<bool> tnorm;
    ClassKind cls = ClassKind::Undetermined;
    std::optional<std::array<double, 3>> witness;
    std::vector<double> extra;  // always injected into grids
    bool from_paper = false;

    bool exact_capable() const { return f.is_linear(); }
};

class UnknownFixture : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

using Q = Rational;
using FQ = AnalyticForm<Q>;
using TQ = TNorm<Q>;

inline Q dq(double x) { return rational_from_double(x); }

// 0.5 + 0.5 e^{2x-2}
inline FQ upper_exp() { return FQ::exponential(rat(1, 2), dq(0.5 * std::exp(-2.0)), Q(2)); }

inline TQ closed_sum(const TQ& lower, const TQ& upper) {
    return TQ::ordinal_sum(SumSemantics::ClosedSquare,
                           {{Q(0), rat(1, 2), lower, ChildKind::TNorm},
                            {rat(1, 2), Q(1), upper, ChildKind::TNorm}});
}

inline double min2(double x, double y) { return std::min(x, y); }

// 0 on the lower square, 0.5 + 0.5*max{0, 2x+2y-3} on (0.5,1]^2, min elsewhere.
inline double split_luk(double x, double y) {
    if (x <= 0.5 && y <= 0.5) return 0.0;
    if (x > 0.5 && y > 0.5) return 0.5 + 0.5 * std::max(0.0, 2 * x + 2 * y - 3);
    return min2(x, y);
}

inline std::vector<Fixture> build_fixtures() {
    std::vector<Fixture> out;
    const double e1 = std::exp(-1.0);
    const double ln2 = std::log(2.0);

    {
        Fixture fx;
        fx.id = "3.1.i";
        fx.description = "f(x) = e^(x-1) with the product";
        fx.f = MonoFn<Q>({{Q(0), FQ::exponential(Q(0), dq(e1), Q(1)), dq(e1)}}, Q(1), false);
        fx.F = TQ::product();
        fx.closed_form = [](double x, double y) { return std::max(0.0, x + y - 1); };
        fx.tnorm = true;
        fx.cls = ClassKind::OrdinallyIrreducible;
        fx.from_paper = true;
        out.push_back(fx);
    }
    {
        Fixture fx;
        fx.id = "3.1.ii";
        fx.description = "h(x) = x/2 below 0.5, identity above; Lukasiewicz then product";
        fx.f = MonoFn<Q>({{Q(0), FQ::linear(rat(1, 2), Q(0)), Q(0)},
                          {rat(1, 2), FQ::linear(Q(1), Q(0)), rat(1, 4)}},
                         Q(1));
        fx.F = closed_sum(TQ::lukasiewicz(), TQ::product());
        fx.closed_form = [](double x, double y) {
            if (x <= 0.5 && y <= 0.5) return 0.0;
            if (x > 0.5 && y > 0.5) return 0.5 + 0.5 * (2 * x - 1) * (2 * y - 1);
            return min2(x, y);
        };
        fx.tnorm = true;
        fx.cls = ClassKind::NonTrivialOrdinalSum;
        fx.extra = {0.5, 0.75};
        fx.from_paper = true;
        out.push_back(fx);
    }
    {
        Fixture fx;
        fx.id = "3.1.iii";
        fx.description = "as 3.1.ii but f(0.5) = 0.5";
        fx.f = MonoFn<Q>({{Q(0), FQ::linear(rat(1, 2), Q(0)), Q(0)},
                          {rat(1, 2), FQ::linear(Q(1), Q(0)), rat(1, 2)}},
                         Q(1));
        fx.F = closed_sum(TQ::lukasiewicz(), TQ::product());
        fx.closed_form = [](double x, double y) {
            if (x < 0.5 && y < 0.5) return 0.0;
            if (x >= 0.5 && y >= 0.5) return 0.5 + 0.5 * (2 * x - 1) * (2 * y - 1);
            return min2(x, y);
        };
        fx.tnorm = true;
        fx.cls = ClassKind::NonTrivialOrdinalSum;
        fx.extra = {0.5};
        fx.from_paper = true;
        out.push_back(fx);
    }
    auto broken = [&](const std::string& id) {
        Fixture fx;
        fx.id = id;
        fx.description = "h(x) = x/2 below 0.5, 0.5 + 0.5e^(2x-2) above; Lukasiewicz then product";
        fx.f = MonoFn<Q>({{Q(0), FQ::linear(rat(1, 2), Q(0)), Q(0)},
                          {rat(1, 2), upper_exp(), rat(1, 4)}},
                         Q(1), false);
        fx.F = closed_sum(TQ::lukasiewicz(), TQ::product());
        fx.closed_form = split_luk;
        fx.assoc = VerdictKind::Refuted;
        fx.tnorm = false;
        fx.cls = ClassKind::NotAssociative;
        fx.witness = std::array<double, 3>{0.75, 0.75, 0.5};
        fx.extra = {0.5, 0.75};
        fx.from_paper = true;
        return fx;
    };
    out.push_back(broken("3.1.iv"));
    out.push_back(broken("4.1.i"));
    {
        Fixture fx;
        fx.id = "4.1.ii";
        fx.description = "0.2x+0.3 up to 0.5, then 0.5 + 0.5e^(2x-2); nilpotent minimum then product";
        fx.f = MonoFn<Q>({{Q(0), FQ::linear(rat(1, 5), rat(3, 10)), rat(3, 10)},
                          {rat(1, 2), upper_exp(), rat(2, 5)}},
                         Q(1), false);
        fx.F = closed_sum(TQ::nilpotent_min(), TQ::product());
        fx.closed_form = [](double x, double y) {
            if (x > 0.5 && y > 0.5) return 0.5 + 0.5 * std::max(0.0, 2 * x + 2 * y - 3);
            return min2(x, y);
        };
        fx.tnorm = true;
        fx.cls = ClassKind::NonTrivialOrdinalSum;
        fx.extra = {0.5, 0.75};
        fx.from_paper = true;
        out.push_back(fx);
    }
    {
        Fixture fx;
        fx.id = "4.1.iii";
        fx.description = "0.8x below 0.5, then 0.5 + 0.5e^(2x-2); product on both squares";
        fx.f = MonoFn<Q>({{Q(0), FQ::linear(rat(4, 5), Q(0)), Q(0)},
                          {rat(1, 2), upper_exp(), dq(0.5 + 0.5 * e1)}},
                         Q(1), false);
        fx.F = closed_sum(TQ::product(), TQ::product());
        fx.closed_form = [](double x, double y) {
            if (x < 0.5 && y < 0.5) return 1.6 * x * y;
            if (x > 0.5 && y > 0.5) return 0.5 + 0.5 * std::max(0.0, 2 * x + 2 * y - 3);
            return min2(x, y);
        };
        fx.tnorm = true;
        fx.cls = ClassKind::NonTrivialOrdinalSum;
        fx.extra = {0.5, 0.75};
        fx.from_paper = true;
        out.push_back(fx);
    }
    {
        Fixture fx;
        fx.id = "6.tm";
        fx.description = "f(x) = 0.5 + 0.5x with the nilpotent minimum";
        fx.f = MonoFn<Q>::single(FQ::linear(rat(1, 2), rat(1, 2)));
        fx.F = TQ::nilpotent_min();
        fx.closed_form = min2;
        fx.tnorm = true;
        fx.cls = ClassKind::TM;
        fx.from_paper = true;
        out.push_back(fx);
    }

    // Further pairs covering the remaining routes.
    {
        Fixture fx;
        fx.id = "id.min";
        fx.description = "identity with the minimum";
        fx.f = MonoFn<Q>::identity();
        fx.F = TQ::min();
        fx.closed_form = min2;
        fx.tnorm = true;
        fx.cls = ClassKind::TM;
        out.push_back(fx);
    }
    {
        Fixture fx;
        fx.id = "id.product";
        fx.description = "identity with the product";
        fx.f = MonoFn<Q>::identity();
        fx.F = TQ::product();
        fx.closed_form = [](double x, double y) { return x * y; };
        fx.tnorm = true;
        fx.cls = ClassKind::OrdinallyIrreducible;
        out.push_back(fx);
    }
    {
        Fixture fx;
        fx.id = "id.half-product";
        fx.description = "identity with the subnorm 0.5xy";
        fx.f = MonoFn<Q>::identity();
        fx.F = TQ::scaled(rat(1, 2), TQ::product());
        fx.closed_form = [](double x, double y) { return 0.5 * x * y; };
        fx.tnorm = false;
        fx.cls = ClassKind::Undetermined;
        out.push_back(fx);
    }
    {
        Fixture fx;
        fx.id = "shift.zero";
        fx.description = "f(x) = 0.5 + 0.5x with the zero subnorm";
        fx.f = MonoFn<Q>::single(FQ::linear(rat(1, 2), rat(1, 2)));
        fx.F = TQ::zero();
        fx.closed_form = [](double, double) { return 0.0; };
        fx.tnorm = false;
        fx.cls = ClassKind::Undetermined;
        out.push_back(fx);
    }
    {
        Fixture fx;
        fx.id = "id.half-luk";
        fx.description = "identity with 0.5*max{0,x+y-1}";
        fx.f = MonoFn<Q>::identity();
        fx.F = TQ::scaled(rat(1, 2), TQ::lukasiewicz());
        fx.closed_form = [](double x, double y) { return 0.5 * std::max(0.0, x + y - 1); };
        fx.assoc = VerdictKind::Refuted;
        fx.tnorm = false;
        fx.cls = ClassKind::NotAssociative;
        out.push_back(fx);
    }
    {
        Fixture fx;
        fx.id = "exp.half-min";
        fx.description = "f(x) = e^(x-1) with 0.5*min, outside the semigroup hypotheses";
        fx.f = MonoFn<Q>({{Q(0), FQ::exponential(Q(0), dq(e1), Q(1)), dq(e1)}}, Q(1), false);
        fx.F = TQ::scaled(rat(1, 2), TQ::min());
        fx.closed_form = [ln2](double x, double y) { return std::max(0.0, min2(x, y) - ln2); };
        fx.assoc = VerdictKind::Undetermined;
        fx.tnorm = false;
        fx.cls = ClassKind::Undetermined;
        out.push_back(fx);
    }
    {
        Fixture fx;
        fx.id = "sum.bar";
        fx.description = "identity with <0,0.5,0.5xy> and <0.5,1,product> on half-open squares";
        fx.f = MonoFn<Q>::identity();
        fx.F = TQ::ordinal_sum(SumSemantics::HalfOpen,
                               {{Q(0), rat(1, 2), TQ::scaled(rat(1, 2), TQ::product()), ChildKind::TSubnorm},
                                {rat(1, 2), Q(1), TQ::product(), ChildKind::TNorm}});
        fx.closed_form = [](double x, double y) {
            if (x > 0 && y > 0 && x <= 0.5 && y <= 0.5) return x * y;
            if (x > 0.5 && y > 0.5) return 0.5 + 0.5 * (2 * x - 1) * (2 * y - 1);
            return min2(x, y);
        };
        fx.tnorm = true;
        fx.cls = ClassKind::NonTrivialOrdinalSum;
        fx.extra = {0.5};
        out.push_back(fx);
    }
    {
        Fixture fx;
        fx.id = "sum.underline";
        fx.description = "as sum.bar with f jumping from 0.5 to 0.6 at 0.5";
        fx.f = MonoFn<Q>({{Q(0), FQ::linear(Q(1), Q(0)), Q(0)},
                          {rat(1, 2), FQ::linear(rat(4, 5), rat(1, 5)), rat(3, 5)}},
                         Q(1));
        fx.F = TQ::ordinal_sum(SumSemantics::HalfOpen,
                               {{Q(0), rat(1, 2), TQ::scaled(rat(1, 2), TQ::product()), ChildKind::TSubnorm},
                                {rat(1, 2), Q(1), TQ::product(), ChildKind::TNorm}});
        fx.closed_form = [](double x, double y) {
            if (x < 0.5 && y < 0.5) return x * y;
            if (x > 0.5 && y > 0.5) {
                double v = 0.5 + 0.5 * (1.6 * x - 0.6) * (1.6 * y - 0.6);
                return v >= 0.6 ? (v - 0.2) / 0.8 : 0.5;
            }
            return min2(x, y);
        };
        fx.tnorm = true;
        fx.cls = ClassKind::NonTrivialOrdinalSum;
        fx.extra = {0.5};
        out.push_back(fx);
    }
    return out;
}

} // namespace detail

inline const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = detail::build_fixtures();
    return all;
}

inline std::string fixture_ids() {
    std::string s;
    for (const auto& fx : fixtures()) s += (s.empty() ? "" : ", ") + fx.id;
    return s;
}

inline const Fixture& fixture(const std::string& id) {
    for (const auto& fx : fixtures())
        if (fx.id == id) return fx;
    throw UnknownFixture("unknown example '" + id + "'; valid ids: " + fixture_ids());
}

} // namespace tnf
