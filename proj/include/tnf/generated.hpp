#pragma once

#include "interval_set.hpp"
#include "mono_fn.hpp"
#include "tnorm.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace tnf {

template <class S>
struct Gap {
    S lo, hi, rep;  // [lo,hi] meets the range only in rep
};

/**
 * The gaps of Ran(f) with their representatives. When the range is all of
 * [0,1] the list holds the single degenerate gap [1,1] with representative 1.
 */
template <class S>
struct AssociatedPair {
    std::vector<Gap<S>> gaps;

    bool trivial() const { return gaps.size() == 1 && gaps[0].lo == gaps[0].hi; }

    IntervalSet<S> reps() const {
        std::vector<Interval<S>> v;
        for (const auto& g : gaps) v.push_back(Interval<S>::point(g.rep));
        return IntervalSet<S>(std::move(v));
    }
};

class MembershipError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

template <class S>
AssociatedPair<S> associated_pair(const MonoFn<S>& f) {
    AssociatedPair<S> out;
    auto push = [&](const S& lo, const S& hi, const S& rep) {
        if (approx_lt(lo, hi)) out.gaps.push_back({lo, hi, rep});
    };
    for (const S& x : f.breakpoints()) {
        auto lim = f.side_limits(x);
        S lo = x == S(0) ? S(0) : lim.left;
        S hi = x == S(1) ? S(1) : lim.right;
        push(lo, hi, f(x));
    }
    if (out.gaps.empty()) {
        out.gaps.push_back({S(1), S(1), S(1)});
        return out;
    }

    // Re-verify: each gap meets the range in its representative only, and the
    // range is the complement of the gaps plus the representatives.
    auto m = f.range();
    std::vector<Interval<S>> holes;
    for (const auto& g : out.gaps) {
        auto meet = m.intersect(IntervalSet<S>::closed(g.lo, g.hi));
        for (const auto& c : meet.components())
            if (!(approx_eq(c.lo, g.rep) && approx_eq(c.hi, g.rep)))
                throw GeneratorError("gap [" + to_string(g.lo) + "," + to_string(g.hi) +
                                     "] meets the range outside its representative");
        holes.push_back(Interval<S>::closed(g.lo, g.hi));
    }
    if constexpr (Num<S>::exact) {
        auto rebuilt = IntervalSet<S>::unit().minus(IntervalSet<S>(holes)).unite(out.reps());
        if (!(rebuilt == m)) throw GeneratorError("gaps do not reproduce the range");
    }
    return out;
}

/**
 * T(x,y) = f^(-1)(F(f(x), f(y))) together with the range data it is
 * analysed through.
 */
template <class S>
class GeneratedT {
public:
    GeneratedT(MonoFn<S> f, TNorm<S> F)
        : f_(std::move(f)), F_(std::move(F)), m_(f_.range()), pair_(associated_pair(f_)) {
        acc0_ = m_.acc_both();
        m_minus_c_ = m_.minus(pair_.reps());
    }

    const MonoFn<S>& f() const { return f_; }
    const TNorm<S>& F() const { return F_; }
    const IntervalSet<S>& range() const { return m_; }
    const AssociatedPair<S>& pair() const { return pair_; }
    const IntervalSet<S>& acc0() const { return acc0_; }
    const IntervalSet<S>& range_minus_reps() const { return m_minus_c_; }

    bool in_range(const S& x) const { return m_.contains_approx(x); }

    // Projection onto the range: gaps collapse to their representatives.
    S g_m(const S& x) const { return f_(f_.pseudo_inverse(x)); }

    S otimes(const S& x, const S& y) const {
        if (!in_range(x) || !in_range(y))
            throw MembershipError("otimes arguments must lie in Ran(f)");
        return g_m(F_(x, y));
    }

    S operator()(const S& x, const S& y) const { return eval(x, y); }

    S eval(const S& x, const S& y) const { return f_.pseudo_inverse(F_(f_(x), f_(y))); }

    // Breakpoints of f, preimages of the expression's critical points and of
    // the gap ends. Always included in grids.
    std::vector<S> critical_points() const {
        std::vector<S> out = f_.breakpoints();
        for (const auto& p : F_.critical_points()) out.push_back(f_.pseudo_inverse(p));
        for (const auto& g : pair_.gaps) {
            out.push_back(f_.pseudo_inverse(g.lo));
            out.push_back(f_.pseudo_inverse(g.hi));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    MonoFn<S> f_;
    TNorm<S> F_;
    IntervalSet<S> m_;
    AssociatedPair<S> pair_;
    IntervalSet<S> acc0_, m_minus_c_;
};

} // namespace tnf
