#pragma once

#include "interval_set.hpp"
#include "scalar.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tnf {

enum class NodeKind { Min, Product, Lukasiewicz, NilpotentMin, Scaled, Zero, OrdinalSum, Underline };
enum class SumSemantics { ClosedSquare, HalfOpen };
enum class ChildKind { TNorm, TSubnorm };

class TNormError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline const char* node_name(NodeKind k) {
    switch (k) {
    case NodeKind::Min: return "min";
    case NodeKind::Product: return "product";
    case NodeKind::Lukasiewicz: return "lukasiewicz";
    case NodeKind::NilpotentMin: return "nilpotent_min";
    case NodeKind::Scaled: return "scaled";
    case NodeKind::Zero: return "zero";
    case NodeKind::OrdinalSum: return "ordinal_sum";
    case NodeKind::Underline: return "underline";
    }
    return "?";
}

/**
 * Affine segment of a one-variable section x -> F(x, y): on its domain the
 * value is slope*x + intercept with slope >= 0.
 */
template <class S>
struct AffineSegment {
    Interval<S> dom;
    S slope, intercept;

    S operator()(const S& x) const { return slope * x + intercept; }
};

template <class S>
class PiecewiseAffine {
public:
    PiecewiseAffine() = default;
    explicit PiecewiseAffine(std::vector<AffineSegment<S>> segs) {
        for (auto& s : segs)
            if (!s.dom.empty()) segs_.push_back(std::move(s));
        std::sort(segs_.begin(), segs_.end(), [](const auto& a, const auto& b) {
            if (a.dom.lo != b.dom.lo) return a.dom.lo < b.dom.lo;
            return a.dom.lo_closed && !b.dom.lo_closed;
        });
    }

    const std::vector<AffineSegment<S>>& segments() const { return segs_; }

    S operator()(const S& x) const {
        for (const auto& s : segs_)
            if (s.dom.contains(x)) return s(x);
        throw DomainError("section undefined at " + to_string(x));
    }

    // Exact image of a set.
    IntervalSet<S> image(const IntervalSet<S>& xs) const {
        std::vector<Interval<S>> out;
        for (const auto& s : segs_) {
            auto part = xs.intersect(s.dom);
            for (const auto& c : part.components()) {
                if (s.slope == S(0)) {
                    out.push_back(Interval<S>::point(s.intercept));
                } else {
                    out.push_back({s(c.lo), s(c.hi), c.lo_closed, c.hi_closed});
                }
            }
        }
        return IntervalSet<S>(std::move(out));
    }

    // Exact preimage {x in domain | value in target}.
    IntervalSet<S> preimage(const IntervalSet<S>& target) const {
        std::vector<Interval<S>> out;
        for (const auto& s : segs_) {
            if (s.slope == S(0)) {
                if (target.contains(s.intercept)) out.push_back(s.dom);
                continue;
            }
            for (const auto& t : target.components()) {
                Interval<S> pre{(t.lo - s.intercept) / s.slope, (t.hi - s.intercept) / s.slope,
                                t.lo_closed, t.hi_closed};
                auto piece = IntervalSet<S>{pre}.intersect(s.dom);
                for (const auto& c : piece.components()) out.push_back(c);
            }
        }
        return IntervalSet<S>(std::move(out));
    }

    // True when the section is x -> x at every point of xs.
    bool is_identity_on(const IntervalSet<S>& xs) const {
        for (const auto& s : segs_) {
            auto part = xs.intersect(s.dom);
            for (const auto& c : part.components()) {
                if (c.is_point()) {
                    if (!approx_eq(s(c.lo), c.lo)) return false;
                } else if (!(approx_eq(s.slope, S(1)) && approx_eq(s.intercept, S(0)))) {
                    return false;
                }
            }
        }
        return true;
    }

private:
    std::vector<AffineSegment<S>> segs_;
};

template <class S>
class TNorm;

template <class S>
struct Summand {
    S a, b;
    std::shared_ptr<const TNorm<S>> child;
    ChildKind kind = ChildKind::TNorm;

    S lift(const S& u) const { return a + (b - a) * u; }
    S unit(const S& x) const { return (x - a) / (b - a); }
};

/**
 * Expression over the catalog of t-norms and t-subnorms. Immutable after
 * construction; the factories validate structure and sampled axioms.
 */
template <class S>
class TNorm {
public:
    using Ptr = std::shared_ptr<const TNorm>;

    static TNorm min() { return TNorm(NodeKind::Min); }
    static TNorm product() { return TNorm(NodeKind::Product); }
    static TNorm lukasiewicz() { return TNorm(NodeKind::Lukasiewicz); }
    static TNorm nilpotent_min() { return TNorm(NodeKind::NilpotentMin); }
    static TNorm zero() { return TNorm(NodeKind::Zero); }

    static TNorm scaled(const S& lambda, const TNorm& inner) {
        if (!(S(0) < lambda && lambda < S(1)))
            throw TNormError("scaled subnorm needs a factor in (0,1)");
        TNorm t(NodeKind::Scaled);
        t.lambda_ = lambda;
        t.inner_ = std::make_shared<const TNorm>(inner);
        return t;
    }

    // Inner subnorm on [0,1)^2 with min on the top edges.
    static TNorm underline(const TNorm& inner) {
        TNorm t(NodeKind::Underline);
        t.inner_ = std::make_shared<const TNorm>(inner);
        return t;
    }

    struct SummandSpec {
        S a, b;
        TNorm child;
        ChildKind kind = ChildKind::TNorm;
    };

    static TNorm ordinal_sum(SumSemantics sem, const std::vector<SummandSpec>& specs,
                             bool check_axioms = true) {
        TNorm t(NodeKind::OrdinalSum);
        t.sem_ = sem;
        for (const auto& s : specs)
            t.sums_.push_back({s.a, s.b, std::make_shared<const TNorm>(s.child), s.kind});
        t.validate_sum();
        if (check_axioms) t.check_axioms();
        return t;
    }

    // 0.5*F(2x,2y) on [0,0.5]^2, min elsewhere.
    static TNorm bar_lift(const TNorm& f) {
        if (f.is_tnorm()) throw TNormError("bar lift expects a proper t-subnorm");
        return ordinal_sum(SumSemantics::HalfOpen, {{S(0), S(1) / S(2), f, ChildKind::TSubnorm}});
    }

    NodeKind kind() const { return kind_; }
    const S& lambda() const { return lambda_; }
    const TNorm& inner() const { return *inner_; }
    SumSemantics semantics() const { return sem_; }
    const std::vector<Summand<S>>& summands() const { return sums_; }
    bool is_ordinal_sum() const { return kind_ == NodeKind::OrdinalSum; }

    S operator()(const S& x, const S& y) const { return eval(x, y); }

    S eval(const S& x, const S& y) const {
        switch (kind_) {
        case NodeKind::Min: return smin(x, y);
        case NodeKind::Product: return x * y;
        case NodeKind::Lukasiewicz: return smax(S(0), x + y - S(1));
        case NodeKind::NilpotentMin: return x + y > S(1) ? smin(x, y) : S(0);
        case NodeKind::Scaled: return lambda_ * inner_->eval(x, y);
        case NodeKind::Zero: return S(0);
        case NodeKind::Underline:
            if (x < S(1) && y < S(1)) return inner_->eval(x, y);
            return smin(x, y);
        case NodeKind::OrdinalSum:
            for (const auto& s : sums_)
                if (in_region(s, x) && in_region(s, y)) return s.lift(s.child->eval(s.unit(x), s.unit(y)));
            return smin(x, y);
        }
        return S(0);
    }

    // lim F(x+d, y+d) as d -> 0+, arguments clipped at 1.
    S eval_upper(const S& x, const S& y) const {
        switch (kind_) {
        case NodeKind::NilpotentMin:
            if (x >= S(1) || y >= S(1)) return eval(x, y);
            return x + y >= S(1) ? smin(x, y) : S(0);
        case NodeKind::Scaled: return lambda_ * inner_->eval_upper(x, y);
        case NodeKind::Underline:
            if (x < S(1) && y < S(1)) return inner_->eval_upper(x, y);
            return smin(x, y);
        case NodeKind::OrdinalSum:
            for (const auto& s : sums_)
                if (right_of(s, x) && right_of(s, y))
                    return s.lift(s.child->eval_upper(s.unit(x), s.unit(y)));
            return smin(x, y);
        default: return eval(x, y);
        }
    }

    // Whether d -> F(p+d, p+d) is constant on some (0, e).
    bool diag_flat_right(const S& p) const {
        if (p >= S(1)) return false;
        switch (kind_) {
        case NodeKind::Min:
        case NodeKind::Product: return false;
        case NodeKind::Lukasiewicz:
        case NodeKind::NilpotentMin: return p < S(1) / S(2);
        case NodeKind::Scaled:
        case NodeKind::Underline: return inner_->diag_flat_right(p);
        case NodeKind::Zero: return true;
        case NodeKind::OrdinalSum:
            for (const auto& s : sums_)
                if (right_of(s, p)) return s.child->diag_flat_right(s.unit(p));
            return false;
        }
        return false;
    }

    bool is_tnorm() const {
        switch (kind_) {
        case NodeKind::Scaled:
        case NodeKind::Zero: return false;
        case NodeKind::OrdinalSum:
            for (const auto& s : sums_)
                if (s.b == S(1) && !s.child->is_tnorm()) return false;
            return true;
        default: return true;
        }
    }

    // Scaling preserves associativity only for F(kx,y) = k F(x,y).
    bool is_associative() const {
        switch (kind_) {
        case NodeKind::Scaled: return inner_->homogeneous();
        case NodeKind::Underline: return inner_->is_associative();
        case NodeKind::OrdinalSum:
            for (const auto& s : sums_)
                if (!s.child->is_associative()) return false;
            return true;
        default: return true;
        }
    }

    bool homogeneous() const {
        switch (kind_) {
        case NodeKind::Product:
        case NodeKind::Zero: return true;
        case NodeKind::Scaled: return inner_->homogeneous();
        default: return false;
        }
    }

    bool has_zero_divisors() const {
        switch (kind_) {
        case NodeKind::Lukasiewicz:
        case NodeKind::NilpotentMin:
        case NodeKind::Zero: return true;
        case NodeKind::Scaled:
        case NodeKind::Underline: return inner_->has_zero_divisors();
        case NodeKind::OrdinalSum:
            for (const auto& s : sums_)
                if (s.a == S(0)) return s.child->has_zero_divisors();
            return false;
        default: return false;
        }
    }

    // x -> F(x, y) on [0,1] as exact affine pieces.
    PiecewiseAffine<S> section(const S& y) const {
        using Seg = AffineSegment<S>;
        const S zero(0), one(1);
        switch (kind_) {
        case NodeKind::Min:
            return PiecewiseAffine<S>({{Interval<S>::closed(zero, y), one, zero},
                                       {{y, one, false, true}, zero, y}});
        case NodeKind::Product:
            return PiecewiseAffine<S>({{Interval<S>::closed(zero, one), y, zero}});
        case NodeKind::Lukasiewicz:
            return PiecewiseAffine<S>({{Interval<S>::closed(zero, one - y), zero, zero},
                                       {{one - y, one, false, true}, one, y - one}});
        case NodeKind::NilpotentMin: {
            std::vector<Seg> segs{{Interval<S>::closed(zero, one - y), zero, zero}};
            if (one - y < y) {
                segs.push_back({{one - y, y, false, true}, one, zero});
                segs.push_back({{y, one, false, true}, zero, y});
            } else {
                segs.push_back({{one - y, one, false, true}, zero, y});
            }
            return PiecewiseAffine<S>(std::move(segs));
        }
        case NodeKind::Scaled: {
            std::vector<Seg> segs;
            auto inner_sec = inner_->section(y);
            for (auto s : inner_sec.segments()) {
                s.slope *= lambda_;
                s.intercept *= lambda_;
                segs.push_back(s);
            }
            return PiecewiseAffine<S>(std::move(segs));
        }
        case NodeKind::Zero:
            return PiecewiseAffine<S>({{Interval<S>::closed(zero, one), zero, zero}});
        case NodeKind::Underline: {
            if (y >= one) return min().section(y);
            std::vector<Seg> segs;
            auto inner_sec = inner_->section(y);
            for (const auto& s : inner_sec.segments()) {
                auto d = IntervalSet<S>{s.dom}.intersect(Interval<S>{zero, one, true, false});
                for (const auto& c : d.components()) segs.push_back({c, s.slope, s.intercept});
            }
            segs.push_back({Interval<S>::point(one), zero, y});
            return PiecewiseAffine<S>(std::move(segs));
        }
        case NodeKind::OrdinalSum: {
            std::vector<Seg> segs;
            IntervalSet<S> covered;
            for (const auto& s : sums_) {
                if (!in_region(s, y)) continue;
                auto region = IntervalSet<S>{region_of(s)}.minus(covered);
                covered = covered.unite(region);
                auto child_sec = s.child->section(s.unit(y));
                for (const auto& cs : child_sec.segments()) {
                    // a + (b-a)(m u + c) with u = (x-a)/(b-a)
                    Seg lifted{{s.lift(cs.dom.lo), s.lift(cs.dom.hi), cs.dom.lo_closed,
                                cs.dom.hi_closed},
                               cs.slope, s.a + (s.b - s.a) * cs.intercept - cs.slope * s.a};
                    auto part = region.intersect(lifted.dom);
                    for (const auto& c : part.components())
                        segs.push_back({c, lifted.slope, lifted.intercept});
                }
            }
            auto rest = IntervalSet<S>::unit().minus(covered);
            auto ms = min().section(y);
            for (const auto& m : ms.segments()) {
                auto part = rest.intersect(m.dom);
                for (const auto& c : part.components()) segs.push_back({c, m.slope, m.intercept});
            }
            return PiecewiseAffine<S>(std::move(segs));
        }
        }
        return {};
    }

    /**
     * True when F(x,y) = min(x,y) for every x in xs and y in ys.
     */
    bool acts_as_min(const IntervalSet<S>& xs, const IntervalSet<S>& ys) const {
        if (xs.empty() || ys.empty()) return true;
        const S zero(0), one(1);
        auto within = [](const IntervalSet<S>& m, std::initializer_list<S> pts) {
            std::vector<Interval<S>> v;
            for (const auto& p : pts) v.push_back(Interval<S>::point(p));
            return m.subset_of(IntervalSet<S>(std::move(v)));
        };
        switch (kind_) {
        case NodeKind::Min: return true;
        case NodeKind::Product:
        case NodeKind::Lukasiewicz:
            return within(xs, {zero, one}) || within(ys, {zero, one});
        case NodeKind::Scaled:
        case NodeKind::Zero: return within(xs, {zero}) || within(ys, {zero});
        case NodeKind::NilpotentMin: {
            auto zpt = IntervalSet<S>::point(zero);
            auto x1 = xs.minus(zpt), y1 = ys.minus(zpt);
            if (x1.empty() || y1.empty()) return true;
            S lo = x1.inf() + y1.inf();
            if (lo > one) return true;
            return lo == one && !(x1.inf_attained() && y1.inf_attained());
        }
        case NodeKind::Underline: {
            auto opt = IntervalSet<S>::point(one);
            return inner_->acts_as_min(xs.minus(opt), ys.minus(opt));
        }
        case NodeKind::OrdinalSum:
            for (const auto& s : sums_) {
                IntervalSet<S> r{region_of(s)};
                auto xi = xs.intersect(r), yi = ys.intersect(r);
                if (xi.empty() || yi.empty()) continue;
                S k = one / (s.b - s.a), c = -s.a / (s.b - s.a);
                if (!s.child->acts_as_min(xi.affine(k, c), yi.affine(k, c))) return false;
            }
            return true;
        }
        return false;
    }

    // Closed hull containing F(xs x ys); exact at the corners by monotonicity.
    Interval<S> box_hull(const IntervalSet<S>& xs, const IntervalSet<S>& ys) const {
        return Interval<S>::closed(eval(xs.inf(), ys.inf()), eval(xs.sup(), ys.sup()));
    }

    // Points where the expression changes formula; used to seed grids.
    std::vector<S> critical_points() const {
        std::vector<S> out{S(0), S(1)};
        if (kind_ == NodeKind::NilpotentMin || kind_ == NodeKind::Lukasiewicz) out.push_back(S(1) / S(2));
        if (inner_) {
            for (const auto& p : inner_->critical_points()) out.push_back(p);
        }
        for (const auto& s : sums_) {
            out.push_back(s.a);
            out.push_back(s.b);
            for (const auto& p : s.child->critical_points()) out.push_back(s.lift(p));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    template <class T>
    TNorm<T> cast() const {
        if constexpr (std::is_same_v<S, T>) {
            return *this;
        } else {
            switch (kind_) {
            case NodeKind::Scaled:
                return TNorm<T>::scaled(Num<T>::from_rational(lambda_), inner_->template cast<T>());
            case NodeKind::Underline: return TNorm<T>::underline(inner_->template cast<T>());
            case NodeKind::OrdinalSum: {
                std::vector<typename TNorm<T>::SummandSpec> specs;
                for (const auto& s : sums_)
                    specs.push_back({Num<T>::from_rational(s.a), Num<T>::from_rational(s.b),
                                     s.child->template cast<T>(), s.kind});
                return TNorm<T>::ordinal_sum(sem_, specs, false);
            }
            default: return TNorm<T>::leaf(kind_);
            }
        }
    }

    static TNorm leaf(NodeKind k) {
        if (k == NodeKind::Scaled || k == NodeKind::OrdinalSum || k == NodeKind::Underline)
            throw TNormError(std::string("node '") + node_name(k) + "' is not a leaf");
        return TNorm(k);
    }

    bool operator==(const TNorm& o) const {
        if (kind_ != o.kind_) return false;
        switch (kind_) {
        case NodeKind::Scaled: return lambda_ == o.lambda_ && *inner_ == *o.inner_;
        case NodeKind::Underline: return *inner_ == *o.inner_;
        case NodeKind::OrdinalSum:
            if (sem_ != o.sem_ || sums_.size() != o.sums_.size()) return false;
            for (std::size_t i = 0; i < sums_.size(); ++i) {
                const auto &p = sums_[i], &q = o.sums_[i];
                if (p.a != q.a || p.b != q.b || p.kind != q.kind || !(*p.child == *q.child))
                    return false;
            }
            return true;
        default: return true;
        }
    }

    std::string str() const {
        switch (kind_) {
        case NodeKind::Scaled: return "scaled(" + to_string(lambda_) + ", " + inner_->str() + ")";
        case NodeKind::Underline: return "underline(" + inner_->str() + ")";
        case NodeKind::OrdinalSum: {
            std::string s = sem_ == SumSemantics::ClosedSquare ? "ordinal_sum[closed](" : "ordinal_sum[half_open](";
            for (std::size_t i = 0; i < sums_.size(); ++i) {
                if (i) s += ", ";
                s += "<" + to_string(sums_[i].a) + "," + to_string(sums_[i].b) + "," +
                     sums_[i].child->str() + ">";
            }
            return s + ")";
        }
        default: return node_name(kind_);
        }
    }

    // Region of a summand on one axis.
    Interval<S> region_of(const Summand<S>& s) const {
        return sem_ == SumSemantics::ClosedSquare ? Interval<S>::closed(s.a, s.b)
                                                  : Interval<S>{s.a, s.b, false, true};
    }

    bool in_region(const Summand<S>& s, const S& x) const { return region_of(s).contains(x); }

    // Whether x + d lies in the summand's region for all small d > 0.
    static bool right_of(const Summand<S>& s, const S& x) {
        if (x >= S(1)) return s.b == S(1);
        return s.a <= x && x < s.b;
    }

    // Sampled axiom check: commutativity, monotonicity, bounded by min.
    void check_axioms() const {
        std::vector<S> g;
        const int n = 32;
        for (int i = 0; i <= n; ++i) g.push_back(S(i) / S(n));
        for (const auto& p : critical_points()) g.push_back(p);
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        for (std::size_t i = 0; i < g.size(); ++i) {
            for (std::size_t j = 0; j < g.size(); ++j) {
                S v = eval(g[i], g[j]);
                if (v < S(0) || !approx_le(v, smin(g[i], g[j])))
                    throw TNormError("expression exceeds min at (" + to_string(g[i]) + "," +
                                     to_string(g[j]) + ")");
                if (!approx_eq(v, eval(g[j], g[i])))
                    throw TNormError("expression is not commutative at (" + to_string(g[i]) +
                                     "," + to_string(g[j]) + ")");
                if (j > 0 && !approx_le(eval(g[i], g[j - 1]), v))
                    throw TNormError("expression is not monotone at (" + to_string(g[i]) + "," +
                                     to_string(g[j]) + ")");
            }
        }
        if (is_tnorm())
            for (const auto& x : g)
                if (!approx_eq(eval(x, S(1)), x))
                    throw TNormError("1 is not neutral at " + to_string(x));
    }

private:
    NodeKind kind_;
    S lambda_ = S(0);
    Ptr inner_;
    SumSemantics sem_ = SumSemantics::HalfOpen;
    std::vector<Summand<S>> sums_;

    explicit TNorm(NodeKind k) : kind_(k) {}

    template <class>
    friend class TNorm;

    void validate_sum() const {
        if (sums_.empty()) throw TNormError("ordinal sum needs at least one summand");
        for (std::size_t i = 0; i < sums_.size(); ++i) {
            const auto& s = sums_[i];
            if (!(S(0) <= s.a && s.a < s.b && s.b <= S(1)))
                throw TNormError("summand " + std::to_string(i) + " needs 0 <= a < b <= 1");
            if (i > 0 && sums_[i - 1].b > s.a)
                throw TNormError("summands " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                 " overlap or are out of order");
            if (s.kind == ChildKind::TNorm && !s.child->is_tnorm())
                throw TNormError("summand " + std::to_string(i) +
                                 " is declared a t-norm but 1 is not neutral");
            if (sem_ == SumSemantics::ClosedSquare && s.kind != ChildKind::TNorm)
                throw TNormError("closed-square ordinal sums take t-norm summands only");
        }
        if (sem_ == SumSemantics::HalfOpen) {
            for (std::size_t i = 0; i + 1 < sums_.size(); ++i) {
                const auto &lo = sums_[i], &hi = sums_[i + 1];
                if (lo.b == hi.a && !lo.child->is_tnorm() && hi.child->has_zero_divisors())
                    throw TNormError("summands " + std::to_string(i) + " and " +
                                     std::to_string(i + 1) +
                                     " touch: the lower one must be a t-norm or the upper one "
                                     "free of zero divisors");
            }
        }
    }
};

/**
 * The per-summand operators used by the ordinal-sum checks, all expressed on
 * the unit square; lift() maps back to [a,b].
 */
template <class S>
struct SummandView {
    S a, b;
    TNorm<S> unit;
    std::optional<TNorm<S>> bar;
    TNorm<S> underline;

    S lift(const S& u) const { return a + (b - a) * u; }
    S unit_coord(const S& x) const { return (x - a) / (b - a); }

    S on_interval(const S& x, const S& y) const { return lift(unit(unit_coord(x), unit_coord(y))); }
    S bar_on_interval(const S& x, const S& y) const {
        return lift((*bar)(unit_coord(x), unit_coord(y)));
    }
    S underline_on_interval(const S& x, const S& y) const {
        return lift(underline(unit_coord(x), unit_coord(y)));
    }
};

template <class S>
SummandView<S> summand_view(const TNorm<S>& f, std::size_t index) {
    if (!f.is_ordinal_sum()) throw TNormError("summand views need an ordinal sum");
    if (index >= f.summands().size()) throw TNormError("summand index out of range");
    const auto& s = f.summands()[index];
    SummandView<S> v{s.a, s.b, *s.child, std::nullopt, TNorm<S>::underline(*s.child)};
    if (!s.child->is_tnorm()) v.bar = TNorm<S>::bar_lift(*s.child);
    return v;
}

} // namespace tnf
