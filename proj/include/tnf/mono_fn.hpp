#pragma once

#include "interval_set.hpp"
#include "scalar.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace tnf {

enum class FormKind { Linear, Exponential };

/**
 * Linear: slope*x + intercept.
 * Exponential: offset + scale*exp(rate*x).
 */
template <class S>
struct AnalyticForm {
    FormKind kind = FormKind::Linear;
    S p0 = S(1), p1 = S(0), p2 = S(0);

    static AnalyticForm linear(const S& slope, const S& intercept) {
        return {FormKind::Linear, slope, intercept, S(0)};
    }
    static AnalyticForm exponential(const S& offset, const S& scale, const S& rate) {
        return {FormKind::Exponential, offset, scale, rate};
    }

    const S& slope() const { return p0; }
    const S& intercept() const { return p1; }
    const S& offset() const { return p0; }
    const S& scale() const { return p1; }
    const S& rate() const { return p2; }

    bool increasing() const {
        if (kind == FormKind::Linear) return p0 > 0;
        return p1 * p2 > 0;
    }

    S operator()(const S& x) const {
        if (kind == FormKind::Linear) return p0 * x + p1;
        return p0 + p1 * Num<S>::exp(p2 * x);
    }

    // Solves form(x) = y.
    S inverse(const S& y) const {
        if (kind == FormKind::Linear) return (y - p1) / p0;
        return Num<S>::log((y - p0) / p1) / p2;
    }

    // Form of u -> (form(lo + (hi-lo)*u) - a) / (b-a).
    AnalyticForm reframe(const S& lo, const S& hi, const S& a, const S& b) const {
        S w = hi - lo, h = b - a;
        if (kind == FormKind::Linear) return linear(p0 * w / h, (p0 * lo + p1 - a) / h);
        return exponential((p0 - a) / h, p1 * Num<S>::exp(p2 * lo) / h, p2 * w);
    }

    template <class T>
    AnalyticForm<T> cast() const {
        if constexpr (std::is_same_v<S, T>) {
            return *this;
        } else {
            static_assert(std::is_same_v<S, Rational>, "casts start from rational data");
            return {kind, Num<T>::from_rational(p0), Num<T>::from_rational(p1),
                    Num<T>::from_rational(p2)};
        }
    }

    bool operator==(const AnalyticForm& o) const {
        return kind == o.kind && p0 == o.p0 && p1 == o.p1 && p2 == o.p2;
    }
};

template <class S>
struct Piece {
    S left;
    AnalyticForm<S> form;
    S value_at_left;

    bool operator==(const Piece& o) const {
        return left == o.left && form == o.form && value_at_left == o.value_at_left;
    }
};

template <class S>
struct SideLimits {
    S left, right;
};

class GeneratorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Strictly increasing f:[0,1]->[0,1] given by analytic pieces on
 * [left_i, left_{i+1}) with the value at each breakpoint stored separately.
 */
template <class S>
class MonoFn {
public:
    MonoFn() : MonoFn({{S(0), AnalyticForm<S>::linear(S(1), S(0)), S(0)}}, S(1)) {}

    MonoFn(std::vector<Piece<S>> pieces, S value_at_one)
        : pieces_(std::move(pieces)), one_(std::move(value_at_one)) {
        validate();
    }

    static MonoFn identity() { return MonoFn(); }

    static MonoFn single(const AnalyticForm<S>& form) {
        return MonoFn({{S(0), form, form(S(0))}}, form(S(1)));
    }

    const std::vector<Piece<S>>& pieces() const { return pieces_; }
    const S& value_at_one() const { return one_; }

    bool is_linear() const {
        for (const auto& p : pieces_)
            if (p.form.kind != FormKind::Linear) return false;
        return true;
    }

    S right_end(std::size_t i) const {
        return i + 1 < pieces_.size() ? pieces_[i + 1].left : S(1);
    }

    S operator()(const S& x) const { return eval(x); }

    S eval(const S& x) const {
        check_domain(x);
        if (x == S(1)) return one_;
        const auto& p = pieces_[locate(x)];
        return x == p.left ? p.value_at_left : p.form(x);
    }

    SideLimits<S> side_limits(const S& x) const {
        check_domain(x);
        S fx = eval(x);
        SideLimits<S> r{fx, fx};
        if (x == S(1)) {
            r.left = pieces_.back().form(S(1));
            return r;
        }
        std::size_t i = locate(x);
        const auto& p = pieces_[i];
        if (x == p.left) {
            r.right = p.form(x);
            if (i > 0) r.left = pieces_[i - 1].form(x);
        } else {
            r.left = r.right = p.form(x);
        }
        return r;
    }

    // sup{x | f(x) < y}, with sup of the empty set taken as 0.
    S pseudo_inverse(const S& y) const {
        const S eps = Num<S>::eps();
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const auto& p = pieces_[i];
            S r = right_end(i);
            if (y <= p.value_at_left + eps) return p.left;
            if (y <= p.form(p.left) + eps) return p.left;
            if (y <= p.form(r) + eps) return clamp(p.form.inverse(y), p.left, r);
        }
        return S(1);
    }

    // sup{x | f(x) <= y}, with sup of the empty set taken as 0.
    S sup_at_most(const S& y) const {
        const S eps = Num<S>::eps();
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const auto& p = pieces_[i];
            S r = right_end(i);
            if (p.value_at_left > y + eps) return p.left;
            if (y <= p.form(p.left) + eps) return p.left;
            if (y < p.form(r) - eps) return clamp(p.form.inverse(y), p.left, r);
        }
        return S(1);
    }

    // inf{x | f(x) >= y}; for a strictly increasing f this is the pseudo-inverse.
    S inf_at_least(const S& y) const { return pseudo_inverse(y); }

    IntervalSet<S> range() const {
        std::vector<Interval<S>> parts;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const auto& p = pieces_[i];
            parts.push_back(Interval<S>::point(p.value_at_left));
            parts.push_back(Interval<S>::open(p.form(p.left), p.form(right_end(i))));
        }
        parts.push_back(Interval<S>::point(one_));
        return IntervalSet<S>(std::move(parts));
    }

    // 0, every interior breakpoint, 1.
    std::vector<S> breakpoints() const {
        std::vector<S> out;
        for (const auto& p : pieces_) out.push_back(p.left);
        out.push_back(S(1));
        return out;
    }

    // Points where f(x-) < f(x+), with the conventions at 0 and 1.
    std::vector<S> jump_points() const {
        std::vector<S> out;
        for (const S& x : breakpoints()) {
            auto lim = side_limits(x);
            bool jump = lim.left < lim.right;
            if (x == S(0)) jump = jump || eval(x) < lim.right;
            if (x == S(1)) jump = jump || lim.left < eval(x);
            if (!Num<S>::exact && approx_eq(lim.left, lim.right) && approx_eq(eval(x), lim.left))
                jump = false;
            if (jump) out.push_back(x);
        }
        return out;
    }

    /**
     * Restriction to [lo,hi] reparametrised onto [0,1], with values mapped
     * y -> (y-a)/(b-a). The endpoint values are supplied by the caller.
     */
    MonoFn window(const S& lo, const S& hi, const S& a, const S& b, const S& v_lo,
                  const S& v_hi) const {
        if (!(lo < hi)) throw GeneratorError("window needs lo < hi");
        S w = hi - lo, h = b - a;
        std::vector<Piece<S>> out;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const auto& p = pieces_[i];
            S r = right_end(i);
            if (r <= lo || p.left >= hi) continue;
            AnalyticForm<S> g = p.form.reframe(lo, hi, a, b);
            if (out.empty()) {
                out.push_back({S(0), g, (v_lo - a) / h});
            } else {
                out.push_back({(p.left - lo) / w, g, (p.value_at_left - a) / h});
            }
        }
        return MonoFn(std::move(out), (v_hi - a) / h, /*checked=*/false);
    }

    // y -> y*k + c applied to all values.
    MonoFn affine_values(const S& k, const S& c) const {
        // (y - a)/h with h = 1/k and a = -c/k
        std::vector<Piece<S>> out;
        for (const auto& p : pieces_) {
            AnalyticForm<S> g = p.form;
            if (g.kind == FormKind::Linear) {
                g = AnalyticForm<S>::linear(g.p0 * k, g.p1 * k + c);
            } else {
                g = AnalyticForm<S>::exponential(g.p0 * k + c, g.p1 * k, g.p2);
            }
            out.push_back({p.left, g, p.value_at_left * k + c});
        }
        return MonoFn(std::move(out), one_ * k + c, false);
    }

    template <class T>
    MonoFn<T> cast() const {
        if constexpr (std::is_same_v<S, T>) {
            return *this;
        } else {
            std::vector<Piece<T>> out;
            for (const auto& p : pieces_)
                out.push_back({Num<T>::from_rational(p.left), p.form.template cast<T>(),
                               Num<T>::from_rational(p.value_at_left)});
            return MonoFn<T>(std::move(out), Num<T>::from_rational(one_));
        }
    }

    bool operator==(const MonoFn& o) const { return pieces_ == o.pieces_ && one_ == o.one_; }

    MonoFn(std::vector<Piece<S>> pieces, S value_at_one, bool checked)
        : pieces_(std::move(pieces)), one_(std::move(value_at_one)) {
        if (checked) validate();
        else validate_shape();
    }

private:
    std::vector<Piece<S>> pieces_;
    S one_;

    static S clamp(const S& x, const S& lo, const S& hi) { return x < lo ? lo : (x > hi ? hi : x); }

    static void check_domain(const S& x) {
        if (x < S(0) || x > S(1))
            throw DomainError("argument " + to_string(x) + " outside [0,1]");
    }

    std::size_t locate(const S& x) const {
        std::size_t i = 0;
        while (i + 1 < pieces_.size() && pieces_[i + 1].left <= x) ++i;
        return i;
    }

    void validate_shape() const {
        if (pieces_.empty()) throw GeneratorError("generator needs at least one piece");
        if (pieces_.front().left != S(0)) throw GeneratorError("first piece must start at 0");
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (i > 0 && !(pieces_[i - 1].left < pieces_[i].left))
                throw GeneratorError("piece breakpoints must be strictly increasing");
            if (!(pieces_[i].left < S(1))) throw GeneratorError("piece breakpoints must be < 1");
            if (!pieces_[i].form.increasing())
                throw GeneratorError("piece " + std::to_string(i) + " is not strictly increasing");
        }
    }

    void validate() const {
        validate_shape();
        auto in_unit = [](const S& v) { return approx_le(S(0), v) && approx_le(v, S(1)); };
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const auto& p = pieces_[i];
            S at = p.form(p.left), end = p.form(right_end(i));
            if (!in_unit(p.value_at_left) || !in_unit(at) || !in_unit(end))
                throw GeneratorError("piece " + std::to_string(i) + " leaves [0,1]");
            if (!approx_le(p.value_at_left, at))
                throw GeneratorError("value at breakpoint " + to_string(p.left) +
                                     " exceeds the right limit");
            if (i > 0 && !approx_le(pieces_[i - 1].form(p.left), p.value_at_left))
                throw GeneratorError("value at breakpoint " + to_string(p.left) +
                                     " is below the left limit");
        }
        if (!in_unit(one_)) throw GeneratorError("value at 1 leaves [0,1]");
        if (!approx_le(pieces_.back().form(S(1)), one_))
            throw GeneratorError("value at 1 is below the left limit");
    }
};

} // namespace tnf
