#pragma once

#include "scalar.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tnf {

template <class S>
struct Interval {
    S lo, hi;
    bool lo_closed = true, hi_closed = true;

    static Interval closed(const S& a, const S& b) { return {a, b, true, true}; }
    static Interval open(const S& a, const S& b) { return {a, b, false, false}; }
    static Interval point(const S& a) { return {a, a, true, true}; }

    bool empty() const {
        if (lo > hi) return true;
        if (lo == hi) return !(lo_closed && hi_closed);
        return false;
    }
    bool is_point() const { return lo == hi && lo_closed && hi_closed; }

    bool contains(const S& x) const {
        bool above = lo_closed ? x >= lo : x > lo;
        bool below = hi_closed ? x <= hi : x < hi;
        return above && below;
    }
    // Membership that snaps values within the backend tolerance of a closed end.
    bool contains_approx(const S& x) const {
        if (contains(x)) return true;
        if (lo_closed && approx_eq(x, lo) && approx_le(x, hi)) return true;
        if (hi_closed && approx_eq(x, hi) && approx_le(lo, x)) return true;
        return false;
    }

    bool operator==(const Interval& o) const {
        return lo == o.lo && hi == o.hi && lo_closed == o.lo_closed && hi_closed == o.hi_closed;
    }
};

/**
 * Finite union of intervals of the real line kept in canonical form: sorted,
 * pairwise disjoint, and with touching pieces merged.
 */
template <class S>
class IntervalSet {
public:
    using Iv = Interval<S>;

    IntervalSet() = default;
    IntervalSet(std::initializer_list<Iv> parts) : parts_(parts) { normalize(); }
    explicit IntervalSet(std::vector<Iv> parts) : parts_(std::move(parts)) { normalize(); }

    static IntervalSet closed(const S& a, const S& b) { return IntervalSet{Iv::closed(a, b)}; }
    static IntervalSet open(const S& a, const S& b) { return IntervalSet{Iv::open(a, b)}; }
    static IntervalSet point(const S& a) { return IntervalSet{Iv::point(a)}; }
    static IntervalSet unit() { return closed(S(0), S(1)); }

    const std::vector<Iv>& components() const { return parts_; }
    std::size_t size() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }

    bool contains(const S& x) const {
        return std::any_of(parts_.begin(), parts_.end(), [&](const Iv& c) { return c.contains(x); });
    }
    bool contains_approx(const S& x) const {
        return std::any_of(parts_.begin(), parts_.end(),
                           [&](const Iv& c) { return c.contains_approx(x); });
    }

    bool at_most_one_point() const {
        return parts_.empty() || (parts_.size() == 1 && parts_[0].is_point());
    }

    const S& inf() const { return parts_.front().lo; }
    const S& sup() const { return parts_.back().hi; }
    bool inf_attained() const { return parts_.front().lo_closed; }
    bool sup_attained() const { return parts_.back().hi_closed; }

    IntervalSet unite(const IntervalSet& o) const {
        std::vector<Iv> all = parts_;
        all.insert(all.end(), o.parts_.begin(), o.parts_.end());
        return IntervalSet(std::move(all));
    }

    IntervalSet intersect(const IntervalSet& o) const {
        std::vector<Iv> out;
        for (const auto& a : parts_)
            for (const auto& b : o.parts_) {
                Iv c = intersect(a, b);
                if (!c.empty()) out.push_back(c);
            }
        return IntervalSet(std::move(out));
    }

    IntervalSet intersect(const Iv& iv) const { return intersect(IntervalSet{iv}); }

    // Complement relative to the closed window [a,b].
    IntervalSet complement(const S& a = S(0), const S& b = S(1)) const {
        std::vector<Iv> out;
        S cur = a;
        bool cur_closed = true;
        for (const auto& c : parts_) {
            if (c.hi < a || c.lo > b) continue;
            out.push_back({cur, c.lo, cur_closed, !c.lo_closed});
            cur = c.hi;
            cur_closed = !c.hi_closed;
        }
        out.push_back({cur, b, cur_closed, true});
        return IntervalSet(std::move(out)).intersect(Iv::closed(a, b));
    }

    IntervalSet minus(const IntervalSet& o) const {
        if (empty()) return *this;
        S a = smin(inf(), o.empty() ? inf() : o.inf());
        S b = smax(sup(), o.empty() ? sup() : o.sup());
        return intersect(o.complement(a, b));
    }

    bool intersects(const IntervalSet& o) const { return !intersect(o).empty(); }

    // Image under x -> k*x + c with k > 0.
    IntervalSet affine(const S& k, const S& c) const {
        std::vector<Iv> out;
        for (const auto& p : parts_) out.push_back({k * p.lo + c, k * p.hi + c, p.lo_closed, p.hi_closed});
        return IntervalSet(std::move(out));
    }

    bool subset_of(const IntervalSet& o) const { return minus(o).empty(); }

    // Points approached by members from below / above / both sides.
    IntervalSet acc_left() const {
        std::vector<Iv> out;
        for (const auto& c : parts_)
            if (c.lo < c.hi) out.push_back({c.lo, c.hi, false, true});
        return IntervalSet(std::move(out));
    }
    IntervalSet acc_right() const {
        std::vector<Iv> out;
        for (const auto& c : parts_)
            if (c.lo < c.hi) out.push_back({c.lo, c.hi, true, false});
        return IntervalSet(std::move(out));
    }
    IntervalSet acc_both() const { return acc_left().intersect(acc_right()); }

    // Union of (min,max) over all pairs of members.
    IntervalSet open_hull() const {
        if (at_most_one_point()) return {};
        return open(inf(), sup());
    }

    // A handful of representative members: attained ends, midpoints and
    // points near open ends. Used to seed witness searches.
    std::vector<S> samples(int interior = 3) const {
        std::vector<S> out;
        for (const auto& c : parts_) {
            if (c.is_point()) {
                out.push_back(c.lo);
                continue;
            }
            S w = c.hi - c.lo;
            if (c.lo_closed) out.push_back(c.lo);
            for (int k = 1; k <= interior; ++k) out.push_back(c.lo + w * S(k) / S(interior + 1));
            if (!c.lo_closed) out.push_back(c.lo + w / S(1024));
            if (!c.hi_closed) out.push_back(c.hi - w / S(1024));
            if (c.hi_closed) out.push_back(c.hi);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool operator==(const IntervalSet& o) const { return parts_ == o.parts_; }

    std::string str() const {
        if (parts_.empty()) return "{}";
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            const auto& c = parts_[i];
            if (i) s += " u ";
            if (c.is_point()) {
                s += "{" + to_string(c.lo) + "}";
                continue;
            }
            s += c.lo_closed ? "[" : "(";
            s += to_string(c.lo) + "," + to_string(c.hi);
            s += c.hi_closed ? "]" : ")";
        }
        return s;
    }

private:
    std::vector<Iv> parts_;

    static Iv intersect(const Iv& a, const Iv& b) {
        Iv r;
        if (a.lo > b.lo) { r.lo = a.lo; r.lo_closed = a.lo_closed; }
        else if (b.lo > a.lo) { r.lo = b.lo; r.lo_closed = b.lo_closed; }
        else { r.lo = a.lo; r.lo_closed = a.lo_closed && b.lo_closed; }
        if (a.hi < b.hi) { r.hi = a.hi; r.hi_closed = a.hi_closed; }
        else if (b.hi < a.hi) { r.hi = b.hi; r.hi_closed = b.hi_closed; }
        else { r.hi = a.hi; r.hi_closed = a.hi_closed && b.hi_closed; }
        return r;
    }

    void normalize() {
        std::vector<Iv> v;
        for (auto& c : parts_)
            if (!c.empty()) v.push_back(c);
        std::sort(v.begin(), v.end(), [](const Iv& a, const Iv& b) {
            if (a.lo != b.lo) return a.lo < b.lo;
            return a.lo_closed && !b.lo_closed;
        });
        std::vector<Iv> out;
        for (auto& c : v) {
            if (!out.empty()) {
                Iv& t = out.back();
                // Touching within tolerance merges; exact backend has eps 0.
                bool touch = c.lo < t.hi || (c.lo == t.hi && (t.hi_closed || c.lo_closed)) ||
                             (!Num<S>::exact && approx_le(c.lo, t.hi));
                if (touch) {
                    if (c.hi > t.hi) {
                        t.hi = c.hi;
                        t.hi_closed = c.hi_closed;
                    } else if (c.hi == t.hi) {
                        t.hi_closed = t.hi_closed || c.hi_closed;
                    }
                    continue;
                }
            }
            out.push_back(c);
        }
        parts_ = std::move(out);
    }
};

template <class S>
std::ostream& operator<<(std::ostream& os, const IntervalSet<S>& m) {
    return os << m.str();
}

} // namespace tnf
