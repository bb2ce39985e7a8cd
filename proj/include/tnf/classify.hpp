#pragma once

#include "struct_verify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tnf {

template <class S>
struct Classification {
    ClassKind kind = ClassKind::Undetermined;
    std::vector<std::string> trace;
    std::optional<Witness<S>> witness;  // NotAssociative only
    std::optional<S> off_min;           // x with T(x,x) < x
    std::string note;

    void log(std::string line) { trace.push_back(std::move(line)); }
};

/**
 * T = min exactly when f(x-) <= F(f(x),f(x)) on (0,1]; the condition with
 * x <= y reduces to the diagonal by monotonicity. On a continuity segment it
 * says F is the minimum on the image.
 */
template <class S>
NeutralCheck<S> check_min_diagonal(const MonoFn<S>& f, const TNorm<S>& F) {
    NeutralCheck<S> out;
    auto fail = [&](const S& x) {
        out.holds = false;
        out.counterexample = x;
        return out;
    };
    std::vector<S> pts;
    for (const auto& p : f.breakpoints())
        if (p > S(0)) pts.push_back(p);
    if (pts.empty() || pts.back() != S(1)) pts.push_back(S(1));
    for (const auto& p : pts) {
        S v = f(p);
        if (!approx_le(f.side_limits(p).left, F(v, v))) return fail(p);
    }
    const auto& pieces = f.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const S& l = pieces[i].left;
        S r = f.right_end(i);
        auto img = IntervalSet<S>::open(pieces[i].form(l), pieces[i].form(r));
        if (F.acts_as_min(img, img)) continue;
        for (const auto& v : img.samples(32))
            if (approx_lt(F(v, v), v)) return fail(f.pseudo_inverse(v));
        return fail(f.pseudo_inverse((img.inf() + img.sup()) / S(2)));
    }
    return out;
}

namespace detail {

// Probe of: some y < x < z has F(f(y),f(z)) < f(y-).
template <class S>
bool irreducible_at(const MonoFn<S>& f, const TNorm<S>& F, const S& x) {
    for (int i = 1; i < 8; ++i) {
        S y = x * S(i) / S(8);
        S lim = f.side_limits(y).left;
        for (int k = 1; k <= 8; ++k) {
            S z = x + (S(1) - x) * S(k) / S(8);
            if (approx_lt(F(f(y), f(z)), lim)) return true;
        }
    }
    return false;
}

} // namespace detail

template <class S>
Classification<S> classify(const MonoFn<S>& f, const TNorm<S>& F) {
    Classification<S> c;
    auto v = check_tnorm(f, F);
    for (auto& line : v.trace) c.log(std::move(line));
    if (v.refuted() && v.witness && !v.witness->neutral) {
        c.kind = ClassKind::NotAssociative;
        c.witness = v.witness;
        c.log("not associative: " + v.witness->str());
        return c;
    }
    if (!v.proven()) {
        c.note = v.refuted() ? "not a t-norm" : "t-norm property undetermined: " + v.note;
        c.log(c.note);
        return c;
    }

    auto diag = check_min_diagonal(f, F);
    if (diag.holds) {
        c.kind = ClassKind::TM;
        c.log("f(x-) <= F(f(x),f(y)) for all x <= y: T is the minimum");
        return c;
    }
    c.off_min = diag.counterexample;
    c.log("F(f(x),f(x)) < f(x-) at x = " + to_string(*diag.counterexample) + ": T is not the minimum");

    auto entries = decompose(f, F);
    if (entries.empty()) {
        c.note = "no summand meets Ran(f) yet T is not the minimum";
        c.log(c.note);
        return c;
    }
    if (entries.size() >= 2) {
        c.kind = ClassKind::NonTrivialOrdinalSum;
        c.log(std::to_string(entries.size()) + " summands meet Ran(f) in an interval");
        c.log("all five statements of the sum criterion hold (read as required in every branch)");
        return c;
    }
    const auto& e = entries.front();
    S lo = f.side_limits(S(0)).right, hi = f.side_limits(S(1)).left;
    if (lo < e.a || hi > e.b) {
        c.kind = ClassKind::NonTrivialOrdinalSum;
        c.log("f((0,1)) leaves (" + to_string(e.a) + "," + to_string(e.b) + ")");
        return c;
    }
    c.log("single summand <" + to_string(e.a) + "," + to_string(e.b) + "> containing f((0,1))");

    // Irreducibility at every probe x, or a proven cut.
    std::vector<S> xs;
    for (int i = 1; i < 64; ++i) xs.push_back(S(i) / S(64));
    for (const auto& p : f.breakpoints())
        if (S(0) < p && p < S(1)) xs.push_back(p);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (const auto& x : xs) {
        if (detail::irreducible_at(f, F, x)) continue;
        c.log("no y < " + to_string(x) + " < z with F(f(y),f(z)) < f(y-) among the probes");
        if (dominated_below(f, F, f.side_limits(x).right, x, false).holds) {
            c.kind = ClassKind::NonTrivialOrdinalSum;
            c.log("T(y,z) = y for all y < " + to_string(x) + " < z: ordinal sum cut");
        } else {
            c.note = "irreducibility probe fails at " + to_string(x) + " but no cut is proven";
            c.log(c.note);
        }
        return c;
    }
    c.kind = ClassKind::OrdinallyIrreducible;
    c.log("every probe x has y < x < z with F(f(y),f(z)) < f(y-) (" + std::to_string(xs.size()) +
          " probes)");
    return c;
}

} // namespace tnf
