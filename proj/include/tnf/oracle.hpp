#pragma once

#include "scalar.hpp"
#include "verdict.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace tnf {

template <class S>
struct GridSpec {
    int n = 101;
    std::vector<S> extra;

    std::vector<S> points() const {
        if (n < 2) throw DomainError("grid needs at least 2 points per axis");
        std::vector<S> g;
        for (int i = 0; i < n; ++i) g.push_back(S(i) / S(n - 1));
        for (const auto& x : extra) {
            if (x < S(0) || x > S(1)) throw DomainError("grid point " + to_string(x) + " outside [0,1]");
            g.push_back(x);
        }
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        return g;
    }
};

template <class S>
S default_tol() {
    return Num<S>::exact ? S(0) : S(1e-9);
}

template <class S>
using Binary = std::function<S(const S&, const S&)>;

/**
 * First triple in lexicographic order with |T(T(x,y),z) - T(x,T(y,z))| > tol.
 * Rows of x are split across threads; the lowest failing row wins.
 */
template <class S>
std::optional<Witness<S>> grid_assoc_search(const Binary<S>& T, const GridSpec<S>& spec, const S& tol,
                                            unsigned threads = 0) {
    auto g = spec.points();
    const std::size_t m = g.size();
    std::vector<S> table(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) table[i * m + j] = table[j * m + i] = T(g[i], g[j]);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(m));

    std::atomic<std::size_t> best{m};
    std::vector<std::optional<Witness<S>>> hit(m);
    auto work = [&](unsigned w) {
        for (std::size_t i = w; i < m; i += threads) {
            if (i >= best.load()) return;
            for (std::size_t j = 0; j < m && !hit[i]; ++j)
                for (std::size_t k = 0; k < m; ++k) {
                    S l = T(table[i * m + j], g[k]);
                    S r = T(g[i], table[j * m + k]);
                    S d = l - r;
                    if (d < 0) d = -d;
                    if (d > tol) {
                        hit[i] = Witness<S>{g[i], g[j], g[k], l, r};
                        std::size_t cur = best.load();
                        while (i < cur && !best.compare_exchange_weak(cur, i)) {}
                        break;
                    }
                }
            if (hit[i]) return;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();
    std::size_t b = best.load();
    if (b < m) return hit[b];
    return std::nullopt;
}

template <class S>
double compare_closed_form(const Binary<S>& T, const std::function<double(double, double)>& ref,
                           const GridSpec<S>& spec) {
    auto g = spec.points();
    double worst = 0;
    for (const auto& x : g)
        for (const auto& y : g)
            worst = std::max(worst, std::abs(to_double(T(x, y)) - ref(to_double(x), to_double(y))));
    return worst;
}

// Same comparison with the reference in the backend's own arithmetic.
template <class S>
double max_deviation(const Binary<S>& T, const Binary<S>& ref, const GridSpec<S>& spec) {
    auto g = spec.points();
    double worst = 0;
    for (const auto& x : g)
        for (const auto& y : g) {
            S d = T(x, y) - ref(x, y);
            worst = std::max(worst, std::abs(to_double(d)));
        }
    return worst;
}

// Non-decreasing along every row (and by symmetry of the scan, every column).
template <class S>
bool monotone_on_grid(const Binary<S>& T, const GridSpec<S>& spec) {
    auto g = spec.points();
    for (const auto& y : g)
        for (std::size_t i = 1; i < g.size(); ++i) {
            if (!approx_le(T(g[i - 1], y), T(g[i], y))) return false;
            if (!approx_le(T(y, g[i - 1]), T(y, g[i]))) return false;
        }
    return true;
}

} // namespace tnf
