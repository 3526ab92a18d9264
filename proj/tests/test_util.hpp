#pragma once

#include <random>
#include <vector>

#include "gps/exponents.hpp"
#include "gps/series.hpp"

namespace testutil {

inline std::mt19937_64& rng() {
    static std::mt19937_64 r(20261016);
    return r;
}

inline gps::Int uniform(gps::Int lo, gps::Int hi) {
    return std::uniform_int_distribution<gps::Int>(lo, hi)(rng());
}

inline gps::Exponent random_exponent(std::size_t k, gps::Int lo, gps::Int hi) {
    gps::Exponent e(k);
    for (std::size_t i = 0; i < k; ++i) e[i] = uniform(lo, hi);
    return e;
}

inline gps::TermOrder random_order(std::size_t k, gps::Int span = 3) {
    while (true) {
        gps::IntMatrix m(k, std::vector<gps::Int>(k));
        for (auto& r : m)
            for (auto& x : r) x = uniform(-span, span);
        if (gps::determinant(m) != 0) return gps::TermOrder(m);
    }
}

inline gps::Exponent random_positive(const gps::TermOrder& order, std::size_t k, gps::Int lo, gps::Int hi) {
    while (true) {
        auto e = random_exponent(k, lo, hi);
        if (order.is_positive(e)) return e;
    }
}

/// Unimodular n x n matrix as a product of random elementary operations.
inline gps::IntMatrix random_unimodular(std::size_t n, int steps = 4, gps::Int bound = 3) {
    gps::IntMatrix s(n, std::vector<gps::Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) s[i][i] = 1;
    if (n == 1) {
        if (uniform(0, 1)) s[0][0] = -1;
        return s;
    }
    for (int t = 0; t < steps; ++t) {
        std::size_t i = static_cast<std::size_t>(uniform(0, static_cast<gps::Int>(n) - 1));
        std::size_t j = static_cast<std::size_t>(uniform(0, static_cast<gps::Int>(n) - 2));
        if (j >= i) ++j;
        gps::Int c = uniform(-1, 1);
        auto next = s;
        bool ok = true;
        for (std::size_t col = 0; col < n; ++col) {
            next[i][col] += c * s[j][col];
            ok = ok && next[i][col] >= -bound && next[i][col] <= bound;
        }
        if (ok) s = next;
        if (uniform(0, 3) == 0) std::swap(s[i], s[j]);
        if (uniform(0, 5) == 0)
            for (auto& x : s[i]) x = -x;
    }
    return s;
}

inline gps::Series poly(const gps::AmbientPtr& amb, std::vector<std::pair<gps::Exponent, long>> terms) {
    std::vector<gps::Term> t;
    for (auto& [e, c] : terms) t.push_back(gps::Term{e, mpq_class(c)});
    return gps::Series::exact(amb, std::move(t));
}

}  // namespace testutil
