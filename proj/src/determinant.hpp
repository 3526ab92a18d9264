#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace gps::detail {

/// Laplace expansion along rows with a memo over the remaining column subsets.
/// `entry(r, c)` returns nullopt for a known zero.
template <class T, class Entry, class Mul, class Add, class Neg>
std::optional<T> laplace_det(std::size_t n, Entry entry, Mul mul, Add add, Neg neg) {
    std::unordered_map<std::uint64_t, std::optional<T>> memo;
    auto rec = [&](auto&& self, std::size_t row, std::uint64_t cols) -> std::optional<T> {
        if (row == n) return std::nullopt;  // caller handles the empty product
        if (auto it = memo.find(cols); it != memo.end()) return it->second;
        std::optional<T> acc;
        int sign = 1;
        for (std::size_t c = 0; c < n; ++c) {
            if (!(cols & (std::uint64_t{1} << c))) continue;
            std::optional<T> e = entry(row, c);
            if (e) {
                std::optional<T> term;
                if (row + 1 == n) {
                    term = *e;
                } else if (auto minor = self(self, row + 1, cols & ~(std::uint64_t{1} << c))) {
                    term = mul(*e, *minor);
                }
                if (term) {
                    if (sign < 0) term = neg(*term);
                    acc = acc ? add(*acc, *term) : *term;
                }
            }
            sign = -sign;
        }
        memo.emplace(cols, acc);
        return acc;
    };
    return rec(rec, 0, n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

}  // namespace gps::detail
