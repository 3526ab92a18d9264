#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace gps {

using Int = std::int64_t;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

/// Element of Z^k.
class Exponent {
public:
    Exponent() = default;
    explicit Exponent(std::size_t k) : c_(k, 0) {}
    Exponent(std::initializer_list<Int> c) : c_(c) {}
    explicit Exponent(std::vector<Int> c) : c_(std::move(c)) {}

    static Exponent unit(std::size_t k, std::size_t i);

    std::size_t size() const noexcept { return c_.size(); }
    Int operator[](std::size_t i) const { return c_[i]; }
    Int& operator[](std::size_t i) { return c_[i]; }
    std::span<const Int> coords() const noexcept { return c_; }
    bool is_zero() const noexcept;

    Exponent operator+(const Exponent& o) const;
    Exponent operator-(const Exponent& o) const;
    Exponent operator-() const;
    Exponent& operator+=(const Exponent& o);
    Exponent& operator-=(const Exponent& o);
    Exponent scaled(Int s) const;

    /// Coordinatewise lexicographic comparison; not a term order.
    auto operator<=>(const Exponent&) const = default;
    bool operator==(const Exponent&) const = default;

    std::string to_string() const;

private:
    std::vector<Int> c_;
};

struct ExponentHash {
    std::size_t operator()(const Exponent& e) const noexcept;
};

Int dot(std::span<const Int> w, const Exponent& x);

using IntMatrix = std::vector<std::vector<Int>>;

/// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class determinant(const IntMatrix& m);

/// G = H x Z^n with H the first m coordinates.
struct GroupSplit {
    std::size_t m = 0;
    std::size_t n = 1;

    GroupSplit() = default;
    GroupSplit(std::size_t m_, std::size_t n_);
    std::size_t k() const noexcept { return m + n; }
    /// Unit exponent of variable i (0-based).
    Exponent variable(std::size_t i) const;
    bool operator==(const GroupSplit&) const = default;
};

/// a > b iff M (a - b) is lexicographically positive.
class TermOrder {
public:
    /// Throws SingularOrderMatrix when det M = 0.
    explicit TermOrder(IntMatrix rows);

    static TermOrder identity(std::size_t k);
    /// Rows "r11,r12;r21,r22".
    static TermOrder parse(std::string_view text);

    std::size_t dim() const noexcept { return rows_.size(); }
    const IntMatrix& matrix() const noexcept { return rows_; }

    /// Lexicographic sign of M v.
    int sign(const Exponent& v) const;
    std::strong_ordering compare(const Exponent& a, const Exponent& b) const;
    bool is_positive(const Exponent& v) const { return sign(v) > 0; }
    bool less(const Exponent& a, const Exponent& b) const { return compare(a, b) < 0; }
    /// M v, used as a sort key.
    std::vector<Int> key(const Exponent& v) const;

    std::string to_string() const;
    bool operator==(const TermOrder&) const = default;

private:
    IntMatrix rows_;
};

TermOrder validate_order(const IntMatrix& rows);
std::strong_ordering compare(const TermOrder& order, const Exponent& a, const Exponent& b);
bool is_positive(const TermOrder& order, const Exponent& v);

/// Componentwise interval [lo, hi].
class Box {
public:
    Box(Exponent lo, Exponent hi);
    static Box point(const Exponent& p) { return Box(p, p); }
    static Box cube(std::size_t k, Int lo, Int hi);
    /// "lo..hi,lo..hi,..."; a single "lo..hi" with k > 1 is repeated.
    static Box parse(std::string_view text, std::size_t k);

    const Exponent& lo() const noexcept { return lo_; }
    const Exponent& hi() const noexcept { return hi_; }
    std::size_t dim() const noexcept { return lo_.size(); }

    bool contains(const Exponent& x) const;
    bool contains(const Box& b) const;
    std::optional<Box> intersect(const Box& b) const;
    Box hull(const Box& b) const;
    Box hull(const Exponent& x) const;
    Box shifted(const Exponent& v) const;
    /// Minkowski sum.
    Box operator+(const Box& b) const;
    /// Saturates at UINT64_MAX.
    std::uint64_t lattice_count() const;
    /// max over the box of w . x
    Int max_dot(std::span<const Int> w) const;
    Int min_dot(std::span<const Int> w) const;
    std::vector<Exponent> points() const;

    std::string to_string() const;
    bool operator==(const Box&) const = default;

private:
    Exponent lo_, hi_;
};

std::optional<Box> bounding_box(std::span<const Exponent> pts);

/// Certified support superset offset + N-span(generators); generators are positive.
struct Cone {
    Exponent offset;
    std::vector<Exponent> generators;

    bool operator==(const Cone&) const = default;
};

/// Validates positivity of generators and drops duplicates and generators that
/// are the sum of two others.
Cone make_cone(const TermOrder& order, Exponent offset, std::vector<Exponent> generators);
/// Cone covering both arguments.
Cone cone_union(const TermOrder& order, const Cone& a, const Cone& b);
Cone cone_sum(const TermOrder& order, const Cone& a, const Cone& b);
Cone cone_shift(const Cone& c, const Exponent& v);
/// Cone for the exact finite support `pts`; offset is the minimum.
Cone cone_of_points(const TermOrder& order, std::span<const Exponent> pts);
/// Moves the offset past a point known to carry no support. Requires generators.
Cone cone_advance(const TermOrder& order, const Cone& c);

/// A count i_max such that no sum of more than i_max elements of `support`
/// (with repetition) lies in `box`. Bounded row by row of the order matrix.
Int power_exhaustion_bound(const TermOrder& order, std::span<const Exponent> support,
                           const Box& box);

}  // namespace gps
