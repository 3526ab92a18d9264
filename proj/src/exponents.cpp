#include "gps/exponents.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "gps/error.hpp"

namespace gps {

namespace {

[[noreturn]] void overflow() { throw Error(ErrorKind::ExponentOverflow, "exponent arithmetic overflowed int64"); }

void check_dims(std::size_t a, std::size_t b) {
    if (a != b)
        throw Error(ErrorKind::DimensionMismatch,
                    "dimension " + std::to_string(a) + " vs " + std::to_string(b));
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

Int parse_int(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    Int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size())
        throw Error(ErrorKind::InvalidArgument, "not an integer: '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace

Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) overflow();
    return r;
}

Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) overflow();
    return r;
}

Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) overflow();
    return r;
}

// ---------------------------------------------------------------- Exponent

Exponent Exponent::unit(std::size_t k, std::size_t i) {
    Exponent e(k);
    e.c_.at(i) = 1;
    return e;
}

bool Exponent::is_zero() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](Int v) { return v == 0; });
}

Exponent Exponent::operator+(const Exponent& o) const {
    Exponent r(*this);
    r += o;
    return r;
}

Exponent Exponent::operator-(const Exponent& o) const {
    Exponent r(*this);
    r -= o;
    return r;
}

Exponent Exponent::operator-() const {
    Exponent r(size());
    for (std::size_t i = 0; i < size(); ++i) r.c_[i] = checked_sub(0, c_[i]);
    return r;
}

Exponent& Exponent::operator+=(const Exponent& o) {
    check_dims(size(), o.size());
    for (std::size_t i = 0; i < size(); ++i) c_[i] = checked_add(c_[i], o.c_[i]);
    return *this;
}

Exponent& Exponent::operator-=(const Exponent& o) {
    check_dims(size(), o.size());
    for (std::size_t i = 0; i < size(); ++i) c_[i] = checked_sub(c_[i], o.c_[i]);
    return *this;
}

Exponent Exponent::scaled(Int s) const {
    Exponent r(size());
    for (std::size_t i = 0; i < size(); ++i) r.c_[i] = checked_mul(c_[i], s);
    return r;
}

std::string Exponent::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c_[i]);
    }
    return s + ")";
}

std::size_t ExponentHash::operator()(const Exponent& e) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (Int v : e.coords()) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

Int dot(std::span<const Int> w, const Exponent& x) {
    check_dims(w.size(), x.size());
    Int s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s = checked_add(s, checked_mul(w[i], x[i]));
    return s;
}

mpz_class determinant(const IntMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
        check_dims(m[i].size(), n);
        for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
    }
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// ---------------------------------------------------------------- GroupSplit

GroupSplit::GroupSplit(std::size_t m_, std::size_t n_) : m(m_), n(n_) {
    if (n == 0) throw Error(ErrorKind::BadDimension, "at least one variable is required");
}

Exponent GroupSplit::variable(std::size_t i) const {
    if (i >= n) throw Error(ErrorKind::BadVariableIndex, "variable index " + std::to_string(i + 1));
    return Exponent::unit(k(), m + i);
}

// ---------------------------------------------------------------- TermOrder

TermOrder::TermOrder(IntMatrix rows) : rows_(std::move(rows)) {
    const std::size_t k = rows_.size();
    if (k == 0) throw Error(ErrorKind::DimensionMismatch, "empty order matrix");
    for (const auto& r : rows_) check_dims(r.size(), k);
    if (determinant(rows_) == 0) throw Error(ErrorKind::SingularOrderMatrix, "det M = 0");
}

TermOrder TermOrder::identity(std::size_t k) {
    IntMatrix m(k, std::vector<Int>(k, 0));
    for (std::size_t i = 0; i < k; ++i) m[i][i] = 1;
    return TermOrder(std::move(m));
}

TermOrder TermOrder::parse(std::string_view text) {
    IntMatrix m;
    for (auto row : split(trim(text), ';')) {
        std::vector<Int> r;
        for (auto e : split(row, ',')) r.push_back(parse_int(e));
        m.push_back(std::move(r));
    }
    return TermOrder(std::move(m));
}

int TermOrder::sign(const Exponent& v) const {
    check_dims(v.size(), dim());
    for (const auto& r : rows_) {
        Int s = dot(r, v);
        if (s > 0) return 1;
        if (s < 0) return -1;
    }
    return 0;
}

std::strong_ordering TermOrder::compare(const Exponent& a, const Exponent& b) const {
    check_dims(a.size(), dim());
    check_dims(b.size(), dim());
    for (const auto& r : rows_) {
        Int x = dot(r, a), y = dot(r, b);
        if (x != y) return x <=> y;
    }
    return std::strong_ordering::equal;
}

std::vector<Int> TermOrder::key(const Exponent& v) const {
    std::vector<Int> k;
    k.reserve(dim());
    for (const auto& r : rows_) k.push_back(dot(r, v));
    return k;
}

std::string TermOrder::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i) s += ";";
        for (std::size_t j = 0; j < rows_[i].size(); ++j) {
            if (j) s += ",";
            s += std::to_string(rows_[i][j]);
        }
    }
    return s;
}

TermOrder validate_order(const IntMatrix& rows) { return TermOrder(rows); }

std::strong_ordering compare(const TermOrder& order, const Exponent& a, const Exponent& b) {
    return order.compare(a, b);
}

bool is_positive(const TermOrder& order, const Exponent& v) { return order.is_positive(v); }

// ---------------------------------------------------------------- Box

Box::Box(Exponent lo, Exponent hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    check_dims(lo_.size(), hi_.size());
    for (std::size_t i = 0; i < lo_.size(); ++i)
        if (lo_[i] > hi_[i])
            throw Error(ErrorKind::InvalidArgument, "box with lo > hi in coordinate " + std::to_string(i));
}

Box Box::cube(std::size_t k, Int lo, Int hi) {
    return Box(Exponent(std::vector<Int>(k, lo)), Exponent(std::vector<Int>(k, hi)));
}

Box Box::parse(std::string_view text, std::size_t k) {
    auto parts = split(trim(text), ',');
    if (parts.size() == 1 && k > 1) parts.assign(k, parts[0]);
    if (parts.size() != k)
        throw Error(ErrorKind::DimensionMismatch,
                    "box has " + std::to_string(parts.size()) + " ranges, expected " + std::to_string(k));
    Exponent lo(k), hi(k);
    for (std::size_t i = 0; i < k; ++i) {
        auto p = trim(parts[i]);
        auto dots = p.find("..");
        if (dots == std::string_view::npos)
            throw Error(ErrorKind::InvalidArgument, "range must be lo..hi: '" + std::string(p) + "'");
        lo[i] = parse_int(p.substr(0, dots));
        hi[i] = parse_int(p.substr(dots + 2));
    }
    return Box(lo, hi);
}

bool Box::contains(const Exponent& x) const {
    check_dims(x.size(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
        if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
    return true;
}

bool Box::contains(const Box& b) const { return contains(b.lo_) && contains(b.hi_); }

std::optional<Box> Box::intersect(const Box& b) const {
    check_dims(b.dim(), dim());
    Exponent lo(dim()), hi(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        lo[i] = std::max(lo_[i], b.lo_[i]);
        hi[i] = std::min(hi_[i], b.hi_[i]);
        if (lo[i] > hi[i]) return std::nullopt;
    }
    return Box(lo, hi);
}

Box Box::hull(const Box& b) const {
    check_dims(b.dim(), dim());
    Exponent lo(dim()), hi(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        lo[i] = std::min(lo_[i], b.lo_[i]);
        hi[i] = std::max(hi_[i], b.hi_[i]);
    }
    return Box(lo, hi);
}

Box Box::hull(const Exponent& x) const { return hull(Box::point(x)); }

Box Box::shifted(const Exponent& v) const { return Box(lo_ + v, hi_ + v); }

Box Box::operator+(const Box& b) const { return Box(lo_ + b.lo_, hi_ + b.hi_); }

std::uint64_t Box::lattice_count() const {
    unsigned __int128 c = 1;
    const unsigned __int128 cap = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t i = 0; i < dim(); ++i) {
        c *= static_cast<unsigned __int128>(hi_[i] - lo_[i]) + 1;
        if (c > cap) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(c);
}

Int Box::max_dot(std::span<const Int> w) const {
    check_dims(w.size(), dim());
    Int s = 0;
    for (std::size_t i = 0; i < dim(); ++i)
        s = checked_add(s, checked_mul(w[i], w[i] >= 0 ? hi_[i] : lo_[i]));
    return s;
}

Int Box::min_dot(std::span<const Int> w) const {
    check_dims(w.size(), dim());
    Int s = 0;
    for (std::size_t i = 0; i < dim(); ++i)
        s = checked_add(s, checked_mul(w[i], w[i] >= 0 ? lo_[i] : hi_[i]));
    return s;
}

std::vector<Exponent> Box::points() const {
    std::vector<Exponent> out;
    if (dim() == 0) return {Exponent()};
    Exponent cur = lo_;
    while (true) {
        out.push_back(cur);
        std::size_t i = dim();
        while (i > 0) {
            --i;
            if (cur[i] < hi_[i]) {
                ++cur[i];
                break;
            }
            cur[i] = lo_[i];
            if (i == 0) return out;
        }
    }
}

std::string Box::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (i) s += ",";
        s += std::to_string(lo_[i]) + ".." + std::to_string(hi_[i]);
    }
    return s;
}

std::optional<Box> bounding_box(std::span<const Exponent> pts) {
    if (pts.empty()) return std::nullopt;
    Exponent lo = pts[0], hi = pts[0];
    for (const auto& p : pts) {
        check_dims(p.size(), lo.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    }
    return Box(lo, hi);
}

// ---------------------------------------------------------------- Cone

Cone make_cone(const TermOrder& order, Exponent offset, std::vector<Exponent> generators) {
    check_dims(offset.size(), order.dim());
    for (const auto& g : generators)
        if (!order.is_positive(g))
            throw Error(ErrorKind::NonPositiveSupportElement, "cone generator " + g.to_string() + " is not positive");
    std::sort(generators.begin(), generators.end(), [&](const Exponent& a, const Exponent& b) {
        auto c = order.compare(a, b);
        return c < 0;
    });
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    if (generators.size() > 2) {
        std::unordered_set<Exponent, ExponentHash> set(generators.begin(), generators.end());
        std::vector<Exponent> kept;
        for (const auto& g : generators) {
            bool redundant = false;
            for (const auto& h : generators) {
                if (order.compare(h, g) >= 0) break;
                if (set.count(g - h)) {
                    redundant = true;
                    break;
                }
            }
            if (!redundant) kept.push_back(g);
        }
        generators = std::move(kept);
    }
    return Cone{std::move(offset), std::move(generators)};
}

Cone cone_union(const TermOrder& order, const Cone& a, const Cone& b) {
    std::vector<Exponent> gens = a.generators;
    gens.insert(gens.end(), b.generators.begin(), b.generators.end());
    auto c = order.compare(a.offset, b.offset);
    if (c == 0) return make_cone(order, a.offset, std::move(gens));
    const Exponent& lo = c < 0 ? a.offset : b.offset;
    const Exponent& hi = c < 0 ? b.offset : a.offset;
    gens.push_back(hi - lo);
    return make_cone(order, lo, std::move(gens));
}

Cone cone_sum(const TermOrder& order, const Cone& a, const Cone& b) {
    std::vector<Exponent> gens = a.generators;
    gens.insert(gens.end(), b.generators.begin(), b.generators.end());
    return make_cone(order, a.offset + b.offset, std::move(gens));
}

Cone cone_shift(const Cone& c, const Exponent& v) { return Cone{c.offset + v, c.generators}; }

Cone cone_of_points(const TermOrder& order, std::span<const Exponent> pts) {
    if (pts.empty()) throw Error(ErrorKind::InvalidArgument, "cone of an empty point set");
    const Exponent* lo = &pts[0];
    for (const auto& p : pts)
        if (order.less(p, *lo)) lo = &p;
    std::vector<Exponent> gens;
    for (const auto& p : pts)
        if (p != *lo) gens.push_back(p - *lo);
    return make_cone(order, *lo, std::move(gens));
}

Cone cone_advance(const TermOrder& order, const Cone& c) {
    if (c.generators.empty()) throw Error(ErrorKind::InvalidArgument, "cannot advance a single-point cone");
    const Exponent& pmin = c.generators.front();  // make_cone keeps them sorted
    std::vector<Exponent> gens = c.generators;
    for (const auto& p : c.generators)
        if (p != pmin) gens.push_back(p - pmin);
    return make_cone(order, c.offset + pmin, std::move(gens));
}

// ---------------------------------------------------------------- exhaustion bound

Int power_exhaustion_bound(const TermOrder& order, std::span<const Exponent> support, const Box& box) {
    const std::size_t k = order.dim();
    check_dims(box.dim(), k);
    if (support.empty()) return 0;
    // Split the support by the first row of M on which it is nonzero.
    std::vector<std::vector<const Exponent*>> classes(k);
    for (const auto& s : support) {
        check_dims(s.size(), k);
        std::size_t j = 0;
        Int v = 0;
        for (; j < k; ++j) {
            v = dot(order.matrix()[j], s);
            if (v != 0) break;
        }
        if (j == k || v < 0)
            throw Error(ErrorKind::NonPositiveSupportElement, s.to_string() + " is not positive");
        classes[j].push_back(&s);
    }
    std::vector<Int> count(k, 0);
    Int total = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const auto& row = order.matrix()[j];
        // Lowest possible contribution of the earlier classes to row j.
        Int low = 0;
        for (std::size_t l = 0; l < j; ++l) {
            if (classes[l].empty()) continue;
            Int mn = 0;
            for (const auto* s : classes[l]) mn = std::min(mn, dot(row, *s));
            low = checked_add(low, checked_mul(count[l], mn));
        }
        Int avail = checked_sub(box.max_dot(row), low);
        if (avail < 0) return 0;  // nothing reachable lies in the box
        if (classes[j].empty()) continue;
        Int mj = std::numeric_limits<Int>::max();
        for (const auto* s : classes[j]) mj = std::min(mj, dot(row, *s));
        count[j] = avail / mj;
        total = checked_add(total, count[j]);
    }
    return total;
}

}  // namespace gps
