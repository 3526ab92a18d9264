#include "gps/calculus.hpp"

#include "determinant.hpp"
#include "gps/error.hpp"
#include "series_internal.hpp"

namespace gps {

namespace {

Exponent all_variables(const GroupSplit& sp) {
    Exponent v(sp.k());
    for (std::size_t i = 0; i < sp.n; ++i) v[sp.m + i] = 1;
    return v;
}

void check_index(const GroupSplit& sp, std::size_t i) {
    if (i >= sp.n)
        throw Error(ErrorKind::BadVariableIndex,
                    "variable index " + std::to_string(i) + " out of range for n = " + std::to_string(sp.n));
}

std::vector<Int> unit_functional(const GroupSplit& sp, std::size_t i) {
    std::vector<Int> e(sp.k(), 0);
    e[sp.m + i] = 1;
    return e;
}

const GroupSplit& split_of(std::span<const Series> fs) {
    if (fs.empty()) throw Error(ErrorKind::DimensionMismatch, "no series given");
    for (const auto& f : fs) require_same_ambient(fs.front(), f);
    const GroupSplit& sp = fs.front().ambient().split;
    if (fs.size() != sp.n)
        throw Error(ErrorKind::DimensionMismatch,
                    "expected " + std::to_string(sp.n) + " series, got " + std::to_string(fs.size()));
    return sp;
}

Series series_det(std::size_t n, const std::vector<std::vector<Series>>& m, const AmbientPtr& amb) {
    auto d = detail::laplace_det<Series>(
        n,
        [&](std::size_t r, std::size_t c) -> std::optional<Series> {
            if (m[r][c].is_zero()) return std::nullopt;
            return m[r][c];
        },
        [](const Series& a, const Series& b) { return mul(a, b); },
        [](const Series& a, const Series& b) { return add(a, b); }, [](const Series& a) { return neg(a); });
    return d ? *d : Series::zero(amb);
}

Lazy lazy_det(std::size_t n, const std::vector<std::vector<Lazy>>& m, const AmbientPtr& amb) {
    auto d = detail::laplace_det<Lazy>(
        n,
        [&](std::size_t r, std::size_t c) -> std::optional<Lazy> {
            if (m[r][c].is_zero()) return std::nullopt;
            return m[r][c];
        },
        [](const Lazy& a, const Lazy& b) { return a * b; }, [](const Lazy& a, const Lazy& b) { return a + b; },
        [](const Lazy& a) { return -a; });
    return d ? *d : Lazy(Series::zero(amb));
}

}  // namespace

VariableSet VariableSet::standard(const GroupSplit& split) {
    std::vector<Exponent> ys;
    for (std::size_t i = 0; i < split.n; ++i) ys.push_back(split.variable(i));
    return VariableSet(split, std::move(ys));
}

VariableSet::VariableSet(const GroupSplit& split, std::vector<Exponent> ys) : split_(split), ys_(std::move(ys)) {
    const std::size_t n = split.n, m = split.m;
    if (ys_.size() != n) throw Error(ErrorKind::NotVariables, "need exactly n exponents");
    IntMatrix s(n, std::vector<Int>(n));
    for (std::size_t l = 0; l < n; ++l) {
        if (ys_[l].size() != split.k()) throw Error(ErrorKind::DimensionMismatch, "exponent " + ys_[l].to_string());
        for (std::size_t j = 0; j < n; ++j) s[l][j] = ys_[l][m + j];
    }
    mpz_class det = determinant(s);
    if (det != 1 && det != -1)
        throw Error(ErrorKind::NotVariables, "variable parts have determinant " + det.get_str() + ", not +-1");
    // lambda_l = row l of (S^T)^{-1}, by Gauss-Jordan over Q.
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a[r][c] = s[c][r];
        a[r][n + r] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (a[piv][col] == 0) ++piv;
        std::swap(a[piv], a[col]);
        mpq_class p = a[col][col];
        for (auto& x : a[col]) x /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            mpq_class f = a[r][col];
            for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    for (std::size_t l = 0; l < n; ++l) {
        std::vector<Int> lam(split.k(), 0);
        for (std::size_t j = 0; j < n; ++j) lam[m + j] = a[l][n + j].get_num().get_si();
        lambda_.push_back(std::move(lam));
    }
}

Int VariableSet::coordinate(std::size_t l, const Exponent& x) const { return dot(lambda_.at(l), x); }

Series VariableSet::monomial(const AmbientPtr& amb, std::size_t l) const {
    return Series::monomial(amb, 1, ys_.at(l));
}

Series partial(const Series& f, std::size_t i) {
    const auto& sp = f.ambient().split;
    check_index(sp, i);
    return shift(euler(f, unit_functional(sp, i)), -sp.variable(i));
}

Series partial(const Series& f, std::size_t i, const VariableSet& vars) {
    check_index(f.ambient().split, i);
    return shift(euler(f, vars.functional(i)), -vars.exponent(i));
}

Lazy partial(const Lazy& f, std::size_t i) {
    const auto& sp = f.ambient_ptr()->split;
    check_index(sp, i);
    return shift(euler(f, unit_functional(sp, i)), -sp.variable(i));
}

OneForm differential(const Series& f) {
    OneForm w;
    for (std::size_t i = 0; i < f.ambient().split.n; ++i) w.components.push_back(partial(f, i));
    return w;
}

Box default_window(std::span<const Series> fs) {
    std::optional<Box> w;
    for (const auto& f : fs) {
        auto l = f.leading();
        if (!l) {
            if (f.is_zero()) throw Error(ErrorKind::ZeroSeries, "zero series");
            throw Error(ErrorKind::LeadingTermUncertain, "leading term of " + f.to_string() + " not certified");
        }
        Box b = detail::effective_box(f).shifted(-l->exp).hull(Exponent(f.k()));
        w = w ? w->hull(b) : b;
    }
    return *w;
}

OneForm dlog(const Series& f, std::optional<Box> target) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroSeries, "dlog of zero");
    const auto& sp = f.ambient().split;
    if (!target) {
        Box w = default_window(std::span<const Series>(&f, 1));
        Exponent lo = w.lo();
        for (std::size_t i = 0; i < sp.n; ++i) lo[sp.m + i] -= 1;
        target = Box(lo, w.hi());
    }
    Lazy lf(f);
    Lazy inv = inverse(lf);
    OneForm w;
    for (std::size_t i = 0; i < sp.n; ++i) w.components.push_back((partial(lf, i) * inv).evaluate(*target));
    return w;
}

OneForm add(const OneForm& a, const OneForm& b) {
    if (a.components.size() != b.components.size()) throw Error(ErrorKind::DimensionMismatch, "one-form sizes");
    OneForm w;
    for (std::size_t i = 0; i < a.components.size(); ++i) w.components.push_back(add(a.components[i], b.components[i]));
    return w;
}

NForm to_mode(const NForm& w, BasisMode mode) {
    if (w.mode == mode) return w;
    Exponent x = all_variables(w.coeff.ambient().split);
    // c dX = (c X) dlog X
    return NForm{shift(w.coeff, mode == BasisMode::dlogX ? x : -x), mode};
}

NForm wedge(std::span<const OneForm> forms, BasisMode mode) {
    if (forms.empty() || forms.front().components.empty()) throw Error(ErrorKind::DimensionMismatch, "no forms");
    const Series& ref = forms.front().components.front();
    const std::size_t n = ref.ambient().split.n;
    if (forms.size() != n) throw Error(ErrorKind::DimensionMismatch, "wedge needs exactly n one-forms");
    std::vector<std::vector<Series>> m;
    for (const auto& f : forms) {
        if (f.components.size() != n) throw Error(ErrorKind::DimensionMismatch, "one-form with wrong component count");
        for (const auto& c : f.components) require_same_ambient(ref, c);
        m.push_back(f.components);
    }
    return to_mode(NForm{series_det(n, m, ref.ambient_ptr()), BasisMode::dX}, mode);
}

Series jacobian(std::span<const Series> fs) {
    return jacobian(fs, VariableSet::standard(split_of(fs)));
}

Series jacobian(std::span<const Series> fs, const VariableSet& vars) {
    const GroupSplit& sp = split_of(fs);
    std::vector<std::vector<Series>> m(sp.n);
    for (std::size_t i = 0; i < sp.n; ++i)
        for (std::size_t j = 0; j < sp.n; ++j) m[i].push_back(partial(fs[i], j, vars));
    return series_det(sp.n, m, fs.front().ambient_ptr());
}

Lazy dlog_wedge_lazy(std::span<const Lazy> fs) {
    if (fs.empty()) throw Error(ErrorKind::DimensionMismatch, "no series given");
    const AmbientPtr& amb = fs.front().ambient_ptr();
    const auto& sp = amb->split;
    if (fs.size() != sp.n) throw Error(ErrorKind::DimensionMismatch, "dlog wedge needs exactly n series");
    std::vector<std::vector<Lazy>> m(sp.n);
    for (std::size_t l = 0; l < sp.n; ++l) {
        if (fs[l].is_zero()) throw Error(ErrorKind::ZeroSeries, "dlog of zero");
        Lazy inv = inverse(fs[l]);
        for (std::size_t j = 0; j < sp.n; ++j) m[l].push_back(euler(fs[l], unit_functional(sp, j)) * inv);
    }
    return lazy_det(sp.n, m, amb);
}

NForm dlog_wedge(std::span<const Series> fs, std::optional<Box> window) {
    split_of(fs);
    for (const auto& f : fs)
        if (f.is_zero()) throw Error(ErrorKind::ZeroSeries, "dlog of zero");
    if (!window) window = default_window(fs);
    std::vector<Lazy> lz(fs.begin(), fs.end());
    return NForm{dlog_wedge_lazy(lz).evaluate(*window), BasisMode::dlogX};
}

NForm power_wedge(std::span<const Series> fs, std::span<const long> powers, std::optional<Box> window) {
    split_of(fs);
    if (powers.size() != fs.size()) throw Error(ErrorKind::DimensionMismatch, "one power per series");
    for (const auto& f : fs)
        if (f.is_zero()) throw Error(ErrorKind::ZeroSeries, "zero series in a wedge of dlog forms");
    if (!window) window = default_window(fs);
    std::vector<Lazy> lz(fs.begin(), fs.end());
    // df/f^i = f^{1-i} dlog f
    Lazy coeff = dlog_wedge_lazy(lz);
    for (std::size_t l = 0; l < fs.size(); ++l) coeff = power(lz[l], 1 - powers[l]) * coeff;
    return NForm{coeff.evaluate(*window), BasisMode::dlogX};
}

HSeries form_h_coefficient(const NForm& w, std::span<const Int> j, BasisMode mode) {
    return h_coefficient_at(to_mode(w, mode).coeff, j);
}

}  // namespace gps
