#include "gps/series.hpp"

#include <algorithm>
#include <numeric>

#include "gps/error.hpp"
#include "lattice.hpp"
#include "series_internal.hpp"

namespace gps {

using detail::PointMap;

AmbientPtr make_ambient(GroupSplit split, TermOrder order, Field field) {
    if (order.dim() != split.k())
        throw Error(ErrorKind::DimensionMismatch, "order matrix is " + std::to_string(order.dim()) +
                                                      "x" + std::to_string(order.dim()) + ", expected k = " +
                                                      std::to_string(split.k()));
    return std::make_shared<const Ambient>(Ambient{split, std::move(order), field});
}

namespace detail {

std::vector<Term> canonical_terms(const Ambient& amb, std::vector<Term> terms) {
    const Field& F = amb.field;
    for (auto& t : terms)
        if (t.exp.size() != amb.split.k())
            throw Error(ErrorKind::DimensionMismatch, "term exponent " + t.exp.to_string());
    bool sorted_unique = true;
    for (std::size_t i = 1; i < terms.size() && sorted_unique; ++i)
        sorted_unique = amb.order.less(terms[i - 1].exp, terms[i].exp);
    if (!sorted_unique) {
        PointMap<mpq_class> acc;
        acc.reserve(terms.size());
        for (auto& t : terms) {
            auto [it, fresh] = acc.try_emplace(std::move(t.exp), t.coeff);
            if (!fresh) it->second += t.coeff;
        }
        terms.clear();
        for (auto& [e, c] : acc) terms.push_back(Term{e, c});
        std::vector<std::pair<std::vector<Int>, std::size_t>> keys;
        keys.reserve(terms.size());
        for (std::size_t i = 0; i < terms.size(); ++i) keys.emplace_back(amb.order.key(terms[i].exp), i);
        std::sort(keys.begin(), keys.end());
        std::vector<Term> out;
        out.reserve(terms.size());
        for (auto& [key, i] : keys) out.push_back(std::move(terms[i]));
        terms = std::move(out);
    }
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!F.is_rational()) t.coeff = F.normalize(t.coeff);
        if (t.coeff != 0) out.push_back(std::move(t));
    }
    return out;
}

const Term* find_term(std::span<const Term> terms, const TermOrder& order, const Exponent& x) {
    auto it = std::lower_bound(terms.begin(), terms.end(), x,
                               [&](const Term& t, const Exponent& e) { return order.less(t.exp, e); });
    if (it != terms.end() && it->exp == x) return &*it;
    return nullptr;
}

SupportSet support_set(const Series& f) {
    if (f.is_exact() && f.terms().size() <= 256) {
        SupportSet s;
        for (const auto& t : f.terms()) s.offsets.push_back(t.exp);
        if (s.offsets.empty()) s.offsets.push_back(Exponent(f.k()));
        return s;
    }
    return support_of(f.cone());
}

Box effective_box(const Series& f) {
    if (f.box()) return *f.box();
    std::vector<Exponent> pts;
    for (const auto& t : f.terms()) pts.push_back(t.exp);
    auto b = bounding_box(pts);
    return b ? *b : Box::point(Exponent(f.k()));
}

std::vector<Term> convolve(const Series& f, const Series& g, const std::optional<Box>& target) {
    const Field& F = f.field();
    PointMap<mpq_class> acc;
    for (const auto& a : f.terms()) {
        for (const auto& b : g.terms()) {
            Exponent s = a.exp + b.exp;
            if (target && !target->contains(s)) continue;
            auto [it, fresh] = acc.try_emplace(std::move(s), a.coeff * b.coeff);
            if (!fresh) it->second += a.coeff * b.coeff;
        }
    }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [e, c] : acc) out.push_back(Term{e, F.is_rational() ? c : F.normalize(c)});
    return out;
}

std::vector<Exponent> uncertain_products(const Series& f, const Series& g, const Box& target, bool first_only) {
    const TermOrder& order = f.order();
    std::vector<Exponent> bad;
    const Series* sides[2][2] = {{&f, &g}, {&g, &f}};
    for (auto& side : sides) {
        const Series& x = *side[0];
        const Series& y = *side[1];
        if (x.is_exact()) continue;
        SupportSet A = support_set(x), B = support_set(y);
        for (const auto& a : reaching_points(order, A, B, target)) {
            if (x.box()->contains(a)) continue;
            if (first_only) return {a};
            for (const auto& b : partners(order, a, B, target)) bad.push_back(a + b);
        }
    }
    return bad;
}

// Shrinks `hull` until it avoids every point of `bad`, preferring boxes that
// keep `anchor` and then the largest lattice count.
std::optional<Box> avoid_points(Box hull, std::vector<Exponent> bad, const Exponent& anchor) {
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    std::optional<Box> r = hull;
    while (true) {
        const Exponent* v = nullptr;
        for (const auto& p : bad)
            if (r->contains(p)) {
                v = &p;
                break;
            }
        if (!v) return r;
        std::optional<Box> best;
        std::pair<bool, std::uint64_t> best_score{false, 0};
        for (std::size_t i = 0; i < r->dim(); ++i) {
            for (int side = 0; side < 2; ++side) {
                Exponent lo = r->lo(), hi = r->hi();
                if (side == 0) hi[i] = (*v)[i] - 1;
                else lo[i] = (*v)[i] + 1;
                if (lo[i] > hi[i]) continue;
                Box cand(lo, hi);
                std::pair<bool, std::uint64_t> score{cand.contains(anchor), cand.lattice_count()};
                if (!best || score > best_score) {
                    best = cand;
                    best_score = score;
                }
            }
        }
        if (!best) return std::nullopt;
        r = best;
    }
}

}  // namespace detail

using namespace detail;

// ---------------------------------------------------------------- Series

Series Series::exact(AmbientPtr amb, std::vector<Term> terms) {
    auto d = std::make_shared<Data>();
    d->terms = canonical_terms(*amb, std::move(terms));
    d->amb = std::move(amb);
    return Series(std::move(d));
}

Series Series::truncated(AmbientPtr amb, std::vector<Term> terms, Box box, Cone cone) {
    const std::size_t k = amb->split.k();
    if (box.dim() != k || cone.offset.size() != k)
        throw Error(ErrorKind::DimensionMismatch, "box or cone of the wrong dimension");
    std::vector<Term> kept;
    kept.reserve(terms.size());
    for (auto& t : terms)
        if (t.exp.size() == k && box.contains(t.exp)) kept.push_back(std::move(t));
    kept = canonical_terms(*amb, std::move(kept));
    Cone c = make_cone(amb->order, std::move(cone.offset), std::move(cone.generators));
    // Advance the cone offset past certified zeros.
    for (int guard = 0; guard < 4096 && box.contains(c.offset); ++guard) {
        if (find_term(kept, amb->order, c.offset)) break;
        if (c.generators.empty()) return Series::zero(std::move(amb));
        c = cone_advance(amb->order, c);
    }
    auto d = std::make_shared<Data>();
    d->amb = std::move(amb);
    d->terms = std::move(kept);
    d->box = std::move(box);
    d->cone = std::move(c);
    return Series(std::move(d));
}

Series Series::zero(AmbientPtr amb) { return exact(std::move(amb), {}); }

Series Series::monomial(AmbientPtr amb, const mpq_class& a, Exponent g) {
    std::vector<Term> t;
    t.push_back(Term{std::move(g), a});
    return exact(std::move(amb), std::move(t));
}

Series Series::constant(AmbientPtr amb, const mpq_class& a) {
    Exponent z(amb->split.k());
    return monomial(std::move(amb), a, std::move(z));
}

Series Series::variable(AmbientPtr amb, std::size_t i) {
    Exponent u = amb->split.variable(i);
    return monomial(std::move(amb), 1, std::move(u));
}

const Cone& Series::cone() const {
    if (d_->cone) return *d_->cone;
    std::call_once(d_->exact_cone_once, [this] {
        if (d_->terms.empty()) {
            d_->exact_cone = Cone{Exponent(k()), {}};
            return;
        }
        std::vector<Exponent> pts;
        pts.reserve(d_->terms.size());
        for (const auto& t : d_->terms) pts.push_back(t.exp);
        d_->exact_cone = compact_cone(order(), pts, {});
    });
    return *d_->exact_cone;
}

mpq_class Series::stored(const Exponent& x) const {
    const Term* t = find_term(d_->terms, order(), x);
    return t ? t->coeff : mpq_class(0);
}

Scalar Series::coefficient_at(const Exponent& x) const {
    if (x.size() != k()) throw Error(ErrorKind::DimensionMismatch, "exponent " + x.to_string());
    if (d_->box && !d_->box->contains(x))
        throw Error(ErrorKind::OutsideBox, x.to_string() + " outside box " + d_->box->to_string());
    return Scalar(field(), stored(x));
}

std::optional<Series::Leading> Series::leading() const {
    if (is_exact()) {
        if (d_->terms.empty()) return std::nullopt;
        return Leading{d_->terms.front().coeff, d_->terms.front().exp};
    }
    const Exponent& o = d_->cone->offset;
    if (!d_->box->contains(o)) return std::nullopt;
    const Term* t = find_term(d_->terms, order(), o);
    if (!t) return std::nullopt;
    return Leading{t->coeff, o};
}

bool Series::operator==(const Series& o) const {
    if (!(ambient() == o.ambient()) || d_->box != o.d_->box || d_->terms != o.d_->terms) return false;
    return is_exact() || *d_->cone == *o.d_->cone;
}

std::string Series::to_string() const {
    std::string s;
    for (const auto& t : d_->terms) {
        if (!s.empty()) s += " + ";
        s += t.coeff.get_str() + "*e^" + t.exp.to_string();
    }
    if (s.empty()) s = "0";
    s += d_->box ? " [box " + d_->box->to_string() + "]" : " [everywhere]";
    return s;
}

// ---------------------------------------------------------------- HSeries

HSeries::HSeries(Series s) : s_(std::move(s)) {
    const auto& sp = s_.ambient().split;
    for (const auto& t : s_.terms())
        for (std::size_t i = sp.m; i < sp.k(); ++i)
            if (t.exp[i] != 0)
                throw Error(ErrorKind::InvalidArgument, "exponent " + t.exp.to_string() + " is not in H");
}

Scalar HSeries::at(const Exponent& h) const {
    const auto& sp = s_.ambient().split;
    if (h.size() != sp.m) throw Error(ErrorKind::DimensionMismatch, "H exponent " + h.to_string());
    Exponent x(sp.k());
    for (std::size_t i = 0; i < sp.m; ++i) x[i] = h[i];
    return s_.coefficient_at(x);
}

Scalar HSeries::constant_term() const { return at(Exponent(s_.ambient().split.m)); }

// ---------------------------------------------------------------- operations

void require_same_ambient(const Series& f, const Series& g) {
    if (f.ambient_ptr() != g.ambient_ptr() && !(f.ambient() == g.ambient()))
        throw Error(ErrorKind::IncompatibleAmbient, "series over different ambients");
}

Series monomial(AmbientPtr amb, const Scalar& a, Exponent g) {
    if (!(a.field() == amb->field)) throw Error(ErrorKind::IncompatibleAmbient, "scalar field differs");
    return Series::monomial(std::move(amb), a.value(), std::move(g));
}

Series add(const Series& f, const Series& g) {
    require_same_ambient(f, g);
    std::vector<Term> terms(f.terms().begin(), f.terms().end());
    terms.insert(terms.end(), g.terms().begin(), g.terms().end());
    if (f.is_exact() && g.is_exact()) return Series::exact(f.ambient_ptr(), std::move(terms));
    std::optional<Box> box;
    if (f.is_exact()) box = *g.box();
    else if (g.is_exact()) box = *f.box();
    else {
        box = f.box()->intersect(*g.box());
        if (!box) throw Error(ErrorKind::BoxUnderflow, "sum of series with disjoint boxes");
    }
    Cone c;
    if (f.is_zero()) c = g.cone();
    else if (g.is_zero()) c = f.cone();
    else c = cone_union(f.order(), f.cone(), g.cone());
    return Series::truncated(f.ambient_ptr(), std::move(terms), *box, std::move(c));
}

Series neg(const Series& f) { return scale(f, mpq_class(-1)); }

Series sub(const Series& f, const Series& g) { return add(f, neg(g)); }

Series scale(const Series& f, const Scalar& c) {
    if (!(c.field() == f.field())) throw Error(ErrorKind::IncompatibleAmbient, "scalar field differs");
    return scale(f, c.value());
}

Series scale(const Series& f, const mpq_class& c) {
    if (c == 0) return Series::zero(f.ambient_ptr());
    std::vector<Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& t : f.terms()) terms.push_back(Term{t.exp, t.coeff * c});
    if (f.is_exact()) return Series::exact(f.ambient_ptr(), std::move(terms));
    return Series::truncated(f.ambient_ptr(), std::move(terms), *f.box(), f.cone());
}

Series shift(const Series& f, const Exponent& v) {
    std::vector<Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& t : f.terms()) terms.push_back(Term{t.exp + v, t.coeff});
    if (f.is_exact()) return Series::exact(f.ambient_ptr(), std::move(terms));
    return Series::truncated(f.ambient_ptr(), std::move(terms), f.box()->shifted(v), cone_shift(f.cone(), v));
}

Series euler(const Series& f, std::span<const Int> lambda) {
    std::vector<Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& t : f.terms()) terms.push_back(Term{t.exp, t.coeff * static_cast<long>(dot(lambda, t.exp))});
    if (f.is_exact()) return Series::exact(f.ambient_ptr(), std::move(terms));
    return Series::truncated(f.ambient_ptr(), std::move(terms), *f.box(), f.cone());
}

Series mul(const Series& f, const Series& g) {
    require_same_ambient(f, g);
    if (f.is_zero() || g.is_zero()) return Series::zero(f.ambient_ptr());
    if (f.is_exact() && g.is_exact()) return Series::exact(f.ambient_ptr(), convolve(f, g, std::nullopt));
    Box hull = effective_box(f) + effective_box(g);
    auto bad = uncertain_products(f, g, hull, false);
    auto box = avoid_points(hull, std::move(bad), f.cone().offset + g.cone().offset);
    if (!box) throw Error(ErrorKind::BoxUnderflow, "operand boxes certify no product coefficient");
    return Series::truncated(f.ambient_ptr(), convolve(f, g, *box), *box,
                             cone_sum(f.order(), f.cone(), g.cone()));
}

Series mul(const Series& f, const Series& g, const Box& target) {
    require_same_ambient(f, g);
    if (target.dim() != f.k()) throw Error(ErrorKind::DimensionMismatch, "target box dimension");
    if (f.is_zero() || g.is_zero()) return Series::zero(f.ambient_ptr());
    if (f.is_exact() && g.is_exact()) return Series::exact(f.ambient_ptr(), convolve(f, g, std::nullopt));
    auto bad = uncertain_products(f, g, target, true);
    if (!bad.empty())
        throw Error(ErrorKind::BoxUnderflow, "product not certified on " + target.to_string() +
                                                 ": operand exponent " + bad.front().to_string() +
                                                 " lies outside its box");
    return Series::truncated(f.ambient_ptr(), convolve(f, g, target), target,
                             cone_sum(f.order(), f.cone(), g.cone()));
}

Series power(const Series& f, unsigned k) {
    Series result = Series::constant(f.ambient_ptr(), 1);
    Series base = f;
    while (k) {
        if (k & 1u) result = mul(result, base);
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return result;
}

Factorization factorize(const Series& f) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroSeries, "factorization of zero");
    auto lead = f.leading();
    if (!lead)
        throw Error(ErrorKind::LeadingTermUncertain,
                    "box " + (f.box() ? f.box()->to_string() : std::string()) +
                        " does not certify the minimum of the support (cone offset " +
                        f.cone().offset.to_string() + ")");
    const Field& F = f.field();
    mpq_class ainv = F.inv(lead->coeff);
    std::vector<Term> tail;
    for (const auto& t : f.terms())
        if (t.exp != lead->exp) tail.push_back(Term{t.exp - lead->exp, F.mul(t.coeff, ainv)});
    Series ts = f.is_exact() ? Series::exact(f.ambient_ptr(), std::move(tail))
                             : Series::truncated(f.ambient_ptr(), std::move(tail), f.box()->shifted(-lead->exp),
                                                 Cone{Exponent(f.k()), f.cone().generators});
    return Factorization{Scalar(F, lead->coeff), lead->exp, std::move(ts)};
}

Series invert_monomial(const Series& f) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroSeries, "inverse of zero");
    if (!f.is_exact() || f.terms().size() != 1)
        throw Error(ErrorKind::InvalidArgument, "not a monomial");
    const auto& t = f.terms().front();
    return Series::monomial(f.ambient_ptr(), f.field().inv(t.coeff), -t.exp);
}

namespace detail {

std::vector<mpq_class> window_values(const Series& f, const Window& w, const Exponent& shift_by, bool skip_zero) {
    std::vector<mpq_class> v(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (skip_zero && w.pts[i].is_zero()) continue;
        v[i] = certified_coefficient(f, w.pts[i] + shift_by);
    }
    return v;
}

std::vector<mpq_class> window_mul(const Window& w, const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                                  const Field& F) {
    std::vector<std::size_t> nb;
    for (std::size_t j = 0; j < b.size(); ++j)
        if (b[j] != 0) nb.push_back(j);
    std::vector<mpq_class> out(w.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j : nb) {
            const std::size_t* idx = w.find(w.pts[i] + w.pts[j]);
            if (idx) out[*idx] += a[i] * b[j];
        }
    }
    if (!F.is_rational())
        for (auto& x : out) x = F.normalize(x);
    return out;
}

}  // namespace detail

namespace detail {

Series invert_values(const Series& values, const mpq_class& lead, const Exponent& g, const std::vector<Exponent>& gens,
                     const Box& target, const Window& z) {
    const Field& F = values.field();
    const std::size_t k = values.k();
    Box shifted = target.shifted(g);
    std::vector<mpq_class> t(z.size());
    mpq_class ainv = F.inv(lead);
    for (std::size_t i = 0; i < z.size(); ++i)
        if (!z.pts[i].is_zero()) t[i] = F.neg(F.mul(values.stored(z.pts[i] + g), ainv));
    Int imax = power_exhaustion_bound(values.order(), gens, shifted);
    std::vector<mpq_class> acc(z.size()), cur(z.size());
    if (const std::size_t* zero = z.find(Exponent(k))) {
        acc[*zero] = 1;
        cur[*zero] = 1;
    }
    for (Int i = 1; i <= imax; ++i) {
        cur = window_mul(z, cur, t, F);
        if (std::all_of(cur.begin(), cur.end(), [](const mpq_class& x) { return x == 0; })) break;
        for (std::size_t j = 0; j < z.size(); ++j) acc[j] += cur[j];
    }
    std::vector<Term> terms;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (acc[i] != 0 && shifted.contains(z.pts[i])) terms.push_back(Term{z.pts[i] - g, F.mul(acc[i], ainv)});
    return Series::truncated(values.ambient_ptr(), std::move(terms), target, Cone{-g, gens});
}

}  // namespace detail

Series invert(const Series& f, const Box& target) {
    if (target.dim() != f.k()) throw Error(ErrorKind::DimensionMismatch, "target box dimension");
    Factorization fac = factorize(f);
    if (f.is_exact() && fac.tail.is_zero()) return invert_monomial(f);
    const Exponent& g = fac.exp;
    const auto& gens = f.cone().generators;
    Window z = reach_window(f.order(), gens, target.shifted(g), f.k());
    for (const auto& p : z.pts)
        if (!f.is_exact() && !p.is_zero() && !f.box()->contains(p + g))
            throw Error(ErrorKind::BoxUnderflow, "inverse on " + target.to_string() + " needs the coefficient at " +
                                                     (p + g).to_string() + ", outside box " + f.box()->to_string());
    return invert_values(f, fac.lead.value(), g, gens, target, z);
}

Series substitute(const CoefficientFn& c, const Series& f, const Box& target) {
    if (target.dim() != f.k()) throw Error(ErrorKind::DimensionMismatch, "target box dimension");
    const Field& F = f.field();
    auto coeff = [&](std::size_t i) {
        Scalar s = c(i);
        if (!(s.field() == F)) throw Error(ErrorKind::IncompatibleAmbient, "coefficient field differs");
        return s.value();
    };
    if (f.is_zero()) return Series::constant(f.ambient_ptr(), coeff(0));
    auto lead = f.leading();
    if (!lead) throw Error(ErrorKind::LeadingTermUncertain, "box does not certify the leading term");
    if (!f.order().is_positive(lead->exp))
        throw Error(ErrorKind::NotPositive, "leading exponent " + lead->exp.to_string() + " is not positive");
    std::vector<Exponent> gens = f.cone().generators;
    gens.push_back(lead->exp);
    Exponent zero(f.k());
    Window z = reach_window(f.order(), gens, target, f.k());
    std::vector<mpq_class> fv = window_values(f, z, zero, true);
    Int imax = power_exhaustion_bound(f.order(), gens, target);
    std::vector<mpq_class> acc(z.size()), cur(z.size());
    if (const std::size_t* iz = z.find(zero)) {
        cur[*iz] = 1;
        acc[*iz] = coeff(0);
    }
    for (Int i = 1; i <= imax; ++i) {
        cur = window_mul(z, cur, fv, F);
        if (std::all_of(cur.begin(), cur.end(), [](const mpq_class& x) { return x == 0; })) break;
        mpq_class ci = coeff(static_cast<std::size_t>(i));
        if (ci == 0) continue;
        for (std::size_t j = 0; j < z.size(); ++j)
            if (cur[j] != 0) acc[j] += ci * cur[j];
    }
    std::vector<Term> terms;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (acc[i] != 0 && target.contains(z.pts[i])) terms.push_back(Term{z.pts[i], acc[i]});
    return Series::truncated(f.ambient_ptr(), std::move(terms), target, Cone{zero, gens});
}

Series substitute(const std::vector<Scalar>& c, const Series& f, const Box& target) {
    const Field F = f.field();
    return substitute([&](std::size_t i) { return i < c.size() ? c[i] : Scalar(F, 0); }, f, target);
}

Series log1p(const Series& f, const Box& target) {
    const Field F = f.field();
    if (!F.is_rational())
        throw Error(ErrorKind::PositiveCharacteristic, "log1p needs characteristic zero, field is " + F.to_string());
    return substitute(
        [&](std::size_t l) {
            if (l == 0) return Scalar(F, 0);
            mpq_class v(1, static_cast<unsigned long>(l));
            return Scalar(F, l % 2 ? v : mpq_class(-v));
        },
        f, target);
}

Scalar coefficient_at(const Series& f, const Exponent& x) { return f.coefficient_at(x); }

HSeries h_coefficient_at(const Series& f, std::span<const Int> j) {
    const auto& sp = f.ambient().split;
    if (j.size() != sp.n) throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(sp.n) + " exponents");
    Exponent shift_v(sp.k());
    for (std::size_t i = 0; i < sp.n; ++i) shift_v[sp.m + i] = j[i];
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
        bool match = true;
        for (std::size_t i = 0; i < sp.n && match; ++i) match = t.exp[sp.m + i] == j[i];
        if (match) terms.push_back(Term{t.exp - shift_v, t.coeff});
    }
    if (f.is_exact()) return HSeries(Series::exact(f.ambient_ptr(), std::move(terms)));
    Exponent lo = f.box()->lo(), hi = f.box()->hi();
    for (std::size_t i = 0; i < sp.n; ++i) {
        if (j[i] < lo[sp.m + i] || j[i] > hi[sp.m + i])
            throw Error(ErrorKind::OutsideBox, "monomial exponent slice outside box " + f.box()->to_string());
        lo[sp.m + i] = hi[sp.m + i] = 0;
    }
    return HSeries(Series::truncated(f.ambient_ptr(), std::move(terms), Box(lo, hi), cone_shift(f.cone(), -shift_v)));
}

Series truncate(const Series& f, const Box& smaller) {
    if (smaller.dim() != f.k()) throw Error(ErrorKind::DimensionMismatch, "box dimension");
    if (f.box() && !f.box()->contains(smaller))
        throw Error(ErrorKind::BoxNotContained, smaller.to_string() + " not inside " + f.box()->to_string());
    std::vector<Term> terms(f.terms().begin(), f.terms().end());
    return Series::truncated(f.ambient_ptr(), std::move(terms), smaller, f.cone());
}

Series restrict_to(const Series& f, const Box& target) {
    if (f.is_exact() || f.box()->contains(target)) return truncate(f, target);
    const Cone& c = f.cone();
    Bounds b = target_bounds(monotone_functionals(f.order(), c.generators), target, {});
    for (const auto& p : enumerate(std::span<const Exponent>(&c.offset, 1), c.generators, b))
        if (target.contains(p) && !f.box()->contains(p))
            throw Error(ErrorKind::OutsideBox, "coefficient at " + p.to_string() + " is not certified by box " +
                                                   f.box()->to_string());
    std::vector<Term> terms;
    for (const auto& t : f.terms())
        if (target.contains(t.exp)) terms.push_back(t);
    return Series::truncated(f.ambient_ptr(), std::move(terms), target, c);
}

mpq_class certified_coefficient(const Series& f, const Exponent& x) {
    if (f.is_exact() || f.box()->contains(x)) return f.stored(x);
    ConeMembership member(f.order(), f.cone());
    if (member(x))
        throw Error(ErrorKind::OutsideBox, "coefficient at " + x.to_string() + " is not certified by box " +
                                               f.box()->to_string());
    return 0;
}

bool equal_on(const Series& f, const Series& g, const Box& region) {
    require_same_ambient(f, g);
    for (const Series* s : {&f, &g})
        if (s->box() && !s->box()->contains(region))
            throw Error(ErrorKind::BoxNotContained, region.to_string() + " not inside " + s->box()->to_string());
    for (const auto& t : f.terms())
        if (region.contains(t.exp) && g.stored(t.exp) != t.coeff) return false;
    for (const auto& t : g.terms())
        if (region.contains(t.exp) && f.stored(t.exp) != t.coeff) return false;
    return true;
}

std::optional<Box> common_box(const Series& f, const Series& g) {
    if (f.is_exact() && g.is_exact()) return std::nullopt;
    if (f.is_exact()) return g.box();
    if (g.is_exact()) return f.box();
    auto b = f.box()->intersect(*g.box());
    if (!b) throw Error(ErrorKind::BoxUnderflow, "boxes are disjoint");
    return b;
}

}  // namespace gps
