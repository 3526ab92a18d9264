#include "gps/residues.hpp"

#include <algorithm>

#include "gps/error.hpp"
#include "lattice.hpp"
#include "series_internal.hpp"

namespace gps {

namespace {

/// The H window as a box of Z^k with zero variable coordinates.
Box slice_box(const GroupSplit& sp, const std::optional<Box>& h_window) {
    Exponent lo(sp.k()), hi(sp.k());
    if (h_window) {
        if (h_window->dim() != sp.m)
            throw Error(ErrorKind::DimensionMismatch, "H window must have " + std::to_string(sp.m) + " coordinates");
        for (std::size_t j = 0; j < sp.m; ++j) {
            lo[j] = h_window->lo()[j];
            hi[j] = h_window->hi()[j];
        }
    }
    return Box(lo, hi);
}

mpq_class field_power(const Field& F, const mpq_class& a, Int e) {
    mpq_class base = e < 0 ? F.inv(a) : a;
    mpq_class r = 1;
    for (Int i = 0; i < (e < 0 ? -e : e); ++i) r = F.mul(r, base);
    return r;
}

}  // namespace

std::vector<Int> multiplicities(const Series& f) {
    Factorization fac = factorize(f);
    const auto& sp = f.ambient().split;
    auto c = fac.exp.coords();
    return std::vector<Int>(c.begin() + static_cast<std::ptrdiff_t>(sp.m), c.end());
}

ParameterSystem check_parameters(std::span<const Lazy> fs) {
    if (fs.empty()) throw Error(ErrorKind::DimensionMismatch, "empty parameter system");
    const AmbientPtr& amb = fs.front().ambient_ptr();
    const auto& sp = amb->split;
    if (fs.size() != sp.n)
        throw Error(ErrorKind::DimensionMismatch,
                    "a parameter system has n = " + std::to_string(sp.n) + " members, got " + std::to_string(fs.size()));
    ParameterSystem p;
    for (const auto& f : fs) {
        if (f.ambient_ptr() != amb && !(*f.ambient_ptr() == *amb))
            throw Error(ErrorKind::IncompatibleAmbient, "parameters over different ambients");
        auto l = f.leading();
        if (!l) throw Error(ErrorKind::ZeroSeries, "zero member in a parameter system");
        p.members_.push_back(f);
        p.lead_coeff_.push_back(l->coeff);
        p.lead_exp_.push_back(l->exp);
        auto c = l->exp.coords();
        p.mult_.emplace_back(c.begin() + static_cast<std::ptrdiff_t>(sp.m), c.end());
    }
    p.det_ = determinant(p.mult_);
    if (amb->field.from_mpz(p.det_) == 0)
        throw Error(ErrorKind::NotParameters, "multiplicity determinant " + p.det_.get_str() + " vanishes in " +
                                                  amb->field.to_string());
    return p;
}

ParameterSystem check_parameters(std::span<const Series> fs) {
    std::vector<Lazy> lz(fs.begin(), fs.end());
    return check_parameters(lz);
}

bool is_regular(const ParameterSystem& p) { return p.det() == 1 || p.det() == -1; }

Series normalized_coefficient(const GeneralizedFraction& fr) {
    const auto& amb = fr.denominator.ambient_ptr();
    require_same_ambient(fr.numerator.coeff, Series::zero(amb));
    Series c = to_mode(fr.numerator, BasisMode::dlogX).coeff;
    return scale(c, amb->field.inv(amb->field.from_mpz(fr.denominator.det())));
}

bool fraction_equiv(const GeneralizedFraction& a, const GeneralizedFraction& b) {
    Series ca = normalized_coefficient(a), cb = normalized_coefficient(b);
    require_same_ambient(ca, cb);
    auto box = common_box(ca, cb);
    return box ? equal_on(ca, cb, *box) : ca == cb;
}

HSeries residue(const GeneralizedFraction& fr) {
    std::vector<Int> zero(fr.denominator.ambient_ptr()->split.n, 0);
    return h_coefficient_at(normalized_coefficient(fr), zero);
}

HSeries jacobi_coefficient(const Lazy& psi, const ParameterSystem& p, std::span<const Int> idx,
                           std::optional<Box> h_window) {
    const AmbientPtr& amb = p.ambient_ptr();
    const auto& sp = amb->split;
    if (idx.size() != sp.n) throw Error(ErrorKind::DimensionMismatch, "index needs n entries");
    Lazy numer = psi * dlog_wedge_lazy(p.members());
    for (std::size_t l = 0; l < sp.n; ++l)
        if (idx[l] != 0) numer = numer * power(p.members()[l], -idx[l]);
    Series ev = numer.evaluate(slice_box(sp, h_window));
    std::vector<Int> zero(sp.n, 0);
    HSeries h = h_coefficient_at(ev, zero);
    return HSeries(scale(h.series(), amb->field.inv(amb->field.from_mpz(p.det()))));
}

HSeries jacobi_coefficient(const Series& psi, const ParameterSystem& p, std::span<const Int> idx,
                           std::optional<Box> h_window) {
    return jacobi_coefficient(Lazy(psi), p, idx, h_window);
}

Representation represent(const Series& psi, const ParameterSystem& p, const Box& index_box,
                         std::optional<Box> h_window) {
    if (!is_regular(p))
        throw Error(ErrorKind::NotRegular, "multiplicity determinant " + p.det().get_str() + " is not +-1");
    const AmbientPtr& amb = p.ambient_ptr();
    require_same_ambient(psi, Series::zero(amb));
    const auto& sp = amb->split;
    const Field& F = amb->field;
    const TermOrder& order = amb->order;
    const std::size_t n = sp.n, k = sp.k();
    if (index_box.dim() != n) throw Error(ErrorKind::DimensionMismatch, "index box needs n coordinates");
    Box hbox = slice_box(sp, h_window);

    std::vector<Exponent> g(n);
    for (std::size_t l = 0; l < n; ++l) g[l] = p.lead_exp(l);
    VariableSet coords(sp, g);
    auto lead_of = [&](const std::vector<Int>& i) {
        Exponent x(k);
        for (std::size_t l = 0; l < n; ++l) x += g[l].scaled(i[l]);
        return x;
    };

    Representation out;
    auto empty_result = [&](const std::vector<Int>& i) {
        Exponent off = psi.cone().offset - lead_of(i);
        return HSeries(Series::truncated(amb, {}, hbox, Cone{off, psi.cone().generators}));
    };
    std::vector<std::vector<Int>> wanted;
    for (const auto& pt : index_box.points()) wanted.emplace_back(pt.coords().begin(), pt.coords().end());
    if (psi.is_zero()) {
        for (const auto& i : wanted) out.emplace(i, HSeries(Series::zero(amb)));
        return out;
    }

    // Normalized members 1 + t_l and all generators involved.
    std::vector<Lazy> unit;
    std::vector<Exponent> gens = psi.cone().generators;
    for (std::size_t l = 0; l < n; ++l) {
        const Lazy& m = p.members()[l];
        unit.push_back(scale(shift(m, -g[l]), F.inv(p.lead_coeff(l))));
        auto c = m.leading_cone();
        gens.insert(gens.end(), c->generators.begin(), c->generators.end());
    }
    gens = make_cone(order, Exponent(k), std::move(gens)).generators;

    const Exponent o = psi.cone().offset;
    std::vector<Exponent> seeds;
    for (const auto& i : wanted)
        for (const auto& h : hbox.points()) seeds.push_back(h + lead_of(i) - o);
    detail::Window dw = detail::downward_closure(order, gens, seeds, k);
    if (dw.pts.empty()) {
        for (const auto& i : wanted) out.emplace(i, empty_result(i));
        return out;
    }
    std::vector<Exponent> D;
    D.reserve(dw.pts.size());
    for (const auto& z : dw.pts) D.push_back(z + o);
    std::sort(D.begin(), D.end(), [&](const Exponent& a, const Exponent& b) { return order.less(a, b); });
    Box dbox = *bounding_box(D);

    Series pv = Lazy(psi).evaluate(dbox);
    detail::PointMap<mpq_class> rem;
    for (const auto& x : D) rem.emplace(x, pv.stored(x));

    auto index_of = [&](const Exponent& x) {
        std::vector<Int> i(n);
        for (std::size_t l = 0; l < n; ++l) i[l] = coords.coordinate(l, x);
        return i;
    };
    // Box of V^i needed for every x sharing the index i.
    std::map<std::vector<Int>, Box> need;
    for (const auto& x : D) {
        Box b = dbox.shifted(-x);
        auto [it, fresh] = need.try_emplace(index_of(x), b);
        if (!fresh) it->second = it->second.hull(b);
    }
    std::map<std::vector<Int>, Series> vcache;
    std::map<std::vector<Int>, std::vector<Term>> found;

    for (const auto& x : D) {
        mpq_class c = rem[x];
        if (c == 0) continue;
        auto i = index_of(x);
        Exponent h = x - lead_of(i);
        mpq_class scalar_lead = 1;
        for (std::size_t l = 0; l < n; ++l) scalar_lead = F.mul(scalar_lead, field_power(F, p.lead_coeff(l), i[l]));
        found[i].push_back(Term{h, F.mul(c, F.inv(scalar_lead))});
        auto vit = vcache.find(i);
        if (vit == vcache.end()) {
            std::vector<Lazy> factors;
            for (std::size_t l = 0; l < n; ++l)
                if (i[l] != 0) factors.push_back(power(unit[l], i[l]));
            Series v = factors.empty() ? Series::constant(amb, 1) : product(factors).evaluate(need.at(i));
            vit = vcache.emplace(i, std::move(v)).first;
        }
        for (const auto& t : vit->second.terms()) {
            auto r = rem.find(x + t.exp);
            if (r != rem.end()) r->second = F.sub(r->second, F.mul(c, t.coeff));
        }
        if (rem[x] != 0)
            throw Error(ErrorKind::NonTermination, "elimination did not clear the term at " + x.to_string());
    }

    for (const auto& i : wanted) {
        std::vector<Term> terms;
        if (auto it = found.find(i); it != found.end())
            for (const auto& t : it->second)
                if (hbox.contains(t.exp)) terms.push_back(t);
        if (sp.m == 0) {
            out.emplace(i, HSeries(Series::exact(amb, std::move(terms))));
            continue;
        }
        Exponent off = o - lead_of(i);
        out.emplace(i, HSeries(Series::truncated(amb, std::move(terms), hbox, Cone{off, gens})));
    }
    return out;
}

}  // namespace gps
