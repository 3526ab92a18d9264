#include "gps/lazy.hpp"

#include <mutex>

#include "gps/error.hpp"
#include "lattice.hpp"
#include "series_internal.hpp"

namespace gps {

using detail::SupportSet;

// Exact products beyond this many term pairs are kept deferred.
constexpr std::size_t kExactProductLimit = 1u << 16;
// Cone advances tried while looking for a nonzero leading coefficient.
constexpr int kLeadingSearchLimit = 256;

struct LazyNode {
    enum class Kind { Leaf, Sum, Product, Inverse, Euler, Shift, Scale };

    struct Lead {
        mpq_class coeff;
        Exponent exp;
        Cone cone;  // offset == exp
    };

    Kind kind = Kind::Leaf;
    AmbientPtr amb;
    std::vector<std::shared_ptr<const LazyNode>> kids;
    std::optional<Series> value;  // exact value, or the truncated leaf
    bool exact = false;
    mpq_class c;
    Exponent v;
    std::vector<Int> lambda;

    mutable std::mutex mu;
    mutable std::optional<Cone> cone_cache;
    mutable bool lead_done = false;
    mutable std::optional<Lead> lead_cache;
    mutable std::vector<Series> evaluated;

    bool is_zero() const { return exact && value->is_zero(); }
    const TermOrder& order() const { return amb->order; }

    Cone cone() const;
    SupportSet support() const;
    std::optional<Lead> lead() const;
    Series evaluate(const Box& target) const;

private:
    Cone compute_cone() const;
    std::optional<Lead> compute_lead() const;
    Series compute(const Box& target) const;
    Series on_target(std::vector<Term> terms, const Box& target) const;
};

namespace {

using NodePtr = std::shared_ptr<const LazyNode>;

NodePtr make_exact(Series s) {
    auto n = std::make_shared<LazyNode>();
    n->amb = s.ambient_ptr();
    n->exact = s.is_exact();
    n->value = std::move(s);
    return n;
}

std::vector<Term> in_box(const Series& s, const Box& b) {
    std::vector<Term> out;
    for (const auto& t : s.terms())
        if (b.contains(t.exp)) out.push_back(t);
    return out;
}

void require_same(const NodePtr& a, const NodePtr& b) {
    if (a->amb != b->amb && !(*a->amb == *b->amb))
        throw Error(ErrorKind::IncompatibleAmbient, "expressions over different ambients");
}

Series zero_on(const AmbientPtr& amb, const Box& target, const Cone& c) {
    return Series::truncated(amb, {}, target, c);
}

}  // namespace

Cone LazyNode::cone() const {
    {
        std::lock_guard<std::mutex> lk(mu);
        if (cone_cache) return *cone_cache;
    }
    Cone c = compute_cone();
    std::lock_guard<std::mutex> lk(mu);
    if (!cone_cache) cone_cache = c;
    return *cone_cache;
}

Cone LazyNode::compute_cone() const {
    if (value) return value->cone();
    switch (kind) {
        case Kind::Sum: {
            std::optional<Cone> c;
            for (const auto& k : kids) {
                if (k->is_zero()) continue;
                c = c ? cone_union(order(), *c, k->cone()) : k->cone();
            }
            return c ? *c : Cone{Exponent(amb->split.k()), {}};
        }
        case Kind::Product:
            return cone_sum(order(), kids[0]->cone(), kids[1]->cone());
        case Kind::Inverse: {
            auto l = kids[0]->lead();
            if (!l) throw Error(ErrorKind::ZeroSeries, "inverse of zero");
            return Cone{-l->exp, l->cone.generators};
        }
        case Kind::Shift:
            return cone_shift(kids[0]->cone(), v);
        default:
            return kids[0]->cone();
    }
}

SupportSet LazyNode::support() const {
    if (exact) return detail::support_set(*value);
    return detail::support_of(cone());
}

std::optional<LazyNode::Lead> LazyNode::lead() const {
    {
        std::lock_guard<std::mutex> lk(mu);
        if (lead_done) return lead_cache;
    }
    auto l = compute_lead();
    std::lock_guard<std::mutex> lk(mu);
    if (!lead_done) {
        lead_cache = l;
        lead_done = true;
    }
    return lead_cache;
}

std::optional<LazyNode::Lead> LazyNode::compute_lead() const {
    const Field& F = amb->field;
    if (exact) {
        if (value->is_zero()) return std::nullopt;
        const auto& t = value->terms().front();
        return Lead{t.coeff, t.exp, value->cone()};
    }
    switch (kind) {
        case Kind::Product: {
            auto a = kids[0]->lead(), b = kids[1]->lead();
            if (!a || !b) return std::nullopt;
            return Lead{F.mul(a->coeff, b->coeff), a->exp + b->exp, cone_sum(order(), a->cone, b->cone)};
        }
        case Kind::Inverse: {
            auto a = kids[0]->lead();
            if (!a) throw Error(ErrorKind::ZeroSeries, "inverse of zero");
            return Lead{F.inv(a->coeff), -a->exp, Cone{-a->exp, a->cone.generators}};
        }
        case Kind::Scale: {
            auto a = kids[0]->lead();
            if (!a) return std::nullopt;
            return Lead{F.mul(a->coeff, c), a->exp, a->cone};
        }
        case Kind::Shift: {
            auto a = kids[0]->lead();
            if (!a) return std::nullopt;
            return Lead{a->coeff, a->exp + v, cone_shift(a->cone, v)};
        }
        case Kind::Leaf:
            if (auto l = value->leading()) return Lead{l->coeff, l->exp, value->cone()};
            break;
        default:
            break;
    }
    // Probe the cone offset and advance past certified zeros.
    Cone k = cone();
    for (int step = 0; step < kLeadingSearchLimit; ++step) {
        mpq_class a;
        try {
            a = evaluate(Box::point(k.offset)).stored(k.offset);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BoxUnderflow) throw;
            throw Error(ErrorKind::LeadingTermUncertain, e.what());
        }
        if (a != 0) return Lead{a, k.offset, k};
        if (k.generators.empty()) return std::nullopt;
        k = cone_advance(order(), k);
    }
    throw Error(ErrorKind::LeadingTermUncertain,
                "no nonzero coefficient found near the cone offset " + cone().offset.to_string());
}

Series LazyNode::evaluate(const Box& target) const {
    if (exact) return *value;
    {
        std::lock_guard<std::mutex> lk(mu);
        for (const auto& s : evaluated)
            if (s.box()->contains(target)) return truncate(s, target);
    }
    Series s = compute(target);
    if (s.is_exact()) return s;  // certified zero everywhere
    std::lock_guard<std::mutex> lk(mu);
    evaluated.push_back(s);
    return s;
}

Series LazyNode::on_target(std::vector<Term> terms, const Box& target) const {
    return Series::truncated(amb, std::move(terms), target, cone());
}

Series LazyNode::compute(const Box& target) const {
    switch (kind) {
        case Kind::Leaf: {
            try {
                return restrict_to(*value, target);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::OutsideBox) throw;
                throw Error(ErrorKind::BoxUnderflow, e.what());
            }
        }
        case Kind::Sum: {
            std::vector<Term> terms;
            for (const auto& k : kids) {
                auto part = in_box(k->evaluate(target), target);
                terms.insert(terms.end(), part.begin(), part.end());
            }
            return on_target(std::move(terms), target);
        }
        case Kind::Product: {
            const auto& a = kids[0];
            const auto& b = kids[1];
            SupportSet sa = a->support(), sb = b->support();
            auto ra = detail::reaching_points(order(), sa, sb, target);
            if (ra.empty()) return zero_on(amb, target, cone());
            auto rb = detail::reaching_points(order(), sb, sa, target);
            Series ea = a->evaluate(*bounding_box(ra));
            Series eb = b->evaluate(*bounding_box(rb));
            // Every stored pair summing into the target is a genuine pair of
            // support points, and every genuine pair lies in the two regions.
            return on_target(detail::convolve(ea, eb, target), target);
        }
        case Kind::Inverse: {
            auto l = kids[0]->lead();
            if (!l) throw Error(ErrorKind::ZeroSeries, "inverse of zero");
            const auto& gens = l->cone.generators;
            Box shifted = target.shifted(l->exp);
            auto z = detail::reach_window(order(), gens, shifted, amb->split.k());
            if (z.pts.empty()) return zero_on(amb, target, cone());
            Series ec = kids[0]->evaluate(bounding_box(z.pts)->shifted(l->exp));
            return detail::invert_values(ec, l->coeff, l->exp, gens, target, z);
        }
        case Kind::Euler:
            return on_target(in_box(euler(kids[0]->evaluate(target), lambda), target), target);
        case Kind::Scale:
            return on_target(in_box(scale(kids[0]->evaluate(target), c), target), target);
        case Kind::Shift:
            return on_target(in_box(shift(kids[0]->evaluate(target.shifted(-v)), v), target), target);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown expression node");
}

Lazy::Lazy(Series s) : n_(make_exact(std::move(s))) {}

Lazy Lazy::constant(AmbientPtr amb, const mpq_class& a) { return Lazy(Series::constant(std::move(amb), a)); }

const AmbientPtr& Lazy::ambient_ptr() const { return n_->amb; }
const Series* Lazy::exact_value() const { return n_->exact ? &*n_->value : nullptr; }
const Series* Lazy::stored_value() const { return n_->value ? &*n_->value : nullptr; }
bool Lazy::is_zero() const { return n_->is_zero(); }
Cone Lazy::cone() const { return n_->cone(); }

std::optional<Series::Leading> Lazy::leading() const {
    auto l = n_->lead();
    if (!l) return std::nullopt;
    return Series::Leading{l->coeff, l->exp};
}

std::optional<Cone> Lazy::leading_cone() const {
    auto l = n_->lead();
    if (!l) return std::nullopt;
    return l->cone;
}

Series Lazy::evaluate(const Box& target) const {
    if (target.dim() != n_->amb->split.k()) throw Error(ErrorKind::DimensionMismatch, "target box dimension");
    return n_->evaluate(target);
}

namespace {

std::shared_ptr<LazyNode> make_node(LazyNode::Kind kind, std::vector<NodePtr> kids) {
    auto n = std::make_shared<LazyNode>();
    n->kind = kind;
    n->amb = kids.front()->amb;
    n->kids = std::move(kids);
    return n;
}

}  // namespace

Lazy operator+(const Lazy& a, const Lazy& b) {
    require_same(a.n_, b.n_);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.n_->exact && b.n_->exact) return Lazy(add(*a.n_->value, *b.n_->value));
    std::vector<NodePtr> kids;
    for (const Lazy* x : {&a, &b}) {
        if (x->n_->kind == LazyNode::Kind::Sum && !x->n_->value)
            kids.insert(kids.end(), x->n_->kids.begin(), x->n_->kids.end());
        else
            kids.push_back(x->n_);
    }
    return Lazy(make_node(LazyNode::Kind::Sum, std::move(kids)));
}

Lazy operator-(const Lazy& a) { return scale(a, -1); }
Lazy operator-(const Lazy& a, const Lazy& b) { return a + (-b); }

Lazy operator*(const Lazy& a, const Lazy& b) {
    require_same(a.n_, b.n_);
    if (a.is_zero()) return a;
    if (b.is_zero()) return b;
    if (a.n_->exact && b.n_->exact &&
        a.n_->value->terms().size() * b.n_->value->terms().size() <= kExactProductLimit)
        return Lazy(mul(*a.n_->value, *b.n_->value));
    return Lazy(make_node(LazyNode::Kind::Product, {a.n_, b.n_}));
}

Lazy scale(const Lazy& f, const mpq_class& c) {
    if (f.n_->exact) return Lazy(scale(*f.n_->value, c));
    if (c == 0) return Lazy(Series::zero(f.ambient_ptr()));
    auto n = make_node(LazyNode::Kind::Scale, {f.n_});
    n->c = f.n_->amb->field.normalize(c);
    return Lazy(std::shared_ptr<const LazyNode>(n));
}

Lazy shift(const Lazy& f, const Exponent& v) {
    if (f.n_->exact) return Lazy(shift(*f.n_->value, v));
    auto n = make_node(LazyNode::Kind::Shift, {f.n_});
    n->v = v;
    return Lazy(std::shared_ptr<const LazyNode>(n));
}

Lazy euler(const Lazy& f, std::span<const Int> lambda) {
    if (f.n_->exact) return Lazy(euler(*f.n_->value, lambda));
    auto n = make_node(LazyNode::Kind::Euler, {f.n_});
    n->lambda.assign(lambda.begin(), lambda.end());
    return Lazy(std::shared_ptr<const LazyNode>(n));
}

Lazy inverse(const Lazy& f) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroSeries, "inverse of zero");
    if (f.n_->exact && f.n_->value->terms().size() == 1) return Lazy(invert_monomial(*f.n_->value));
    if (f.n_->kind == LazyNode::Kind::Inverse && !f.n_->value) return Lazy(f.n_->kids.front());
    return Lazy(make_node(LazyNode::Kind::Inverse, {f.n_}));
}

Lazy power(const Lazy& f, long k) {
    if (k < 0) return power(inverse(f), -k);
    Lazy result = Lazy::constant(f.ambient_ptr(), 1);
    Lazy base = f;
    for (unsigned long e = static_cast<unsigned long>(k); e; e >>= 1) {
        if (e & 1u) result = result * base;
        if (e > 1) base = base * base;
    }
    return result;
}

Lazy product(std::span<const Lazy> fs) {
    if (fs.empty()) throw Error(ErrorKind::InvalidArgument, "empty product");
    if (fs.size() == 1) return fs.front();
    std::size_t mid = fs.size() / 2;
    return product(fs.subspan(0, mid)) * product(fs.subspan(mid));
}

Lazy sum(std::span<const Lazy> fs) {
    if (fs.empty()) throw Error(ErrorKind::InvalidArgument, "empty sum");
    Lazy s = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) s = s + fs[i];
    return s;
}

Series power(const Series& f, long k, const Box& target) {
    if (k >= 0 && f.is_exact()) return power(f, static_cast<unsigned>(k));
    Lazy p = power(Lazy(f), k);
    return p.evaluate(target);
}

}  // namespace gps
