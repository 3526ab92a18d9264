#include "gps/identities.hpp"

#include "gps/error.hpp"

namespace gps {

namespace {

std::size_t size_of(const DysonInstance& inst) {
    validate(inst);
    return inst.a.size();
}

void check_n(std::size_t n) {
    if (n < 2) throw Error(ErrorKind::BadDimension, "need n >= 2, got " + std::to_string(n));
}

Series one_minus_ratio(const AmbientPtr& amb, std::size_t i, std::size_t j) {
    Exponent e(amb->split.k());
    e[i] = 1;
    e[j] = -1;
    return Series::exact(amb, {Term{Exponent(amb->split.k()), 1}, Term{e, -1}});
}

mpz_class factorial(unsigned long k) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

Series xpow(const AmbientPtr& amb, std::size_t i, Int e) {
    Exponent x(amb->split.k());
    x[i] = e;
    return Series::monomial(amb, 1, x);
}

HSeries constant_coefficient(const Lazy& psi, const ParameterSystem& p) {
    std::vector<Int> zero(p.size(), 0);
    return jacobi_coefficient(psi, p, zero);
}

}  // namespace

void validate(const DysonInstance& inst) {
    check_n(inst.a.size());
    for (long a : inst.a)
        if (a < 0) throw Error(ErrorKind::BadDimension, "exponents a_i must be nonnegative");
}

AmbientPtr wilson_ambient(std::size_t n) {
    check_n(n);
    return make_ambient(GroupSplit(0, n), TermOrder::identity(n));
}

AmbientPtr egorychev_ambient(std::size_t n) {
    check_n(n);
    IntMatrix rows(n, std::vector<Int>(n, 0));
    for (std::size_t r = 0; r < n; ++r) rows[r][n - 1 - r] = 1;
    return make_ambient(GroupSplit(0, n), TermOrder(rows));
}

Scalar dyson_lhs(const DysonInstance& inst) {
    const std::size_t n = size_of(inst);
    AmbientPtr amb = wilson_ambient(n);
    Series acc = Series::constant(amb, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && inst.a[i] > 0)
                acc = mul(acc, power(one_minus_ratio(amb, i, j), static_cast<unsigned>(inst.a[i])));
    return Scalar(amb->field, acc.stored(Exponent(n)));
}

Scalar dyson_rhs(const DysonInstance& inst) {
    size_of(inst);
    unsigned long total = 0;
    mpz_class den = 1;
    for (long a : inst.a) {
        total += static_cast<unsigned long>(a);
        den *= factorial(static_cast<unsigned long>(a));
    }
    mpq_class r(factorial(total), den);
    r.canonicalize();
    return Scalar(Field(), r);
}

std::vector<Series> wilson_denominators(std::size_t n) {
    AmbientPtr amb = wilson_ambient(n);
    std::vector<Series> d;
    for (std::size_t i = 0; i < n; ++i) {
        Series acc = Series::constant(amb, 1);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) acc = mul(acc, one_minus_ratio(amb, i, j));
        d.push_back(acc);
    }
    return d;
}

std::vector<Lazy> wilson_phis(std::size_t n) {
    std::vector<Lazy> phis;
    for (auto& d : wilson_denominators(n)) phis.push_back(inverse(Lazy(std::move(d))));
    return phis;
}

ParameterSystem wilson_parameters(std::size_t n) {
    auto phis = wilson_phis(n);
    phis[0] = Lazy(Series::variable(phis[0].ambient_ptr(), 0));
    return check_parameters(phis);
}

bool lagrange_interpolation_check(std::size_t n, const Box& box) {
    auto phis = wilson_phis(n);
    Series s = sum(phis).evaluate(box);
    return equal_on(s, Series::constant(phis[0].ambient_ptr(), 1), box);
}

Series vandermonde(const AmbientPtr& amb) {
    const std::size_t n = amb->split.n;
    Series d = Series::constant(amb, 1);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
            d = mul(d, sub(Series::variable(amb, j), Series::variable(amb, k)));
    return d;
}

std::vector<Series> egorychev_members(std::size_t n) {
    AmbientPtr amb = egorychev_ambient(n);
    std::vector<Series> ups;
    for (std::size_t i = 0; i < n; ++i) {
        Series u = scale(xpow(amb, i, static_cast<Int>(n - 1)), mpq_class(i % 2 == 0 ? 1 : -1));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (j != i && k != i) u = mul(u, sub(Series::variable(amb, j), Series::variable(amb, k)));
        ups.push_back(u);
    }
    return ups;
}

ParameterSystem egorychev_parameters(std::size_t n) {
    auto ups = egorychev_members(n);
    return check_parameters(ups);
}

bool cramer_identity_check(std::size_t n) {
    auto ups = egorychev_members(n);
    const AmbientPtr& amb = ups.front().ambient_ptr();
    for (std::size_t i = 0; i < n; ++i) {
        Series s = Series::zero(amb);
        for (std::size_t l = 0; l < n; ++l) s = add(s, mul(ups[l], xpow(amb, l, -static_cast<Int>(i))));
        if (!(s == (i == 0 ? vandermonde(amb) : Series::zero(amb)))) return false;
    }
    return true;
}

DysonMethod parse_dyson_method(const std::string& s) {
    if (s == "direct") return DysonMethod::direct;
    if (s == "wilson") return DysonMethod::wilson;
    if (s == "egorychev") return DysonMethod::egorychev;
    throw Error(ErrorKind::InvalidArgument, "unknown method '" + s + "' (direct, wilson, egorychev)");
}

std::string to_string(DysonMethod m) {
    switch (m) {
        case DysonMethod::direct: return "direct";
        case DysonMethod::wilson: return "wilson";
        case DysonMethod::egorychev: return "egorychev";
    }
    return "";
}

namespace {

// Psi(Y) / (1 - Y_2 - ... - Y_n) at Y = (X_1, Phi_2, ..., Phi_n), with
// Psi(Y) = Y_2^{-a_2} ... Y_n^{-a_n} (1 - Y_2 - ... - Y_n)^{-a_1}.
Lazy wilson_numerator(const std::vector<long>& a, const std::vector<Series>& dens, const std::vector<Lazy>& phis) {
    const AmbientPtr& amb = dens.front().ambient_ptr();
    Lazy acc = Lazy::constant(amb, 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] > 0) acc = acc * Lazy(power(dens[i], static_cast<unsigned>(a[i])));
    std::vector<Lazy> rest(phis.begin() + 1, phis.end());
    Lazy base = Lazy::constant(amb, 1) - sum(rest);
    return acc * power(base, -(a[0] + 1));
}

Scalar wilson_lhs(const DysonInstance& inst) {
    const std::size_t n = inst.a.size();
    auto dens = wilson_denominators(n);
    auto phis = wilson_phis(n);
    ParameterSystem p = wilson_parameters(n);
    const Field& F = p.ambient_ptr()->field;
    Scalar raw = constant_coefficient(wilson_numerator(inst.a, dens, phis), p).constant_term();
    // The trivial instance pins the scalar in the wedge identity.
    Scalar c = constant_coefficient(wilson_numerator(std::vector<long>(n, 0), dens, phis), p).constant_term();
    if (c.value() == 0) throw Error(ErrorKind::InvalidArgument, "Wilson normalization vanished");
    return Scalar(F, F.mul(raw.value(), F.inv(c.value())));
}

Scalar egorychev_lhs(const DysonInstance& inst) {
    const std::size_t n = inst.a.size();
    auto ups = egorychev_members(n);
    ParameterSystem p = check_parameters(ups);
    const AmbientPtr& amb = p.ambient_ptr();
    long total = 0;
    for (long a : inst.a) total += a;
    Series s = Series::zero(amb);
    for (const auto& u : ups) s = add(s, u);
    // Psi(Upsilon) = (sum Upsilon)^{sum a} / prod Upsilon_j^{a_j}
    Lazy psi(power(s, static_cast<unsigned>(total)));
    for (std::size_t j = 0; j < n; ++j)
        if (inst.a[j] > 0) psi = psi * power(p.members()[j], -inst.a[j]);
    return constant_coefficient(psi, p).constant_term();
}

}  // namespace

DysonResult dyson_verify(const DysonInstance& inst, DysonMethod method) {
    validate(inst);
    DysonResult r;
    switch (method) {
        case DysonMethod::direct: r.lhs = dyson_lhs(inst); break;
        case DysonMethod::wilson: r.lhs = wilson_lhs(inst); break;
        case DysonMethod::egorychev: r.lhs = egorychev_lhs(inst); break;
    }
    r.rhs = dyson_rhs(inst);
    r.equal = r.lhs == r.rhs;
    return r;
}

}  // namespace gps
