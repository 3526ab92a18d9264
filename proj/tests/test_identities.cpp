#include <doctest.h>

#include <algorithm>

#include "gps/calculus.hpp"
#include "gps/error.hpp"
#include "gps/identities.hpp"
#include "test_util.hpp"

using namespace gps;

namespace {

mpq_class q(const Scalar& s) { return s.value(); }

long fact(long k) { return k <= 1 ? 1 : k * fact(k - 1); }

Box cube(std::size_t n, Int r) {
    Exponent lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = -r;
        hi[i] = r;
    }
    return Box(lo, hi);
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("Dyson constant terms") {
    CHECK(q(dyson_lhs({{1, 1}})) == 2);
    CHECK(q(dyson_lhs({{0, 0, 0}})) == 1);
    CHECK(q(dyson_lhs({{1, 1, 1}})) == 6);
    CHECK(q(dyson_rhs({{1, 1, 1}})) == 6);
    CHECK(q(dyson_rhs({{0, 0, 0}})) == 1);
    CHECK(q(dyson_rhs({{1, 1, 2}})) == 12);

    // (1 - X1/X2)^2 (1 - X2/X1) = (1 - u)^2 (1 - 1/u): constant term 1 + 2 = 3.
    CHECK(q(dyson_lhs({{2, 1}})) == 3);

    std::vector<long> a{2, 0, 1};
    auto base = q(dyson_lhs({a}));
    std::sort(a.begin(), a.end());
    do {
        CHECK(q(dyson_lhs({a})) == base);
    } while (std::next_permutation(a.begin(), a.end()));

    CHECK(kind_of([] { dyson_lhs({{3}}); }) == ErrorKind::BadDimension);
    CHECK(kind_of([] { dyson_rhs({{1, -1}}); }) == ErrorKind::BadDimension);
}

TEST_CASE("Wilson parameters") {
    for (std::size_t n = 2; n <= 6; ++n) {
        auto p = wilson_parameters(n);
        long want = fact(static_cast<long>(n) - 1) * (n % 2 == 0 ? -1 : 1);
        CHECK(p.det() == want);
        const auto& s = p.mult_matrix();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Int e = j == 0 ? 1 : (j < i ? 1 : (j == i ? -static_cast<Int>(i) : 0));
                CHECK(s[i][j] == e);
            }
    }
    CHECK(is_regular(wilson_parameters(2)));
    CHECK(kind_of([] { wilson_parameters(1); }) == ErrorKind::BadDimension);
}

TEST_CASE("Wilson wedge identity holds with c = 1") {
    for (std::size_t n = 2; n <= 3; ++n) {
        auto p = wilson_parameters(n);
        auto phis = wilson_phis(n);
        Box b = cube(n, 2);
        Series lhs = dlog_wedge_lazy(p.members()).evaluate(b);
        Series rhs = scale(phis[0].evaluate(b), mpq_class(p.det()));
        CHECK(equal_on(lhs, rhs, b));
    }
}

TEST_CASE("Lagrange interpolation") {
    CHECK(lagrange_interpolation_check(2, cube(2, 4)));
    CHECK(lagrange_interpolation_check(3, cube(3, 3)));
    CHECK(lagrange_interpolation_check(4, cube(4, 1)));

    auto phis = wilson_phis(3);
    phis[1] = phis[1] + Lazy(Series::variable(phis[1].ambient_ptr(), 0));
    Box b = cube(3, 3);
    CHECK_FALSE(equal_on(sum(phis).evaluate(b), Series::constant(phis[0].ambient_ptr(), 1), b));
}

TEST_CASE("Egorychev parameters") {
    auto two = egorychev_members(2);
    auto amb = two[0].ambient_ptr();
    CHECK(two[0] == Series::variable(amb, 0));
    CHECK(two[1] == neg(Series::variable(amb, 1)));
    for (std::size_t n = 2; n <= 6; ++n) {
        auto p = egorychev_parameters(n);
        CHECK(p.det() == fact(static_cast<long>(n)) * static_cast<long>(n - 1) / 2);
        const auto& s = p.mult_matrix();
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(s[i][i] == static_cast<Int>(n) - 1);
            Int next = static_cast<Int>(n) - 2;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) CHECK(s[i][j] == next--);
        }
    }
}

TEST_CASE("Egorychev dlog identity") {
    for (std::size_t n = 2; n <= 4; ++n) {
        auto ups = egorychev_members(n);
        NForm w = dlog_wedge(ups, cube(n, 2));
        long d = fact(static_cast<long>(n)) * static_cast<long>(n - 1) / 2;
        CHECK(equal_on(w.coeff, Series::constant(ups[0].ambient_ptr(), d), cube(n, 2)));
    }
}

TEST_CASE("Cramer and Euler identities") {
    for (std::size_t n = 2; n <= 5; ++n) {
        CHECK(cramer_identity_check(n));
        auto amb = egorychev_ambient(n);
        Series delta = vandermonde(amb);
        Series lhs = Series::zero(amb);
        for (std::size_t i = 0; i < n; ++i) lhs = add(lhs, mul(Series::variable(amb, i), partial(delta, i)));
        CHECK(lhs == scale(delta, mpq_class(static_cast<long>(n * (n - 1) / 2))));
    }
    auto d2 = vandermonde(egorychev_ambient(2));
    CHECK(d2 == sub(Series::variable(d2.ambient_ptr(), 0), Series::variable(d2.ambient_ptr(), 1)));
}

TEST_CASE("Dyson across methods") {
    const std::vector<std::vector<long>> cases{{0, 0}, {1, 1}, {2, 3}, {0, 0, 0}, {1, 1, 1},
                                               {1, 1, 2}, {2, 2, 1}, {3, 0, 1}, {1, 0, 1, 1}};
    for (const auto& a : cases) {
        auto d = dyson_verify({a}, DysonMethod::direct);
        CHECK(d.equal);
        for (auto m : {DysonMethod::wilson, DysonMethod::egorychev}) {
            auto r = dyson_verify({a}, m);
            CHECK(r.equal);
            CHECK(r.lhs == d.lhs);
        }
    }
    auto r = dyson_verify({{1, 1}}, DysonMethod::direct);
    CHECK(q(r.lhs) == 2);
    CHECK(q(r.rhs) == 2);
    CHECK(parse_dyson_method("wilson") == DysonMethod::wilson);
    CHECK(to_string(DysonMethod::egorychev) == "egorychev");
    CHECK(kind_of([] { parse_dyson_method("gunson"); }) == ErrorKind::InvalidArgument);
}
