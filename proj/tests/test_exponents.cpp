#include <doctest.h>

#include <set>

#include "gps/error.hpp"
#include "gps/exponents.hpp"
#include "gps/series.hpp"
#include "test_util.hpp"

using namespace gps;
using testutil::uniform;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

const TermOrder G1 = TermOrder::identity(2);
const TermOrder G2({{0, 1}, {1, 0}});

// Largest number of summands (up to `cap`) whose sum lies in `box`.
Int brute_max_count(std::span<const Exponent> support, const Box& box, Int cap) {
    std::set<Exponent> layer{Exponent(box.dim())};
    Int best = 0;
    for (Int c = 1; c <= cap; ++c) {
        std::set<Exponent> next;
        for (const auto& p : layer)
            for (const auto& s : support) next.insert(p + s);
        layer = std::move(next);
        for (const auto& p : layer)
            if (box.contains(p)) best = c;
    }
    return best;
}

}  // namespace

TEST_CASE("validate_order") {
    CHECK(G1.compare(Exponent{1, 0}, Exponent{0, 1}) > 0);
    CHECK(G2.compare(Exponent{1, 0}, Exponent{0, 1}) < 0);
    CHECK(kind_of([] { validate_order({{1, 1}, {1, 1}}); }) == ErrorKind::SingularOrderMatrix);
    CHECK(TermOrder::parse("0,1;1,0") == G2);
    CHECK(G2.to_string() == "0,1;1,0");
}

TEST_CASE("compare and is_positive") {
    CHECK(compare(G1, Exponent{0, 0}, Exponent{0, 0}) == std::strong_ordering::equal);
    CHECK(compare(G2, Exponent{0, 0}, Exponent{0, 0}) == std::strong_ordering::equal);
    CHECK(is_positive(G1, Exponent{1, -3}));
    CHECK_FALSE(is_positive(G1, Exponent{0, 0}));
    CHECK_FALSE(is_positive(G1, Exponent{0, -1}));
    CHECK(kind_of([] { (void)compare(G1, Exponent{1}, Exponent{0, 1}); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([] { (void)is_positive(G1, Exponent{1, 2, 3}); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("power_exhaustion_bound examples") {
    std::vector<Exponent> s1{{1, 0}};
    CHECK(power_exhaustion_bound(G1, s1, Box::cube(2, -5, 5)) == 5);

    std::vector<Exponent> s2{{0, 1}, {1, -1}};
    Box b2(Exponent{0, -5}, Exponent{5, 5});
    Int bound = power_exhaustion_bound(G1, s2, b2);
    Int brute = brute_max_count(s2, b2, 20);
    CHECK(brute == 15);
    CHECK(bound >= brute);

    CHECK(power_exhaustion_bound(G1, std::vector<Exponent>{}, b2) == 0);
    std::vector<Exponent> bad{{0, -1}};
    CHECK(kind_of([&] { power_exhaustion_bound(G1, bad, b2); }) == ErrorKind::NonPositiveSupportElement);
}

TEST_CASE("order is total and translation invariant") {
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t k = static_cast<std::size_t>(uniform(1, 4));
        TermOrder M = testutil::random_order(k);
        auto a = testutil::random_exponent(k, -6, 6);
        auto b = testutil::random_exponent(k, -6, 6);
        auto c = testutil::random_exponent(k, -6, 6);
        int cases = (M.less(a, b) ? 1 : 0) + (a == b ? 1 : 0) + (M.less(b, a) ? 1 : 0);
        CHECK(cases == 1);
        CHECK(M.less(a, b) == M.less(a + c, b + c));
        CHECK((M.compare(a, b) == 0) == (a == b));
    }
}

TEST_CASE("multiples of a positive exponent increase") {
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t k = static_cast<std::size_t>(uniform(1, 4));
        TermOrder M = testutil::random_order(k);
        auto v = testutil::random_positive(M, k, -5, 5);
        Int i = uniform(0, 6), j = uniform(7, 12);
        CHECK(M.less(v.scaled(i), v.scaled(j)));
    }
}

TEST_CASE("power_exhaustion_bound is sound") {
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t k = static_cast<std::size_t>(uniform(1, 3));
        TermOrder M = testutil::random_order(k, 2);
        std::vector<Exponent> support;
        int count = static_cast<int>(uniform(1, 3));
        for (int i = 0; i < count; ++i) support.push_back(testutil::random_positive(M, k, -2, 2));
        Exponent lo = testutil::random_exponent(k, -4, 0);
        Exponent hi = lo;
        for (std::size_t i = 0; i < k; ++i) hi[i] += uniform(0, 5);
        Box box(lo, hi);
        Int imax = power_exhaustion_bound(M, support, box);
        CHECK(brute_max_count(support, box, imax + 3) <= imax);
    }
}

TEST_CASE("finitely many solutions of x1 + x2 = g") {
    auto amb = make_ambient(GroupSplit(0, 2), G1);
    for (int trial = 0; trial < 100; ++trial) {
        std::set<Exponent> i1, i2;
        for (int i = 0; i < 8; ++i) i1.insert(testutil::random_exponent(2, -3, 3));
        for (int i = 0; i < 8; ++i) i2.insert(testutil::random_exponent(2, -3, 3));
        std::vector<Term> t1, t2;
        for (const auto& e : i1) t1.push_back(Term{e, 1});
        for (const auto& e : i2) t2.push_back(Term{e, 1});
        Series prod = mul(Series::exact(amb, t1), Series::exact(amb, t2));
        Exponent g = testutil::random_exponent(2, -4, 4);
        long brute = 0;
        for (const auto& a : i1)
            for (const auto& b : i2)
                if (a + b == g) ++brute;
        CHECK(prod.coefficient_at(g).value() == brute);
    }
}

TEST_CASE("box parsing and cone helpers") {
    Box b = Box::parse("-1..2, 0..3", 2);
    CHECK(b.lo() == Exponent{-1, 0});
    CHECK(b.hi() == Exponent{2, 3});
    CHECK(b.lattice_count() == 16);
    CHECK(Box::parse("0..5", 2) == Box::cube(2, 0, 5));
    CHECK(kind_of([] { Box::parse("0..1,2", 2); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { make_cone(G1, Exponent{0, 0}, {Exponent{0, -1}}); }) ==
          ErrorKind::NonPositiveSupportElement);
    Cone c = make_cone(G1, Exponent{0, 0}, {Exponent{0, 1}, Exponent{1, 0}, Exponent{1, 1}});
    CHECK(c.generators.size() == 2);
    CHECK(determinant({{2, 1}, {1, 1}}) == 1);
    CHECK(determinant({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}) == -1);
}
