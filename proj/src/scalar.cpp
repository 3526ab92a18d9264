#include "gps/scalar.hpp"

#include <charconv>

#include "gps/error.hpp"

namespace gps {

namespace {

void require_same(const Field& a, const Field& b) {
    if (!(a == b)) throw Error(ErrorKind::IncompatibleAmbient, "scalars over different fields");
}

}  // namespace

Field::Field(std::uint64_t p) : p_(p) {
    if (p == 0) return;
    mpz_class z;
    mpz_set_ui(z.get_mpz_t(), static_cast<unsigned long>(p));
    if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
        throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
}

Field Field::parse(std::string_view text) {
    if (text == "q" || text == "Q") return Field();
    if (text.substr(0, 3) == "fp:") {
        auto digits = text.substr(3);
        std::uint64_t p = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (!digits.empty() && ec == std::errc() && ptr == digits.data() + digits.size()) return Field(p);
    }
    throw Error(ErrorKind::InvalidArgument, "field must be 'q' or 'fp:<prime>', got '" + std::string(text) + "'");
}

mpq_class Field::normalize(const mpq_class& v) const {
    if (p_ == 0) return v;
    mpz_class p;
    mpz_set_ui(p.get_mpz_t(), static_cast<unsigned long>(p_));
    mpz_class num = v.get_num() % p;
    mpz_class den = v.get_den() % p;
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "denominator vanishes in " + to_string());
    mpz_class den_inv;
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    mpz_class r = (num * den_inv) % p;
    if (r < 0) r += p;
    return mpq_class(r);
}

mpq_class Field::add(const mpq_class& a, const mpq_class& b) const {
    if (p_ == 0) return a + b;
    return normalize(a + b);
}

mpq_class Field::sub(const mpq_class& a, const mpq_class& b) const {
    if (p_ == 0) return a - b;
    return normalize(a - b);
}

mpq_class Field::mul(const mpq_class& a, const mpq_class& b) const {
    if (p_ == 0) return a * b;
    return normalize(a * b);
}

mpq_class Field::neg(const mpq_class& a) const {
    if (p_ == 0) return -a;
    return normalize(-a);
}

mpq_class Field::inv(const mpq_class& a) const {
    if (a == 0) throw Error(ErrorKind::ZeroSeries, "division by zero scalar");
    if (p_ == 0) return 1 / a;
    return normalize(mpq_class(1) / a);
}

std::string Field::to_string() const { return p_ == 0 ? "q" : "fp:" + std::to_string(p_); }

Scalar Scalar::operator+(const Scalar& o) const {
    require_same(field_, o.field_);
    return Scalar(field_, field_.add(v_, o.v_));
}

Scalar Scalar::operator-(const Scalar& o) const {
    require_same(field_, o.field_);
    return Scalar(field_, field_.sub(v_, o.v_));
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same(field_, o.field_);
    return Scalar(field_, field_.mul(v_, o.v_));
}

Scalar Scalar::operator/(const Scalar& o) const {
    require_same(field_, o.field_);
    return Scalar(field_, field_.mul(v_, field_.inv(o.v_)));
}

Scalar Scalar::operator-() const { return Scalar(field_, field_.neg(v_)); }

Scalar Scalar::inverse() const { return Scalar(field_, field_.inv(v_)); }

}  // namespace gps
