#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gps {

/// Q when p == 0, otherwise the prime field F_p.
class Field {
public:
    Field() = default;
    /// Throws InvalidArgument unless p is 0 or prime.
    explicit Field(std::uint64_t p);
    static Field rationals() { return Field(); }
    /// "q" or "fp:<p>".
    static Field parse(std::string_view text);

    std::uint64_t characteristic() const noexcept { return p_; }
    bool is_rational() const noexcept { return p_ == 0; }

    /// Canonical representative: any rational in Q, an integer in [0, p) in F_p.
    /// Throws InvalidArgument when a denominator vanishes mod p.
    mpq_class normalize(const mpq_class& v) const;
    mpq_class add(const mpq_class& a, const mpq_class& b) const;
    mpq_class sub(const mpq_class& a, const mpq_class& b) const;
    mpq_class mul(const mpq_class& a, const mpq_class& b) const;
    mpq_class neg(const mpq_class& a) const;
    /// Throws ZeroSeries on zero.
    mpq_class inv(const mpq_class& a) const;
    mpq_class from_int(long v) const { return normalize(mpq_class(v)); }
    mpq_class from_mpz(const mpz_class& v) const { return normalize(mpq_class(v)); }

    std::string to_string() const;
    bool operator==(const Field&) const = default;

private:
    std::uint64_t p_ = 0;
};

/// Field element together with its field.
class Scalar {
public:
    Scalar() = default;
    Scalar(Field f, const mpq_class& v) : field_(f), v_(f.normalize(v)) {}
    Scalar(Field f, long v) : Scalar(f, mpq_class(v)) {}

    const Field& field() const noexcept { return field_; }
    const mpq_class& value() const noexcept { return v_; }
    bool is_zero() const { return v_ == 0; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;

    /// "n" or "n/d".
    std::string to_string() const { return v_.get_str(); }
    bool operator==(const Scalar& o) const { return field_ == o.field_ && v_ == o.v_; }

private:
    Field field_;
    mpq_class v_{0};
};

}  // namespace gps
