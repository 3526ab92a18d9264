#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gps/exponents.hpp"
#include "gps/scalar.hpp"

namespace gps {

/// Exponent group, its order and the coefficient field shared by a family of series.
struct Ambient {
    GroupSplit split;
    TermOrder order;
    Field field;

    bool operator==(const Ambient&) const = default;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

/// Throws DimensionMismatch unless the order acts on Z^(m+n).
AmbientPtr make_ambient(GroupSplit split, TermOrder order, Field field = Field());

struct Term {
    Exponent exp;
    mpq_class coeff;

    bool operator==(const Term&) const = default;
};

/// Truncated generalized power series. Either exact (a Laurent polynomial, box
/// "everywhere") or exact inside a finite box with a cone bounding the true support.
class Series {
public:
    /// Laurent polynomial; terms may repeat and appear in any order.
    static Series exact(AmbientPtr amb, std::vector<Term> terms);
    /// Truncated series; terms outside the box are discarded and the cone offset
    /// is advanced past zero coefficients inside the box.
    static Series truncated(AmbientPtr amb, std::vector<Term> terms, Box box, Cone cone);
    static Series zero(AmbientPtr amb);
    static Series monomial(AmbientPtr amb, const mpq_class& a, Exponent g);
    static Series constant(AmbientPtr amb, const mpq_class& a);
    /// Variable i (0-based).
    static Series variable(AmbientPtr amb, std::size_t i);

    const Ambient& ambient() const { return *d_->amb; }
    const AmbientPtr& ambient_ptr() const { return d_->amb; }
    const Field& field() const { return d_->amb->field; }
    const TermOrder& order() const { return d_->amb->order; }
    std::size_t k() const { return d_->amb->split.k(); }

    /// Ascending in the term order; nonzero coefficients only.
    std::span<const Term> terms() const { return d_->terms; }
    bool is_exact() const { return !d_->box.has_value(); }
    const std::optional<Box>& box() const { return d_->box; }
    /// Support certificate; for exact series it is derived from the terms.
    const Cone& cone() const;
    /// True when the series is exactly zero.
    bool is_zero() const { return is_exact() && d_->terms.empty(); }

    /// Stored value (0 when absent); no exactness check.
    mpq_class stored(const Exponent& x) const;
    /// Throws OutsideBox when x is outside a finite box.
    Scalar coefficient_at(const Exponent& x) const;

    struct Leading {
        mpq_class coeff;
        Exponent exp;
    };
    /// Certified minimum of the support, if the box can certify it.
    std::optional<Leading> leading() const;

    bool operator==(const Series& o) const;
    std::string to_string() const;

private:
    struct Data {
        AmbientPtr amb;
        std::vector<Term> terms;
        std::optional<Box> box;
        std::optional<Cone> cone;
        mutable std::once_flag exact_cone_once;
        mutable std::optional<Cone> exact_cone;
    };
    explicit Series(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

/// Series supported in H x {0}.
class HSeries {
public:
    /// Throws InvalidArgument if a stored exponent has nonzero variable part.
    explicit HSeries(Series s);
    const Series& series() const { return s_; }
    /// Coefficient at h in H (m coordinates); OutsideBox when not certified.
    Scalar at(const Exponent& h) const;
    /// Value at the identity of H.
    Scalar constant_term() const;
    bool operator==(const HSeries& o) const { return s_ == o.s_; }

private:
    Series s_;
};

struct Factorization {
    Scalar lead;
    Exponent exp;
    /// lead^{-1} e^{-exp} f - 1; positive, cone offset 0.
    Series tail;
};

Series monomial(AmbientPtr amb, const Scalar& a, Exponent g);

Series add(const Series& f, const Series& g);
Series sub(const Series& f, const Series& g);
Series neg(const Series& f);
Series scale(const Series& f, const Scalar& c);
Series scale(const Series& f, const mpq_class& c);
/// Multiplication by e^v.
Series shift(const Series& f, const Exponent& v);
/// Coefficient at x multiplied by lambda . x (generalized Euler operator).
Series euler(const Series& f, std::span<const Int> lambda);

/// Product with an automatically derived result box.
Series mul(const Series& f, const Series& g);
/// Product certified on `target`; BoxUnderflow if the operands cannot certify it.
Series mul(const Series& f, const Series& g, const Box& target);
/// Nonnegative power with automatic boxes.
Series power(const Series& f, unsigned k);

Factorization factorize(const Series& f);
Series invert(const Series& f, const Box& target);
/// Exact inverse of a monomial; ZeroSeries / InvalidArgument otherwise.
Series invert_monomial(const Series& f);

using CoefficientFn = std::function<Scalar(std::size_t)>;
Series substitute(const CoefficientFn& c, const Series& f, const Box& target);
Series substitute(const std::vector<Scalar>& c, const Series& f, const Box& target);
Series log1p(const Series& f, const Box& target);

Scalar coefficient_at(const Series& f, const Exponent& x);
/// Variable exponents j (n integers).
HSeries h_coefficient_at(const Series& f, std::span<const Int> j);
Series truncate(const Series& f, const Box& smaller);
/// Restriction to `target`, allowed to extend past the box where the cone
/// certifies zero coefficients; OutsideBox otherwise.
Series restrict_to(const Series& f, const Box& target);
/// Coefficient at x using the cone outside the box; OutsideBox if uncertain.
mpq_class certified_coefficient(const Series& f, const Exponent& x);

/// Identical stored values on every point of `region` (both must certify it).
bool equal_on(const Series& f, const Series& g, const Box& region);
/// Box certified by both; nullopt when both are exact.
std::optional<Box> common_box(const Series& f, const Series& g);

void require_same_ambient(const Series& f, const Series& g);

}  // namespace gps
