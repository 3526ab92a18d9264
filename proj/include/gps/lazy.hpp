#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "gps/exponents.hpp"
#include "gps/series.hpp"

namespace gps {

struct LazyNode;

/// Deferred expression over series. Evaluation on a target box works out, from
/// support cones alone, which box every operand must be certified on, so callers
/// only name the coefficients they want.
class Lazy {
public:
    explicit Lazy(Series s);
    static Lazy constant(AmbientPtr amb, const mpq_class& a);

    const AmbientPtr& ambient_ptr() const;
    /// Value when the expression is a Laurent polynomial computed eagerly.
    const Series* exact_value() const;
    /// The wrapped series when this is a leaf or an exact value; null for deferred nodes.
    const Series* stored_value() const;
    bool is_zero() const;

    /// Certified superset of the support.
    Cone cone() const;
    /// Certified minimum of the support; nullopt for zero. LeadingTermUncertain
    /// when cancellation cannot be resolved.
    std::optional<Series::Leading> leading() const;
    /// Support certificate whose offset is the leading exponent.
    std::optional<Cone> leading_cone() const;
    /// Values certified on `target` (the result box is `target` unless exact).
    Series evaluate(const Box& target) const;

    const std::shared_ptr<const LazyNode>& node() const { return n_; }

private:
    explicit Lazy(std::shared_ptr<const LazyNode> n) : n_(std::move(n)) {}
    std::shared_ptr<const LazyNode> n_;

    friend Lazy operator+(const Lazy&, const Lazy&);
    friend Lazy operator*(const Lazy&, const Lazy&);
    friend Lazy scale(const Lazy&, const mpq_class&);
    friend Lazy shift(const Lazy&, const Exponent&);
    friend Lazy euler(const Lazy&, std::span<const Int>);
    friend Lazy inverse(const Lazy&);
};

Lazy operator+(const Lazy& a, const Lazy& b);
Lazy operator-(const Lazy& a, const Lazy& b);
Lazy operator-(const Lazy& a);
Lazy operator*(const Lazy& a, const Lazy& b);
Lazy scale(const Lazy& f, const mpq_class& c);
Lazy shift(const Lazy& f, const Exponent& v);
Lazy euler(const Lazy& f, std::span<const Int> lambda);
Lazy inverse(const Lazy& f);
/// Any integer power; negative powers go through inverse.
Lazy power(const Lazy& f, long k);
Lazy product(std::span<const Lazy> fs);
Lazy sum(std::span<const Lazy> fs);

/// f^k on `target`; negative k inverts.
Series power(const Series& f, long k, const Box& target);

}  // namespace gps
