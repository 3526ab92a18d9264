#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gps/series.hpp"
#include "lattice.hpp"

namespace gps::detail {

/// Merged, field-normalized, zero-free and sorted by the term order.
std::vector<Term> canonical_terms(const Ambient& amb, std::vector<Term> terms);
const Term* find_term(std::span<const Term> terms, const TermOrder& order, const Exponent& x);

/// Exact small series use their terms as offsets; otherwise the cone.
SupportSet support_set(const Series& f);
/// The box, or the bounding box of the terms of an exact series.
Box effective_box(const Series& f);
std::vector<Term> convolve(const Series& f, const Series& g, const std::optional<Box>& target);
/// Exponents in `target` whose product coefficient depends on an operand
/// coefficient outside that operand's box.
std::vector<Exponent> uncertain_products(const Series& f, const Series& g, const Box& target, bool first_only);
std::optional<Box> avoid_points(Box hull, std::vector<Exponent> bad, const Exponent& anchor);

/// Certified values of f at w.pts[i] + shift_by.
std::vector<mpq_class> window_values(const Series& f, const Window& w, const Exponent& shift_by, bool skip_zero);
/// Product of two dense window vectors, truncated to the window.
std::vector<mpq_class> window_mul(const Window& w, const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                                  const Field& F);

/// Inverse on `target` of a series with leading term lead*e^g and tail cone
/// generators `gens`; reads `values` only at z + g for z in the window `z`,
/// which must be reach_window(gens, target + g).
Series invert_values(const Series& values, const mpq_class& lead, const Exponent& g, const std::vector<Exponent>& gens,
                     const Box& target, const Window& z);

}  // namespace gps::detail
