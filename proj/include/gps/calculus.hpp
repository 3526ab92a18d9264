#pragma once

#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "gps/exponents.hpp"
#include "gps/lazy.hpp"
#include "gps/series.hpp"

namespace gps {

/// A set of variables Y_l = e^{y_l}: the variable parts of y_1..y_n form a
/// unimodular matrix. Variable indices are 0-based throughout.
class VariableSet {
public:
    /// X_1..X_n of the ambient split.
    static VariableSet standard(const GroupSplit& split);
    /// Throws NotVariables unless the variable parts have determinant +-1.
    VariableSet(const GroupSplit& split, std::vector<Exponent> ys);

    std::size_t size() const { return ys_.size(); }
    const Exponent& exponent(std::size_t l) const { return ys_.at(l); }
    /// Coordinate of x along Y_l (the H part is ignored).
    Int coordinate(std::size_t l, const Exponent& x) const;
    /// Functional on Z^k giving coordinate l; zero on H.
    const std::vector<Int>& functional(std::size_t l) const { return lambda_.at(l); }
    /// Y_l as a series.
    Series monomial(const AmbientPtr& amb, std::size_t l) const;

private:
    GroupSplit split_;
    std::vector<Exponent> ys_;
    std::vector<std::vector<Int>> lambda_;
};

/// Partial derivative with respect to variable i of the ambient variables.
Series partial(const Series& f, std::size_t i);
Series partial(const Series& f, std::size_t i, const VariableSet& vars);
Lazy partial(const Lazy& f, std::size_t i);

/// Components against dX_1..dX_n.
struct OneForm {
    std::vector<Series> components;
};

enum class BasisMode { dX, dlogX };

/// coeff * dX or coeff * dlog X.
struct NForm {
    Series coeff;
    BasisMode mode = BasisMode::dX;
};

OneForm differential(const Series& f);
/// df / f with components certified on `target`; a default window around the
/// leading term is used when omitted.
OneForm dlog(const Series& f, std::optional<Box> target = std::nullopt);
OneForm add(const OneForm& a, const OneForm& b);

/// Determinant of the component matrix.
NForm wedge(std::span<const OneForm> forms, BasisMode mode = BasisMode::dX);
Series jacobian(std::span<const Series> fs);
Series jacobian(std::span<const Series> fs, const VariableSet& vars);

/// dlog f_1 ^ ... ^ dlog f_n, as a dlog X form certified on `window`.
NForm dlog_wedge(std::span<const Series> fs, std::optional<Box> window = std::nullopt);
/// df_1/f_1^{i_1} ^ ... ^ df_n/f_n^{i_n}, as a dlog X form certified on `window`.
NForm power_wedge(std::span<const Series> fs, std::span<const long> powers, std::optional<Box> window = std::nullopt);
/// Lazy coefficient of dlog f_1 ^ ... ^ dlog f_n against dlog X.
Lazy dlog_wedge_lazy(std::span<const Lazy> fs);

NForm to_mode(const NForm& w, BasisMode mode);
/// kappa[[e^H]]-coefficient at X^j (dX or dlog X basis per `mode`).
HSeries form_h_coefficient(const NForm& w, std::span<const Int> j, BasisMode mode);

/// Default certification window: hull of 0 and the normalized tails.
Box default_window(std::span<const Series> fs);

}  // namespace gps
