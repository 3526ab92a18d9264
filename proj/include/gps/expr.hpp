#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "gps/lazy.hpp"
#include "gps/series.hpp"

namespace gps {

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Number, Symbol, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind;
    mpq_class number;       // Number
    std::size_t symbol = 0;  // Symbol: index into the declared names
    long exponent = 0;       // Pow
    std::vector<Expr> kids;
};

/// Declared names: the first m name the generators of H, the rest the variables.
struct SessionConfig {
    std::string order;  // empty: identity
    std::vector<std::string> vars;
    std::size_t hdim = 0;
    std::string field = "q";
    std::string box;  // empty: none

    /// Names in exponent-coordinate order (H generators, then variables).
    std::vector<std::string> names() const;
    AmbientPtr ambient() const;
    std::optional<Box> target_box() const;
};

/// Default names H1..Hm of the H generators.
std::vector<std::string> default_h_names(std::size_t m);

/// ParseError (with line, column and expected tokens) or UndeclaredVariable.
Expr parse_expr(std::string_view text, const std::vector<std::string>& names);

Lazy to_lazy(const Expr& e, const AmbientPtr& amb);
/// Exact when the expression is a Laurent polynomial; otherwise certified on
/// the configured box (MissingBox when there is none).
Series evaluate(const Expr& e, const SessionConfig& cfg);

/// Sum of terms in ascending order, parseable by parse_expr.
std::string format_polynomial(const Series& f, const std::vector<std::string>& names);
/// Scalar in exact form: "3", "-1/2", residues mod p as integers.
std::string format_scalar(const mpq_class& c);

}  // namespace gps
