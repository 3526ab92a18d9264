#pragma once

#include <string>
#include <vector>

#include "gps/lazy.hpp"
#include "gps/residues.hpp"
#include "gps/scalar.hpp"
#include "gps/series.hpp"

namespace gps {

struct DysonInstance {
    std::vector<long> a;
};

/// BadDimension unless n >= 2 and every a_i >= 0.
void validate(const DysonInstance& inst);

/// Z^n over Q with X_1 largest (identity matrix).
AmbientPtr wilson_ambient(std::size_t n);
/// Z^n over Q with X_n largest (reversed identity).
AmbientPtr egorychev_ambient(std::size_t n);

/// Constant term of prod_{i != j} (1 - X_i/X_j)^{a_i}, expanded exactly.
Scalar dyson_lhs(const DysonInstance& inst);
/// (a_1 + ... + a_n)! / (a_1! ... a_n!).
Scalar dyson_rhs(const DysonInstance& inst);

/// prod_{j != i} (1 - X_i/X_j) for i = 0..n-1 over the Wilson ambient; Phi_i is its inverse.
std::vector<Series> wilson_denominators(std::size_t n);
/// Phi_0, ..., Phi_{n-1} as deferred inverses.
std::vector<Lazy> wilson_phis(std::size_t n);
/// (X_1, Phi_2, ..., Phi_n).
ParameterSystem wilson_parameters(std::size_t n);
/// Sum of all Phi_i equals 1 on `box`.
bool lagrange_interpolation_check(std::size_t n, const Box& box);

/// prod_{j<k} (X_j - X_k) over `amb`.
Series vandermonde(const AmbientPtr& amb);
/// Upsilon_1..Upsilon_n over the Egorychev ambient.
std::vector<Series> egorychev_members(std::size_t n);
ParameterSystem egorychev_parameters(std::size_t n);
/// sum_l Upsilon_l / X_l^i is Delta for i = 0 and 0 for 1 <= i <= n-1.
bool cramer_identity_check(std::size_t n);

enum class DysonMethod { direct, wilson, egorychev };
DysonMethod parse_dyson_method(const std::string& s);
std::string to_string(DysonMethod m);

struct DysonResult {
    Scalar lhs;
    Scalar rhs;
    bool equal = false;
};

DysonResult dyson_verify(const DysonInstance& inst, DysonMethod method);

}  // namespace gps
