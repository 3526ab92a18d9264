#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "gps/calculus.hpp"
#include "gps/exponents.hpp"
#include "gps/lazy.hpp"
#include "gps/series.hpp"

namespace gps {

/// Variable part of the leading exponent.
std::vector<Int> multiplicities(const Series& f);

/// n series whose multiplicity matrix is invertible in the coefficient field.
class ParameterSystem {
public:
    const std::vector<Lazy>& members() const { return members_; }
    const AmbientPtr& ambient_ptr() const { return members_.front().ambient_ptr(); }
    std::size_t size() const { return members_.size(); }
    /// Row l holds the multiplicities of member l.
    const IntMatrix& mult_matrix() const { return mult_; }
    const mpz_class& det() const { return det_; }
    const mpq_class& lead_coeff(std::size_t l) const { return lead_coeff_.at(l); }
    const Exponent& lead_exp(std::size_t l) const { return lead_exp_.at(l); }

private:
    friend ParameterSystem check_parameters(std::span<const Lazy> fs);
    std::vector<Lazy> members_;
    IntMatrix mult_;
    mpz_class det_;
    std::vector<mpq_class> lead_coeff_;
    std::vector<Exponent> lead_exp_;
};

/// NotParameters when the multiplicity determinant vanishes in the field.
ParameterSystem check_parameters(std::span<const Lazy> fs);
ParameterSystem check_parameters(std::span<const Series> fs);
/// Multiplicity determinant is +-1.
bool is_regular(const ParameterSystem& p);

struct GeneralizedFraction {
    NForm numerator;
    ParameterSystem denominator;
};

/// Numerator coefficient against dlog X after dividing by det s.
Series normalized_coefficient(const GeneralizedFraction& fr);
bool fraction_equiv(const GeneralizedFraction& a, const GeneralizedFraction& b);
HSeries residue(const GeneralizedFraction& fr);

/// Coefficient at Phi^idx of psi written in the parameters. `h_window` (m
/// coordinates) selects which H-exponents are certified; defaults to 0.
HSeries jacobi_coefficient(const Lazy& psi, const ParameterSystem& p, std::span<const Int> idx,
                           std::optional<Box> h_window = std::nullopt);
HSeries jacobi_coefficient(const Series& psi, const ParameterSystem& p, std::span<const Int> idx,
                           std::optional<Box> h_window = std::nullopt);

using Representation = std::map<std::vector<Int>, HSeries>;

/// All coefficients with index in `index_box` (n coordinates), by leading-term
/// elimination; requires a regular system.
Representation represent(const Series& psi, const ParameterSystem& p, const Box& index_box,
                         std::optional<Box> h_window = std::nullopt);

}  // namespace gps
