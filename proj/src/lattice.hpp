#pragma once

// Finite enumeration of cone points near a box. Every routine here prunes with
// linear functionals that are nonnegative on the generators involved, so a point
// rejected by a bound can never be completed into the target.

#include <cstddef>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gps/exponents.hpp"

namespace gps::detail {

using PointSet = std::unordered_set<Exponent, ExponentHash>;
template <class V>
using PointMap = std::unordered_map<Exponent, V, ExponentHash>;

inline constexpr std::size_t kEnumerationLimit = 4'000'000;

/// Functionals nonnegative on `gens`; the first is >= 1 on each of them.
std::vector<std::vector<Int>> monotone_functionals(const TermOrder& order, std::span<const Exponent> gens);

/// Upper bounds f(x) <= bound for each functional.
struct Bounds {
    std::vector<std::vector<Int>> fns;
    std::vector<Int> max;

    bool admits(const Exponent& x) const;
};

/// Bounds for points x such that x + s lands in `target` for some s >= some
/// element of `slack` (in every functional).
Bounds target_bounds(std::vector<std::vector<Int>> fns, const Box& target, std::span<const Exponent> slack);

/// offsets + N(gens) intersected with the bounds, discovery order.
std::vector<Exponent> enumerate(std::span<const Exponent> offsets, std::span<const Exponent> gens,
                                const Bounds& bounds);

/// Whether z + N(gens) meets the target box.
class Reacher {
public:
    Reacher(const TermOrder& order, std::vector<Exponent> gens, const Box& target);
    bool operator()(const Exponent& z);

private:
    std::vector<Exponent> gens_;
    Box target_;
    Bounds bounds_;
    PointMap<bool> memo_;
};

/// Membership in offset + N(gens).
class ConeMembership {
public:
    ConeMembership(const TermOrder& order, const Cone& cone);
    bool operator()(const Exponent& z);

private:
    Cone cone_;
    std::vector<std::vector<Int>> fns_;
    std::vector<Int> floor_;
    PointMap<bool> memo_;
};

/// Finite generating data: offsets + N(gens).
struct SupportSet {
    std::vector<Exponent> offsets;
    std::vector<Exponent> gens;
};

SupportSet support_of(const Cone& c);

/// Points a of A with a + b in target for some b in B.
std::vector<Exponent> reaching_points(const TermOrder& order, const SupportSet& A, const SupportSet& B,
                                      const Box& target);

/// Points b of B with a + b in target.
std::vector<Exponent> partners(const TermOrder& order, const Exponent& a, const SupportSet& B,
                               const Box& target);

/// {z in N(gens) : z + N(gens) meets target}; downward closed, with an index.
struct Window {
    std::vector<Exponent> pts;
    PointMap<std::size_t> index;

    std::size_t size() const { return pts.size(); }
    const std::size_t* find(const Exponent& x) const {
        auto it = index.find(x);
        return it == index.end() ? nullptr : &it->second;
    }
};

Window reach_window(const TermOrder& order, std::span<const Exponent> gens, const Box& target,
                    std::size_t k);

/// Downward closure inside N(gens) of `seeds` (which must lie in N(gens)).
Window downward_closure(const TermOrder& order, std::span<const Exponent> gens,
                        std::span<const Exponent> seeds, std::size_t k);

/// Offset o_min plus a small generator set covering all of `pts` and `gens`.
Cone compact_cone(const TermOrder& order, std::span<const Exponent> pts, std::span<const Exponent> gens);

}  // namespace gps::detail
