#include "lattice.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <memory>

#include "gps/error.hpp"

namespace gps::detail {

namespace {

Int ceil_div(Int num, Int den) {  // den > 0
    Int q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return q;
}

std::vector<Exponent> concat(std::span<const Exponent> a, std::span<const Exponent> b) {
    std::vector<Exponent> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

void check_limit(std::size_t n) {
    if (n > kEnumerationLimit)
        throw Error(ErrorKind::ResourceLimit, "more than " + std::to_string(kEnumerationLimit) +
                                                  " lattice points in a certification window");
}

// Points of N(gens) within `bounds` that lead (upward through gens) to a point
// satisfying `hit`.
template <class Hit>
Window upward_closed_reach(std::span<const Exponent> gens, const Bounds& bounds, std::size_t k, Hit hit) {
    Window w;
    Exponent zero(k);
    if (!bounds.admits(zero)) return w;
    std::vector<Exponent> visited = enumerate(std::span<const Exponent>(&zero, 1), gens, bounds);
    const auto& f0 = bounds.fns.front();
    std::vector<std::pair<Int, std::size_t>> by_weight;
    by_weight.reserve(visited.size());
    for (std::size_t i = 0; i < visited.size(); ++i) by_weight.emplace_back(dot(f0, visited[i]), i);
    std::sort(by_weight.begin(), by_weight.end(), [](auto& a, auto& b) { return a.first > b.first; });
    PointMap<bool> good;
    good.reserve(visited.size());
    for (auto [weight, i] : by_weight) {
        const Exponent& z = visited[i];
        bool g = hit(z);
        for (std::size_t j = 0; !g && j < gens.size(); ++j) {
            auto it = good.find(z + gens[j]);
            g = it != good.end() && it->second;
        }
        good.emplace(z, g);
    }
    for (auto it = by_weight.rbegin(); it != by_weight.rend(); ++it) {
        const Exponent& z = visited[it->second];
        if (good[z]) {
            w.index.emplace(z, w.pts.size());
            w.pts.push_back(z);
        }
    }
    return w;
}

}  // namespace

std::vector<std::vector<Int>> monotone_functionals(const TermOrder& order, std::span<const Exponent> gens) {
    const auto& rows = order.matrix();
    const std::size_t k = rows.size();
    std::vector<int> cls(gens.size(), -1);
    for (std::size_t g = 0; g < gens.size(); ++g) {
        for (std::size_t j = 0; j < k; ++j) {
            Int v = dot(rows[j], gens[g]);
            if (v < 0) break;
            if (v > 0) {
                cls[g] = static_cast<int>(j);
                break;
            }
        }
        if (cls[g] < 0)
            throw Error(ErrorKind::NonPositiveSupportElement, gens[g].to_string() + " is not positive");
    }
    std::vector<Int> w = rows[k - 1];
    for (std::size_t jj = k - 1; jj-- > 0;) {
        Int lambda = 0;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (cls[g] != static_cast<int>(jj)) continue;
            Int need = ceil_div(checked_sub(1, dot(w, gens[g])), dot(rows[jj], gens[g]));
            lambda = std::max(lambda, need);
        }
        for (std::size_t i = 0; i < k; ++i) w[i] = checked_add(w[i], checked_mul(lambda, rows[jj][i]));
    }
    std::vector<std::vector<Int>> fns{w};
    if (rows[0] != w) fns.push_back(rows[0]);
    for (std::size_t i = 0; i < k; ++i) {
        bool nonneg = true, nonpos = true;
        for (const auto& g : gens) {
            nonneg = nonneg && g[i] >= 0;
            nonpos = nonpos && g[i] <= 0;
        }
        if (nonneg) {
            std::vector<Int> e(k, 0);
            e[i] = 1;
            fns.push_back(std::move(e));
        }
        if (nonpos) {
            std::vector<Int> e(k, 0);
            e[i] = -1;
            fns.push_back(std::move(e));
        }
    }
    return fns;
}

bool Bounds::admits(const Exponent& x) const {
    for (std::size_t i = 0; i < fns.size(); ++i)
        if (dot(fns[i], x) > max[i]) return false;
    return true;
}

Bounds target_bounds(std::vector<std::vector<Int>> fns, const Box& target, std::span<const Exponent> slack) {
    Bounds b;
    for (const auto& f : fns) {
        Int m = target.max_dot(f);
        if (!slack.empty()) {
            Int lo = std::numeric_limits<Int>::max();
            for (const auto& s : slack) lo = std::min(lo, dot(f, s));
            m = checked_sub(m, lo);
        }
        b.max.push_back(m);
    }
    b.fns = std::move(fns);
    return b;
}

std::vector<Exponent> enumerate(std::span<const Exponent> offsets, std::span<const Exponent> gens,
                                const Bounds& bounds) {
    PointSet seen;
    std::vector<Exponent> out;
    std::deque<Exponent> queue;
    for (const auto& o : offsets) {
        if (bounds.admits(o) && seen.insert(o).second) {
            out.push_back(o);
            queue.push_back(o);
        }
    }
    while (!queue.empty()) {
        Exponent z = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : gens) {
            Exponent y = z + g;
            if (!bounds.admits(y) || !seen.insert(y).second) continue;
            out.push_back(y);
            queue.push_back(std::move(y));
            check_limit(out.size());
        }
    }
    return out;
}

Reacher::Reacher(const TermOrder& order, std::vector<Exponent> gens, const Box& target)
    : gens_(std::move(gens)), target_(target),
      bounds_(target_bounds(monotone_functionals(order, gens_), target, {})) {}

bool Reacher::operator()(const Exponent& z) {
    if (target_.contains(z)) return true;
    if (gens_.empty() || !bounds_.admits(z)) return false;
    if (auto it = memo_.find(z); it != memo_.end()) return it->second;
    bool r = false;
    for (std::size_t i = 0; i < gens_.size() && !r; ++i) r = (*this)(z + gens_[i]);
    memo_.emplace(z, r);
    check_limit(memo_.size());
    return r;
}

ConeMembership::ConeMembership(const TermOrder& order, const Cone& cone)
    : cone_(cone), fns_(monotone_functionals(order, cone.generators)) {
    for (const auto& f : fns_) floor_.push_back(dot(f, cone_.offset));
}

bool ConeMembership::operator()(const Exponent& z) {
    if (z == cone_.offset) return true;
    if (cone_.generators.empty()) return false;
    for (std::size_t i = 0; i < fns_.size(); ++i)
        if (dot(fns_[i], z) < floor_[i]) return false;
    if (auto it = memo_.find(z); it != memo_.end()) return it->second;
    bool r = false;
    for (std::size_t i = 0; i < cone_.generators.size() && !r; ++i) r = (*this)(z - cone_.generators[i]);
    memo_.emplace(z, r);
    check_limit(memo_.size());
    return r;
}

SupportSet support_of(const Cone& c) { return SupportSet{{c.offset}, c.generators}; }

std::vector<Exponent> reaching_points(const TermOrder& order, const SupportSet& A, const SupportSet& B,
                                      const Box& target) {
    auto all = concat(A.gens, B.gens);
    Bounds bounds = target_bounds(monotone_functionals(order, all), target, B.offsets);
    std::vector<Exponent> cand = enumerate(A.offsets, A.gens, bounds);
    Reacher reach(order, B.gens, target);
    std::vector<Exponent> out;
    for (const auto& a : cand) {
        for (const auto& o : B.offsets) {
            if (reach(a + o)) {
                out.push_back(a);
                break;
            }
        }
    }
    return out;
}

std::vector<Exponent> partners(const TermOrder& order, const Exponent& a, const SupportSet& B,
                               const Box& target) {
    Bounds bounds = target_bounds(monotone_functionals(order, B.gens), target, std::span<const Exponent>(&a, 1));
    std::vector<Exponent> out;
    for (auto& b : enumerate(B.offsets, B.gens, bounds))
        if (target.contains(a + b)) out.push_back(std::move(b));
    return out;
}

Window reach_window(const TermOrder& order, std::span<const Exponent> gens, const Box& target, std::size_t k) {
    Bounds bounds = target_bounds(monotone_functionals(order, gens), target, {});
    return upward_closed_reach(gens, bounds, k, [&](const Exponent& z) { return target.contains(z); });
}

Window downward_closure(const TermOrder& order, std::span<const Exponent> gens, std::span<const Exponent> seeds,
                        std::size_t k) {
    Window w;
    if (seeds.empty()) return w;
    Bounds bounds;
    bounds.fns = monotone_functionals(order, gens);
    for (const auto& f : bounds.fns) {
        Int m = std::numeric_limits<Int>::min();
        for (const auto& s : seeds) m = std::max(m, dot(f, s));
        bounds.max.push_back(m);
    }
    PointSet seed_set(seeds.begin(), seeds.end());
    return upward_closed_reach(gens, bounds, k, [&](const Exponent& z) { return seed_set.count(z) > 0; });
}

Cone compact_cone(const TermOrder& order, std::span<const Exponent> pts, std::span<const Exponent> gens) {
    if (pts.empty()) throw Error(ErrorKind::InvalidArgument, "cone of an empty point set");
    std::vector<Exponent> sorted(pts.begin(), pts.end());
    std::sort(sorted.begin(), sorted.end(), [&](const Exponent& a, const Exponent& b) { return order.less(a, b); });
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const Exponent lo = sorted.front();
    const Exponent zero(lo.size());
    Cone c = make_cone(order, zero, std::vector<Exponent>(gens.begin(), gens.end()));
    auto member = std::make_unique<ConeMembership>(order, c);
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        Exponent d = sorted[i] - lo;
        if ((*member)(d)) continue;
        c.generators.push_back(std::move(d));
        c = make_cone(order, zero, std::move(c.generators));
        member = std::make_unique<ConeMembership>(order, c);
    }
    return Cone{lo, std::move(c.generators)};
}

}  // namespace gps::detail
