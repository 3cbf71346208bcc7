#pragma once

#include <random>
#include <string>
#include <vector>

#include "okb/okb.hpp"

namespace okb::test {

/// Seeded generator of small rationals, classes and flags.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    /// p/q with 0 <= p <= max_num, 1 <= q <= max_den.
    Rational nonneg(int max_num = 6, int max_den = 4)
    {
        Rational r(integer(0, max_num), integer(1, max_den));
        r.canonicalize();
        return r;
    }

    Rational positive(int max_num = 6, int max_den = 4)
    {
        Rational r(integer(1, max_num), integer(1, max_den));
        r.canonicalize();
        return r;
    }

    /// Nonnegative combination of the given classes; `strict` makes every coefficient positive.
    DivisorClass combination(const std::vector<DivisorClass>& gens, std::size_t rank, bool strict)
    {
        DivisorClass d = DivisorClass::zero(rank);
        for (const auto& g : gens) d += (strict ? positive() : nonneg()) * g;
        return d;
    }

    DivisorClass psef(const SurfaceModel& m) { return combination(m.eff_generators(), m.rank(), false); }
    DivisorClass big(const SurfaceModel& m) { return combination(m.eff_generators(), m.rank(), true); }
    DivisorClass nef(const SurfaceModel& m) { return combination(m.nef_cone().generators(), m.rank(), false); }
    DivisorClass ample(const SurfaceModel& m) { return combination(m.nef_cone().generators(), m.rank(), true); }

    template <class T>
    const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))]; }

    /// Flag on a random irreducible curve; each other curve meeting it gets a random
    /// admissible order with probability 1/2.
    AdmissibleFlag flag(const SurfaceModel& m)
    {
        std::vector<std::string> names;
        for (const auto& c : m.curves())
            if (c.irreducible) names.push_back(c.name);
        const std::string& name = pick(names);
        const auto& c = m.curve(name);
        std::map<std::string, int> orders;
        for (const auto& o : m.curves()) {
            if (o.name == name || !o.irreducible) continue;
            Rational meet = m.intersect(o.cls, c.cls);
            if (meet <= 0 || integer(0, 1) == 0) continue;
            int cap = static_cast<int>(std::min<long>(3, mpz_class(meet.get_num() / meet.get_den()).get_si()));
            if (cap > 0) orders[o.name] = integer(1, cap);
        }
        return AdmissibleFlag::at(name, orders);
    }

private:
    std::mt19937_64 rng_;
};

inline std::vector<SurfaceModel> builtin_models()
{
    std::vector<SurfaceModel> out;
    for (const auto& n : builtin_model_names()) out.push_back(builtin_model(n));
    return out;
}

/// Vertical slice [lo, hi] of a convex polygon at x1 = t, computed from its edges.
inline std::optional<std::pair<Rational, Rational>> slice(const RationalPolygon& p, const Rational& t)
{
    std::vector<Rational> ys;
    const auto& v = p.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % v.size()];
        if (a.x == t) ys.push_back(a.y);
        if ((a.x < t && t < b.x) || (b.x < t && t < a.x)) ys.push_back(a.y + (b.y - a.y) * (t - a.x) / (b.x - a.x));
    }
    if (ys.empty()) return std::nullopt;
    return std::make_pair(*std::min_element(ys.begin(), ys.end()), *std::max_element(ys.begin(), ys.end()));
}

/// Expected slice at x1 = t from an independent Zariski decomposition of D - tC.
inline std::pair<Rational, Rational> zariski_slice(const SurfaceModel& m, const AdmissibleFlag& flag,
                                                   const DivisorClass& d, const Rational& t)
{
    const auto& c = m.curve(flag.curve).cls;
    auto z = zariski_brute(m, d - t * c);
    Rational alpha(0);
    for (const auto& [name, a] : z.negative)
        if (name != flag.curve) alpha += a * flag.order(name);
    return {alpha, alpha + m.intersect(c, z.positive)};
}

/// Largest s with (s, 0) in p (axis 0) or (0, s) in p (axis 1); nullopt if the axis misses p.
inline std::optional<Rational> axis_extent(const RationalPolygon& p, int axis)
{
    std::vector<Rational> hits;
    const auto& v = p.vertices();
    auto coord = [&](const Point2& q, int k) { return k == 0 ? q.x : q.y; };
    const int other = 1 - axis;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % v.size()];
        if (coord(a, other) == 0) hits.push_back(coord(a, axis));
        Rational ao = coord(a, other), bo = coord(b, other);
        if ((ao < 0 && bo > 0) || (ao > 0 && bo < 0)) {
            Rational s = ao / (ao - bo);
            hits.push_back(coord(a, axis) + (coord(b, axis) - coord(a, axis)) * s);
        }
    }
    if (hits.empty()) return std::nullopt;
    return *std::max_element(hits.begin(), hits.end());
}

/// True iff p contains U intersected with the closed first quadrant for a small
/// neighbourhood U of the origin (p is convex and lies in the first quadrant).
inline bool contains_corner_neighbourhood(const RationalPolygon& p)
{
    if (!contains(p, Point2{0, 0})) return false;
    auto ex = axis_extent(p, 0), ey = axis_extent(p, 1);
    return ex && *ex > 0 && ey && *ey > 0;
}

}  // namespace okb::test
