#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "okb/rational.hpp"

namespace okb {

struct Point2 {
    Rational x;
    Rational y;

    bool operator==(const Point2&) const = default;
    friend bool operator<(const Point2& a, const Point2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }
    friend Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
};

inline Rational cross(const Point2& o, const Point2& a, const Point2& b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Convex polygon with exact vertices, counterclockwise from the lexicographically
/// smallest vertex, no three stored vertices collinear. One vertex is a point, two a segment.
class RationalPolygon {
public:
    RationalPolygon() = default;

    /// Convex hull of the points (monotone chain). Throws on an empty set.
    static RationalPolygon hull(std::vector<Point2> pts)
    {
        if (pts.empty()) throw Error(ErrorKind::InvalidInput, "hull of an empty point set");
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        RationalPolygon p;
        if (pts.size() <= 2) {
            p.v_ = pts;
            return p;
        }
        std::vector<Point2> h(2 * pts.size());
        std::size_t k = 0;
        for (const auto& q : pts) {
            while (k >= 2 && cross(h[k - 2], h[k - 1], q) <= 0) --k;
            h[k++] = q;
        }
        for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
            while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
            h[k++] = pts[i];
        }
        h.resize(k - 1);
        p.v_ = std::move(h);
        return p;
    }

    static RationalPolygon point(Point2 p) { return hull({std::move(p)}); }
    static RationalPolygon segment(Point2 a, Point2 b) { return hull({std::move(a), std::move(b)}); }

    const std::vector<Point2>& vertices() const { return v_; }
    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }

    /// 0 for a point, 1 for a segment, 2 otherwise.
    int dimension() const { return v_.size() >= 3 ? 2 : static_cast<int>(v_.size()) - 1; }

    bool operator==(const RationalPolygon&) const = default;

private:
    std::vector<Point2> v_;
};

inline RationalPolygon hull(std::vector<Point2> pts) { return RationalPolygon::hull(std::move(pts)); }

namespace detail {

// 0 for directions in (0, 180] degrees measured counterclockwise from (0,-1), else 1.
inline int half(const Point2& d) { return (d.x > 0 || (d.x == 0 && d.y > 0)) ? 0 : 1; }

inline bool angle_less(const Point2& a, const Point2& b)
{
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return a.x * b.y - a.y * b.x > 0;
}

inline std::vector<Point2> edges(const RationalPolygon& p)
{
    std::vector<Point2> e;
    const auto& v = p.vertices();
    if (v.size() < 2) return e;
    for (std::size_t i = 0; i < v.size(); ++i) e.push_back(v[(i + 1) % v.size()] - v[i]);
    return e;
}

}  // namespace detail

/// Minkowski sum by merging edge sequences in angular order.
inline RationalPolygon minkowski_sum(const RationalPolygon& a, const RationalPolygon& b)
{
    if (a.empty() || b.empty()) throw Error(ErrorKind::InvalidInput, "Minkowski sum with an empty polygon");
    auto ea = detail::edges(a), eb = detail::edges(b);
    std::vector<Point2> merged;
    std::merge(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(merged), detail::angle_less);
    std::vector<Point2> pts{a.vertices().front() + b.vertices().front()};
    for (const auto& e : merged) pts.push_back(pts.back() + e);
    return hull(std::move(pts));
}

/// Minkowski sum via the hull of all pairwise vertex sums (reference implementation).
inline RationalPolygon minkowski_sum_naive(const RationalPolygon& a, const RationalPolygon& b)
{
    std::vector<Point2> pts;
    for (const auto& p : a.vertices())
        for (const auto& q : b.vertices()) pts.push_back(p + q);
    return hull(std::move(pts));
}

inline Rational area(const RationalPolygon& p)
{
    const auto& v = p.vertices();
    if (v.size() < 3) return 0;
    Rational twice(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        twice += a.x * b.y - a.y * b.x;
    }
    return abs(twice) / 2;
}

inline RationalPolygon scale(const RationalPolygon& p, const Rational& r)
{
    if (r <= 0) throw Error(ErrorKind::InvalidInput, "scale factor must be positive");
    std::vector<Point2> pts;
    for (const auto& q : p.vertices()) pts.push_back({q.x * r, q.y * r});
    return hull(std::move(pts));
}

inline RationalPolygon translate(const RationalPolygon& p, const Point2& shift)
{
    std::vector<Point2> pts;
    for (const auto& q : p.vertices()) pts.push_back(q + shift);
    return hull(std::move(pts));
}

inline Point2 primitive_direction(const Point2& d)
{
    std::vector<Rational> v{d.x, d.y};
    auto p = primitive_ray(v);
    return {p[0], p[1]};
}

/// Same vertex count and parallel edge rays in cyclic order. Segments compare undirected.
inline bool similar(const RationalPolygon& a, const RationalPolygon& b)
{
    if (a.size() != b.size()) return false;
    if (a.size() <= 1) return true;
    if (a.size() == 2) {
        Point2 da = primitive_direction(a.vertices()[1] - a.vertices()[0]);
        Point2 db = primitive_direction(b.vertices()[1] - b.vertices()[0]);
        return da == db || da == Point2{-db.x, -db.y};
    }
    std::vector<Point2> da, db;
    for (const auto& e : detail::edges(a)) da.push_back(primitive_direction(e));
    for (const auto& e : detail::edges(b)) db.push_back(primitive_direction(e));
    for (std::size_t r = 0; r < db.size(); ++r) {
        if (da == db) return true;
        std::rotate(db.begin(), db.begin() + 1, db.end());
    }
    return false;
}

/// Points, segments and triangles are the indecomposable convex polygons.
inline bool is_indecomposable(const RationalPolygon& p) { return !p.empty() && p.size() <= 3; }

inline bool contains(const RationalPolygon& p, const Point2& q)
{
    const auto& v = p.vertices();
    if (v.empty()) return false;
    if (v.size() == 1) return v[0] == q;
    if (v.size() == 2) {
        if (cross(v[0], v[1], q) != 0) return false;
        return !(q < v[0]) && !(v[1] < q);
    }
    for (std::size_t i = 0; i < v.size(); ++i)
        if (cross(v[i], v[(i + 1) % v.size()], q) < 0) return false;
    return true;
}

/// Convex containment: every vertex of `inner` lies in `outer`.
inline bool contains(const RationalPolygon& outer, const RationalPolygon& inner)
{
    return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                       [&](const Point2& q) { return contains(outer, q); });
}

inline std::string to_string(const Point2& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

inline std::string to_string(const RationalPolygon& p)
{
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p.vertices()[i]);
    return s + "]";
}

}  // namespace okb
