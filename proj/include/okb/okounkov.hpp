#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "okb/expr.hpp"
#include "okb/lattice.hpp"
#include "okb/polygon.hpp"
#include "okb/positivity.hpp"
#include "okb/zariski.hpp"

namespace okb {

/// Flag {x} in C in S. The point is described only through the local orders
/// ord_x(C'|_C) of the other declared curves.
struct AdmissibleFlag {
    std::string curve;
    std::map<std::string, int> point_orders;
    bool general_point = true;

    static AdmissibleFlag general(std::string curve) { return {std::move(curve), {}, true}; }

    static AdmissibleFlag at(std::string curve, std::map<std::string, int> orders)
    {
        bool general = true;
        for (const auto& [name, k] : orders)
            if (k != 0) general = false;
        return {std::move(curve), std::move(orders), general};
    }

    int order(const std::string& name) const
    {
        auto it = point_orders.find(name);
        return it == point_orders.end() ? 0 : it->second;
    }
};

inline void validate_flag(const SurfaceModel& model, const AdmissibleFlag& flag)
{
    const auto& c = model.curve(flag.curve);
    if (!c.irreducible) throw Error(ErrorKind::InvalidInput, "flag curve '" + flag.curve + "' is not irreducible");
    for (const auto& [name, k] : flag.point_orders) {
        const auto& other = model.curve(name);
        if (k < 0) throw Error(ErrorKind::InvalidInput, "negative point order for '" + name + "'");
        if (flag.general_point && k != 0) throw Error(ErrorKind::InvalidInput, "general flag point with nonzero order");
        if (name != flag.curve && Rational(k) > model.intersect(other.cls, c.cls))
            throw Error(ErrorKind::InvalidInput, "order of '" + name + "' exceeds its intersection with the flag curve");
    }
}

struct Affine {
    Rational c0;
    Rational c1;

    Rational at(const Rational& t) const { return c0 + c1 * t; }
    bool operator==(const Affine&) const = default;
};

struct BodyPiece {
    Rational t0;
    Rational t1;
    Affine alpha;
    Affine beta;
    std::set<std::string> support;
};

enum class BodyKind { Big, Limiting, Valuative, Infinitesimal };

inline const char* kind_name(BodyKind k)
{
    switch (k) {
    case BodyKind::Big: return "big";
    case BodyKind::Limiting: return "limiting";
    case BodyKind::Valuative: return "valuative";
    case BodyKind::Infinitesimal: return "infinitesimal";
    }
    return "unknown";
}

struct BodyResult {
    RationalPolygon polygon;
    std::vector<BodyPiece> pieces;
    BodyKind kind = BodyKind::Big;
    std::vector<std::string> notes;
};

/// Translates a body by (s1, s2): x1 -> x1 + s1, x2 -> x2 + s2.
inline BodyResult shifted(BodyResult b, const Point2& s)
{
    b.polygon = translate(b.polygon, s);
    for (auto& p : b.pieces) {
        p.t0 += s.x;
        p.t1 += s.x;
        p.alpha = {p.alpha.c0 - p.alpha.c1 * s.x + s.y, p.alpha.c1};
        p.beta = {p.beta.c0 - p.beta.c1 * s.x + s.y, p.beta.c1};
    }
    return b;
}

namespace detail {

// Sign of c0 + c1 t at t0 + epsilon.
inline int sign_after(const Rational& c0, const Rational& c1, const Rational& t0)
{
    Rational v = c0 + c1 * t0;
    if (v != 0) return sgn(v);
    return sgn(c1);
}

struct AffineZariski {
    std::vector<const CurveDecl*> support;
    Vector n0, n1;      // n_i(t) = n0_i + t n1_i
    DivisorClass p0, p1;  // P_t = p0 + t p1
};

inline AffineZariski solve_affine(const SurfaceModel& model, const DivisorClass& d, const DivisorClass& c,
                                  std::vector<const CurveDecl*> support)
{
    AffineZariski z{std::move(support), {}, {}, d, -c};
    if (z.support.empty()) return z;
    Matrix g = curve_gram(model, z.support);
    if (!is_negative_definite(g))
        throw Error(ErrorKind::ModelInconsistent, "wall solver met a support that is not negative definite");
    Vector r0, r1;
    for (const auto* ci : z.support) {
        r0.push_back(model.intersect(d, ci->cls));
        r1.push_back(-model.intersect(c, ci->cls));
    }
    z.n0 = *solve(g, r0);
    z.n1 = *solve(g, r1);
    for (std::size_t i = 0; i < z.support.size(); ++i) {
        z.p0 -= z.n0[i] * z.support[i]->cls;
        z.p1 -= z.n1[i] * z.support[i]->cls;
    }
    return z;
}

// Zariski decomposition of D - tC valid on (t0, t0 + epsilon), by the iterative
// algorithm run over lexicographic signs.
inline AffineZariski zariski_after(const SurfaceModel& model, const DivisorClass& d, const DivisorClass& c,
                                   const Rational& t0)
{
    const auto candidates = model.negative_curves();
    AffineZariski z = solve_affine(model, d, c, {});
    for (;;) {
        std::vector<const CurveDecl*> added;
        for (const auto* cand : candidates) {
            if (std::find(z.support.begin(), z.support.end(), cand) != z.support.end()) continue;
            if (sign_after(model.intersect(z.p0, cand->cls), model.intersect(z.p1, cand->cls), t0) < 0)
                added.push_back(cand);
        }
        if (added.empty()) break;
        auto s = z.support;
        s.insert(s.end(), added.begin(), added.end());
        z = solve_affine(model, d, c, std::move(s));
    }
    for (std::size_t i = 0; i < z.support.size(); ++i)
        if (sign_after(z.n0[i], z.n1[i], t0) <= 0)
            throw Error(ErrorKind::ModelInconsistent, "negative part coefficient is not positive after a wall");
    return z;
}

inline BodyPiece make_piece(const SurfaceModel& model, const AdmissibleFlag& flag, const DivisorClass& c,
                            const AffineZariski& z, const Rational& t0, const Rational& t1)
{
    BodyPiece piece{t0, t1, {0, 0}, {0, 0}, {}};
    for (std::size_t i = 0; i < z.support.size(); ++i) {
        const auto& name = z.support[i]->name;
        piece.support.insert(name);
        if (name == flag.curve) continue;
        Rational k(flag.order(name));
        piece.alpha.c0 += z.n0[i] * k;
        piece.alpha.c1 += z.n1[i] * k;
    }
    piece.beta = {piece.alpha.c0 + model.intersect(c, z.p0), piece.alpha.c1 + model.intersect(c, z.p1)};
    return piece;
}

inline RationalPolygon polygon_of(const std::vector<BodyPiece>& pieces)
{
    std::vector<Point2> pts;
    for (const auto& p : pieces)
        for (const auto* t : {&p.t0, &p.t1}) {
            pts.push_back({*t, p.alpha.at(*t)});
            pts.push_back({*t, p.beta.at(*t)});
        }
    return hull(std::move(pts));
}

}  // namespace detail

/// Piecewise t-walk over D - tC for t in [a, mu], with a = mult_C N(D) and mu the
/// pseudoeffective threshold. Defined for any pseudoeffective D; the polygon is the
/// region a <= x1 <= mu, alpha(x1) <= x2 <= beta(x1).
inline BodyResult okounkov_walk(const SurfaceModel& model, const AdmissibleFlag& flag, const DivisorClass& d)
{
    validate_flag(model, flag);
    const DivisorClass& c = model.curve(flag.curve).cls;
    auto zd = zariski_decompose(model, d);
    const Rational a = zd.coefficient(flag.curve);
    auto mu_ext = sup_threshold(model, d, c, ThresholdMode::Pseudoeffective);
    if (mu_ext.is_infinite()) throw Error(ErrorKind::ModelInconsistent, "pseudoeffective threshold along the flag curve is unbounded");
    const Rational mu = mu_ext.value();
    if (a > mu) throw Error(ErrorKind::ModelInconsistent, "empty t-interval: a > mu");

    BodyResult out;
    if (a == mu) {
        auto z = zariski_decompose(model, d - mu * c);
        detail::AffineZariski az{{}, {}, {}, z.positive, DivisorClass::zero(model.rank())};
        for (const auto& [name, coef] : z.negative) {
            az.support.push_back(&model.curve(name));
            az.n0.push_back(coef);
            az.n1.push_back(0);
        }
        out.pieces.push_back(detail::make_piece(model, flag, c, az, mu, mu));
    }

    const auto candidates = model.negative_curves();
    const std::size_t max_pieces = 4 * (candidates.size() + 1) * (candidates.size() + 1);
    Rational t0 = a;
    while (t0 < mu) {
        if (out.pieces.size() > max_pieces) throw Error(ErrorKind::ModelInconsistent, "t-walk does not terminate");
        auto z = detail::zariski_after(model, d, c, t0);
        Rational t1 = mu;
        for (const auto* cand : candidates) {
            if (std::find(z.support.begin(), z.support.end(), cand) != z.support.end()) continue;
            Rational v0 = model.intersect(z.p0, cand->cls), v1 = model.intersect(z.p1, cand->cls);
            if (v1 >= 0) continue;
            Rational root = -v0 / v1;
            if (root > t0 && root < t1) t1 = root;
        }
        for (std::size_t i = 0; i < z.support.size(); ++i) {
            if (z.n1[i] >= 0) continue;
            Rational root = -z.n0[i] / z.n1[i];
            if (root > t0 && root < t1) t1 = root;
        }
        out.pieces.push_back(detail::make_piece(model, flag, c, z, t0, t1));
        t0 = t1;
    }
    out.polygon = detail::polygon_of(out.pieces);
    return out;
}

/// Okounkov body of a big divisor.
inline BodyResult okounkov_body_big(const SurfaceModel& model, const AdmissibleFlag& flag, const DivisorClass& d)
{
    if (!is_big(model, d)) throw Error(ErrorKind::NotBig, "divisor is not big");
    BodyResult b = okounkov_walk(model, flag, d);
    b.kind = BodyKind::Big;
    return b;
}

/// Translation vector (mult_C N, ord_x of the part of N off C) for a curve table N.
inline Point2 flag_shift(const AdmissibleFlag& flag, const CurveTable& n)
{
    Point2 s{0, 0};
    for (const auto& [name, coef] : n) {
        if (name == flag.curve) s.x += coef;
        else s.y += coef * flag.order(name);
    }
    return s;
}

namespace detail {

// Limiting body of a nef, non-big P (no shift).
inline BodyResult limiting_of_positive(const SurfaceModel& model, const AdmissibleFlag& flag, const DivisorClass& p)
{
    const DivisorClass& c = model.curve(flag.curve).cls;
    BodyResult out;
    out.kind = BodyKind::Limiting;
    Rational pc = model.intersect(p, c);
    if (pc > 0) {
        out.pieces.push_back({0, 0, {0, 0}, {pc, 0}, {}});
        out.polygon = RationalPolygon::segment({0, 0}, {0, pc});
        return out;
    }
    auto mu_ext = sup_threshold(model, p, c, ThresholdMode::Pseudoeffective);
    if (mu_ext.is_infinite()) throw Error(ErrorKind::ModelInconsistent, "pseudoeffective threshold along the flag curve is unbounded");
    const Rational mu = mu_ext.value();
    if (mu == 0) {
        out.pieces.push_back({0, 0, {0, 0}, {0, 0}, {}});
        out.polygon = RationalPolygon::point({0, 0});
        return out;
    }
    DivisorClass rest = p - mu * c;
    if (!is_pseudoeffective(model, rest)) throw Error(ErrorKind::ModelInconsistent, "P - mu C is not effective in the model");
    auto zr = zariski_decompose(model, rest);
    if (!zr.positive.is_zero())
        throw Error(ErrorKind::ModelInconsistent, "P - mu C is not a combination of declared negative curves");
    Rational ord(0);
    std::set<std::string> support;
    for (const auto& [name, coef] : zr.negative) {
        support.insert(name);
        if (name != flag.curve) ord += coef * flag.order(name);
    }
    Rational slope = ord / mu;
    out.pieces.push_back({0, mu, {0, slope}, {0, slope}, support});
    out.polygon = RationalPolygon::segment({0, 0}, {mu, ord});
    return out;
}

}  // namespace detail

/// Limiting Okounkov body of a pseudoeffective divisor.
inline BodyResult limiting_body(const SurfaceModel& model, const AdmissibleFlag& flag, const DivisorClass& d)
{
    validate_flag(model, flag);
    if (!is_pseudoeffective(model, d)) throw Error(ErrorKind::NotPseudoeffective, "divisor is not pseudoeffective");
    if (is_big(model, d)) {
        BodyResult b = okounkov_body_big(model, flag, d);
        b.kind = BodyKind::Limiting;
        return b;
    }
    auto z = zariski_decompose(model, d);
    BodyResult b = shifted(detail::limiting_of_positive(model, flag, z.positive), flag_shift(flag, z.negative));
    b.kind = BodyKind::Limiting;
    return b;
}

struct ValuativeOptions {
    /// Replace the default restricted volume P_s.C in the vertical-segment case.
    bool override_restricted_volume = false;
    std::optional<Rational> restricted_volume;
};

/// Valuative Okounkov body of an effective divisor with a user-supplied s-decomposition.
inline BodyResult valuative_body(const SurfaceModel& model, const AdmissibleFlag& flag, const DivisorClass& d,
                                 const SDecomposition& sdec, const ValuativeOptions& opts = {})
{
    validate_flag(model, flag);
    if (!is_pseudoeffective(model, d)) throw Error(ErrorKind::NotEffectiveInput, "divisor is not effective");
    if (!(sdec.positive + table_class(model, sdec.fixed) == d))
        throw Error(ErrorKind::NotEffectiveInput, "s-decomposition does not reassemble the divisor");
    if (is_big(model, d)) {
        BodyResult b = okounkov_body_big(model, flag, d);
        b.kind = BodyKind::Valuative;
        return b;
    }
    const DivisorClass& c = model.curve(flag.curve).cls;
    const Point2 shift = flag_shift(flag, sdec.fixed);
    Rational pc = model.intersect(sdec.positive, c);
    BodyResult b;
    if (pc > 0) {
        Rational len = pc;
        if (opts.override_restricted_volume) {
            if (!opts.restricted_volume)
                throw Error(ErrorKind::NotSupported, "restricted volume override requested without a value");
            len = *opts.restricted_volume;
        }
        b.pieces.push_back({0, 0, {0, 0}, {len, 0}, {}});
        b.polygon = RationalPolygon::segment({0, 0}, {0, len});
    } else {
        b = limiting_body(model, flag, sdec.positive);
    }
    b = shifted(std::move(b), shift);
    b.kind = BodyKind::Valuative;
    return b;
}

/// Limiting body of the pullback of D on the blow-up at `point`, with respect to a
/// general point of the exceptional curve.
inline BodyResult infinitesimal_limiting_body(const SurfaceModel& model, const DivisorClass& d, const PointSpec& point)
{
    if (!is_pseudoeffective(model, d)) throw Error(ErrorKind::NotPseudoeffective, "divisor is not pseudoeffective");
    SurfaceModel up = blow_up(model, point);
    const std::string e = up.curves().back().name;
    const DivisorClass pulled = d.extended();
    const auto flag = AdmissibleFlag::general(e);
    BodyResult b;
    if (is_big(model, d)) {
        b = okounkov_body_big(up, flag, pulled);
        b.kind = BodyKind::Infinitesimal;
        return b;
    }
    b = limiting_body(up, flag, pulled);
    b.kind = BodyKind::Infinitesimal;

    const Rational mu = sup_threshold(up, pulled, up.curve(e).cls, ThresholdMode::Pseudoeffective).value();
    const RationalPolygon expected = mu == 0 ? RationalPolygon::point({0, 0}) : RationalPolygon::segment({0, 0}, {mu, 0});
    auto ann = find_annotation(model, d);
    if (!ann || !ann->kappa_max) {
        b.notes.push_back("AnnotationRequired: no kappa_max annotation; horizontality assertion skipped");
        return b;
    }
    if (b.polygon != expected)
        throw Error(ErrorKind::ModelInconsistent, "infinitesimal limiting body is not the horizontal segment [0, mu]");
    const int k = ann->kappa_max->is_minus_infinity() ? 0 : std::max(0, ann->kappa_max->value());
    if (b.polygon.dimension() != k)
        b.notes.push_back("dimension " + std::to_string(b.polygon.dimension()) + " differs from max(0, kappa_max) = " +
                          std::to_string(k) + "; point may not be general");
    return b;
}

}  // namespace okb
