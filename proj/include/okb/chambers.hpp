#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "okb/cone.hpp"
#include "okb/lattice.hpp"
#include "okb/okounkov.hpp"
#include "okb/polygon.hpp"
#include "okb/positivity.hpp"
#include "okb/zariski.hpp"

namespace okb {

struct ChamberSignature {
    std::set<std::string> support;
    std::set<std::string> null_locus;

    bool operator==(const ChamberSignature&) const = default;
};

inline ChamberSignature zariski_chamber_signature(const SurfaceModel& model, const DivisorClass& d)
{
    if (!is_big(model, d)) throw Error(ErrorKind::NotBig, "divisor is not big");
    auto z = zariski_decompose(model, d);
    return {z.support(), null_locus(model, z.positive)};
}

inline bool same_stability_chamber(const SurfaceModel& model, const DivisorClass& d1, const DivisorClass& d2)
{
    if (!is_big(model, d1) || !is_big(model, d2)) throw Error(ErrorKind::NotBig, "divisor is not big");
    return b_plus(model, d1) == b_plus(model, d2);
}

struct RealizedChamber {
    std::set<std::string> support;
    DivisorClass positive;  ///< nef big P with Null(P) = support
    DivisorClass witness;   ///< P + sum of the support curves
};

struct UnrealizedSubset {
    std::set<std::string> support;
    std::string reason;
};

struct ChamberEnumeration {
    std::vector<RealizedChamber> realized;
    std::vector<UnrealizedSubset> unrealized;
};

/// Enumerates subsets of the declared negative curves and, for each, tries to build a
/// big divisor whose negative part has exactly that support. P is taken as the sum of
/// the nef extremal rays on the face { P.C = 0 for C in S }, a relative interior point.
inline ChamberEnumeration enumerate_zariski_chambers(const SurfaceModel& model)
{
    const auto curves = model.negative_curves();
    if (curves.size() > 20) throw Error(ErrorKind::RankLimitExceeded, "too many negative curves for subset enumeration");
    const auto& rays = model.nef_cone().generators();
    ChamberEnumeration out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << curves.size()); ++mask) {
        std::vector<const CurveDecl*> s;
        std::set<std::string> names;
        for (std::size_t i = 0; i < curves.size(); ++i)
            if (mask & (std::size_t{1} << i)) {
                s.push_back(curves[i]);
                names.insert(curves[i]->name);
            }
        if (!s.empty() && !is_negative_definite(curve_gram(model, s))) {
            out.unrealized.push_back({names, "intersection matrix is not negative definite"});
            continue;
        }
        DivisorClass p = DivisorClass::zero(model.rank());
        for (const auto& r : rays) {
            bool on_face = std::all_of(s.begin(), s.end(), [&](const CurveDecl* c) { return model.intersect(r, c->cls) == 0; });
            if (on_face) p += r;
        }
        if (model.self_intersection(p) <= 0) {
            out.unrealized.push_back({names, "no big nef class is orthogonal to the subset"});
            continue;
        }
        bool strict = true;
        for (const auto& c : model.curves())
            if (!names.count(c.name) && model.intersect(p, c.cls) <= 0) strict = false;
        if (!strict) {
            out.unrealized.push_back({names, "every nef class orthogonal to the subset meets another curve trivially"});
            continue;
        }
        DivisorClass w = p;
        for (const auto* c : s) w += c->cls;
        if (zariski_decompose(model, w).support() != names)
            throw Error(ErrorKind::ModelInconsistent, "chamber witness has an unexpected negative part");
        out.realized.push_back({names, p, w});
    }
    return out;
}

struct MinkowskiBasisElement {
    DivisorClass cls;  ///< primitive ray representative
    RationalPolygon body;
    bool extremal = false;
    std::optional<std::set<std::string>> origin_support;  ///< chamber that produced it, if not extremal
};

namespace detail {

inline const DivisorClass& general_flag_class(const SurfaceModel& model, const AdmissibleFlag& flag)
{
    validate_flag(model, flag);
    for (const auto& [name, k] : flag.point_orders)
        if (k != 0) throw Error(ErrorKind::InvalidInput, "Minkowski basis requires a general flag point");
    return model.curve(flag.curve).cls;
}

// B = C + sum n_i N_i with B.N_i = 0.
inline DivisorClass chamber_basis_class(const SurfaceModel& model, const DivisorClass& c, const std::set<std::string>& support)
{
    std::vector<const CurveDecl*> s;
    for (const auto& name : support) s.push_back(&model.curve(name));
    DivisorClass b = c;
    if (s.empty()) return b;
    Vector rhs;
    for (const auto* n : s) rhs.push_back(-model.intersect(c, n->cls));
    auto n = solve(curve_gram(model, s), rhs);
    if (!n) throw Error(ErrorKind::ModelInconsistent, "singular chamber system");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if ((*n)[i] < 0)
            throw Error(ErrorKind::NonNonnegativeSolution, "negative coefficient for '" + s[i]->name + "' in basis solve");
        b += (*n)[i] * s[i]->cls;
    }
    return b;
}

}  // namespace detail

/// Nef extremal rays plus, for every realized chamber, the nef class C + sum n_i N_i
/// orthogonal to its support. Rays are deduplicated; each carries its limiting body.
inline std::vector<MinkowskiBasisElement> minkowski_basis(const SurfaceModel& model, const AdmissibleFlag& flag)
{
    const DivisorClass& c = detail::general_flag_class(model, flag);
    std::vector<MinkowskiBasisElement> out;
    auto add = [&](const DivisorClass& cls, bool extremal, std::optional<std::set<std::string>> origin) {
        DivisorClass ray = cls.primitive();
        for (const auto& e : out)
            if (e.cls == ray) return;
        BodyResult body = limiting_body(model, flag, ray);
        if (!is_indecomposable(body.polygon))
            throw Error(ErrorKind::ModelInconsistent, "basis element body is decomposable: " + to_string(body.polygon));
        out.push_back({ray, body.polygon, extremal, std::move(origin)});
    };
    for (const auto& r : model.nef_cone().generators()) add(r, true, std::nullopt);
    for (const auto& ch : enumerate_zariski_chambers(model).realized)
        add(detail::chamber_basis_class(model, c, ch.support), false, ch.support);
    return out;
}

using MinkowskiDecomposition = std::map<DivisorClass, Rational>;

/// Writes a nef D as a nonnegative combination of basis rays by peeling off the basis
/// element of its stability chamber until the remainder lies on a non-big face.
inline MinkowskiDecomposition minkowski_decompose(const SurfaceModel& model, const AdmissibleFlag& flag, const DivisorClass& d)
{
    if (!is_nef(model, d)) throw Error(ErrorKind::NotNef, "divisor is not nef");
    const DivisorClass& c = detail::general_flag_class(model, flag);
    const auto basis = minkowski_basis(model, flag);
    auto record = [&](MinkowskiDecomposition& out, const DivisorClass& v, const Rational& coef) {
        DivisorClass ray = v.primitive();
        bool found = std::any_of(basis.begin(), basis.end(), [&](const MinkowskiBasisElement& e) { return e.cls == ray; });
        if (!found) throw Error(ErrorKind::ModelInconsistent, "peeled class is not a basis ray");
        Rational k = v[0] != 0 ? v[0] / ray[0] : Rational(0);
        for (std::size_t i = 0; k == 0 && i < v.size(); ++i)
            if (ray[i] != 0) k = v[i] / ray[i];
        out[ray] += coef * k;
    };

    const auto negatives = model.negative_curves();
    const std::size_t limit = enumerate_zariski_chambers(model).realized.size() + 1;
    MinkowskiDecomposition out;
    DivisorClass rest = d;
    for (std::size_t iter = 0;; ++iter) {
        if (rest.is_zero()) break;
        if (iter > limit) throw Error(ErrorKind::ModelInconsistent, "Minkowski peeling does not terminate");
        if (model.self_intersection(rest) <= 0) {
            auto face = minimal_face(model.nef_cone(), rest);
            std::vector<Vector> cols;
            for (const auto& g : face) cols.push_back(g.coeffs());
            auto lam = nonnegative_solution(Matrix::from_rows(cols).transpose(), rest.span());
            if (!lam) throw Error(ErrorKind::ModelInconsistent, "face generators do not reproduce the divisor");
            for (std::size_t i = 0; i < face.size(); ++i)
                if ((*lam)[i] != 0) record(out, face[i], (*lam)[i]);
            break;
        }
        std::set<std::string> null;
        for (const auto* n : negatives)
            if (model.intersect(rest, n->cls) == 0) null.insert(n->name);
        DivisorClass b = detail::chamber_basis_class(model, c, null);
        auto step = sup_threshold(model, rest, b, ThresholdMode::Nef);
        if (step.is_infinite() || step.value() <= 0)
            throw Error(ErrorKind::ModelInconsistent, "no progress peeling the chamber basis element");
        record(out, b, step.value());
        rest -= step.value() * b;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

struct MinkowskiChamber {
    std::vector<DivisorClass> rays;
};

/// Stellar subdivision of Nef by the non-extremal basis rays, inserted in order of
/// increasing support size of their chamber.
inline std::vector<MinkowskiChamber> minkowski_chambers(const SurfaceModel& model, const AdmissibleFlag& flag)
{
    if (model.rank() > 3) throw Error(ErrorKind::RankLimitExceeded, "Minkowski chambers are implemented for rank <= 3");
    auto basis = minkowski_basis(model, flag);
    std::vector<const MinkowskiBasisElement*> inserts;
    for (const auto& e : basis)
        if (!e.extremal) inserts.push_back(&e);
    std::stable_sort(inserts.begin(), inserts.end(), [](const auto* a, const auto* b) {
        return a->origin_support->size() < b->origin_support->size();
    });

    std::vector<std::vector<DivisorClass>> cones{model.nef_cone().generators()};
    for (const auto* e : inserts) {
        const DivisorClass& r = e->cls;
        std::vector<std::vector<DivisorClass>> next;
        for (auto& gens : cones) {
            Cone k(gens, model.rank());
            bool is_ray = std::any_of(gens.begin(), gens.end(), [&](const DivisorClass& g) { return same_ray(g, r); });
            if (is_ray || !in_cone(k, r)) {
                next.push_back(std::move(gens));
                continue;
            }
            for (const auto& f : dual_facets(k)) {
                if (dot(f, r.span()) <= 0) continue;
                std::vector<DivisorClass> sub{r};
                for (const auto& g : gens)
                    if (dot(f, g.span()) == 0) sub.push_back(g);
                next.push_back(std::move(sub));
            }
        }
        cones = std::move(next);
    }
    std::vector<MinkowskiChamber> out;
    for (auto& gens : cones) {
        std::sort(gens.begin(), gens.end());
        out.push_back({std::move(gens)});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.rays < b.rays; });
    return out;
}

}  // namespace okb
