#pragma once

#include <string>

#include "okb/lattice.hpp"
#include "okb/okounkov.hpp"
#include "okb/positivity.hpp"
#include "okb/zariski.hpp"

namespace okb {

/// mu(D; C) = sup { s >= 0 : D - sC pseudoeffective }.
inline Rational nakayama_constant(const SurfaceModel& model, const DivisorClass& d, const std::string& curve)
{
    if (!is_pseudoeffective(model, d)) throw Error(ErrorKind::NotPseudoeffective, "divisor is not pseudoeffective");
    auto mu = sup_threshold(model, d, model.curve(curve).cls, ThresholdMode::Pseudoeffective);
    if (mu.is_infinite()) throw Error(ErrorKind::ModelInconsistent, "pseudoeffective threshold is unbounded");
    return mu.value();
}

/// mu(D; x) computed on the blow-up at the point as the threshold of the pullback against E.
inline Rational nakayama_constant_point(const SurfaceModel& model, const DivisorClass& d, const PointSpec& point)
{
    if (!is_pseudoeffective(model, d)) throw Error(ErrorKind::NotPseudoeffective, "divisor is not pseudoeffective");
    SurfaceModel up = blow_up(model, point);
    auto mu = sup_threshold(up, d.extended(), up.curves().back().cls, ThresholdMode::Pseudoeffective);
    if (mu.is_infinite()) throw Error(ErrorKind::ModelInconsistent, "pseudoeffective threshold is unbounded");
    return mu.value();
}

/// epsilon(D; C) = sup { s >= 0 : D - sC nef }.
inline Rational seshadri_constant(const SurfaceModel& model, const DivisorClass& d, const std::string& curve)
{
    if (!is_nef(model, d)) throw Error(ErrorKind::NotNef, "divisor is not nef");
    auto eps = sup_threshold(model, d, model.curve(curve).cls, ThresholdMode::Nef);
    if (eps.is_infinite()) throw Error(ErrorKind::ModelInconsistent, "nef threshold is unbounded");
    return eps.value();
}

/// The general point of C plus one point on C meeting each declared curve C' with C'.C > 0.
inline std::vector<AdmissibleFlag> point_types(const SurfaceModel& model, const std::string& curve)
{
    const auto& c = model.curve(curve);
    std::vector<AdmissibleFlag> out{AdmissibleFlag::general(curve)};
    for (const auto& other : model.curves())
        if (other.name != curve && other.irreducible && model.intersect(other.cls, c.cls) > 0)
            out.push_back(AdmissibleFlag::at(curve, {{other.name, 1}}));
    return out;
}

/// sup { s : (s, 0) in the body } for one flag: the start of the first stretch where alpha > 0.
inline Rational horizontal_extent(const BodyResult& body)
{
    for (const auto& p : body.pieces) {
        if (p.alpha.at(p.t0) > 0) return p.t0;
        if (p.alpha.c1 > 0) return p.t0;
    }
    return body.pieces.back().t1;
}

/// Seshadri constant as the infimum over point types on C of the horizontal extent of the body.
inline Rational seshadri_via_body(const SurfaceModel& model, const DivisorClass& d, const std::string& curve)
{
    if (!is_nef(model, d)) throw Error(ErrorKind::NotNef, "divisor is not nef");
    if (!model.curve(curve).irreducible) throw Error(ErrorKind::InvalidInput, "curve is not irreducible");
    std::optional<Rational> best;
    for (const auto& flag : point_types(model, curve)) {
        Rational s = horizontal_extent(okounkov_walk(model, flag, d));
        if (!best || s < *best) best = s;
    }
    return *best;
}

/// vol^+_{S|C}(D) = P.C for C outside Supp N.
inline Rational vol_plus_restricted(const SurfaceModel& model, const DivisorClass& d, const std::string& curve)
{
    if (!is_pseudoeffective(model, d)) throw Error(ErrorKind::NotPseudoeffective, "divisor is not pseudoeffective");
    auto z = zariski_decompose(model, d);
    if (z.negative.count(curve)) throw Error(ErrorKind::CurveInBMinus, "curve '" + curve + "' lies in Supp N");
    return model.intersect(z.positive, model.curve(curve).cls);
}

struct PositiveVolumeResult {
    bool positive_volume = false;
    Rational vol_plus;
    std::string note;
};

/// A curve is a positive volume subvariety of a non-big D iff P.C > 0. For big D only
/// the whole surface qualifies, so curves return false.
inline PositiveVolumeResult is_positive_volume_subvariety(const SurfaceModel& model, const DivisorClass& d,
                                                          const std::string& curve)
{
    PositiveVolumeResult r;
    r.vol_plus = vol_plus_restricted(model, d, curve);
    if (is_big(model, d)) {
        r.note = "divisor is big: only the whole surface is a positive volume subvariety";
        return r;
    }
    r.positive_volume = r.vol_plus > 0;
    return r;
}

}  // namespace okb
