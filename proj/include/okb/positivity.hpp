#pragma once

#include "okb/cone.hpp"
#include "okb/lattice.hpp"

namespace okb {

enum class ThresholdMode { Pseudoeffective, Nef };

inline bool is_pseudoeffective(const SurfaceModel& model, const DivisorClass& d) { return in_cone(model.eff_cone(), d); }

/// D is nef iff D.g >= 0 for every effective generator g.
inline bool is_nef(const SurfaceModel& model, const DivisorClass& d)
{
    for (const auto& g : model.eff_generators())
        if (model.intersect(d, g) < 0) return false;
    return true;
}

/// max { s >= 0 : D - sC in the mode's cone }.
inline ExtendedRational sup_threshold(const SurfaceModel& model, const DivisorClass& d, const DivisorClass& c,
                                      ThresholdMode mode)
{
    if (mode == ThresholdMode::Pseudoeffective) return sup_along(model.eff_cone(), d, c);

    if (!is_nef(model, d)) throw Error(ErrorKind::InfeasibleStart, "start divisor is not nef");
    std::optional<Rational> best;
    for (const auto& g : model.eff_generators()) {
        Rational cg = model.intersect(c, g);
        if (cg <= 0) continue;
        Rational r = model.intersect(d, g) / cg;
        if (!best || r < *best) best = r;
    }
    if (!best) return ExtendedRational::infinity();
    return *best;
}

}  // namespace okb
