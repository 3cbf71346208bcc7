#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "okb/lattice.hpp"
#include "okb/positivity.hpp"

namespace okb {

using CurveTable = std::map<std::string, Rational>;

/// D = P + N with N = sum of a_i N_i over declared negative curves.
struct ZariskiDecomposition {
    DivisorClass positive;
    CurveTable negative;

    std::set<std::string> support() const
    {
        std::set<std::string> s;
        for (const auto& [name, a] : negative) s.insert(name);
        return s;
    }

    Rational coefficient(const std::string& curve) const
    {
        auto it = negative.find(curve);
        return it == negative.end() ? Rational(0) : it->second;
    }

    bool operator==(const ZariskiDecomposition&) const = default;
};

struct SDecomposition {
    DivisorClass positive;
    CurveTable fixed;
};

/// Class of sum a_i C_i for a curve-name table.
inline DivisorClass table_class(const SurfaceModel& model, const CurveTable& table)
{
    DivisorClass out = DivisorClass::zero(model.rank());
    for (const auto& [name, a] : table) out += a * model.curve(name).cls;
    return out;
}

inline Matrix curve_gram(const SurfaceModel& model, const std::vector<const CurveDecl*>& curves)
{
    Matrix g(curves.size(), curves.size());
    for (std::size_t i = 0; i < curves.size(); ++i)
        for (std::size_t j = 0; j < curves.size(); ++j) g(i, j) = model.intersect(curves[i]->cls, curves[j]->cls);
    return g;
}

namespace detail {

/// Solves (D - sum n_j C_j).C_i = 0 on a support set; nullopt if the Gram matrix is singular.
inline std::optional<Vector> solve_support(const SurfaceModel& model, const DivisorClass& d,
                                           const std::vector<const CurveDecl*>& support)
{
    if (support.empty()) return Vector{};
    Vector rhs;
    for (const auto* c : support) rhs.push_back(model.intersect(d, c->cls));
    return solve(curve_gram(model, support), rhs);
}

inline ZariskiDecomposition assemble(const SurfaceModel&, const DivisorClass& d,
                                     const std::vector<const CurveDecl*>& support, const Vector& n)
{
    ZariskiDecomposition z{d, {}};
    for (std::size_t i = 0; i < support.size(); ++i) {
        z.negative[support[i]->name] = n[i];
        z.positive -= n[i] * support[i]->cls;
    }
    return z;
}

}  // namespace detail

/// Iterative Zariski decomposition: grow the support by every negative curve that the
/// current positive part meets negatively, re-solving until P is nef.
inline ZariskiDecomposition zariski_decompose(const SurfaceModel& model, const DivisorClass& d)
{
    if (!is_pseudoeffective(model, d)) throw Error(ErrorKind::NotPseudoeffective, "divisor is not pseudoeffective");
    const auto candidates = model.negative_curves();
    std::vector<const CurveDecl*> support;
    ZariskiDecomposition z{d, {}};
    for (;;) {
        std::vector<const CurveDecl*> added;
        for (const auto* c : candidates) {
            if (std::find(support.begin(), support.end(), c) != support.end()) continue;
            if (model.intersect(z.positive, c->cls) < 0) added.push_back(c);
        }
        if (added.empty()) break;
        support.insert(support.end(), added.begin(), added.end());
        if (!is_negative_definite(curve_gram(model, support)))
            throw Error(ErrorKind::ModelInconsistent, "negative-part support is not negative definite; curve list incomplete?");
        auto n = detail::solve_support(model, d, support);
        z = detail::assemble(model, d, support, *n);
    }
    for (const auto& [name, a] : z.negative)
        if (a <= 0) throw Error(ErrorKind::ModelInconsistent, "non-positive coefficient for '" + name + "' in negative part");
    if (!is_nef(model, z.positive))
        throw Error(ErrorKind::ModelInconsistent, "positive part is not nef against the effective generators");
    return z;
}

/// Subset-enumeration oracle for the Zariski decomposition.
inline ZariskiDecomposition zariski_brute(const SurfaceModel& model, const DivisorClass& d)
{
    if (!is_pseudoeffective(model, d)) throw Error(ErrorKind::NotPseudoeffective, "divisor is not pseudoeffective");
    const auto curves = model.negative_curves();
    if (curves.size() > 20) throw Error(ErrorKind::RankLimitExceeded, "too many negative curves for subset enumeration");
    std::vector<ZariskiDecomposition> found;
    for (std::size_t mask = 0; mask < (std::size_t{1} << curves.size()); ++mask) {
        std::vector<const CurveDecl*> s;
        for (std::size_t i = 0; i < curves.size(); ++i)
            if (mask & (std::size_t{1} << i)) s.push_back(curves[i]);
        if (!s.empty() && !is_negative_definite(curve_gram(model, s))) continue;
        auto n = detail::solve_support(model, d, s);
        if (!n) continue;
        bool positive = std::all_of(n->begin(), n->end(), [](const Rational& x) { return x > 0; });
        if (!positive) continue;
        auto z = detail::assemble(model, d, s, *n);
        if (!is_nef(model, z.positive)) continue;
        found.push_back(std::move(z));
    }
    if (found.size() != 1)
        throw Error(ErrorKind::OracleAmbiguous, std::to_string(found.size()) + " candidate decompositions found");
    return found.front();
}

inline Rational volume(const SurfaceModel& model, const DivisorClass& d)
{
    if (!is_pseudoeffective(model, d)) return 0;
    auto z = zariski_decompose(model, d);
    return model.self_intersection(z.positive);
}

inline bool is_big(const SurfaceModel& model, const DivisorClass& d)
{
    if (!is_pseudoeffective(model, d)) return false;
    return model.self_intersection(zariski_decompose(model, d).positive) > 0;
}

inline IitakaDimension kappa_nu(const SurfaceModel& model, const DivisorClass& d)
{
    if (!is_pseudoeffective(model, d)) return IitakaDimension::minus_infinity();
    auto z = zariski_decompose(model, d);
    if (z.positive.is_zero()) return IitakaDimension(0);
    return IitakaDimension(model.self_intersection(z.positive) > 0 ? 2 : 1);
}

inline std::set<std::string> b_minus(const SurfaceModel& model, const DivisorClass& d)
{
    return zariski_decompose(model, d).support();
}

struct AugmentedBaseLocus {
    bool whole_surface = false;
    std::set<std::string> curves;

    bool operator==(const AugmentedBaseLocus&) const = default;
};

/// Declared curves C with P.C = 0.
inline std::set<std::string> null_locus(const SurfaceModel& model, const DivisorClass& p)
{
    std::set<std::string> out;
    for (const auto& c : model.curves())
        if (model.intersect(p, c.cls) == 0) out.insert(c.name);
    return out;
}

inline AugmentedBaseLocus b_plus(const SurfaceModel& model, const DivisorClass& d)
{
    auto z = zariski_decompose(model, d);
    if (model.self_intersection(z.positive) <= 0) return {true, {}};
    return {false, null_locus(model, z.positive)};
}

/// Packages D = P_s + N_s for a user-supplied fixed part; checks only.
inline SDecomposition s_decomposition_assemble(const SurfaceModel& model, const DivisorClass& d, const CurveTable& fixed)
{
    SDecomposition s{d, {}};
    for (const auto& [name, a] : fixed) {
        const auto* c = model.find_curve(name);
        if (!c) throw Error(ErrorKind::InvalidFixedPart, "unknown curve '" + name + "' in fixed part");
        if (a < 0) throw Error(ErrorKind::InvalidFixedPart, "negative coefficient for '" + name + "'");
        if (a == 0) continue;
        s.fixed[name] = a;
        s.positive -= a * c->cls;
    }
    if (!is_pseudoeffective(model, s.positive))
        throw Error(ErrorKind::InvalidFixedPart, "D minus the fixed part is not pseudoeffective");
    return s;
}

}  // namespace okb
