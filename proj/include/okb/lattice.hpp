#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "okb/cone.hpp"
#include "okb/divisor.hpp"
#include "okb/error.hpp"
#include "okb/linalg.hpp"

namespace okb {

/// Iitaka-type dimension: a nonnegative integer or minus infinity.
class IitakaDimension {
public:
    constexpr explicit IitakaDimension(int value) : value_(value) {}
    static constexpr IitakaDimension minus_infinity() { return IitakaDimension(INT_MIN); }

    constexpr bool is_minus_infinity() const { return value_ == INT_MIN; }
    constexpr int value() const { return value_; }
    std::string str() const { return is_minus_infinity() ? "-inf" : std::to_string(value_); }

    constexpr auto operator<=>(const IitakaDimension&) const = default;

private:
    int value_;
};

struct Annotation {
    std::optional<IitakaDimension> kappa;
    std::optional<IitakaDimension> kappa_max;
};

/// Keys are divisor expressions in the model's labels (e.g. "H", "C0").
using Annotations = std::map<std::string, Annotation>;

struct CurveDecl {
    std::string name;
    DivisorClass cls;
    bool negative = false;
    bool irreducible = true;
};

/// A point on the surface, described by which declared curves pass through it and
/// with what multiplicity. An empty table is a general point.
struct PointSpec {
    std::map<std::string, int> through;
};

/// Finite Neron-Severi lattice model of a smooth projective surface. Immutable;
/// copies share the lazily computed effective and nef cones.
class SurfaceModel {
public:
    SurfaceModel(std::string name, std::vector<std::string> basis, Matrix gram, std::vector<CurveDecl> curves,
                 std::vector<DivisorClass> eff_generators, Annotations annotations = {})
        : name_(std::move(name)),
          basis_(std::move(basis)),
          gram_(std::move(gram)),
          curves_(std::move(curves)),
          eff_(std::move(eff_generators)),
          annotations_(std::move(annotations)),
          cache_(std::make_shared<Cache>())
    {
        const std::size_t r = basis_.size();
        if (r == 0) throw Error(ErrorKind::InvalidInput, "model rank must be positive");
        if (gram_.rows() != r || gram_.cols() != r)
            throw Error(ErrorKind::DimensionMismatch, "gram matrix size differs from basis length");
        for (const auto& c : curves_)
            if (c.cls.size() != r) throw Error(ErrorKind::DimensionMismatch, "curve '" + c.name + "' has wrong rank");
        for (const auto& g : eff_)
            if (g.size() != r) throw Error(ErrorKind::DimensionMismatch, "effective generator has wrong rank");
        cache_->eff_cone = std::make_shared<Cone>(eff_, r);
    }

    const std::string& name() const { return name_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<std::string>& basis_labels() const { return basis_; }
    const Matrix& gram() const { return gram_; }
    const std::vector<CurveDecl>& curves() const { return curves_; }
    const std::vector<DivisorClass>& eff_generators() const { return eff_; }
    const Annotations& annotations() const { return annotations_; }

    const CurveDecl* find_curve(std::string_view name) const
    {
        for (const auto& c : curves_)
            if (c.name == name) return &c;
        return nullptr;
    }

    const CurveDecl& curve(std::string_view name) const
    {
        if (const auto* c = find_curve(name)) return *c;
        throw Error(ErrorKind::UnknownCurve, "no curve named '" + std::string(name) + "' in model " + name_);
    }

    /// a^T * gram * b.
    Rational intersect(const DivisorClass& a, const DivisorClass& b) const
    {
        if (a.size() != rank() || b.size() != rank())
            throw Error(ErrorKind::DimensionMismatch, "divisor class length differs from model rank");
        return dot(a.span(), gram_ * b.span());
    }

    Rational self_intersection(const DivisorClass& a) const { return intersect(a, a); }

    const Cone& eff_cone() const { return *cache_->eff_cone; }

    /// Nef cone as the dual of Eff under the intersection form. Requires Eff full-dimensional.
    const Cone& nef_cone() const
    {
        std::call_once(cache_->nef_once, [this] {
            if (eff_cone().dimension() != rank())
                throw Error(ErrorKind::ModelInconsistent, "effective cone is not full-dimensional; nef cone has a lineality space");
            std::vector<Vector> rows;
            for (const auto& g : eff_) rows.push_back(gram_ * g.span());
            cache_->nef_cone = std::make_shared<Cone>(cone_from_halfspaces(rows, rank()));
        });
        return *cache_->nef_cone;
    }

    /// Irreducible curves with negative self-intersection (computed, not the stored flag).
    std::vector<const CurveDecl*> negative_curves() const
    {
        std::vector<const CurveDecl*> out;
        for (const auto& c : curves_)
            if (c.irreducible && self_intersection(c.cls) < 0) out.push_back(&c);
        return out;
    }

    /// Same model with one more declared curve (negativity flag computed).
    SurfaceModel with_curve(std::string name, DivisorClass cls, bool irreducible = true) const
    {
        if (find_curve(name)) throw Error(ErrorKind::InvalidInput, "curve '" + name + "' already declared");
        auto curves = curves_;
        bool neg = self_intersection(cls) < 0;
        curves.push_back(CurveDecl{std::move(name), std::move(cls), neg, irreducible});
        return SurfaceModel(name_, basis_, gram_, std::move(curves), eff_, annotations_);
    }

    SurfaceModel with_annotations(Annotations ann) const
    {
        return SurfaceModel(name_, basis_, gram_, curves_, eff_, std::move(ann));
    }

private:
    struct Cache {
        std::shared_ptr<Cone> eff_cone;
        std::once_flag nef_once;
        std::shared_ptr<Cone> nef_cone;
    };

    std::string name_;
    std::vector<std::string> basis_;
    Matrix gram_;
    std::vector<CurveDecl> curves_;
    std::vector<DivisorClass> eff_;
    Annotations annotations_;
    std::shared_ptr<Cache> cache_;
};

inline Rational intersect(const SurfaceModel& model, const DivisorClass& a, const DivisorClass& b)
{
    return model.intersect(a, b);
}

/// Checks every model invariant and returns all violations (empty means valid).
inline std::vector<std::string> validate_model(const SurfaceModel& model)
{
    std::vector<std::string> out;
    const auto& g = model.gram();
    if (!g.is_symmetric()) out.push_back("gram matrix is not symmetric");

    std::set<std::string> names;
    for (const auto& c : model.curves()) {
        if (!names.insert(c.name).second) out.push_back("duplicate curve name '" + c.name + "'");
        if (c.cls.is_zero()) {
            out.push_back("curve '" + c.name + "' has zero class");
            continue;
        }
        if (g.is_symmetric()) {
            bool neg = model.self_intersection(c.cls) < 0;
            if (neg != c.negative)
                out.push_back("negativity flag mismatch for curve '" + c.name + "' (self-intersection " +
                              to_string(model.self_intersection(c.cls)) + ")");
        }
    }

    const auto& cs = model.curves();
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            if (!cs[i].irreducible || !cs[j].irreducible || cs[i].cls == cs[j].cls || !g.is_symmetric()) continue;
            if (model.intersect(cs[i].cls, cs[j].cls) < 0)
                out.push_back("irreducible curves '" + cs[i].name + "' and '" + cs[j].name + "' meet negatively");
        }

    if (model.eff_generators().empty()) {
        out.push_back("eff_generators is empty");
    } else {
        for (const auto& c : model.curves())
            if (!c.cls.is_zero() && !in_cone(model.eff_cone(), c.cls))
                out.push_back("curve '" + c.name + "' is not in the cone spanned by eff_generators");
    }

    if (g.is_symmetric() && model.rank() >= 2) {
        Inertia in = inertia(g);
        if (in.positive != 1 || in.negative != model.rank() - 1)
            out.push_back("signature not (1, rank-1): found (" + std::to_string(in.positive) + ", " +
                          std::to_string(in.negative) + ") with " + std::to_string(in.zero) + " zero eigenvalues");
    }
    return out;
}

inline void validate_point(const SurfaceModel& model, const PointSpec& point)
{
    for (const auto& [name, mult] : point.through) {
        const auto& c = model.curve(name);
        if (!c.irreducible) throw Error(ErrorKind::InvalidInput, "point spec names reducible curve '" + name + "'");
        if (mult <= 0) throw Error(ErrorKind::InvalidInput, "multiplicity for '" + name + "' must be positive");
    }
}

/// Label E<k> with the smallest k >= 1 unused by basis labels and curve names.
inline std::string fresh_exceptional_label(const SurfaceModel& model)
{
    for (int k = 1;; ++k) {
        std::string label = "E" + std::to_string(k);
        const auto& b = model.basis_labels();
        if (std::find(b.begin(), b.end(), label) == b.end() && !model.find_curve(label)) return label;
    }
}

/// Blow-up at a point: rank + 1, new exceptional class E with E^2 = -1, strict
/// transforms C - m E for every curve through the point. Effective generators become
/// the pullbacks of the old ones, E, and the strict transforms of the through-curves.
inline SurfaceModel blow_up(const SurfaceModel& model, const PointSpec& point)
{
    validate_point(model, point);
    const std::size_t r = model.rank();
    const std::string label = fresh_exceptional_label(model);

    auto basis = model.basis_labels();
    basis.push_back(label);

    Matrix gram(r + 1, r + 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) gram(i, j) = model.gram()(i, j);
    gram(r, r) = -1;

    const DivisorClass e = DivisorClass::unit(r + 1, r);
    auto square = [&](const DivisorClass& c) { return dot(c.span(), gram * c.span()); };

    std::vector<CurveDecl> curves;
    std::vector<DivisorClass> strict;
    for (const auto& c : model.curves()) {
        CurveDecl nc = c;
        nc.cls = c.cls.extended();
        if (auto it = point.through.find(c.name); it != point.through.end()) {
            nc.cls -= Rational(it->second) * e;
            strict.push_back(nc.cls);
        }
        nc.negative = square(nc.cls) < 0;
        curves.push_back(std::move(nc));
    }
    curves.push_back(CurveDecl{label, e, true, true});

    std::vector<DivisorClass> eff;
    for (const auto& g : model.eff_generators()) eff.push_back(g.extended());
    eff.push_back(e);
    for (auto& s : strict) eff.push_back(std::move(s));

    return SurfaceModel(model.name() + "+" + label, std::move(basis), std::move(gram), std::move(curves), std::move(eff),
                        model.annotations());
}

namespace detail {

inline Matrix gram_from(std::initializer_list<std::initializer_list<int>> rows)
{
    std::vector<Vector> rs;
    for (const auto& r : rows) {
        Vector v;
        for (int x : r) v.emplace_back(x);
        rs.push_back(std::move(v));
    }
    return Matrix::from_rows(rs);
}

inline CurveDecl make_curve(const Matrix& gram, std::string name, DivisorClass cls)
{
    bool neg = dot(cls.span(), gram * cls.span()) < 0;
    return CurveDecl{std::move(name), std::move(cls), neg, true};
}

}  // namespace detail

inline std::vector<std::string> builtin_model_names() { return {"blp1", "blp2", "ell9", "mumford", "p1xp1"}; }

inline SurfaceModel builtin_model(std::string_view name)
{
    using detail::gram_from;
    using detail::make_curve;
    if (name == "blp1") {
        Matrix g = gram_from({{1, 0}, {0, -1}});
        std::vector<CurveDecl> curves{make_curve(g, "E", {0, 1}), make_curve(g, "L1", {1, -1})};
        return SurfaceModel("blp1", {"H", "E"}, g, curves, {{0, 1}, {1, -1}});
    }
    if (name == "blp2") {
        Matrix g = gram_from({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
        std::vector<CurveDecl> curves{make_curve(g, "E1", {0, 1, 0}), make_curve(g, "E2", {0, 0, 1}),
                                      make_curve(g, "L12", {1, -1, -1})};
        return SurfaceModel("blp2", {"H", "E1", "E2"}, g, curves, {{0, 1, 0}, {0, 0, 1}, {1, -1, -1}});
    }
    if (name == "mumford") {
        Matrix g = gram_from({{0, 1}, {1, 0}});
        std::vector<CurveDecl> curves{make_curve(g, "F", {0, 1})};
        Annotations ann{{"H", Annotation{std::nullopt, IitakaDimension(0)}}};
        return SurfaceModel("mumford", {"H", "F"}, g, curves, {{1, 0}, {0, 1}}, ann);
    }
    if (name == "ell9") {
        Matrix g = gram_from({{0, 1}, {1, -1}});
        std::vector<CurveDecl> curves{make_curve(g, "C0", {1, 0}), make_curve(g, "G", {0, 1})};
        Annotations ann{{"C0", Annotation{IitakaDimension(0), std::nullopt}}};
        return SurfaceModel("ell9", {"C0", "G"}, g, curves, {{1, 0}, {0, 1}}, ann);
    }
    if (name == "p1xp1") {
        Matrix g = gram_from({{0, 1}, {1, 0}});
        std::vector<CurveDecl> curves{make_curve(g, "F", {1, 0}), make_curve(g, "G", {0, 1})};
        return SurfaceModel("p1xp1", {"F", "G"}, g, curves, {{1, 0}, {0, 1}});
    }
    throw Error(ErrorKind::UnknownModel, "unknown built-in model '" + std::string(name) + "'");
}

/// Result of the Euclidean blow-up construction: a fiber F = p*C1 + q*C2 + (rest)
/// on a blow-up of P1 x P1, with C1 and C2 meeting transversally at `point`.
struct FiberModel {
    SurfaceModel model;
    DivisorClass fiber;
    CurveDecl c1;
    CurveDecl c2;
    PointSpec point;
    int blow_ups = 0;
};

/// Starting from P1 x P1, blows up a point of a fiber (multiplicities (1,1)) and then
/// repeatedly the intersection point of the two tracked components, which replaces
/// (a, b) by (a + b, b) or (a, a + b). The step sequence is the subtractive Euclidean
/// algorithm on (p, q) run backwards.
inline FiberModel build_fiber_model(int p, int q)
{
    if (p <= 0 || q <= 0) throw Error(ErrorKind::InvalidInput, "multiplicities must be positive");
    if (std::gcd(p, q) != 1) throw Error(ErrorKind::InvalidInput, "multiplicities must be coprime");

    // steps[i] == true: the left multiplicity grows.
    std::vector<bool> steps;
    for (int a = p, b = q; a != 1 || b != 1;) {
        if (a > b) { steps.push_back(true); a -= b; }
        else { steps.push_back(false); b -= a; }
    }
    std::reverse(steps.begin(), steps.end());

    SurfaceModel model = blow_up(builtin_model("p1xp1"), PointSpec{{{"F", 1}}});
    std::string left = "F";
    std::string right = model.curves().back().name;
    int blow_ups = 1;
    for (bool grow_left : steps) {
        model = blow_up(model, PointSpec{{{left, 1}, {right, 1}}});
        std::string e = model.curves().back().name;
        if (grow_left) left = e; else right = e;
        ++blow_ups;
    }
    DivisorClass fiber = DivisorClass::unit(model.rank(), 0);
    CurveDecl c1 = model.curve(left);
    CurveDecl c2 = model.curve(right);
    return FiberModel{std::move(model), std::move(fiber), std::move(c1), std::move(c2),
                      PointSpec{{{left, 1}, {right, 1}}}, blow_ups};
}

}  // namespace okb
