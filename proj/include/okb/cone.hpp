#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "okb/divisor.hpp"
#include "okb/linalg.hpp"

namespace okb {

/// H-description of a cone: phi(v) >= 0 for every inequality, w(v) = 0 for every equality.
/// Inequalities are irredundant and stored as primitive integer functionals.
struct HalfspaceDescription {
    std::vector<Vector> inequalities;
    std::vector<Vector> equalities;
};

/// Rational polyhedral cone given by generators. The H-description is computed on
/// first use and shared between copies; concurrent first use is safe.
class Cone {
public:
    Cone(std::vector<DivisorClass> generators, std::size_t ambient_dim)
        : gens_(std::move(generators)), dim_(ambient_dim), cache_(std::make_shared<Cache>())
    {
        for (const auto& g : gens_)
            if (g.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "cone generator has wrong length");
    }

    const std::vector<DivisorClass>& generators() const { return gens_; }
    std::size_t ambient_dim() const { return dim_; }

    /// Dimension of the linear span of the generators.
    std::size_t dimension() const
    {
        if (gens_.empty()) return 0;
        return rank(generator_matrix());
    }

    Matrix generator_matrix() const
    {
        std::vector<Vector> rows;
        for (const auto& g : gens_) rows.push_back(g.coeffs());
        if (rows.empty()) return Matrix(0, dim_);
        return Matrix::from_rows(rows);
    }

    const HalfspaceDescription& halfspaces() const
    {
        std::call_once(cache_->once, [this] { cache_->h = compute(); });
        return cache_->h;
    }

private:
    struct Cache {
        std::once_flag once;
        HalfspaceDescription h;
    };

    // Double description: facet normals are the extreme rays of the dual cone,
    // computed inside span(generators) so the dual is pointed.
    HalfspaceDescription compute() const
    {
        HalfspaceDescription out;
        const Matrix v = generator_matrix();
        std::vector<Vector> span_basis = v.rows() ? row_space_basis(v) : std::vector<Vector>{};
        if (v.rows()) {
            out.equalities = nullspace(v);
        } else {
            for (std::size_t i = 0; i < dim_; ++i) out.equalities.push_back(DivisorClass::unit(dim_, i).coeffs());
        }
        for (auto& e : out.equalities) e = primitive_ray(e);
        const std::size_t k = span_basis.size();
        if (k == 0) return out;
        Matrix w(v.rows(), k);
        for (std::size_t i = 0; i < v.rows(); ++i)
            for (std::size_t j = 0; j < k; ++j) w(i, j) = dot(span_basis[j], v.row(i));
        for (const auto& y : extreme_rays(w)) {
            Vector phi(dim_, Rational(0));
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t c = 0; c < dim_; ++c) phi[c] += y[j] * span_basis[j][c];
            out.inequalities.push_back(primitive_ray(phi));
        }
        return out;
    }

    std::vector<DivisorClass> gens_;
    std::size_t dim_;
    std::shared_ptr<Cache> cache_;
};

/// Irredundant facet functionals of the cone.
inline const std::vector<Vector>& dual_facets(const Cone& cone) { return cone.halfspaces().inequalities; }

/// Fast membership test against the H-description.
inline bool in_cone(const Cone& cone, const DivisorClass& v)
{
    if (v.size() != cone.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "vector length differs from cone dimension");
    const auto& h = cone.halfspaces();
    for (const auto& e : h.equalities)
        if (dot(e, v.span()) != 0) return false;
    for (const auto& f : h.inequalities)
        if (dot(f, v.span()) < 0) return false;
    return true;
}

struct Membership {
    bool inside = false;
    /// Nonnegative coefficients over cone.generators() reproducing v (when inside).
    std::optional<Vector> combination;
    /// A functional that is negative on v, or an equality that v violates (when outside).
    std::optional<Vector> violated;
};

inline Membership contains(const Cone& cone, const DivisorClass& v)
{
    if (v.size() != cone.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "vector length differs from cone dimension");
    Membership m;
    const auto& h = cone.halfspaces();
    for (const auto& e : h.equalities)
        if (dot(e, v.span()) != 0) {
            m.violated = dot(e, v.span()) > 0 ? e : (-DivisorClass(e)).coeffs();
            return m;
        }
    for (const auto& f : h.inequalities)
        if (dot(f, v.span()) < 0) {
            m.violated = f;
            return m;
        }
    m.inside = true;
    if (cone.generators().empty()) {
        m.combination = Vector{};
        return m;
    }
    m.combination = nonnegative_solution(cone.generator_matrix().transpose(), v.span());
    if (!m.combination) throw Error(ErrorKind::ModelInconsistent, "facet test and generator combination disagree");
    return m;
}

/// max { s >= 0 : d - s*c in cone }, computed as the minimum over facets phi with
/// phi(c) > 0 of phi(d)/phi(c).
inline ExtendedRational sup_along(const Cone& cone, const DivisorClass& d, const DivisorClass& c)
{
    if (!in_cone(cone, d)) throw Error(ErrorKind::InfeasibleStart, "start point is not in the cone");
    const auto& h = cone.halfspaces();
    for (const auto& e : h.equalities)
        if (dot(e, c.span()) != 0) return Rational(0);
    std::optional<Rational> best;
    for (const auto& f : h.inequalities) {
        Rational fc = dot(f, c.span());
        if (fc <= 0) continue;
        Rational r = dot(f, d.span()) / fc;
        if (!best || r < *best) best = r;
    }
    if (!best) return ExtendedRational::infinity();
    return *best;
}

/// Generators of the smallest face of the cone containing v.
inline std::vector<DivisorClass> minimal_face(const Cone& cone, const DivisorClass& v)
{
    if (!in_cone(cone, v)) throw Error(ErrorKind::NotInCone, "vector is not in the cone");
    std::vector<const Vector*> tight;
    for (const auto& f : cone.halfspaces().inequalities)
        if (dot(f, v.span()) == 0) tight.push_back(&f);
    std::vector<DivisorClass> out;
    for (const auto& g : cone.generators()) {
        bool on_face = true;
        for (const auto* f : tight)
            if (dot(*f, g.span()) != 0) { on_face = false; break; }
        if (on_face) out.push_back(g);
    }
    return out;
}

/// Extreme rays of { x : rows(x) >= 0 }, as a cone.
inline Cone cone_from_halfspaces(const std::vector<Vector>& rows, std::size_t dim)
{
    std::vector<DivisorClass> gens;
    for (auto& r : extreme_rays(Matrix::from_rows(rows))) gens.emplace_back(std::move(r));
    return Cone(std::move(gens), dim);
}

}  // namespace okb
