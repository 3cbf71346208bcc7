#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "okb/linalg.hpp"

namespace okb {

/// A numerical divisor class: rational coordinates in a model's basis.
class DivisorClass {
public:
    DivisorClass() = default;
    explicit DivisorClass(Vector coeffs) : coeffs_(std::move(coeffs)) {}
    DivisorClass(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) {}

    static DivisorClass zero(std::size_t rank) { return DivisorClass(Vector(rank, Rational(0))); }
    static DivisorClass unit(std::size_t rank, std::size_t i)
    {
        Vector v(rank, Rational(0));
        v.at(i) = 1;
        return DivisorClass(std::move(v));
    }

    std::size_t size() const { return coeffs_.size(); }
    const Vector& coeffs() const { return coeffs_; }
    std::span<const Rational> span() const { return coeffs_; }
    const Rational& operator[](std::size_t i) const { return coeffs_[i]; }

    bool is_zero() const { return okb::is_zero(coeffs_); }

    /// Primitive integer representative of the ray through this class.
    DivisorClass primitive() const { return DivisorClass(primitive_ray(coeffs_)); }

    /// Class with one extra trailing coordinate set to zero (pullback under a blow-up).
    DivisorClass extended(std::size_t extra = 1) const
    {
        Vector v = coeffs_;
        v.resize(v.size() + extra, Rational(0));
        return DivisorClass(std::move(v));
    }

    DivisorClass& operator+=(const DivisorClass& o)
    {
        check(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    DivisorClass& operator-=(const DivisorClass& o)
    {
        check(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    DivisorClass& operator*=(const Rational& s)
    {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator-(DivisorClass a) { return a *= Rational(-1); }
    friend DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }
    friend DivisorClass operator*(DivisorClass a, const Rational& s) { return a *= s; }

    bool operator==(const DivisorClass& o) const { return coeffs_ == o.coeffs_; }
    bool operator<(const DivisorClass& o) const { return coeffs_ < o.coeffs_; }

private:
    void check(const DivisorClass& o) const
    {
        if (o.size() != size()) throw Error(ErrorKind::DimensionMismatch, "divisor classes of different rank");
    }

    Vector coeffs_;
};

/// True when a and b span the same open ray (b = c a with c > 0).
inline bool same_ray(const DivisorClass& a, const DivisorClass& b)
{
    if (a.size() != b.size()) return false;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.primitive() == b.primitive();
}

}  // namespace okb
