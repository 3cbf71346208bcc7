#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "okb/error.hpp"

namespace okb {

/// Exact rational scalar. Always kept in canonical form (gcd 1, positive denominator).
using Rational = mpq_class;

/// Canonical "p/q" or "n" text for a rational.
inline std::string to_string(const Rational& r)
{
    mpq_class c(r);
    c.canonicalize();
    return c.get_str();
}

/// Parses "n", "-n", "p/q" (surrounding whitespace allowed). Throws ParseError.
inline Rational parse_rational(std::string_view text)
{
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto read_int = [&](bool allow_sign) -> std::string {
        std::string out;
        if (allow_sign && i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') out.push_back('-');
            ++i;
        }
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) out.push_back(text[i++]);
        if (i == start) throw Error(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");
        return out;
    };
    skip_ws();
    std::string num = read_int(true);
    std::string den = "1";
    skip_ws();
    if (i < text.size() && text[i] == '/') {
        ++i;
        skip_ws();
        den = read_int(false);
        skip_ws();
    }
    if (i != text.size()) throw Error(ErrorKind::ParseError, "trailing characters in rational '" + std::string(text) + "'");
    mpz_class d(den);
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rational r(mpz_class(num), d);
    r.canonicalize();
    return r;
}

inline int sign(const Rational& r) { return sgn(r); }

/// A rational or +infinity. Thresholds that are unbounded are reported this way,
/// never by a sentinel value.
class ExtendedRational {
public:
    ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
    static ExtendedRational infinity() { return ExtendedRational(); }

    bool is_infinite() const { return !value_.has_value(); }
    const Rational& value() const
    {
        if (!value_) throw Error(ErrorKind::InvalidInput, "threshold is +infinity");
        return *value_;
    }

    bool operator==(const ExtendedRational& other) const
    {
        if (is_infinite() || other.is_infinite()) return is_infinite() == other.is_infinite();
        return *value_ == *other.value_;
    }

    std::string str() const { return is_infinite() ? "inf" : to_string(*value_); }

private:
    ExtendedRational() = default;
    std::optional<Rational> value_;
};

inline std::ostream& operator<<(std::ostream& os, const ExtendedRational& e) { return os << e.str(); }

/// Scales a rational vector to the primitive integer vector on the same ray.
/// The zero vector maps to itself.
inline std::vector<Rational> primitive_ray(std::span<const Rational> v)
{
    mpz_class lcm_den = 1;
    for (const auto& x : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> ints;
    ints.reserve(v.size());
    mpz_class g = 0;
    for (const auto& x : v) {
        mpz_class n = x.get_num() * (lcm_den / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        ints.push_back(std::move(n));
    }
    std::vector<Rational> out;
    out.reserve(v.size());
    for (auto& n : ints) out.emplace_back(g == 0 ? n : mpz_class(n / g));
    return out;
}

}  // namespace okb
