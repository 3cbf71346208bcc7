#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "okb/divisor.hpp"
#include "okb/lattice.hpp"

namespace okb {

namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view src, const SurfaceModel& model) : src_(src), model_(model) {}

    DivisorClass parse()
    {
        DivisorClass acc = DivisorClass::zero(model_.rank());
        skip();
        if (at_end()) fail("empty expression");
        bool first = true;
        while (!at_end()) {
            int s = 1;
            if (peek() == '+' || peek() == '-') {
                s = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            acc += Rational(s) * term();
            first = false;
            skip();
        }
        return acc;
    }

private:
    DivisorClass term()
    {
        Rational coef(1);
        bool has_coef = false;
        if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            coef = integer();
            has_coef = true;
            skip();
            if (!at_end() && peek() == '/') {
                ++pos_;
                skip();
                if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
                Rational den = integer();
                if (den == 0) fail("zero denominator");
                coef /= den;
                skip();
            }
            if (!at_end() && peek() == '*') {
                ++pos_;
                skip();
            }
        }
        if (at_end() || !is_label_start(peek())) {
            // A bare coefficient is accepted only for the zero class.
            if (has_coef && coef == 0) return DivisorClass::zero(model_.rank());
            fail("expected label");
        }
        std::size_t start = pos_;
        while (!at_end() && is_label_char(peek())) ++pos_;
        std::string label(src_.substr(start, pos_ - start));
        return coef * resolve(label, start);
    }

    DivisorClass resolve(const std::string& label, std::size_t at) const
    {
        const auto& b = model_.basis_labels();
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b[i] == label) return DivisorClass::unit(model_.rank(), i);
        if (const auto* c = model_.find_curve(label)) return c->cls;
        throw Error(ErrorKind::UnknownLabel, "unknown label '" + label + "' at position " + std::to_string(at));
    }

    Rational integer()
    {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return Rational(mpz_class(std::string(src_.substr(start, pos_ - start))));
    }

    static bool is_label_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool is_label_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

    void skip()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorKind::ParseError, what + " at position " + std::to_string(pos_) + " in '" + std::string(src_) + "'");
    }

    std::string_view src_;
    const SurfaceModel& model_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// expr := term (('+'|'-') term)*; term := [coef '*'?] label; coef := int | int '/' int.
/// Labels are basis labels first, then curve names.
inline DivisorClass parse_divisor_expr(std::string_view src, const SurfaceModel& model)
{
    return detail::ExprParser(src, model).parse();
}

/// Prints a class over the basis labels, e.g. "3*H - E1 - 1/2*E2". Re-parses to the same class.
inline std::string format_divisor(const DivisorClass& d, const SurfaceModel& model)
{
    std::string out;
    const auto& labels = model.basis_labels();
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Rational& c = d[i];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (out.empty()) out += c < 0 ? "-" : "";
        else out += c < 0 ? " - " : " + ";
        if (mag != 1) out += to_string(mag) + "*";
        out += labels[i];
    }
    return out.empty() ? "0" : out;
}

/// Annotation whose key parses to a class on the same ray as d, if any.
inline std::optional<Annotation> find_annotation(const SurfaceModel& model, const DivisorClass& d)
{
    for (const auto& [key, ann] : model.annotations()) {
        DivisorClass k = parse_divisor_expr(key, model);
        if (same_ray(k, d)) return ann;
    }
    return std::nullopt;
}

}  // namespace okb
