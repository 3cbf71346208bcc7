#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "okb/chambers.hpp"
#include "okb/lattice.hpp"
#include "okb/okounkov.hpp"
#include "okb/polygon.hpp"
#include "okb/zariski.hpp"

namespace okb::io {

using json = nlohmann::json;

inline json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw Error(ErrorKind::ParseError, "expected a rational string, got " + j.dump());
}

inline json to_json(const Vector& v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline json to_json(const DivisorClass& d) { return to_json(d.coeffs()); }

inline DivisorClass divisor_from_json(const json& j)
{
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "expected an array of rationals");
    Vector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return DivisorClass(std::move(v));
}

inline json to_json(const IitakaDimension& k)
{
    if (k.is_minus_infinity()) return "-inf";
    return k.value();
}

inline IitakaDimension iitaka_from_json(const json& j)
{
    if (j.is_string() && j.get<std::string>() == "-inf") return IitakaDimension::minus_infinity();
    if (j.is_number_integer()) return IitakaDimension(j.get<int>());
    throw Error(ErrorKind::ParseError, "expected an integer or \"-inf\", got " + j.dump());
}

inline json to_json(const SurfaceModel& m)
{
    json j;
    j["name"] = m.name();
    j["basis"] = m.basis_labels();
    json gram = json::array();
    for (std::size_t i = 0; i < m.rank(); ++i) gram.push_back(to_json(m.gram().row_vector(i)));
    j["gram"] = gram;
    json curves = json::array();
    for (const auto& c : m.curves())
        curves.push_back({{"name", c.name}, {"class", to_json(c.cls)}, {"negative", c.negative}, {"irreducible", c.irreducible}});
    j["curves"] = curves;
    json eff = json::array();
    for (const auto& g : m.eff_generators()) eff.push_back(to_json(g));
    j["eff_generators"] = eff;
    json ann = json::object();
    for (const auto& [key, a] : m.annotations()) {
        json e = json::object();
        if (a.kappa) e["kappa"] = to_json(*a.kappa);
        if (a.kappa_max) e["kappa_max"] = to_json(*a.kappa_max);
        ann[key] = e;
    }
    j["annotations"] = ann;
    return j;
}

/// Parses the .surface.json schema. Structural problems raise ParseError; the model
/// invariants are left to validate_model.
inline SurfaceModel model_from_json(const json& j)
{
    try {
        std::vector<std::string> basis = j.at("basis").get<std::vector<std::string>>();
        std::vector<Vector> rows;
        for (const auto& r : j.at("gram")) rows.push_back(divisor_from_json(r).coeffs());
        if (rows.size() != basis.size())
            throw Error(ErrorKind::DimensionMismatch, "gram matrix size differs from basis length");
        for (const auto& r : rows)
            if (r.size() != basis.size()) throw Error(ErrorKind::DimensionMismatch, "gram matrix is not square");
        Matrix gram = rows.empty() ? Matrix(0, 0) : Matrix::from_rows(rows);
        std::vector<CurveDecl> curves;
        for (const auto& c : j.at("curves"))
            curves.push_back({c.at("name").get<std::string>(), divisor_from_json(c.at("class")), c.value("negative", false),
                              c.value("irreducible", true)});
        std::vector<DivisorClass> eff;
        for (const auto& g : j.at("eff_generators")) eff.push_back(divisor_from_json(g));
        Annotations ann;
        if (j.contains("annotations"))
            for (const auto& [key, a] : j.at("annotations").items()) {
                Annotation e;
                if (a.contains("kappa")) e.kappa = iitaka_from_json(a.at("kappa"));
                if (a.contains("kappa_max")) e.kappa_max = iitaka_from_json(a.at("kappa_max"));
                ann[key] = e;
            }
        return SurfaceModel(j.value("name", std::string("model")), std::move(basis), std::move(gram), std::move(curves),
                            std::move(eff), std::move(ann));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed surface model: ") + e.what());
    }
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, "'" + path + "': " + e.what());
    }
}

inline json to_json(const Point2& p) { return json::array({to_json(p.x), to_json(p.y)}); }

inline json vertices_json(const RationalPolygon& p)
{
    json a = json::array();
    for (const auto& v : p.vertices()) a.push_back(to_json(v));
    return a;
}

inline json to_json(const RationalPolygon& p) { return {{"vertices", vertices_json(p)}}; }

inline RationalPolygon polygon_from_json(const json& j)
{
    try {
        std::vector<Point2> pts;
        for (const auto& v : j.at("vertices")) {
            if (!v.is_array() || v.size() != 2) throw Error(ErrorKind::ParseError, "vertex must be a pair");
            pts.push_back({rational_from_json(v[0]), rational_from_json(v[1])});
        }
        if (pts.empty()) throw Error(ErrorKind::ParseError, "polygon has no vertices");
        return hull(std::move(pts));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed polygon: ") + e.what());
    }
}

inline json to_json(const Affine& a) { return json::array({to_json(a.c0), to_json(a.c1)}); }

inline json to_json(const BodyResult& b)
{
    json pieces = json::array();
    for (const auto& p : b.pieces)
        pieces.push_back({{"t0", to_json(p.t0)},
                          {"t1", to_json(p.t1)},
                          {"alpha", to_json(p.alpha)},
                          {"beta", to_json(p.beta)},
                          {"support", p.support}});
    json j{{"kind", kind_name(b.kind)}, {"vertices", vertices_json(b.polygon)}, {"pieces", pieces}};
    if (!b.notes.empty()) j["notes"] = b.notes;
    return j;
}

inline json to_json(const ZariskiDecomposition& z)
{
    json n = json::object();
    for (const auto& [name, a] : z.negative) n[name] = to_json(a);
    return {{"P", to_json(z.positive)}, {"N", n}};
}

inline ZariskiDecomposition zariski_from_json(const json& j)
{
    ZariskiDecomposition z{divisor_from_json(j.at("P")), {}};
    for (const auto& [name, a] : j.at("N").items()) z.negative[name] = rational_from_json(a);
    return z;
}

inline json chamber_report(const SurfaceModel& model, const AdmissibleFlag* flag)
{
    json j;
    auto en = enumerate_zariski_chambers(model);
    json ch = json::array();
    for (const auto& c : en.realized) ch.push_back({{"support", c.support}, {"witness", to_json(c.witness)}});
    j["chambers"] = ch;
    json un = json::array();
    for (const auto& u : en.unrealized) un.push_back({{"support", u.support}, {"reason", u.reason}});
    j["unrealized"] = un;
    if (flag) {
        json mb = json::array();
        for (const auto& e : minkowski_basis(model, *flag))
            mb.push_back({{"ray", to_json(e.cls)}, {"body_vertices", vertices_json(e.body)}});
        j["minkowski_basis"] = mb;
        json mc = json::array();
        for (const auto& c : minkowski_chambers(model, *flag)) {
            json rays = json::array();
            for (const auto& r : c.rays) rays.push_back(to_json(r));
            mc.push_back({{"rays", rays}});
        }
        j["minkowski_chambers"] = mc;
    }
    return j;
}

}  // namespace okb::io
