#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "okb/json_io.hpp"
#include "okb/okb.hpp"

using namespace okb;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kDomain = 1, kUsage = 2, kModel = 3 };

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownLabel:
    case ErrorKind::UnknownModel:
    case ErrorKind::UnknownCurve:
    case ErrorKind::InvalidInput:
    case ErrorKind::DimensionMismatch: return kUsage;
    case ErrorKind::ModelInconsistent:
    case ErrorKind::OracleAmbiguous: return kModel;
    default: return kDomain;
    }
}

struct Options {
    std::string format = "json";
    std::string svg;
    std::string model_file;
    std::vector<std::string> args;
    std::string kind = "limiting";
    std::string flag;
    std::string point_orders;
    std::string fixed;
    std::string through;
    std::string curve;
    std::string restricted_volume;
};

std::vector<std::pair<std::string, std::string>> split_pairs(const std::string& s)
{
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "expected key=value in '" + item + "'");
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return out;
}

std::map<std::string, int> int_table(const std::string& s)
{
    std::map<std::string, int> out;
    for (const auto& [k, v] : split_pairs(s)) {
        Rational r = parse_rational(v);
        if (r.get_den() != 1 || !r.get_num().fits_sint_p()) throw Error(ErrorKind::ParseError, "expected an integer for '" + k + "'");
        out[k] = static_cast<int>(r.get_num().get_si());
    }
    return out;
}

CurveTable rational_table(const std::string& s)
{
    CurveTable out;
    for (const auto& [k, v] : split_pairs(s)) out[k] = parse_rational(v);
    return out;
}

class Session {
public:
    explicit Session(Options o) : o_(std::move(o)) {}

    // Model and remaining positionals. With --model-file the model name may be omitted.
    SurfaceModel model(std::size_t needed_after)
    {
        SurfaceModel m = [&] {
            if (!o_.model_file.empty()) {
                if (o_.args.size() > needed_after) o_.args.erase(o_.args.begin());
                return io::model_from_json(io::read_json_file(o_.model_file));
            }
            if (o_.args.empty()) throw Error(ErrorKind::InvalidInput, "missing model argument");
            std::string name = o_.args.front();
            o_.args.erase(o_.args.begin());
            return builtin_model(name);
        }();
        auto violations = validate_model(m);
        if (!violations.empty()) {
            std::string msg = "model '" + m.name() + "' is invalid:";
            for (const auto& v : violations) msg += "\n  " + v;
            throw Error(ErrorKind::ModelInconsistent, msg);
        }
        if (o_.args.size() < needed_after) throw Error(ErrorKind::InvalidInput, "missing positional argument");
        return m;
    }

    const std::string& arg(std::size_t i) const { return o_.args.at(i); }

    // --flag NAME or NAME=EXPR (declares an ad-hoc irreducible curve).
    std::pair<SurfaceModel, AdmissibleFlag> flag(const SurfaceModel& m) const
    {
        if (o_.flag.empty()) throw Error(ErrorKind::InvalidInput, "--flag is required");
        SurfaceModel out = m;
        std::string name = o_.flag;
        if (auto eq = o_.flag.find('='); eq != std::string::npos) {
            name = o_.flag.substr(0, eq);
            if (!m.find_curve(name)) out = m.with_curve(name, parse_divisor_expr(o_.flag.substr(eq + 1), m));
        }
        return {out, AdmissibleFlag::at(name, int_table(o_.point_orders))};
    }

    void emit(const json& j, const std::string& csv) const
    {
        if (o_.format == "csv") std::cout << csv;
        else std::cout << j.dump(2) << "\n";
    }

    void svg(const RationalPolygon& p, const std::string& caption) const
    {
        if (o_.svg.empty()) return;
        std::ofstream out(o_.svg);
        if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + o_.svg + "'");
        out << polygon_svg(p, caption);
    }

    const Options& opts() const { return o_; }

private:
    Options o_;
};

std::string csv_vertices(const RationalPolygon& p)
{
    std::string s = "x1,x2\n";
    for (const auto& v : p.vertices()) s += to_string(v.x) + "," + to_string(v.y) + "\n";
    return s;
}

std::string csv_vector(const DivisorClass& d)
{
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? ";" : "") + to_string(d[i]);
    return s;
}

int cmd_zariski(Session& s)
{
    auto m = s.model(1);
    auto z = zariski_decompose(m, parse_divisor_expr(s.arg(0), m));
    std::string csv = "part,name,value\nP,," + csv_vector(z.positive) + "\n";
    for (const auto& [n, a] : z.negative) csv += "N," + n + "," + to_string(a) + "\n";
    s.emit(io::to_json(z), csv);
    return kOk;
}

int cmd_body(Session& s)
{
    auto m0 = s.model(1);
    const auto& o = s.opts();
    DivisorClass d = parse_divisor_expr(s.arg(0), m0);
    BodyResult b;
    if (o.kind == "infinitesimal") {
        b = infinitesimal_limiting_body(m0, d, PointSpec{int_table(o.through)});
    } else {
        auto [m, flag] = s.flag(m0);
        d = parse_divisor_expr(s.arg(0), m);
        if (o.kind == "big") {
            b = okounkov_body_big(m, flag, d);
        } else if (o.kind == "limiting") {
            b = limiting_body(m, flag, d);
        } else if (o.kind == "valuative") {
            auto sdec = s_decomposition_assemble(m, d, rational_table(o.fixed));
            ValuativeOptions vo;
            if (!o.restricted_volume.empty()) {
                vo.override_restricted_volume = true;
                if (o.restricted_volume != "?") vo.restricted_volume = parse_rational(o.restricted_volume);
            }
            b = valuative_body(m, flag, d, sdec, vo);
        } else {
            throw Error(ErrorKind::InvalidInput, "unknown body kind '" + o.kind + "'");
        }
    }
    for (const auto& n : b.notes) std::cerr << "note: " << n << "\n";
    s.svg(b.polygon, std::string(kind_name(b.kind)) + " body of " + s.arg(0));
    s.emit(io::to_json(b), csv_vertices(b.polygon));
    return kOk;
}

int cmd_mu(Session& s)
{
    auto m = s.model(1);
    const auto& o = s.opts();
    DivisorClass d = parse_divisor_expr(s.arg(0), m);
    Rational mu;
    if (!o.curve.empty()) mu = nakayama_constant(m, d, o.curve);
    else if (!o.through.empty()) mu = nakayama_constant_point(m, d, PointSpec{int_table(o.through)});
    else throw Error(ErrorKind::InvalidInput, "mu needs --curve or --through");
    s.emit({{"mu", to_string(mu)}}, "mu\n" + to_string(mu) + "\n");
    return kOk;
}

int cmd_epsilon(Session& s)
{
    auto m = s.model(1);
    if (s.opts().curve.empty()) throw Error(ErrorKind::InvalidInput, "epsilon needs --curve");
    Rational eps = seshadri_constant(m, parse_divisor_expr(s.arg(0), m), s.opts().curve);
    s.emit({{"epsilon", to_string(eps)}}, "epsilon\n" + to_string(eps) + "\n");
    return kOk;
}

int cmd_chambers(Session& s)
{
    auto m0 = s.model(0);
    json j;
    if (s.opts().flag.empty()) {
        j = io::chamber_report(m0, nullptr);
    } else {
        auto [m, flag] = s.flag(m0);
        j = io::chamber_report(m, &flag);
    }
    std::string csv = "support,witness\n";
    for (const auto& c : j["chambers"]) {
        std::string sup;
        for (const auto& n : c["support"]) sup += (sup.empty() ? "" : ";") + n.get<std::string>();
        std::string w;
        for (const auto& x : c["witness"]) w += (w.empty() ? "" : ";") + x.get<std::string>();
        csv += sup + "," + w + "\n";
    }
    s.emit(j, csv);
    return kOk;
}

int cmd_minkowski_basis(Session& s)
{
    auto [m, flag] = s.flag(s.model(0));
    json a = json::array();
    std::string csv = "ray,expr,vertices\n";
    for (const auto& e : minkowski_basis(m, flag)) {
        a.push_back({{"ray", io::to_json(e.cls)}, {"expr", format_divisor(e.cls, m)}, {"body_vertices", io::vertices_json(e.body)}});
        csv += csv_vector(e.cls) + "," + format_divisor(e.cls, m) + "," + to_string(e.body) + "\n";
    }
    s.emit({{"minkowski_basis", a}}, csv);
    return kOk;
}

int cmd_minkowski_decompose(Session& s)
{
    auto m0 = s.model(1);
    auto [m, flag] = s.flag(m0);
    DivisorClass d = parse_divisor_expr(s.arg(0), m);
    if (!is_nef(m, d)) d = zariski_decompose(m, d).positive;
    json a = json::array();
    std::string csv = "ray,expr,coefficient\n";
    for (const auto& [ray, b] : minkowski_decompose(m, flag, d)) {
        a.push_back({{"ray", io::to_json(ray)}, {"expr", format_divisor(ray, m)}, {"coefficient", to_string(b)}});
        csv += csv_vector(ray) + "," + format_divisor(ray, m) + "," + to_string(b) + "\n";
    }
    s.emit({{"decomposition", a}, {"nef_part", io::to_json(d)}}, csv);
    return kOk;
}

int cmd_similar(Session& s)
{
    const auto& args = s.opts().args;
    if (args.size() != 2) throw Error(ErrorKind::InvalidInput, "similar needs two polygon files");
    auto a = io::polygon_from_json(io::read_json_file(args[0]));
    auto b = io::polygon_from_json(io::read_json_file(args[1]));
    bool sim = similar(a, b);
    s.emit({{"similar", sim}}, std::string("similar\n") + (sim ? "true" : "false") + "\n");
    return kOk;
}

int cmd_models(Session& s)
{
    std::string csv = "name\n";
    for (const auto& n : builtin_model_names()) csv += n + "\n";
    s.emit({{"models", builtin_model_names()}}, csv);
    return kOk;
}

int cmd_validate(Session& s)
{
    auto m = s.model(0);
    s.emit({{"valid", true}, {"name", m.name()}, {"rank", m.rank()}}, "valid\ntrue\n");
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Okounkov bodies, Zariski decompositions and chambers on surface lattice models", "okbody"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--svg", o.svg, "Write an SVG of the resulting polygon");
    app.add_option("--model-file", o.model_file, "Load the model from a .surface.json file");

    struct Sub {
        CLI::App* app;
        int (*run)(Session&);
    };
    std::vector<Sub> subs;
    auto add = [&](const char* name, const char* desc, int (*run)(Session&)) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("args", o.args, "Positional arguments");
        subs.push_back({sub, run});
        return sub;
    };

    add("zariski", "Zariski decomposition: zariski <model> <expr>", cmd_zariski);
    auto* body = add("body", "Okounkov body: body <model> <expr> --flag <curve>", cmd_body);
    body->add_option("--kind", o.kind, "big|limiting|valuative|infinitesimal")
        ->check(CLI::IsMember({"big", "limiting", "valuative", "infinitesimal"}));
    body->add_option("--flag", o.flag, "Flag curve NAME or NAME=EXPR");
    body->add_option("--point-orders", o.point_orders, "Orders ord_x(C'|_C) as NAME=k,...");
    body->add_option("--fixed", o.fixed, "Fixed part N_s as NAME=coef,...");
    body->add_option("--through", o.through, "Blown-up point as NAME=mult,...");
    body->add_option("--restricted-volume", o.restricted_volume, "Override vol_{S|C} (valuative case)");
    auto* mu = add("mu", "Nakayama constant: mu <model> <expr> --curve <name> | --through NAME=m,...", cmd_mu);
    mu->add_option("--curve", o.curve, "Curve name");
    mu->add_option("--through", o.through, "Point as NAME=mult,...");
    auto* eps = add("epsilon", "Seshadri constant: epsilon <model> <expr> --curve <name>", cmd_epsilon);
    eps->add_option("--curve", o.curve, "Curve name");
    auto* ch = add("chambers", "Zariski chambers (and Minkowski data with --flag)", cmd_chambers);
    ch->add_option("--flag", o.flag, "Flag curve NAME or NAME=EXPR");
    auto* mb = add("minkowski-basis", "Minkowski basis: minkowski-basis <model> --flag <curve>", cmd_minkowski_basis);
    mb->add_option("--flag", o.flag, "Flag curve NAME or NAME=EXPR");
    auto* md = add("minkowski-decompose", "Minkowski decomposition: minkowski-decompose <model> <expr> --flag <curve>",
                   cmd_minkowski_decompose);
    md->add_option("--flag", o.flag, "Flag curve NAME or NAME=EXPR");
    add("similar", "Polygon similarity: similar <a.json> <b.json>", cmd_similar);
    add("models", "List built-in models", cmd_models);
    add("validate", "Validate a model: validate <model>", cmd_validate);

    try {
        // Only -h is a short option, so any other single-dash token is a divisor expression.
        std::vector<std::string> tokens;
        for (int i = argc - 1; i >= 1; --i) {
            std::string t = argv[i];
            if (t.size() > 1 && t[0] == '-' && t[1] != '-' && t != "-h") t.insert(0, " ");
            tokens.push_back(std::move(t));
        }
        app.parse(std::move(tokens));
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        for (const auto& sub : subs)
            if (sub.app->parsed()) {
                Session s(o);
                return sub.run(s);
            }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    }
    return kUsage;
}
