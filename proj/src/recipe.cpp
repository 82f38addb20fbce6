#include "lagmin/recipe.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace lagmin {

const RecipeEntry* RecipeSection::find(const std::string& key) const {
    for (const auto& e : entries)
        if (e.key == key) return &e;
    return nullptr;
}

const RecipeSection* Recipe::find(const std::string& name) const {
    for (const auto& s : sections)
        if (s.name == name) return &s;
    return nullptr;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::islower(static_cast<unsigned char>(c)) ||
              std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '_'))
            return false;
    return true;
}

}  // namespace

Recipe parse_recipe(const std::string& text) {
    Recipe out;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        size_t first = line.find_first_not_of(" \t");
        int col = static_cast<int>(first) + 1;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw RecipeError("unterminated section header", lineno, col);
            std::string name = trim(t.substr(1, t.size() - 2));
            if (!valid_name(name))
                throw RecipeError("invalid section name '" + name + "'", lineno,
                                  col);
            if (out.find(name))
                throw RecipeError("duplicate section [" + name + "]", lineno, col);
            out.sections.push_back({name, lineno, {}});
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw RecipeError("expected 'key = value'", lineno, col);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!valid_name(key))
            throw RecipeError("invalid key '" + key + "'", lineno, col);
        if (value.empty())
            throw RecipeError("missing value for '" + key + "'", lineno,
                              static_cast<int>(eq) + 2);
        if (out.sections.empty())
            throw RecipeError("entry before any [section]", lineno, col);
        if (out.sections.back().find(key))
            throw RecipeError("duplicate key '" + key + "'", lineno, col);
        out.sections.back().entries.push_back({key, value, lineno, col});
    }
    return out;
}

std::string serialize_recipe(const Recipe& r) {
    std::string out;
    for (size_t i = 0; i < r.sections.size(); ++i) {
        if (i) out += "\n";
        out += "[" + r.sections[i].name + "]\n";
        for (const auto& e : r.sections[i].entries)
            out += e.key + " = " + e.value + "\n";
    }
    return out;
}

namespace {

[[noreturn]] void fail(const RecipeEntry& e, const std::string& msg) {
    throw RecipeError(msg, e.line, e.column);
}

[[noreturn]] void fail(const RecipeSection& s, const std::string& msg) {
    throw RecipeError(msg, s.line, 1);
}

double num(const RecipeEntry& e) {
    try {
        size_t used = 0;
        double v = std::stod(e.value, &used);
        if (used != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        fail(e, "expected a number for '" + e.key + "', got '" + e.value + "'");
    }
}

long integer(const RecipeEntry& e) {
    try {
        size_t used = 0;
        long v = std::stol(e.value, &used);
        if (used != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        fail(e, "expected an integer for '" + e.key + "', got '" + e.value + "'");
    }
}

// rejects any entry whose key is outside the allowed set
void check_keys(const RecipeSection& s, const std::set<std::string>& allowed) {
    for (const auto& e : s.entries)
        if (!allowed.count(e.key))
            fail(e, "unknown key '" + e.key + "' in [" + s.name + "]");
}

const RecipeEntry& require(const RecipeSection& s, const std::string& key) {
    const RecipeEntry* e = s.find(key);
    if (!e) fail(s, "missing key '" + key + "' in [" + s.name + "]");
    return *e;
}

double num_or(const RecipeSection& s, const std::string& key, double dflt) {
    const RecipeEntry* e = s.find(key);
    return e ? num(*e) : dflt;
}

PlanarCurve build_curve(const RecipeSection& s, int* ambient_out) {
    const std::string family = require(s, "family").value;
    int ambient = 2;
    if (const RecipeEntry* e = s.find("ambient"))
        ambient = static_cast<int>(integer(*e));
    if (ambient_out) *ambient_out = ambient;
    if (family == "circle") {
        check_keys(s, {"family", "radius", "ambient"});
        return make_circle(num_or(s, "radius", 1.0));
    }
    if (family == "cornu") {
        check_keys(s, {"family", "lambda", "s_min", "s_max", "ambient"});
        return make_cornu(num_or(s, "lambda", 1.0), num_or(s, "s_min", -6.0),
                          num_or(s, "s_max", 6.0));
    }
    if (family == "line") {
        check_keys(s, {"family", "x0", "y0", "dx", "dy", "s_min", "s_max",
                       "ambient"});
        return make_line(Complex(num_or(s, "x0", 1.0), num_or(s, "y0", 0.0)),
                         Complex(num_or(s, "dx", 0.0), num_or(s, "dy", 1.0)),
                         num_or(s, "s_min", -5.0), num_or(s, "s_max", 5.0));
    }
    if (family == "constanta") {
        check_keys(s, {"family", "n", "c", "r0", "theta0", "length", "closed",
                       "r0_min", "r0_max", "c_min", "c_max", "ambient"});
        int n = static_cast<int>(integer(require(s, "n")));
        double c = num(require(s, "c"));
        if (ambient_out) *ambient_out = n;
        const RecipeEntry* closed = s.find("closed");
        if (closed && closed->value == "true") {
            // n = 2: A is scale-invariant, so the shooting parameter is
            // the constant itself; n >= 3: shoot over the initial radius
            auto hit = n == 2
                           ? scan_closed_constantA2(num_or(s, "c_min", c - 0.1),
                                                    num_or(s, "c_max", c + 0.1))
                           : scan_closed_constantA(n, c, num_or(s, "r0_min", 0.3),
                                                   num_or(s, "r0_max", 1.6));
            if (!hit)
                fail(*closed, "no closed constant-A curve found in the scan range");
            return hit->curve;
        }
        return make_constantA(n, c, num_or(s, "r0", 1.0),
                              num_or(s, "theta0", kPi / 2.0),
                              num_or(s, "length", 60.0));
    }
    fail(require(s, "family"), "unknown curve family '" + family + "'");
}

LegendrianMap build_legendrian(const RecipeSection& s) {
    const std::string kind = require(s, "kind").value;
    if (kind == "geodesic-sphere") {
        check_keys(s, {"kind", "m"});
        return geodesic_sphere(static_cast<int>(integer(require(s, "m"))));
    }
    if (kind == "flat-torus") {
        check_keys(s, {"kind"});
        return flat_torus();
    }
    if (kind == "point") {
        check_keys(s, {"kind"});
        return point_legendrian();
    }
    if (kind == "gamma-phi") {
        check_keys(s, {"kind", "phi", "length"});
        double len = num_or(s, "length", kTwoPi * 8.0);
        return gamma_phi(num(require(s, "phi")), len);
    }
    if (kind == "gamma-n1n2") {
        check_keys(s, {"kind", "n1", "n2"});
        return gamma_n1n2(static_cast<int>(integer(require(s, "n1"))),
                          static_cast<int>(integer(require(s, "n2"))));
    }
    if (kind == "join") {
        check_keys(s, {"kind", "n1", "n2", "m1", "m2"});
        return join_legendrian(
            gamma_n1n2(static_cast<int>(integer(require(s, "n1"))),
                       static_cast<int>(integer(require(s, "n2")))),
            geodesic_sphere(static_cast<int>(integer(require(s, "m1")))),
            geodesic_sphere(static_cast<int>(integer(require(s, "m2")))));
    }
    fail(require(s, "kind"), "unknown legendrian kind '" + kind + "'");
}

HyperbolicLegendrianCurve build_hyperbolic(const RecipeSection& s) {
    const std::string kind = require(s, "kind").value;
    if (kind == "alpha-qr") {
        check_keys(s, {"kind", "q", "r"});
        return alpha_qr(integer(require(s, "q")), integer(require(s, "r")));
    }
    if (kind == "alpha-delta") {
        check_keys(s, {"kind", "delta"});
        return alpha_delta(num(require(s, "delta")));
    }
    fail(require(s, "kind"), "unknown hyperbolic kind '" + kind + "'");
}

LagrangianSurface build_join_surface(const Recipe& r, const RecipeSection& comb) {
    LegendrianMap gamma =
        r.find("legendrian") ? build_legendrian(*r.find("legendrian"))
                             : geodesic_sphere(1);
    const RecipeSection* hs = r.find("hyperbolic");
    if (!hs) fail(comb, "join-surface needs a [hyperbolic] section");
    HyperbolicLegendrianCurve alpha = build_hyperbolic(*hs);
    double s_min = num_or(comb, "s_min", std::nan(""));
    double s_max = num_or(comb, "s_max", std::nan(""));
    return curve_join_surface(gamma, alpha, s_min, s_max);
}

Tolerances build_tolerances(const Recipe& r) {
    Tolerances tol;
    const RecipeSection* s = r.find("tolerances");
    if (!s) return tol;
    check_keys(*s, {"symplectic", "contact", "metric", "angle", "laplacian",
                    "hminimal", "parallelh", "diva"});
    tol.symplectic = num_or(*s, "symplectic", tol.symplectic);
    tol.contact = num_or(*s, "contact", tol.contact);
    tol.metric_match = num_or(*s, "metric", tol.metric_match);
    tol.angle_match = num_or(*s, "angle", tol.angle_match);
    tol.laplacian_match = num_or(*s, "laplacian", tol.laplacian_match);
    tol.hminimal = num_or(*s, "hminimal", tol.hminimal);
    tol.parallel_h = num_or(*s, "parallelh", tol.parallel_h);
    tol.div_a = num_or(*s, "diva", tol.div_a);
    return tol;
}

GridSpec build_grid(const Recipe& r, size_t axis_count) {
    GridSpec spec;
    const RecipeSection* s = r.find("grid");
    int uniform = 24;
    if (s) {
        check_keys(*s, {"n", "counts"});
        if (const RecipeEntry* e = s->find("counts")) {
            std::istringstream in(e->value);
            std::string tok;
            while (std::getline(in, tok, ','))
                spec.counts.push_back(std::stoi(trim(tok)));
            if (spec.counts.size() != axis_count)
                fail(*e, "counts must list one value per axis");
            return spec;
        }
        if (const RecipeEntry* e = s->find("n"))
            uniform = static_cast<int>(integer(*e));
    }
    spec.counts.assign(axis_count, uniform);
    return spec;
}

}  // namespace

BuiltRecipe build_recipe(const Recipe& r) {
    static const std::set<std::string> known_sections = {
        "combinator", "curve", "curve2",     "legendrian", "psi1",
        "psi2",       "hyperbolic", "grid",  "tolerances", "output"};
    for (const auto& s : r.sections)
        if (!known_sections.count(s.name))
            fail(s, "unknown section [" + s.name + "]");

    BuiltRecipe out;
    out.name = "artifact";
    if (const RecipeSection* os = r.find("output")) {
        check_keys(*os, {"name"});
        out.name = require(*os, "name").value;
    }
    out.tolerances = build_tolerances(r);

    const RecipeSection* comb = r.find("combinator");
    if (!comb) {
        // bare ingredient
        if (const RecipeSection* cs = r.find("curve")) {
            out.kind = "curve";
            out.curve = build_curve(*cs, &out.curve_ambient);
            out.grid = build_grid(r, 1);
        } else if (const RecipeSection* ls = r.find("legendrian")) {
            out.kind = "legendrian";
            out.legendrian = build_legendrian(*ls);
            out.grid = build_grid(r, out.legendrian->axes.size());
        } else if (const RecipeSection* hs = r.find("hyperbolic")) {
            out.kind = "hyperbolic";
            out.hyperbolic = build_hyperbolic(*hs);
            out.grid = build_grid(r, 1);
        } else {
            throw RecipeError("recipe has no ingredient or combinator", 1, 1);
        }
        return out;
    }

    const std::string kind = require(*comb, "kind").value;
    if (kind == "product") {
        check_keys(*comb, {"kind"});
        const RecipeSection* c1 = r.find("curve");
        const RecipeSection* c2 = r.find("curve2");
        if (!c1 || !c2) fail(*comb, "product needs [curve] and [curve2]");
        out.immersion = product_of_curves(
            {build_curve(*c1, nullptr), build_curve(*c2, nullptr)});
    } else if (kind == "curve-legendrian") {
        check_keys(*comb, {"kind"});
        const RecipeSection* cs = r.find("curve");
        const RecipeSection* ls = r.find("legendrian");
        if (!cs || !ls)
            fail(*comb, "curve-legendrian needs [curve] and [legendrian]");
        out.immersion = curve_times_legendrian(build_curve(*cs, nullptr),
                                               build_legendrian(*ls));
    } else if (kind == "cone") {
        check_keys(*comb, {"kind", "s_min", "s_max"});
        const RecipeSection* ls = r.find("legendrian");
        if (!ls) fail(*comb, "cone needs a [legendrian] section");
        out.immersion = cone(build_legendrian(*ls), num_or(*comb, "s_min", 0.5),
                             num_or(*comb, "s_max", 2.0));
    } else if (kind == "join-surface") {
        check_keys(*comb, {"kind", "s_min", "s_max"});
        out.surface = build_join_surface(r, *comb);
        out.immersion = out.surface->im;
    } else if (kind == "cor5-case3") {
        check_keys(*comb, {"kind", "scale", "margin"});
        out.surface = surface_cor5_case3(num_or(*comb, "scale", 1.0),
                                         num_or(*comb, "margin", 1e-2));
        out.immersion = out.surface->im;
    } else if (kind == "thm3") {
        check_keys(*comb, {"kind", "surface", "s_min", "s_max", "scale",
                           "margin"});
        const RecipeEntry* se = comb->find("surface");
        LagrangianSurface surf =
            (se && se->value == "cor5-case3")
                ? surface_cor5_case3(num_or(*comb, "scale", 1.0),
                                     num_or(*comb, "margin", 1e-2))
                : build_join_surface(r, *comb);
        // [legendrian] may already be consumed as the join gamma; the
        // Legendrian factors default to geodesic circles when absent
        LegendrianMap psi1 = r.find("psi1") ? build_legendrian(*r.find("psi1"))
                                            : geodesic_sphere(1);
        LegendrianMap psi2 = r.find("psi2") ? build_legendrian(*r.find("psi2"))
                                            : geodesic_sphere(1);
        out.surface = surf;
        out.immersion = surface_times_two_legendrians(surf, psi1, psi2);
    } else {
        fail(require(*comb, "kind"), "unknown combinator kind '" + kind + "'");
    }
    out.kind = out.surface && !out.immersion ? "surface" : "immersion";
    if (out.immersion)
        out.grid = build_grid(r, out.immersion->axes.size());
    return out;
}

}  // namespace lagmin
