#include <sstream>

#include "lagmin/recipe.hpp"

namespace lagmin {

namespace {

struct PresetDef {
    const char* name;
    const char* text;
};

// clang-format off
const PresetDef kPresets[] = {
    {"cornu",
     "[curve]\n"
     "family = cornu\n"
     "lambda = 1\n"
     "s_min = -6\n"
     "s_max = 6\n"
     "[output]\n"
     "name = cornu\n"},
    {"figure1",
     "[curve]\n"
     "family = cornu\n"
     "lambda = 1\n"
     "s_min = -6\n"
     "s_max = 6\n"
     "[output]\n"
     "name = figure1\n"},
    {"figure2",
     "[curve]\n"
     "family = constanta\n"
     "n = 2\n"
     "c = 5\n"
     "closed = true\n"
     "c_min = 4.9\n"
     "c_max = 5.1\n"
     "[output]\n"
     "name = figure2\n"},
    {"figure3",
     "[curve]\n"
     "family = constanta\n"
     "n = 2\n"
     "c = 1\n"
     "r0 = 1\n"
     "length = 40\n"
     "[output]\n"
     "name = figure3\n"},
    {"figure4",
     "[curve]\n"
     "family = constanta\n"
     "n = 3\n"
     "c = 5\n"
     "closed = true\n"
     "r0_min = 0.3\n"
     "r0_max = 1.6\n"
     "[output]\n"
     "name = figure4\n"},
    {"figure5",
     "[curve]\n"
     "family = constanta\n"
     "n = 3\n"
     "c = 1\n"
     "r0 = 1.5\n"
     "length = 40\n"
     "[output]\n"
     "name = figure5\n"},
    {"clifford",
     "[combinator]\n"
     "kind = product\n"
     "[curve]\n"
     "family = circle\n"
     "radius = 1\n"
     "[curve2]\n"
     "family = circle\n"
     "radius = 1\n"
     "[grid]\n"
     "n = 24\n"
     "[output]\n"
     "name = clifford\n"},
    {"torus-qr",
     "[combinator]\n"
     "kind = join-surface\n"
     "[hyperbolic]\n"
     "kind = alpha-qr\n"
     "q = 1\n"
     "r = 2\n"
     "[grid]\n"
     "n = 24\n"
     "[output]\n"
     "name = torus-qr\n"},
    {"cor5-case3",
     "[combinator]\n"
     "kind = cor5-case3\n"
     "scale = 1\n"
     "margin = 0.01\n"
     "[grid]\n"
     "n = 24\n"
     "[output]\n"
     "name = cor5-case3\n"},
};
// clang-format on

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& p : kPresets) out.push_back(p.name);
    return out;
}

Recipe preset_recipe(const std::string& spec) {
    std::istringstream in(spec);
    std::string name;
    in >> name;
    const PresetDef* def = nullptr;
    for (const auto& p : kPresets)
        if (name == p.name) def = &p;
    if (!def) throw InvalidParameter("unknown preset '" + name + "'");
    Recipe r = parse_recipe(def->text);

    std::string tok;
    while (in >> tok) {
        size_t eq = tok.find('=');
        if (eq == std::string::npos)
            throw InvalidParameter("preset override '" + tok +
                                   "' is not key=value");
        std::string key = tok.substr(0, eq);
        std::string value = tok.substr(eq + 1);
        if (key == "range") {
            // range=[a,b] expands to s_min / s_max on the curve section
            if (value.size() < 5 || value.front() != '[' || value.back() != ']')
                throw InvalidParameter("range override must look like [a,b]");
            size_t comma = value.find(',');
            if (comma == std::string::npos)
                throw InvalidParameter("range override must look like [a,b]");
            bool found = false;
            for (auto& s : r.sections)
                if (s.name == "curve") {
                    for (auto& e : s.entries) {
                        if (e.key == "s_min")
                            e.value = value.substr(1, comma - 1), found = true;
                        if (e.key == "s_max")
                            e.value = value.substr(comma + 1,
                                                   value.size() - comma - 2);
                    }
                }
            if (!found)
                throw InvalidParameter(
                    "preset has no curve range to override");
            continue;
        }
        bool found = false;
        for (auto& s : r.sections)
            for (auto& e : s.entries)
                if (e.key == key) {
                    e.value = value;
                    found = true;
                }
        if (!found)
            throw InvalidParameter("preset '" + name + "' has no key '" + key +
                                   "'");
    }
    return r;
}

}  // namespace lagmin
