#pragma once

#include <optional>
#include <string>

#include "lagmin/verify.hpp"

namespace lagmin {

struct RecipeEntry {
    std::string key, value;
    int line = 0, column = 0;
};

struct RecipeSection {
    std::string name;
    int line = 0;
    std::vector<RecipeEntry> entries;

    const RecipeEntry* find(const std::string& key) const;
};

struct Recipe {
    std::vector<RecipeSection> sections;

    const RecipeSection* find(const std::string& name) const;
};

// Plain-text key = value format with [section] headers and '#' comments.
// Throws RecipeError with line/column on malformed input.
Recipe parse_recipe(const std::string& text);

// Canonical echo: stable spacing, one blank line between sections.
// parse_recipe(serialize_recipe(r)) reproduces r up to line numbers.
std::string serialize_recipe(const Recipe& r);

// A recipe resolved into live objects.  Exactly one of the ingredient
// slots is filled for bare-ingredient recipes; combinator recipes fill
// `immersion` (and `surface` when one underlies the immersion).
struct BuiltRecipe {
    std::string kind;  // curve | legendrian | hyperbolic | surface | immersion
    std::string name;  // artifact base name
    std::optional<PlanarCurve> curve;
    int curve_ambient = 2;  // n for the G_alpha / A_alpha CSV columns
    std::optional<LegendrianMap> legendrian;
    std::optional<HyperbolicLegendrianCurve> hyperbolic;
    std::optional<LagrangianSurface> surface;
    std::optional<LagrangianImmersion> immersion;
    GridSpec grid;  // resolved per-axis counts
    Tolerances tolerances;
};

// Validates against the schema (unknown keys and missing sections are
// rejected with their location) and instantiates the objects.
BuiltRecipe build_recipe(const Recipe& r);

// Named presets.  The spec string is the preset name optionally
// followed by key=value overrides, e.g. "torus-qr q=1 r=3" or
// "cornu lambda=2 range=[-4,4]".
Recipe preset_recipe(const std::string& spec);
std::vector<std::string> preset_names();

}  // namespace lagmin
