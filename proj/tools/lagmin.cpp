#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lagmin/acceptance.hpp"
#include "lagmin/artifacts.hpp"

using namespace lagmin;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string recipe_path;
    std::string preset;
    std::string out = ".";
    int grid = 0;
    double tol = 0.0;
    uint64_t seed = 1;
};

BuiltRecipe load(const Options& opt) {
    Recipe r;
    if (!opt.recipe_path.empty()) {
        std::ifstream in(opt.recipe_path);
        if (!in) throw InvalidInput("cannot open recipe '" + opt.recipe_path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        r = parse_recipe(text.str());
    } else if (!opt.preset.empty()) {
        r = preset_recipe(opt.preset);
    } else {
        throw InvalidInput("one of --recipe or --preset is required");
    }
    BuiltRecipe b = build_recipe(r);
    if (opt.grid > 0)
        for (int& c : b.grid.counts) c = opt.grid;
    if (opt.tol > 0.0) {
        b.tolerances.hminimal = opt.tol;
        b.tolerances.laplacian_match = opt.tol;
    }
    return b;
}

fs::path out_dir(const Options& opt) {
    const char* env = std::getenv("LAGMIN_OUT");
    fs::path dir = env && *env ? fs::path(env) : fs::path(opt.out);
    fs::create_directories(dir);
    return dir;
}

void write_artifact(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
    out << bytes;
    std::printf("%s\n", path.string().c_str());
}

std::string csv_legendrian_grid(const LegendrianMap& psi, const GridSpec& spec) {
    Grid g = make_grid(psi.axes, spec);
    std::string out;
    for (size_t i = 0; i < psi.axes.size(); ++i)
        out += (i ? ",p" : "p") + std::to_string(i + 1);
    for (int j = 0; j < psi.ambient_dim; ++j)
        out += ",re" + std::to_string(j + 1) + ",im" + std::to_string(j + 1);
    out += '\n';
    char buf[40];
    for (size_t id = 0; id < g.size(); ++id) {
        RVec p = g.point(g.unflatten(id));
        CVec v = psi.value(p);
        bool first = true;
        auto push = [&](double x) {
            std::snprintf(buf, sizeof buf, "%.12g", x);
            if (!first) out += ',';
            out += buf;
            first = false;
        };
        for (double x : p) push(x);
        for (const Complex& z : v) {
            push(z.real());
            push(z.imag());
        }
        out += '\n';
    }
    return out;
}

int cmd_generate(const Options& opt) {
    BuiltRecipe b = load(opt);
    fs::path dir = out_dir(opt);
    const int samples = 401;
    if (b.kind == "curve") {
        write_artifact(dir / (b.name + ".csv"),
                       csv_planar_curve(*b.curve, b.curve_ambient, samples));
    } else if (b.kind == "legendrian") {
        if (b.legendrian->ambient_dim == 2 && b.legendrian->intrinsic_dim == 1) {
            write_artifact(dir / (b.name + ".csv"),
                           csv_s3_curve(*b.legendrian, samples));
            write_artifact(dir / (b.name + "_hopf.csv"),
                           csv_hopf_sphere(*b.legendrian, samples));
        } else {
            write_artifact(dir / (b.name + ".csv"),
                           csv_legendrian_grid(*b.legendrian, b.grid));
        }
    } else if (b.kind == "hyperbolic") {
        write_artifact(dir / (b.name + ".csv"),
                       csv_h31_curve(*b.hyperbolic, samples));
        write_artifact(dir / (b.name + "_hopf.csv"),
                       csv_hopf_hyperbolic(*b.hyperbolic, samples));
    } else {
        write_artifact(dir / (b.name + ".csv"), csv_immersion(*b.immersion, b.grid));
    }
    return 0;
}

int cmd_verify(const Options& opt) {
    BuiltRecipe b = load(opt);
    fs::path dir = out_dir(opt);
    VerificationReport rep;
    AngleField field{{}, {}, {}, {}, {}};
    std::vector<double> hessian;
    if (b.kind == "immersion") {
        rep = certify(*b.immersion, b.grid, b.tolerances);
        field = lagrangian_angle_field(*b.immersion, b.grid);
        hessian = covariant_hessian_beta(*b.immersion, field);
    } else if (b.kind == "legendrian") {
        rep = certify_legendrian(*b.legendrian, b.grid, b.tolerances);
        field = angle_field(angle_problem(*b.legendrian), b.grid);
    } else {
        throw InvalidInput("verify needs a combinator or Legendrian recipe, got a " +
                           b.kind);
    }
    std::string report = report_text(rep);
    write_artifact(dir / (b.name + "_report.txt"), report);
    write_artifact(dir / (b.name + "_residuals.csv"), csv_residuals(field, hessian));
    std::fputs(report.c_str(), stdout);
    return rep.all_pass() ? 0 : 1;
}

int cmd_plot(const Options& opt) {
    BuiltRecipe b = load(opt);
    fs::path dir = out_dir(opt);
    const int samples = 800;
    std::vector<std::pair<double, double>> pts;
    if (b.kind == "curve") {
        double a = b.curve->domain_begin(), e = b.curve->domain_end();
        for (int i = 0; i <= samples; ++i) {
            Complex z = b.curve->value(a + (e - a) * i / samples);
            pts.emplace_back(z.real(), z.imag());
        }
        write_artifact(dir / (b.name + ".svg"), svg_curve(pts));
    } else if (b.kind == "legendrian" && b.legendrian->ambient_dim == 2) {
        double a = b.legendrian->axes[0].a, e = b.legendrian->axes[0].b;
        for (int i = 0; i <= samples; ++i) {
            CVec v = b.legendrian->value({a + (e - a) * i / samples});
            auto x = hopf_project_sphere(v[0], v[1]);
            pts.emplace_back(x[0], x[1]);
        }
        write_artifact(dir / (b.name + "_hopf.svg"), svg_curve(pts));
    } else if (b.kind == "hyperbolic") {
        double a = b.hyperbolic->dom_a, e = b.hyperbolic->dom_b;
        for (int i = 0; i <= samples; ++i) {
            double t = a + (e - a) * i / samples;
            auto x = hopf_project_hyperbolic(b.hyperbolic->a1(t), b.hyperbolic->a2(t));
            pts.emplace_back(x[0], x[1]);
        }
        write_artifact(dir / (b.name + "_hopf.svg"), svg_curve(pts));
    } else if (b.kind == "immersion") {
        if (b.immersion->axes.size() != 2)
            throw InvalidInput("residual heatmap needs a 2-axis immersion");
        AngleField f = lagrangian_angle_field(*b.immersion, b.grid);
        write_artifact(dir / (b.name + "_laplacian.svg"),
                       svg_heatmap(f.grid.counts, f.laplacian));
    } else {
        throw InvalidInput("nothing to plot for recipe kind '" + b.kind + "'");
    }
    return 0;
}

int cmd_acceptance(const Options& opt) {
    auto results = run_acceptance(opt.seed);
    std::fputs(acceptance_summary(results).c_str(), stdout);
    return acceptance_all_pass(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"H-minimal Lagrangian immersion toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--recipe", opt.recipe_path, "recipe file path");
        sub->add_option("--preset", opt.preset,
                        "preset name with optional key=value overrides");
        sub->add_option("--out", opt.out,
                        "output directory (env LAGMIN_OUT overrides)");
        sub->add_option("--grid", opt.grid, "uniform nodes per axis");
        sub->add_option("--tol", opt.tol, "harmonicity pass tolerance");
        sub->add_option("--seed", opt.seed, "seed for randomized checks");
    };
    CLI::App* gen = app.add_subcommand("generate", "sample a recipe to CSV");
    CLI::App* ver = app.add_subcommand("verify", "certify a recipe and write a report");
    CLI::App* plot = app.add_subcommand("plot", "render a recipe to SVG");
    CLI::App* acc = app.add_subcommand("acceptance", "run the full acceptance suite");
    for (CLI::App* sub : {gen, ver, plot, acc}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_generate(opt);
        if (ver->parsed()) return cmd_verify(opt);
        if (plot->parsed()) return cmd_plot(opt);
        return cmd_acceptance(opt);
    } catch (const RecipeError& e) {
        std::fprintf(stderr, "recipe error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
