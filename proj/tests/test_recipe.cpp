#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lagmin/artifacts.hpp"
#include "lagmin/recipe.hpp"

using namespace lagmin;

TEST_CASE("recipe parsing and normalized round trip") {
    std::string text =
        "# a cornu factor\n"
        "[curve]\n"
        "family = cornu\n"
        "lambda=2   # inline comment\n"
        "\n"
        "[grid]\n"
        "n = 32\n";
    Recipe r = parse_recipe(text);
    REQUIRE(r.sections.size() == 2);
    CHECK(r.sections[0].name == "curve");
    CHECK(r.sections[0].find("lambda")->value == "2");
    CHECK(r.sections[0].find("lambda")->line == 4);
    std::string echo = serialize_recipe(r);
    Recipe again = parse_recipe(echo);
    CHECK(serialize_recipe(again) == echo);
}

TEST_CASE("recipe syntax errors carry line and column") {
    auto expect_at = [](const std::string& text, int line) {
        try {
            parse_recipe(text);
            FAIL("expected RecipeError");
        } catch (const RecipeError& e) {
            CHECK(e.line == line);
            CHECK(e.column >= 1);
        }
    };
    expect_at("[curve\nfamily = circle\n", 1);
    expect_at("[curve]\nno equals sign here\n", 2);
    expect_at("key = before-section\n", 1);
    expect_at("[curve]\nfamily = a\nfamily = b\n", 3);
    expect_at("[curve]\nkey =\n", 2);
    expect_at("[curve]\n[curve]\n", 2);
}

TEST_CASE("builder rejects unknown keys and sections with location") {
    try {
        build_recipe(parse_recipe("[curve]\nfamily = circle\nradios = 2\n"));
        FAIL("expected RecipeError");
    } catch (const RecipeError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("radios") != std::string::npos);
    }
    CHECK_THROWS_AS(build_recipe(parse_recipe("[curves]\nfamily = circle\n")),
                    RecipeError);
    CHECK_THROWS_AS(build_recipe(parse_recipe("[curve]\nfamily = frisbee\n")),
                    RecipeError);
    CHECK_THROWS_AS(
        build_recipe(parse_recipe("[curve]\nfamily = circle\nradius = wide\n")),
        RecipeError);
    CHECK_THROWS_AS(build_recipe(parse_recipe("[grid]\nn = 16\n")), RecipeError);
}

TEST_CASE("building combinator recipes") {
    auto b = build_recipe(parse_recipe(
        "[combinator]\nkind = product\n"
        "[curve]\nfamily = circle\nradius = 1\n"
        "[curve2]\nfamily = cornu\nlambda = 1\n"
        "[grid]\nn = 16\n"
        "[tolerances]\nhminimal = 0.001\n"));
    CHECK(b.kind == "immersion");
    REQUIRE(b.immersion.has_value());
    CHECK(b.immersion->dim == 2);
    CHECK(b.grid.counts == std::vector<int>{16, 16});
    CHECK(b.tolerances.hminimal == 0.001);
    CHECK(b.tolerances.symplectic == 1e-8);  // untouched default

    auto j = build_recipe(parse_recipe(
        "[combinator]\nkind = join-surface\ns_min = 0.2\ns_max = 1.37\n"
        "[hyperbolic]\nkind = alpha-qr\nq = 1\nr = 2\n"));
    CHECK(j.surface.has_value());
    CHECK(j.immersion->family == "gamma-join-alpha");
}

TEST_CASE("presets build and accept overrides") {
    for (const std::string& name : preset_names()) {
        if (name == "figure2" || name == "figure4") continue;  // slow scans
        BuiltRecipe b = build_recipe(preset_recipe(name));
        CHECK(b.name == name);
    }
    auto t = build_recipe(preset_recipe("torus-qr q=1 r=3"));
    // the alpha_{1,3} period is 2 pi sqrt(3)
    CHECK(t.surface->im.axes[1].b ==
          doctest::Approx(kTwoPi * std::sqrt(3.0)).epsilon(1e-12));
    auto c = build_recipe(preset_recipe("cornu lambda=2 range=[-4,4]"));
    CHECK(c.curve->lambda == 2.0);
    CHECK(c.curve->domain_begin() == -4.0);
    CHECK(c.curve->domain_end() == 4.0);
    CHECK_THROWS_AS(preset_recipe("figure9"), InvalidParameter);
    CHECK_THROWS_AS(preset_recipe("cornu sigma=2"), InvalidParameter);
}

TEST_CASE("planar curve CSV: Cornu curvature column equals s") {
    auto b = build_recipe(preset_recipe("cornu"));
    std::string csv = csv_planar_curve(*b.curve, b.curve_ambient, 101);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "s,re,im,kappa,G_alpha,A_alpha");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        double s, re, im, kappa;
        char c;
        std::istringstream row(line);
        row >> s >> c >> re >> c >> im >> c >> kappa;
        CHECK(kappa == doctest::Approx(s).epsilon(1e-8));
        // the Cornu spiral passes through the origin: angle columns nan
        CHECK(line.find("nan") != std::string::npos);
    }
    CHECK(rows == 101);
    // determinism
    CHECK(csv_planar_curve(*b.curve, b.curve_ambient, 101) == csv);
}

TEST_CASE("circle CSV carries the closed-form G and A columns") {
    std::string csv = csv_planar_curve(make_circle(2.0), 3, 11);
    CHECK(csv.find("nan") == std::string::npos);
    // last column of the first data row: A = n R^{n-2} = 6
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    double a = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(a == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("spherical and hyperbolic curve CSV layouts") {
    std::string s3 = csv_s3_curve(gamma_n1n2(1, 2), 33);
    CHECK(s3.substr(0, s3.find('\n')) == "t,re1,im1,re2,im2,beta");
    std::string h31 = csv_h31_curve(alpha_qr(1, 2), 33);
    CHECK(h31.substr(0, h31.find('\n')) == "t,re1,im1,re2,im2,beta");
    std::string hopf = csv_hopf_sphere(gamma_phi(0.7), 17);
    CHECK(hopf.substr(0, hopf.find('\n')) == "t,x1,x2,x3");
    // the projection lands on the radius-1/2 sphere
    std::istringstream in(hopf);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        double t, x1, x2, x3;
        char c;
        std::istringstream row(line);
        row >> t >> c >> x1 >> c >> x2 >> c >> x3;
        CHECK(x1 * x1 + x2 * x2 + x3 * x3 == doctest::Approx(0.25).epsilon(1e-9));
    }
}

TEST_CASE("immersion CSV has parameter and interleaved component columns") {
    auto b = build_recipe(preset_recipe("clifford"));
    std::string csv = csv_immersion(*b.immersion, {{8, 8}});
    CHECK(csv.substr(0, csv.find('\n')) == "p1,p2,re1,im1,re2,im2");
    size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == 65);  // header + 8x8 nodes
}

TEST_CASE("verification report text is stable and complete") {
    auto b = build_recipe(preset_recipe("clifford"));
    auto rep = certify(*b.immersion, {{16, 16}}, b.tolerances);
    std::string text = report_text(rep);
    CHECK(text.find("check symplectic = pass") != std::string::npos);
    CHECK(text.find("check contact = skipped") != std::string::npos);
    CHECK(text.find("result = pass") != std::string::npos);
    // byte-identical on rerun
    auto rep2 = certify(*b.immersion, {{16, 16}}, b.tolerances);
    CHECK(report_text(rep2) == text);
}

TEST_CASE("residual CSV pairs nodes with laplacian and hessian columns") {
    auto b = build_recipe(preset_recipe("clifford"));
    AngleField f = lagrangian_angle_field(*b.immersion, {{12, 12}});
    auto hess = covariant_hessian_beta(*b.immersion, f);
    std::string csv = csv_residuals(f, hess);
    CHECK(csv.substr(0, csv.find('\n')) == "p1,p2,abs_laplacian,hessian_norm");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 145);
}

TEST_CASE("SVG outputs are standalone and deterministic") {
    std::vector<std::pair<double, double>> pts;
    PlanarCurve c = make_cornu(1.0);
    for (int i = 0; i <= 400; ++i) {
        double s = -6.0 + 12.0 * i / 400.0;
        Complex z = c.value(s);
        pts.emplace_back(z.real(), z.imag());
    }
    std::string svg = svg_curve(pts);
    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);  // no external references
    CHECK(svg_curve(pts) == svg);

    std::vector<double> vals(8 * 8);
    for (int i = 0; i < 64; ++i) vals[i] = std::sin(0.3 * i);
    std::string hm = svg_heatmap({8, 8}, vals);
    CHECK(hm.rfind("<svg", 0) == 0);
    CHECK(svg_heatmap({8, 8}, vals) == hm);
    CHECK_THROWS_AS(svg_heatmap({8, 9}, vals), InvalidInput);
}
