#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lagmin/verify.hpp"

using namespace lagmin;

TEST_CASE("grid spacing, wrapping and interior margins") {
    std::vector<Axis> axes = {{0.0, 1.0, false}, {0.0, kTwoPi, true}};
    Grid g = make_grid(axes, {{11, 16}});
    CHECK(g.h[0] == doctest::Approx(0.1));
    CHECK(g.h[1] == doctest::Approx(kTwoPi / 16.0));
    CHECK(g.size() == 11 * 16);
    CHECK(g.interior({2, 0}));
    CHECK_FALSE(g.interior({1, 5}));
    CHECK_FALSE(g.interior({9, 5}));
    // periodic axis wraps, non-periodic stops
    std::vector<int> out;
    CHECK(g.shift({0, 15}, 1, 1, out));
    CHECK(out[1] == 0);
    CHECK_FALSE(g.shift({10, 3}, 0, 1, out));
    CHECK_THROWS_AS(make_grid(axes, {{4, 16}}), InvalidParameter);
    CHECK_THROWS_AS(make_grid(axes, {{11}}), DimensionMismatch);
}

TEST_CASE("induced metric of a flat product is Euclidean") {
    auto im = product_of_curves({make_circle(1.0), make_circle(2.0)});
    MetricSample ms = induced_metric(im, {0.7, 3.1});
    CHECK(ms.g[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ms.g[1][1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ms.g[0][1]) < 1e-14);
    CHECK(ms.sqrt_det == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(std::abs(ms.christoffel[k][i][j]) < 1e-9);
}

TEST_CASE("angle field of a Cornu product matches the quadratic closed form") {
    // beta(s, t) = (s^2 - t^2)/2; harmonic, gradient (s, -t)
    auto im = product_of_curves({make_cornu(1.0), make_cornu(-1.0)});
    AngleField f = lagrangian_angle_field(im, {{33, 33}});
    for (size_t id = 0; id < f.grid.size(); ++id) {
        auto idx = f.grid.unflatten(id);
        RVec p = f.grid.point(idx);
        double expect = 0.5 * (p[0] * p[0] - p[1] * p[1]);
        CHECK(f.beta[id] == doctest::Approx(expect).epsilon(1e-9));
        if (!f.grid.interior(idx)) {
            CHECK(std::isnan(f.laplacian[id]));
            continue;
        }
        CHECK(std::abs(f.laplacian[id]) < 1e-9);
        CHECK(f.grad[id][0] == doctest::Approx(p[0]).epsilon(1e-9));
        CHECK(f.grad[id][1] == doctest::Approx(-p[1]).epsilon(1e-9));
    }
    CHECK(f.winding == std::vector<int>{0, 0});
}

TEST_CASE("winding across periodic axes does not break the stencils") {
    // product of circles: beta increases by 2pi around each axis
    auto im = product_of_curves({make_circle(1.0), make_circle(1.0)});
    AngleField f = lagrangian_angle_field(im, {{16, 16}});
    CHECK(f.winding == std::vector<int>{1, 1});
    for (size_t id = 0; id < f.grid.size(); ++id) {
        CHECK(std::abs(f.laplacian[id]) < 1e-10);  // all nodes interior
        CHECK(f.grad[id][0] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(f.grad[id][1] == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("serial and parallel execution agree bitwise") {
    auto im = curve_times_legendrian(make_circle(1.5), geodesic_sphere(2));
    AngleField a = lagrangian_angle_field(im, {{12, 12, 12}}, ExecutionMode::serial);
    AngleField b = lagrangian_angle_field(im, {{12, 12, 12}}, ExecutionMode::parallel);
    REQUIRE(a.beta.size() == b.beta.size());
    for (size_t id = 0; id < a.beta.size(); ++id) {
        CHECK(a.beta[id] == b.beta[id]);
        bool an = std::isnan(a.laplacian[id]), bn = std::isnan(b.laplacian[id]);
        CHECK(an == bn);
        if (!an) CHECK(a.laplacian[id] == b.laplacian[id]);
    }
}

TEST_CASE("mean curvature equals the second-fundamental-form oracle") {
    auto prod = product_of_curves({make_circle(1.0), make_circle(1.0)});
    RVec p = {0.7, 2.1};
    CVec H = mean_curvature(prod, p);
    CVec Ho = mean_curvature_oracle(prod, p);
    double norm = 0.0;
    for (int k = 0; k < 2; ++k) {
        norm += std::norm(H[k]);
        CHECK(std::abs(H[k] - Ho[k]) < 1e-9);
    }
    // Clifford-type torus: |H| = sqrt(2)/2
    CHECK(std::sqrt(norm) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-10));

    auto ctl = curve_times_legendrian(make_circle(1.5), geodesic_sphere(2));
    RVec q = {2.0, 1.0, 3.0};
    CVec H2 = mean_curvature(ctl, q);
    CVec Ho2 = mean_curvature_oracle(ctl, q);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(H2[k] - Ho2[k]) < 1e-9);
}

TEST_CASE("mean curvature rejects near-boundary points") {
    auto im = product_of_curves({make_cornu(1.0), make_cornu(1.0)});
    CHECK_THROWS_AS(mean_curvature(im, {-5.999, 0.0}), InvalidInput);
}

TEST_CASE("certify: product of unit circles passes every applicable check") {
    auto rep = certify(product_of_curves({make_circle(1.0), make_circle(1.0)}),
                       {{16, 16}});
    CHECK(rep.all_pass());
    CHECK(std::abs(rep.mean_laplacian) < 1e-10);
    CHECK(rep.find("symplectic")->ran);
    CHECK_FALSE(rep.find("contact")->ran);   // no Legendrian ingredient
    CHECK_FALSE(rep.find("divA")->ran);
    CHECK(rep.find("hminimal")->pass);
    CHECK(rep.find("parallelH")->pass);
    REQUIRE(rep.notes.size() == 2);  // winding note per periodic axis
}

TEST_CASE("certify: the Cornu pillow fails H-minimality honestly") {
    // two identical Cornu factors: Delta beta = 2 lambda everywhere
    auto rep = certify(product_of_curves({make_cornu(1.0), make_cornu(1.0)}),
                       {{24, 24}});
    const CheckResult* hm = rep.find("hminimal");
    const CheckResult* lm = rep.find("laplacian-match");
    CHECK_FALSE(hm->pass);
    CHECK(hm->max_residual == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(lm->pass);
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("certify: cone over the flat torus is H-minimal") {
    auto rep = certify(cone(flat_torus(), 0.5, 2.0), {{16, 12, 12}});
    CHECK(rep.all_pass());
    CHECK(rep.find("contact")->ran);  // psi ingredient present
    CHECK(rep.find("hminimal")->max_residual < 1e-10);
}

TEST_CASE("certify: doubly-Legendrian immersion is H-minimal, H not parallel") {
    LagrangianSurface surf = curve_join_surface(geodesic_sphere(1), alpha_qr(1, 2),
                                                0.2, kPi / 2.0 - 0.2);
    auto im = surface_times_two_legendrians(surf, geodesic_sphere(1),
                                            geodesic_sphere(1));
    auto rep = certify(im, {{8, 8, 8, 8}});
    CHECK(rep.find("symplectic")->pass);
    CHECK(rep.find("contact")->pass);
    CHECK(rep.find("metric-match")->pass);
    CHECK(rep.find("angle-match")->pass);
    CHECK(rep.find("laplacian-match")->pass);
    CHECK(rep.find("hminimal")->pass);
    CHECK(rep.find("divA")->ran);
    CHECK(rep.find("divA")->pass);
    // the mean curvature is not parallel: covariant Hessian O(1)
    CHECK_FALSE(rep.find("parallelH")->pass);
    CHECK(rep.find("parallelH")->max_residual > 0.1);
}

TEST_CASE("certify_legendrian: flat torus and tilted geodesics are C-minimal") {
    auto rep = certify_legendrian(flat_torus(), {{12, 12}});
    CHECK(rep.all_pass());
    CHECK(rep.find("cminimal")->max_residual < 1e-10);
    // gamma_phi away from pi/4: angle varies linearly but stays harmonic
    auto rep2 = certify_legendrian(gamma_phi(0.6, 8.0), {{64}});
    CHECK(rep2.all_pass());
    CHECK(rep2.find("cminimal")->max_residual < 1e-6);
}

TEST_CASE("div A: flat and conformal solutions vanish, mismatch does not") {
    // product of circles: G linear, weight constant
    LagrangianSurface flat = surface_from_curves(make_circle(1.0), make_circle(1.0));
    CHECK(div_A_phi(flat, 2, 2, {{16, 16}}).max_abs < 1e-8);

    // torus join gamma_0 (.) alpha_{1,2}: conformal shortcut
    LagrangianSurface phi12 = curve_join_surface(
        geodesic_sphere(1), alpha_qr(1, 2), 0.2, kPi / 2.0 - 0.2);
    CHECK(div_A_phi(phi12, 2, 2, {{32, 32}}).max_abs < 1e-5);
    CHECK(div_A_phi(phi12, 1, 2, {{32, 32}}).max_abs < 1e-5);

    // negative control: integrated spherical curve with oscillating radii
    // joined to alpha_{1,2}, checked at mismatched weights.  The curve is
    // not arclength so the generic metric branch is used; the matched
    // weights stay at the trajectory-interpolation floor.
    CVec g0 = {Complex(0.9, 0.0), Complex(std::sqrt(0.19), 0.0)};
    LagrangianSurface off =
        curve_join_surface(solve_gammamu(2, 1, 0.0, g0, 6.0), alpha_qr(1, 2));
    off.conformal_factor = nullptr;
    CHECK(div_A_phi(off, 2, 2, {{24, 24}}).max_abs > 1e-1);
    CHECK(div_A_phi(off, 2, 1, {{24, 24}}).max_abs < 1e-2);
}

TEST_CASE("div A requires continuous angle and argument fields") {
    // full-domain join: gamma_0 components vanish at the axis ends, so
    // the argument caches cannot be built
    LagrangianSurface surf = curve_join_surface(geodesic_sphere(1), alpha_qr(1, 2));
    CHECK_THROWS_AS(div_A_phi(surf, 2, 2, {{16, 16}}), InvalidInput);
}

TEST_CASE("Laplacian residual converges at fourth order") {
    auto im = curve_times_legendrian(make_cornu(1.0, 1.0, 3.0), geodesic_sphere(1));
    auto resid = [&](int n) {
        AngleField f = lagrangian_angle_field(im, {{n, n}});
        double worst = 0.0;
        for (size_t id = 0; id < f.grid.size(); ++id) {
            if (std::isnan(f.laplacian[id])) continue;
            RVec p = f.grid.point(f.grid.unflatten(id));
            worst = std::max(worst,
                             std::abs(f.laplacian[id] - im.predicted_laplacian(p)));
        }
        return worst;
    };
    double coarse = resid(25), fine = resid(49);
    CHECK(coarse / fine >= 8.0);
}

TEST_CASE("certification is invariant under ambient unitaries") {
    auto im = curve_times_legendrian(make_cornu(1.0, 1.0, 3.0), geodesic_sphere(1));
    // fixed U(2) element: rotation times a diagonal phase
    const Complex u11 = 0.6 * std::polar(1.0, 0.3);
    const Complex u12 = 0.8 * std::polar(1.0, -1.1);
    const Complex u21 = -0.8 * std::polar(1.0, 1.4);
    const Complex u22 = 0.6 * std::polar(1.0, 0.0);
    auto apply = [=](CVec v) {
        return CVec{u11 * v[0] + u12 * v[1], u21 * v[0] + u22 * v[1]};
    };
    LagrangianImmersion rotated = im;
    rotated.value = [=, base = im.value](const RVec& p) { return apply(base(p)); };
    rotated.jacobian = [=, base = im.jacobian](const RVec& p) {
        auto cols = base(p);
        for (auto& c : cols) c = apply(c);
        return cols;
    };
    rotated.predicted_beta = nullptr;
    rotated.predicted_metric = nullptr;
    rotated.predicted_laplacian = nullptr;

    AngleField a = lagrangian_angle_field(im, {{21, 21}});
    AngleField b = lagrangian_angle_field(rotated, {{21, 21}});
    auto ha = covariant_hessian_beta(im, a);
    auto hb = covariant_hessian_beta(rotated, b);
    for (size_t id = 0; id < a.grid.size(); ++id) {
        if (!std::isnan(a.laplacian[id]))
            CHECK(a.laplacian[id] == doctest::Approx(b.laplacian[id]).epsilon(1e-9));
        if (!std::isnan(ha[id]))
            CHECK(std::abs(ha[id] - hb[id]) < 1e-9);
    }
    // beta shifts by the constant arg det U
    auto pa = angle_problem(im), pb = angle_problem(rotated);
    RVec p = {1.7, 2.0};
    double shift = std::arg(u11 * u22 - u12 * u21);
    CHECK(principal_angle(pb.angle(p) - pa.angle(p) - shift) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("certification verdicts survive affine reparametrization") {
    auto reparam = [](const LagrangianImmersion& im, int axis, double scale) {
        LagrangianImmersion out = im;
        double a = im.axes[axis].a;
        out.axes[axis].b = a + (im.axes[axis].b - a) / scale;
        auto to_base = [=](RVec p) {
            p[axis] = a + (p[axis] - a) * scale;
            return p;
        };
        out.value = [=, base = im.value](const RVec& p) { return base(to_base(p)); };
        out.jacobian = [=, base = im.jacobian](const RVec& p) {
            auto cols = base(to_base(p));
            for (auto& z : cols[axis]) z *= scale;
            return cols;
        };
        out.predicted_beta = nullptr;
        out.predicted_metric = nullptr;
        out.predicted_laplacian = nullptr;
        return out;
    };

    // passing example stays passing
    auto good = product_of_curves({make_circle(1.0), make_circle(1.0)});
    auto rep_good = certify(reparam(good, 0, 2.5), {{24, 24}});
    CHECK(rep_good.find("hminimal")->pass);
    CHECK(rep_good.find("parallelH")->pass);

    // failing example keeps failing with the same residual
    auto bad = product_of_curves({make_cornu(1.0), make_cornu(1.0)});
    auto rep_bad = certify(reparam(bad, 0, 0.5), {{48, 48}});
    CHECK_FALSE(rep_bad.find("hminimal")->pass);
    CHECK(rep_bad.find("hminimal")->max_residual == doctest::Approx(2.0).epsilon(1e-6));
}
