#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lagmin/curves.hpp"

using namespace lagmin;

TEST_CASE("circle basics") {
    PlanarCurve c = make_circle(2.0);
    CHECK(std::abs(c.value(0.0) - Complex(2.0, 0.0)) < 1e-15);
    CHECK(std::abs(c.deriv(1.0)) == doctest::Approx(1.0));
    CHECK(c.curvature(3.0) == doctest::Approx(0.5));
    CHECK(c.curvature_deriv(3.0) == 0.0);
    // arg increments
    CHECK(c.arg_value(2.0) - c.arg_value(0.5) == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(c.arg_deriv(2.0) - c.arg_deriv(0.5) == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("line through origin rejects arg_value but keeps arg_deriv") {
    PlanarCurve l = make_line(Complex(0.0, 0.0), Complex(1.0, 1.0));
    CHECK(l.curvature(1.0) == 0.0);
    CHECK_THROWS_AS(l.arg_value(0.0), OriginCrossing);
    CHECK(l.arg_deriv(2.0) == doctest::Approx(kPi / 4.0));
}

TEST_CASE("cornu spiral: curvature linear in arclength, unit speed") {
    PlanarCurve c = make_cornu(1.5, -4.0, 4.0);
    for (double s : {-3.0, -0.5, 0.0, 1.0, 3.7}) {
        CHECK(c.curvature(s) == doctest::Approx(1.5 * s));
        CHECK(std::abs(c.deriv(s)) == doctest::Approx(1.0));
    }
    CHECK(c.curvature_deriv(2.0) == doctest::Approx(1.5));
}

TEST_CASE("cornu value matches an independent ODE integration") {
    double lam = 1.0;
    PlanarCurve c = make_cornu(lam, -6.0, 6.0);
    OdeSystem sys;
    sys.dim = 2;
    sys.field = [lam](double t, const RVec&, RVec& dy) {
        dy[0] = std::cos(0.5 * lam * t * t);
        dy[1] = std::sin(0.5 * lam * t * t);
    };
    StepPolicy pol;
    pol.abs_tol = pol.rel_tol = 1e-12;
    auto traj = integrate_ode(sys, {0.0, 0.0}, 0.0, 5.0, pol);
    for (double s : {0.5, 2.0, 4.9}) {
        RVec y = traj.at(s);
        CHECK(std::abs(c.value(s) - Complex(y[0], y[1])) < 1e-9);
    }
}

TEST_CASE("cornu derivative consistent with finite differences of value") {
    PlanarCurve c = make_cornu(1.0);
    for (double s : {-2.0, 0.3, 1.7}) {
        auto re = [&](double t) { return c.value(t).real(); };
        auto im = [&](double t) { return c.value(t).imag(); };
        CHECK(fd_derivative(re, s, 1e-3) == doctest::Approx(c.deriv(s).real()).epsilon(1e-8));
        CHECK(fd_derivative(im, s, 1e-3) == doctest::Approx(c.deriv(s).imag()).epsilon(1e-8));
    }
}

TEST_CASE("g_alpha_deriv matches finite differences of g_alpha") {
    PlanarCurve circle = make_circle(1.5);
    PlanarCurve cornu = make_cornu(1.0, 0.5, 5.0);
    for (int n : {2, 3, 4}) {
        for (double s : {1.0, 2.0, 4.0}) {
            double fd_c = fd_derivative(
                [&](double t) { return g_alpha(circle, n, t); }, s, 1e-4);
            CHECK(g_alpha_deriv(circle, n, s) == doctest::Approx(fd_c).epsilon(1e-7));
            double fd_k = fd_derivative(
                [&](double t) { return g_alpha(cornu, n, t); }, s, 1e-4);
            CHECK(g_alpha_deriv(cornu, n, s) == doctest::Approx(fd_k).epsilon(1e-7));
        }
    }
}

TEST_CASE("circle has A_alpha = n R^{n-2}") {
    for (double R : {0.7, 1.0, 2.5}) {
        PlanarCurve c = make_circle(R);
        for (int n : {2, 3, 4})
            for (double s : {0.3, 2.0})
                CHECK(a_alpha(c, n, s) ==
                      doctest::Approx(n * std::pow(R, n - 2)).epsilon(1e-10));
    }
}

TEST_CASE("the two A_alpha expressions differ by the factor n") {
    PlanarCurve circle = make_circle(1.3);
    PlanarCurve cornu = make_cornu(1.0, 0.5, 5.0);
    for (int n : {2, 3}) {
        for (double s : {1.0, 3.0}) {
            CHECK(n * a_alpha_kappa(circle, n, s) ==
                  doctest::Approx(a_alpha(circle, n, s)).epsilon(1e-9));
            CHECK(n * a_alpha_kappa(cornu, n, s) ==
                  doctest::Approx(a_alpha(cornu, n, s)).epsilon(1e-9));
        }
    }
}

TEST_CASE("constant-A integration reproduces the circle solution") {
    // circle of radius R has A = n R^{n-2}; start on-circle, tangent heading
    for (int n : {2, 3}) {
        double R = 1.25;
        double c = n * std::pow(R, n - 2);
        PlanarCurve curve = make_constantA(n, c, R, kPi / 2.0, 10.0);
        for (double s : {0.5, 3.0, 9.5}) {
            Complex expect = R * std::exp(Complex(0.0, s / R));
            CHECK(std::abs(curve.value(s) - expect) < 1e-7);
            CHECK(std::abs(curve.value(s)) == doctest::Approx(R).epsilon(1e-8));
        }
        // A_alpha evaluates back to the requested constant
        for (double s : {1.0, 7.0})
            CHECK(a_alpha(curve, n, s) == doctest::Approx(c).epsilon(1e-6));
    }
}

TEST_CASE("constant-A curve headed at the origin is rejected") {
    CHECK_THROWS_AS(make_constantA(2, 0.0, 1.0, kPi, 5.0), OriginCrossing);
}

TEST_CASE("closure detection") {
    CHECK_FALSE(detect_closure(make_cornu(1.0)).closed);
    CHECK_FALSE(detect_closure(make_line(Complex(1.0, 0.0), Complex(0.0, 1.0))).closed);
    auto circ = detect_closure(make_circle(2.0));
    CHECK(circ.closed);
    CHECK(circ.period == doctest::Approx(kTwoPi * 2.0));
}

TEST_CASE("closure detection on an integrated circle") {
    PlanarCurve curve = make_constantA(2, 2.0, 1.0, kPi / 2.0, 40.0);
    auto res = detect_closure(curve, 1e-5);
    CHECK(res.closed);
    CHECK(res.period == doctest::Approx(kTwoPi).epsilon(1e-5));
}

TEST_CASE("non-circular constant-A orbit stays in an annulus") {
    PlanarCurve curve = make_constantA(2, 2.0, 0.7, kPi / 2.0, 40.0);
    double rmin = 1e9, rmax = 0.0;
    for (double s = 0.0; s <= 40.0; s += 0.25) {
        double r = std::abs(curve.value(s));
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    CHECK(rmin > 0.1);
    CHECK(rmax < 3.0);
    // A stays constant along the orbit
    for (double s : {2.0, 17.0, 33.0})
        CHECK(a_alpha(curve, 2, s) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("angle cache round trip") {
    auto cache = build_angle_cache([](double s) { return principal_angle(3.0 * s); },
                                   -2.0, 2.0, 1025);
    for (double s : {-1.9, -0.4, 0.0, 1.3})
        CHECK(cache.query(s, principal_angle(3.0 * s)) ==
              doctest::Approx(3.0 * s).epsilon(1e-9));
}
