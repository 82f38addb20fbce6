#include "lagmin/legendrian.hpp"

#include <cmath>
#include <numeric>

namespace lagmin {

namespace {

Complex expi(double a) { return std::exp(Complex(0.0, a)); }

// inner products on C^k
Complex hermitian(const CVec& u, const CVec& v) {
    Complex s(0.0, 0.0);
    for (size_t j = 0; j < u.size(); ++j) s += u[j] * std::conj(v[j]);
    return s;
}

}  // namespace

double unit_norm_residual(const LegendrianMap& m, const RVec& x) {
    CVec p = m.value(x);
    return std::abs(std::sqrt(hermitian(p, p).real()) - 1.0);
}

double contact_residual(const LegendrianMap& m, const RVec& x) {
    CVec p = m.value(x);
    auto jac = m.jacobian(x);
    double worst = 0.0;
    for (const CVec& col : jac)
        worst = std::max(worst, std::abs(hermitian(col, p).imag()));
    return worst;
}

double legendrian_angle(const LegendrianMap& m, const RVec& x) {
    if (m.ambient_dim != m.intrinsic_dim + 1)
        throw DimensionMismatch("legendrian_angle: ambient dim must be m+1");
    CVec p = m.value(x);
    auto frame = orthonormalize_real(m.jacobian(x));
    ComplexMatrix det_mat(m.ambient_dim);
    det_mat.set_column(0, p);
    for (int j = 0; j < m.intrinsic_dim; ++j)
        det_mat.set_column(j + 1, frame[j]);
    Complex d = det_complex(det_mat);
    if (std::abs(d) < 1e-12)
        throw DegenerateFrame("legendrian_angle: vanishing determinant");
    return std::arg(d);
}

LegendrianMap geodesic_sphere(int m) {
    if (m < 1) throw InvalidParameter("geodesic_sphere: m must be >= 1");
    LegendrianMap out;
    out.ambient_dim = m + 1;
    out.intrinsic_dim = m;
    out.family = "geodesic-sphere";
    for (int i = 0; i < m - 1; ++i) out.axes.push_back({1e-2, kPi - 1e-2, false});
    out.axes.push_back({0.0, kTwoPi, true});

    auto coords = [m](const RVec& t) {
        RVec x(m + 1);
        double prod = 1.0;
        for (int j = 0; j < m; ++j) {
            x[j] = prod * std::cos(t[j]);
            prod *= std::sin(t[j]);
        }
        x[m] = prod;
        return x;
    };
    out.value = [m, coords](const RVec& t) {
        RVec x = coords(t);
        CVec z(m + 1);
        for (int j = 0; j <= m; ++j) z[j] = Complex(x[j], 0.0);
        return z;
    };
    out.jacobian = [m](const RVec& t) {
        std::vector<CVec> cols(m, CVec(m + 1, Complex(0.0, 0.0)));
        for (int a = 0; a < m; ++a) {
            for (int j = a; j <= m; ++j) {
                // d x_j / d t_a; x_j = prod_{i<j} sin t_i * (j<m ? cos t_j : 1)
                double v = 1.0;
                for (int i = 0; i < std::min(j, m); ++i)
                    v *= (i == a) ? std::cos(t[i]) : std::sin(t[i]);
                if (j < m) v *= (j == a) ? -std::sin(t[j]) : std::cos(t[j]);
                cols[a][j] = Complex(v, 0.0);
            }
        }
        return cols;
    };

    RVec center(m, kPi / 2.0);
    double beta0 = legendrian_angle(out, center);
    out.beta_closed = [beta0](const RVec&) { return beta0; };
    out.beta_laplacian = 0.0;
    return out;
}

LegendrianMap flat_torus() {
    LegendrianMap out;
    out.ambient_dim = 3;
    out.intrinsic_dim = 2;
    out.family = "flat-torus";
    out.axes = {{0.0, kTwoPi, true}, {0.0, kTwoPi, true}};
    const double inv = 1.0 / std::sqrt(3.0);
    out.value = [inv](const RVec& p) {
        return CVec{inv * expi(p[0]), inv * expi(p[1]), inv * expi(-(p[0] + p[1]))};
    };
    out.jacobian = [inv](const RVec& p) {
        Complex i1(0.0, 1.0);
        CVec ds{inv * i1 * expi(p[0]), Complex(0.0, 0.0),
                -inv * i1 * expi(-(p[0] + p[1]))};
        CVec dt{Complex(0.0, 0.0), inv * i1 * expi(p[1]),
                -inv * i1 * expi(-(p[0] + p[1]))};
        return std::vector<CVec>{ds, dt};
    };
    double beta0 = legendrian_angle(out, {kPi / 3.0, kPi / 5.0});
    out.beta_closed = [beta0](const RVec&) { return beta0; };
    out.beta_laplacian = 0.0;
    return out;
}

LegendrianMap point_legendrian() {
    LegendrianMap out;
    out.ambient_dim = 1;
    out.intrinsic_dim = 0;
    out.family = "point";
    out.value = [](const RVec&) { return CVec{Complex(1.0, 0.0)}; };
    out.jacobian = [](const RVec&) { return std::vector<CVec>{}; };
    out.beta_closed = [](const RVec&) { return 0.0; };
    out.beta_laplacian = 0.0;
    return out;
}

LegendrianMap gamma_phi(double phi, double t_end) {
    if (!(phi > 0.0 && phi < kPi / 2.0))
        throw InvalidParameter("gamma_phi: phi must lie in (0, pi/2)");
    double tp = std::tan(phi), cp = 1.0 / tp;
    double c1 = std::cos(phi), s1 = std::sin(phi);
    LegendrianMap out;
    out.ambient_dim = 2;
    out.intrinsic_dim = 1;
    out.family = "gamma-phi";
    out.axes = {{0.0, t_end, false}};
    out.value = [=](const RVec& p) {
        return CVec{c1 * expi(tp * p[0]), s1 * expi(-cp * p[0])};
    };
    out.jacobian = [=](const RVec& p) {
        Complex i1(0.0, 1.0);
        return std::vector<CVec>{
            {c1 * i1 * tp * expi(tp * p[0]), -s1 * i1 * cp * expi(-cp * p[0])}};
    };
    out.beta_closed = [tp, cp](const RVec& p) {
        return -kPi / 2.0 + (tp - cp) * p[0];
    };
    out.beta_laplacian = 0.0;
    return out;
}

LegendrianMap gamma_n1n2(int n1, int n2) {
    if (n1 < 1 || n2 < 1)
        throw InvalidParameter("gamma_n1n2: n1, n2 must be >= 1");
    double n = n1 + n2;
    double a = std::sqrt(static_cast<double>(n2) / n1);
    double b = std::sqrt(static_cast<double>(n1) / n2);
    double c1 = std::sqrt(n1 / n), c2 = std::sqrt(n2 / n);
    long g = std::gcd(n1, n2);
    double period = kTwoPi * std::sqrt(static_cast<double>(n1 / g) * (n2 / g));
    LegendrianMap out;
    out.ambient_dim = 2;
    out.intrinsic_dim = 1;
    out.family = "gamma-n1n2";
    out.axes = {{0.0, period, true}};
    out.value = [=](const RVec& p) {
        return CVec{c1 * expi(a * p[0]), c2 * expi(-b * p[0])};
    };
    out.jacobian = [=](const RVec& p) {
        Complex i1(0.0, 1.0);
        return std::vector<CVec>{
            {c1 * i1 * a * expi(a * p[0]), -c2 * i1 * b * expi(-b * p[0])}};
    };
    double beta0 = legendrian_angle(out, {0.0});
    double kappa = a - b;  // constant curvature
    out.beta_closed = [beta0, kappa](const RVec& p) { return beta0 + kappa * p[0]; };
    out.beta_laplacian = 0.0;
    return out;
}

LegendrianMap solve_gammamu(int n1, int n2, double mu, const CVec& gamma0,
                            double t_end) {
    if (gamma0.size() != 2) throw InvalidInput("solve_gammamu: gamma0 must be in C^2");
    double norm = std::sqrt(std::norm(gamma0[0]) + std::norm(gamma0[1]));
    if (std::abs(norm - 1.0) > 1e-9)
        throw InvalidInput("solve_gammamu: gamma0 not on S^3");
    if (std::abs(gamma0[0]) < 1e-6 || std::abs(gamma0[1]) < 1e-6)
        throw InvalidInput("solve_gammamu: gamma0 has a vanishing component");

    auto rhs = [n1, n2, mu](double t, Complex g1, Complex g2) {
        return Complex(0.0, 1.0) * expi(mu * t) *
               std::pow(std::conj(g1), n1) * std::pow(std::conj(g2), n2);
    };

    OdeSystem sys;
    sys.dim = 4;
    sys.field = [rhs](double t, const RVec& y, RVec& dy) {
        Complex g1(y[0], y[1]), g2(y[2], y[3]);
        if (std::abs(g1) < 1e-6 || std::abs(g2) < 1e-6)
            throw SingularPoint(
                "solve_gammamu: coordinate degeneracy (component near zero) at t = " +
                std::to_string(t));
        Complex w = rhs(t, g1, g2);
        Complex d1 = w / std::conj(g1);
        Complex d2 = -w / std::conj(g2);
        dy[0] = d1.real();
        dy[1] = d1.imag();
        dy[2] = d2.real();
        dy[3] = d2.imag();
    };
    sys.invariants = {
        [](double, const RVec& y) {
            return y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3] - 1.0;
        },
        [rhs](double t, const RVec& y) {
            Complex g1(y[0], y[1]), g2(y[2], y[3]);
            Complex w = rhs(t, g1, g2);
            Complex d1 = w / std::conj(g1), d2 = -w / std::conj(g2);
            return (d1 * std::conj(g1) + d2 * std::conj(g2)).imag();
        },
    };

    RVec y0 = {gamma0[0].real(), gamma0[0].imag(), gamma0[1].real(),
               gamma0[1].imag()};
    StepPolicy pol;
    pol.abs_tol = pol.rel_tol = 1e-12;
    pol.max_step = 0.01;
    auto traj = std::make_shared<Trajectory>(integrate_ode(sys, y0, 0.0, t_end, pol));

    LegendrianMap out;
    out.ambient_dim = 2;
    out.intrinsic_dim = 1;
    out.family = "ode-gammamu";
    out.axes = {{0.0, t_end, false}};
    out.value = [traj](const RVec& p) {
        RVec y = traj->at(p[0]);
        return CVec{Complex(y[0], y[1]), Complex(y[2], y[3])};
    };
    out.jacobian = [traj](const RVec& p) {
        RVec d = traj->derivative_at(p[0]);
        return std::vector<CVec>{{Complex(d[0], d[1]), Complex(d[2], d[3])}};
    };
    return out;
}

namespace {

void validate_hyperbolic(const HyperbolicLegendrianCurve& c) {
    for (int i = 0; i <= 16; ++i) {
        double t = c.dom_a + (c.dom_b - c.dom_a) * i / 16.0;
        Complex a1 = c.a1(t), a2 = c.a2(t), d1 = c.d1(t), d2 = c.d2(t);
        if (std::abs(std::norm(a1) - std::norm(a2) + 1.0) > 1e-9 ||
            std::abs(std::norm(d1) - std::norm(d2) - 1.0) > 1e-8 ||
            std::abs(d1 * std::conj(a1) - d2 * std::conj(a2)) > 1e-8)
            throw InvalidInput(
                "hyperbolic Legendrian curve: quadric/speed/contact identity "
                "violated");
    }
}

}  // namespace

HyperbolicLegendrianCurve alpha_qr(long q, long r) {
    if (!(q > 0 && q < r))
        throw InvalidParameter("alpha_qr: requires 0 < q < r");
    double inv = 1.0 / std::sqrt(static_cast<double>(r - q));
    double sq = std::sqrt(static_cast<double>(q)), sr = std::sqrt(static_cast<double>(r));
    double wa = std::sqrt(static_cast<double>(r) / q);
    double wb = std::sqrt(static_cast<double>(q) / r);
    long g = std::gcd(q, r);
    double period = kTwoPi * std::sqrt(static_cast<double>(q / g) * (r / g));
    HyperbolicLegendrianCurve c;
    c.family = "alpha-qr";
    c.q = static_cast<double>(q);
    c.r = static_cast<double>(r);
    c.dom_a = 0.0;
    c.dom_b = period;
    c.a1 = [=](double t) { return inv * sq * expi(wa * t); };
    c.a2 = [=](double t) { return inv * sr * expi(wb * t); };
    c.d1 = [=](double t) { return inv * sq * Complex(0.0, wa) * expi(wa * t); };
    c.d2 = [=](double t) { return inv * sr * Complex(0.0, wb) * expi(wb * t); };
    validate_hyperbolic(c);
    return c;
}

HyperbolicLegendrianCurve alpha_delta(double delta) {
    if (!(delta > 0.0)) throw InvalidParameter("alpha_delta: delta must be > 0");
    double sh = std::sinh(delta), ch = std::cosh(delta);
    double wa = 1.0 / std::tanh(delta), wb = std::tanh(delta);
    HyperbolicLegendrianCurve c;
    c.family = "alpha-delta";
    c.delta = delta;
    c.dom_a = 0.0;
    c.dom_b = kTwoPi * 4.0;
    c.a1 = [=](double t) { return sh * expi(wa * t); };
    c.a2 = [=](double t) { return ch * expi(wb * t); };
    c.d1 = [=](double t) { return sh * Complex(0.0, wa) * expi(wa * t); };
    c.d2 = [=](double t) { return ch * Complex(0.0, wb) * expi(wb * t); };
    validate_hyperbolic(c);
    return c;
}

std::array<double, 3> hopf_project_sphere(Complex z, Complex w) {
    if (std::abs(std::norm(z) + std::norm(w) - 1.0) > 1e-9)
        throw InvalidInput("hopf_project_sphere: point not on S^3");
    Complex zw = z * std::conj(w);
    return {zw.real(), zw.imag(), 0.5 * (std::norm(z) - std::norm(w))};
}

std::array<double, 3> hopf_project_hyperbolic(Complex z, Complex w) {
    if (std::abs(std::norm(z) - std::norm(w) + 1.0) > 1e-9)
        throw InvalidInput("hopf_project_hyperbolic: point not on H^3_1");
    Complex zw = z * std::conj(w);
    return {zw.real(), zw.imag(), 0.5 * (std::norm(z) + std::norm(w))};
}

LegendrianMap join_legendrian(const LegendrianMap& gamma,
                              const LegendrianMap& psi1,
                              const LegendrianMap& psi2) {
    if (gamma.ambient_dim != 2 || gamma.intrinsic_dim != 1)
        throw DimensionMismatch("join_legendrian: gamma must be a curve in S^3");
    const int n1 = psi1.ambient_dim, n2 = psi2.ambient_dim;
    const int m1 = psi1.intrinsic_dim, m2 = psi2.intrinsic_dim;

    LegendrianMap out;
    out.ambient_dim = n1 + n2;
    out.intrinsic_dim = 1 + m1 + m2;
    out.family = "join";
    out.axes = gamma.axes;
    out.axes.insert(out.axes.end(), psi1.axes.begin(), psi1.axes.end());
    out.axes.insert(out.axes.end(), psi2.axes.begin(), psi2.axes.end());

    auto split = [m1, m2](const RVec& p) {
        RVec t{p[0]};
        RVec x(p.begin() + 1, p.begin() + 1 + m1);
        RVec y(p.begin() + 1 + m1, p.begin() + 1 + m1 + m2);
        return std::tuple<RVec, RVec, RVec>{t, x, y};
    };
    out.value = [=](const RVec& p) {
        auto [t, x, y] = split(p);
        CVec g = gamma.value(t);
        CVec v1 = psi1.value(x), v2 = psi2.value(y);
        CVec z(n1 + n2);
        for (int j = 0; j < n1; ++j) z[j] = g[0] * v1[j];
        for (int j = 0; j < n2; ++j) z[n1 + j] = g[1] * v2[j];
        return z;
    };
    out.jacobian = [=](const RVec& p) {
        auto [t, x, y] = split(p);
        CVec g = gamma.value(t);
        CVec dg = gamma.jacobian(t)[0];
        CVec v1 = psi1.value(x), v2 = psi2.value(y);
        auto j1 = psi1.jacobian(x);
        auto j2 = psi2.jacobian(y);
        std::vector<CVec> cols(1 + m1 + m2, CVec(n1 + n2, Complex(0.0, 0.0)));
        for (int j = 0; j < n1; ++j) cols[0][j] = dg[0] * v1[j];
        for (int j = 0; j < n2; ++j) cols[0][n1 + j] = dg[1] * v2[j];
        for (int a = 0; a < m1; ++a)
            for (int j = 0; j < n1; ++j) cols[1 + a][j] = g[0] * j1[a][j];
        for (int a = 0; a < m2; ++a)
            for (int j = 0; j < n2; ++j) cols[1 + m1 + a][n1 + j] = g[1] * j2[a][j];
        return cols;
    };
    return out;
}

}  // namespace lagmin
