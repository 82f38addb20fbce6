#include "lagmin/constructions.hpp"

#include <cmath>

namespace lagmin {

double symplectic_residual(const LagrangianImmersion& im, const RVec& p) {
    auto jac = im.jacobian(p);
    double worst = 0.0;
    for (size_t i = 0; i < jac.size(); ++i)
        for (size_t j = i + 1; j < jac.size(); ++j)
            worst = std::max(worst, std::abs(hermitian_inner(jac[i], jac[j]).imag()));
    return worst;
}

LagrangianImmersion product_of_curves(const std::vector<PlanarCurve>& curves) {
    if (curves.empty()) throw InvalidInput("product_of_curves: no curves");
    for (const auto& c : curves)
        if (!c.arclength())
            throw InvalidInput("product_of_curves: curves must be arclength");
    const int n = static_cast<int>(curves.size());

    LagrangianImmersion im;
    im.dim = n;
    im.family = "product";
    for (const auto& c : curves)
        im.axes.push_back(
            {c.domain_begin(), c.domain_end(), c.family() == CurveFamily::circle});

    auto cs = std::make_shared<std::vector<PlanarCurve>>(curves);
    im.value = [cs, n](const RVec& p) {
        CVec z(n);
        for (int j = 0; j < n; ++j) z[j] = (*cs)[j].value(p[j]);
        return z;
    };
    im.jacobian = [cs, n](const RVec& p) {
        std::vector<CVec> cols(n, CVec(n, Complex(0.0, 0.0)));
        for (int j = 0; j < n; ++j) cols[j][j] = (*cs)[j].deriv(p[j]);
        return cols;
    };
    im.predicted_beta = [cs, n](const RVec& p) {
        double b = 0.0;
        for (int j = 0; j < n; ++j) b += (*cs)[j].arg_deriv(p[j]);
        return b;
    };
    im.predicted_metric = [n](const RVec&) {
        std::vector<RVec> g(n, RVec(n, 0.0));
        for (int i = 0; i < n; ++i) g[i][i] = 1.0;
        return g;
    };
    im.predicted_laplacian = [cs, n](const RVec& p) {
        double d = 0.0;
        for (int j = 0; j < n; ++j) d += (*cs)[j].curvature_deriv(p[j]);
        return d;
    };
    auto prov = std::make_shared<ProvenanceData>();
    prov->kind = "product";
    prov->curves = curves;
    im.provenance = prov;
    return im;
}

LagrangianImmersion curve_times_legendrian(const PlanarCurve& alpha,
                                           const LegendrianMap& psi) {
    if (psi.ambient_dim != psi.intrinsic_dim + 1)
        throw DimensionMismatch("curve_times_legendrian: psi must map into S^{2n-1}");
    const int n = psi.ambient_dim;
    const int m = psi.intrinsic_dim;

    // alpha must not vanish on its domain; cones are requested via cone()
    for (int i = 0; i <= 64; ++i) {
        double s = alpha.domain_begin() +
                   (alpha.domain_end() - alpha.domain_begin()) * i / 64.0;
        if (std::abs(alpha.value(s)) < 1e-9)
            throw OriginCrossing(
                "curve_times_legendrian: alpha vanishes in its domain (use cone())");
    }

    LagrangianImmersion im;
    im.dim = n;
    im.family = "curve-legendrian";
    im.axes.push_back({alpha.domain_begin(), alpha.domain_end(),
                       alpha.family() == CurveFamily::circle});
    im.axes.insert(im.axes.end(), psi.axes.begin(), psi.axes.end());

    auto a = std::make_shared<PlanarCurve>(alpha);
    auto ps = std::make_shared<LegendrianMap>(psi);
    im.value = [a, ps, n, m](const RVec& p) {
        RVec x(p.begin() + 1, p.end());
        CVec v = ps->value(x);
        Complex av = a->value(p[0]);
        for (auto& z : v) z *= av;
        return v;
    };
    im.jacobian = [a, ps, n, m](const RVec& p) {
        RVec x(p.begin() + 1, p.end());
        CVec v = ps->value(x);
        auto jp = ps->jacobian(x);
        Complex av = a->value(p[0]), ad = a->deriv(p[0]);
        std::vector<CVec> cols(n);
        cols[0].resize(n);
        for (int j = 0; j < n; ++j) cols[0][j] = ad * v[j];
        for (int c = 0; c < m; ++c) {
            cols[1 + c].resize(n);
            for (int j = 0; j < n; ++j) cols[1 + c][j] = av * jp[c][j];
        }
        return cols;
    };
    if (psi.beta_closed) {
        im.predicted_beta = [a, ps, n](const RVec& p) {
            RVec x(p.begin() + 1, p.end());
            return g_alpha(*a, n, p[0]) + ps->beta_closed(x);
        };
    }
    im.predicted_metric = [a, ps, n, m](const RVec& p) {
        RVec x(p.begin() + 1, p.end());
        auto g = gram_matrix(ps->jacobian(x));
        double r2 = std::norm(a->value(p[0]));
        std::vector<RVec> out(n, RVec(n, 0.0));
        out[0][0] = std::norm(a->deriv(p[0]));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) out[1 + i][1 + j] = r2 * g[i][j];
        return out;
    };
    if (psi.beta_laplacian) {
        double lap_psi = *psi.beta_laplacian;
        im.predicted_laplacian = [a, n, lap_psi](const RVec& p) {
            double r = std::abs(a->value(p[0]));
            double dA = fd_derivative(
                [&](double s) { return a_alpha(*a, n, s); }, p[0], 1e-4);
            return dA / std::pow(r, n - 1) + lap_psi / (r * r);
        };
    }
    auto prov = std::make_shared<ProvenanceData>();
    prov->kind = "curve-legendrian";
    prov->curves = {alpha};
    prov->psi = ps;
    im.provenance = prov;
    return im;
}

LagrangianImmersion cone(const LegendrianMap& psi, double s_min, double s_max) {
    if (s_min <= 0.0 && s_max >= 0.0)
        throw SingularPoint("cone: parameter range must exclude the apex s = 0");
    const int n = psi.ambient_dim;
    const int m = psi.intrinsic_dim;
    if (n != m + 1) throw DimensionMismatch("cone: psi must map into S^{2n-1}");

    LagrangianImmersion im;
    im.dim = n;
    im.family = "cone";
    im.axes.push_back({s_min, s_max, false});
    im.axes.insert(im.axes.end(), psi.axes.begin(), psi.axes.end());

    auto ps = std::make_shared<LegendrianMap>(psi);
    im.value = [ps](const RVec& p) {
        RVec x(p.begin() + 1, p.end());
        CVec v = ps->value(x);
        for (auto& z : v) z *= p[0];
        return v;
    };
    im.jacobian = [ps, n, m](const RVec& p) {
        RVec x(p.begin() + 1, p.end());
        CVec v = ps->value(x);
        auto jp = ps->jacobian(x);
        std::vector<CVec> cols(n);
        cols[0] = v;
        for (int c = 0; c < m; ++c) {
            cols[1 + c].resize(n);
            for (int j = 0; j < n; ++j) cols[1 + c][j] = p[0] * jp[c][j];
        }
        return cols;
    };
    if (psi.beta_closed) {
        im.predicted_beta = [ps, m](const RVec& p) {
            RVec x(p.begin() + 1, p.end());
            return ps->beta_closed(x) + (p[0] < 0.0 ? m * kPi : 0.0);
        };
    }
    im.predicted_metric = [ps, n, m](const RVec& p) {
        RVec x(p.begin() + 1, p.end());
        auto g = gram_matrix(ps->jacobian(x));
        std::vector<RVec> out(n, RVec(n, 0.0));
        out[0][0] = 1.0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) out[1 + i][1 + j] = p[0] * p[0] * g[i][j];
        return out;
    };
    if (psi.beta_laplacian) {
        double lap_psi = *psi.beta_laplacian;
        im.predicted_laplacian = [lap_psi](const RVec& p) {
            return lap_psi / (p[0] * p[0]);
        };
    }
    auto prov = std::make_shared<ProvenanceData>();
    prov->kind = "cone";
    prov->psi = ps;
    im.provenance = prov;
    return im;
}

LagrangianSurface surface_from_curves(const PlanarCurve& c1,
                                      const PlanarCurve& c2) {
    LagrangianImmersion im = product_of_curves({c1, c2});
    LagrangianSurface surf;
    auto a1 = std::make_shared<PlanarCurve>(c1);
    auto a2 = std::make_shared<PlanarCurve>(c2);
    surf.arg1 = [a1](const RVec& p) { return a1->arg_value(p[0]); };
    surf.arg2 = [a2](const RVec& p) { return a2->arg_value(p[1]); };
    surf.beta = [a1, a2](const RVec& p) {
        return a1->arg_deriv(p[0]) + a2->arg_deriv(p[1]);
    };
    im.family = "surface-product";
    surf.im = std::move(im);
    return surf;
}

LagrangianSurface surface_cor5_case3(double scale, double margin) {
    if (!(scale > 0.0)) throw InvalidParameter("surface_cor5_case3: scale > 0");
    LagrangianSurface surf;
    LagrangianImmersion im;
    im.dim = 2;
    im.family = "cor5-case3";
    im.axes = {{margin, kPi / 2.0 - margin, false}, {0.0, kTwoPi, true}};
    double k = scale;
    im.value = [k](const RVec& p) {
        Complex e = std::exp(Complex(0.0, p[1]));
        return CVec{k * std::cos(p[0]) * e, k * std::sin(p[0]) * e};
    };
    im.jacobian = [k](const RVec& p) {
        Complex e = std::exp(Complex(0.0, p[1]));
        Complex ie = Complex(0.0, 1.0) * e;
        return std::vector<CVec>{{-k * std::sin(p[0]) * e, k * std::cos(p[0]) * e},
                                 {k * std::cos(p[0]) * ie, k * std::sin(p[0]) * ie}};
    };
    im.predicted_beta = [](const RVec& p) { return 2.0 * p[1] - kPi / 2.0; };
    im.predicted_metric = [k](const RVec&) {
        return std::vector<RVec>{{k * k, 0.0}, {0.0, k * k}};
    };
    surf.beta = im.predicted_beta;
    surf.arg1 = [](const RVec& p) { return p[1]; };
    surf.arg2 = [](const RVec& p) { return p[1]; };
    surf.im = std::move(im);
    return surf;
}

std::function<double(double)> beta_along_s3_curve(const LegendrianMap& gamma) {
    if (gamma.beta_closed) {
        auto f = gamma.beta_closed;
        return [f](double s) { return f({s}); };
    }
    auto g = std::make_shared<LegendrianMap>(gamma);
    auto cache = std::make_shared<AngleCache>(build_angle_cache(
        [g](double s) { return legendrian_angle(*g, {s}); }, gamma.axes[0].a,
        gamma.axes[0].b, 4097));
    return [g, cache](double s) {
        return cache->query(s, legendrian_angle(*g, {s}));
    };
}

std::function<double(double)> beta_along_h31_curve(
    const HyperbolicLegendrianCurve& alpha) {
    auto a = std::make_shared<HyperbolicLegendrianCurve>(alpha);
    // Lorentzian determinant convention: the sign flip relative to the
    // spherical det{alpha, alpha'} is what makes the join angle identity
    // beta_phi = beta_gamma + beta_alpha + pi come out exact.
    auto raw = [a](double t) {
        Complex det = a->a2(t) * a->d1(t) - a->a1(t) * a->d2(t);
        return std::arg(det);
    };
    auto cache = std::make_shared<AngleCache>(
        build_angle_cache(raw, alpha.dom_a, alpha.dom_b, 4097));
    return [raw, cache](double t) { return cache->query(t, raw(t)); };
}

LagrangianSurface curve_join_surface(const LegendrianMap& gamma,
                                     const HyperbolicLegendrianCurve& alpha,
                                     double s_min, double s_max) {
    if (gamma.ambient_dim != 2 || gamma.intrinsic_dim != 1)
        throw InvalidInput("curve_join_surface: gamma must be a curve in S^3");
    double sa = std::isnan(s_min) ? gamma.axes[0].a : s_min;
    double sb = std::isnan(s_max) ? gamma.axes[0].b : s_max;

    auto g = std::make_shared<LegendrianMap>(gamma);
    auto al = std::make_shared<HyperbolicLegendrianCurve>(alpha);

    LagrangianSurface surf;
    LagrangianImmersion im;
    im.dim = 2;
    im.family = "gamma-join-alpha";
    bool s_periodic = gamma.axes[0].periodic && std::isnan(s_min);
    bool t_periodic = alpha.family == "alpha-qr";
    im.axes = {{sa, sb, s_periodic}, {alpha.dom_a, alpha.dom_b, t_periodic}};
    im.value = [g, al](const RVec& p) {
        CVec gv = g->value({p[0]});
        return CVec{gv[0] * al->a1(p[1]), gv[1] * al->a2(p[1])};
    };
    im.jacobian = [g, al](const RVec& p) {
        CVec gv = g->value({p[0]});
        CVec gd = g->jacobian({p[0]})[0];
        return std::vector<CVec>{{gd[0] * al->a1(p[1]), gd[1] * al->a2(p[1])},
                                 {gv[0] * al->d1(p[1]), gv[1] * al->d2(p[1])}};
    };
    surf.conformal_factor = [g, al](const RVec& p) {
        return std::norm(g->value({p[0]})[0]) + std::norm(al->a1(p[1]));
    };
    auto bg = beta_along_s3_curve(gamma);
    auto ba = beta_along_h31_curve(alpha);
    surf.beta = [bg, ba](const RVec& p) { return bg(p[0]) + ba(p[1]) + kPi; };
    im.predicted_beta = surf.beta;
    im.predicted_metric = [cf = surf.conformal_factor](const RVec& p) {
        double f = cf(p);
        return std::vector<RVec>{{f, 0.0}, {0.0, f}};
    };

    // continuous component arguments; undefined when a component
    // vanishes in the chosen s-range
    try {
        auto cg1 = std::make_shared<AngleCache>(build_angle_cache(
            [g](double s) { return std::arg(g->value({s})[0]); }, sa, sb, 4097));
        auto cg2 = std::make_shared<AngleCache>(build_angle_cache(
            [g](double s) { return std::arg(g->value({s})[1]); }, sa, sb, 4097));
        auto ca1 = std::make_shared<AngleCache>(build_angle_cache(
            [al](double t) { return std::arg(al->a1(t)); }, alpha.dom_a,
            alpha.dom_b, 4097));
        auto ca2 = std::make_shared<AngleCache>(build_angle_cache(
            [al](double t) { return std::arg(al->a2(t)); }, alpha.dom_a,
            alpha.dom_b, 4097));
        surf.arg1 = [g, al, cg1, ca1](const RVec& p) {
            return cg1->query(p[0], std::arg(g->value({p[0]})[0])) +
                   ca1->query(p[1], std::arg(al->a1(p[1])));
        };
        surf.arg2 = [g, al, cg2, ca2](const RVec& p) {
            return cg2->query(p[0], std::arg(g->value({p[0]})[1])) +
                   ca2->query(p[1], std::arg(al->a2(p[1])));
        };
    } catch (const UnwrapAmbiguity&) {
        // a component crosses zero in the s-range; arg1/arg2 stay empty
    }
    surf.im = std::move(im);
    return surf;
}

LagrangianImmersion surface_times_two_legendrians(const LagrangianSurface& phi,
                                                  const LegendrianMap& psi1,
                                                  const LegendrianMap& psi2) {
    const int n1 = psi1.ambient_dim, n2 = psi2.ambient_dim;
    const int m1 = psi1.intrinsic_dim, m2 = psi2.intrinsic_dim;
    if (n1 != m1 + 1 || n2 != m2 + 1)
        throw DimensionMismatch("surface_times_two_legendrians: bad psi dims");
    const int n = n1 + n2;

    // phi_1, phi_2 must not vanish on the surface domain
    for (int i = 0; i <= 8; ++i) {
        for (int j = 0; j <= 8; ++j) {
            RVec p = {phi.im.axes[0].a +
                          (phi.im.axes[0].b - phi.im.axes[0].a) * i / 8.0,
                      phi.im.axes[1].a +
                          (phi.im.axes[1].b - phi.im.axes[1].a) * j / 8.0};
            CVec v = phi.im.value(p);
            if (std::abs(v[0]) < 1e-9 || std::abs(v[1]) < 1e-9)
                throw SingularPoint(
                    "surface_times_two_legendrians: phi component vanishes on domain");
        }
    }

    auto sp = std::make_shared<LagrangianSurface>(phi);
    auto p1 = std::make_shared<LegendrianMap>(psi1);
    auto p2 = std::make_shared<LegendrianMap>(psi2);

    LagrangianImmersion im;
    im.dim = n;
    im.family = "thm3";
    im.axes = phi.im.axes;
    im.axes.insert(im.axes.end(), psi1.axes.begin(), psi1.axes.end());
    im.axes.insert(im.axes.end(), psi2.axes.begin(), psi2.axes.end());

    auto split = [m1, m2](const RVec& p) {
        RVec q{p[0], p[1]};
        RVec x(p.begin() + 2, p.begin() + 2 + m1);
        RVec y(p.begin() + 2 + m1, p.begin() + 2 + m1 + m2);
        return std::tuple<RVec, RVec, RVec>{q, x, y};
    };
    im.value = [=](const RVec& p) {
        auto [q, x, y] = split(p);
        CVec f = sp->im.value(q);
        CVec v1 = p1->value(x), v2 = p2->value(y);
        CVec z(n);
        for (int j = 0; j < n1; ++j) z[j] = f[0] * v1[j];
        for (int j = 0; j < n2; ++j) z[n1 + j] = f[1] * v2[j];
        return z;
    };
    im.jacobian = [=](const RVec& p) {
        auto [q, x, y] = split(p);
        CVec f = sp->im.value(q);
        auto jf = sp->im.jacobian(q);
        CVec v1 = p1->value(x), v2 = p2->value(y);
        auto j1 = p1->jacobian(x);
        auto j2 = p2->jacobian(y);
        std::vector<CVec> cols(n, CVec(n, Complex(0.0, 0.0)));
        for (int mu = 0; mu < 2; ++mu) {
            for (int j = 0; j < n1; ++j) cols[mu][j] = jf[mu][0] * v1[j];
            for (int j = 0; j < n2; ++j) cols[mu][n1 + j] = jf[mu][1] * v2[j];
        }
        for (int a = 0; a < m1; ++a)
            for (int j = 0; j < n1; ++j) cols[2 + a][j] = f[0] * j1[a][j];
        for (int a = 0; a < m2; ++a)
            for (int j = 0; j < n2; ++j) cols[2 + m1 + a][n1 + j] = f[1] * j2[a][j];
        return cols;
    };

    std::function<double(const RVec&)> g_phi;
    if (phi.beta && phi.arg1 && phi.arg2) {
        g_phi = [sp, n1, n2](const RVec& q) {
            return sp->beta(q) + (n1 - 1) * sp->arg1(q) + (n2 - 1) * sp->arg2(q);
        };
    }
    if (g_phi && psi1.beta_closed && psi2.beta_closed) {
        im.predicted_beta = [=](const RVec& p) {
            auto [q, x, y] = split(p);
            return (n1 - 1) * kPi + g_phi(q) + p1->beta_closed(x) +
                   p2->beta_closed(y);
        };
    }
    im.predicted_metric = [=](const RVec& p) {
        auto [q, x, y] = split(p);
        CVec f = sp->im.value(q);
        auto gs = gram_matrix(sp->im.jacobian(q));
        auto g1 = gram_matrix(p1->jacobian(x));
        auto g2 = gram_matrix(p2->jacobian(y));
        double r1 = std::norm(f[0]), r2 = std::norm(f[1]);
        std::vector<RVec> out(n, RVec(n, 0.0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out[i][j] = gs[i][j];
        for (int i = 0; i < m1; ++i)
            for (int j = 0; j < m1; ++j) out[2 + i][2 + j] = r1 * g1[i][j];
        for (int i = 0; i < m2; ++i)
            for (int j = 0; j < m2; ++j)
                out[2 + m1 + i][2 + m1 + j] = r2 * g2[i][j];
        return out;
    };
    if (g_phi && psi1.beta_laplacian && psi2.beta_laplacian) {
        double l1 = *psi1.beta_laplacian, l2 = *psi2.beta_laplacian;
        auto weight = [sp, n1, n2](const RVec& q) {
            CVec f = sp->im.value(q);
            return std::pow(std::abs(f[0]), n1 - 1) *
                   std::pow(std::abs(f[1]), n2 - 1);
        };
        im.predicted_laplacian = [=](const RVec& p) {
            auto [q, x, y] = split(p);
            const double h = 1e-3;
            auto flux = [&](const RVec& qq, int i) {
                auto g = gram_matrix(sp->im.jacobian(qq));
                auto ginv = invert_spd(g);
                double sqrtg = std::sqrt(g[0][0] * g[1][1] - g[0][1] * g[0][1]);
                double d0 = fd_partial(g_phi, qq, 0, h);
                double d1 = fd_partial(g_phi, qq, 1, h);
                return sqrtg * weight(qq) * (ginv[i][0] * d0 + ginv[i][1] * d1);
            };
            double div = 0.0;
            for (int i = 0; i < 2; ++i)
                div += fd_partial([&](const RVec& qq) { return flux(qq, i); }, q,
                                  i, h);
            auto g = gram_matrix(sp->im.jacobian(q));
            double sqrtg = std::sqrt(g[0][0] * g[1][1] - g[0][1] * g[0][1]);
            CVec f = sp->im.value(q);
            return div / (sqrtg * weight(q)) + l1 / std::norm(f[0]) +
                   l2 / std::norm(f[1]);
        };
    }
    auto prov = std::make_shared<ProvenanceData>();
    prov->kind = "thm3";
    prov->surface = sp;
    prov->psi1 = p1;
    prov->psi2 = p2;
    prov->n1 = n1;
    prov->n2 = n2;
    im.provenance = prov;
    return im;
}

CondSufficientSeries check_cond_sufficient(const LegendrianMap& gamma,
                                           const HyperbolicLegendrianCurve& alpha,
                                           int n1, int n2, int samples) {
    CondSufficientSeries out;
    auto bg = beta_along_s3_curve(gamma);
    auto ba = beta_along_h31_curve(alpha);
    double sa = gamma.axes[0].a, sb = gamma.axes[0].b;
    // keep FD stencils inside the domains
    double smargin = 4e-3 * (sb - sa);
    for (int i = 0; i < samples; ++i) {
        double s = sa + smargin + (sb - sa - 2 * smargin) * i / (samples - 1);
        CVec g = gamma.value({s});
        CVec gd = gamma.jacobian({s})[0];
        double a1 = std::abs(g[0]), a2 = std::abs(g[1]);
        if (a1 < 1e-9 || a2 < 1e-9)
            throw SingularPoint("check_cond_sufficient: gamma component vanishes");
        double u = (gd[0] * std::conj(g[0])).imag();  // <gamma_1', J gamma_1>
        double gs = fd_derivative(bg, s, 1e-4) +
                    u * ((n1 - 1) / (a1 * a1) - (n2 - 1) / (a2 * a2));
        out.s_samples.push_back(s);
        out.c1_series.push_back(std::pow(a1, n1 - 1) * std::pow(a2, n2 - 1) * gs);
    }
    double ta = alpha.dom_a, tb = alpha.dom_b;
    double tmargin = 4e-3 * (tb - ta);
    for (int i = 0; i < samples; ++i) {
        double t = ta + tmargin + (tb - ta - 2 * tmargin) * i / (samples - 1);
        Complex a1 = alpha.a1(t), a2 = alpha.a2(t), d1 = alpha.d1(t);
        double m1 = std::abs(a1), m2 = std::abs(a2);
        if (m1 < 1e-9 || m2 < 1e-9)
            throw SingularPoint("check_cond_sufficient: alpha component vanishes");
        double u = (d1 * std::conj(a1)).imag();
        double gt = fd_derivative(ba, t, 1e-4) +
                    u * ((n1 - 1) / (m1 * m1) - (n2 - 1) / (m2 * m2));
        out.t_samples.push_back(t);
        out.c2_series.push_back(std::pow(m1, n1 - 1) * std::pow(m2, n2 - 1) * gt);
    }
    return out;
}

}  // namespace lagmin
