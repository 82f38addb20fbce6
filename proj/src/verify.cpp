#include "lagmin/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lagmin {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// 4th-order central stencils
constexpr double kD1[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
constexpr double kD2[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12,
                           -1.0 / 12};

}  // namespace

size_t Grid::size() const {
    size_t n = 1;
    for (int c : counts) n *= static_cast<size_t>(c);
    return n;
}

std::vector<int> Grid::unflatten(size_t id) const {
    std::vector<int> idx(counts.size());
    for (int i = static_cast<int>(counts.size()) - 1; i >= 0; --i) {
        idx[i] = static_cast<int>(id % counts[i]);
        id /= counts[i];
    }
    return idx;
}

size_t Grid::flatten(const std::vector<int>& idx) const {
    size_t id = 0;
    for (size_t i = 0; i < counts.size(); ++i)
        id = id * counts[i] + static_cast<size_t>(idx[i]);
    return id;
}

RVec Grid::point(const std::vector<int>& idx) const {
    RVec p(counts.size());
    for (size_t i = 0; i < counts.size(); ++i) p[i] = axes[i].a + idx[i] * h[i];
    return p;
}

bool Grid::interior(const std::vector<int>& idx, int margin) const {
    for (size_t i = 0; i < counts.size(); ++i) {
        if (axes[i].periodic) continue;
        if (idx[i] < margin || idx[i] > counts[i] - 1 - margin) return false;
    }
    return true;
}

bool Grid::shift(std::vector<int> idx, int axis, int off,
                 std::vector<int>& out) const {
    int v = idx[axis] + off;
    if (axes[axis].periodic) {
        v %= counts[axis];
        if (v < 0) v += counts[axis];
    } else if (v < 0 || v >= counts[axis]) {
        return false;
    }
    idx[axis] = v;
    out = std::move(idx);
    return true;
}

Grid make_grid(const std::vector<Axis>& axes, const GridSpec& spec) {
    if (spec.counts.size() != axes.size())
        throw DimensionMismatch("make_grid: counts must match axis count");
    Grid g;
    g.axes = axes;
    g.counts = spec.counts;
    for (size_t i = 0; i < axes.size(); ++i) {
        int n = spec.counts[i];
        if (n < 8) throw InvalidParameter("make_grid: need at least 8 nodes per axis");
        double len = axes[i].b - axes[i].a;
        g.h.push_back(axes[i].periodic ? len / n : len / (n - 1));
    }
    return g;
}

MetricSample induced_metric(const LagrangianImmersion& im, const RVec& p) {
    MetricSample out;
    out.point = p;
    out.g = gram_matrix(im.jacobian(p));
    auto ev = symmetric_eigenvalues(out.g);
    out.min_eigenvalue = ev.front();
    if (out.min_eigenvalue <= 1e-10)
        throw DegenerateFrame("induced_metric: metric not positive definite");
    out.ginv = invert_spd(out.g);
    double det = 1.0;
    for (double e : ev) det *= e;
    out.sqrt_det = std::sqrt(det);

    const int n = im.dim;
    // dg[l][i][j] = d g_ij / d p_l
    std::vector<std::vector<RVec>> dg(n, std::vector<RVec>(n, RVec(n, 0.0)));
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                auto entry = [&](const RVec& q) {
                    return gram_matrix(im.jacobian(q))[i][j];
                };
                dg[l][i][j] = dg[l][j][i] = fd_partial(entry, p, l, 1e-3);
            }
    out.christoffel.assign(n, std::vector<RVec>(n, RVec(n, 0.0)));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += out.ginv[k][l] *
                         (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                out.christoffel[k][i][j] = 0.5 * s;
            }
    return out;
}

AngleProblem angle_problem(const LagrangianImmersion& im) {
    AngleProblem prob;
    prob.axes = im.axes;
    prob.dim = im.dim;
    auto jac = im.jacobian;
    int n = im.dim;
    prob.angle = [jac, n](const RVec& p) {
        auto frame = orthonormalize_real(jac(p));
        ComplexMatrix m(n);
        for (int j = 0; j < n; ++j) m.set_column(j, frame[j]);
        Complex d = det_complex(m);
        if (std::abs(d) < 1e-12)
            throw DegenerateFrame("angle: vanishing frame determinant");
        return std::arg(d);
    };
    prob.metric = [jac](const RVec& p) { return gram_matrix(jac(p)); };
    return prob;
}

AngleProblem angle_problem(const LegendrianMap& psi) {
    AngleProblem prob;
    prob.axes = psi.axes;
    prob.dim = psi.intrinsic_dim;
    auto p2 = std::make_shared<LegendrianMap>(psi);
    prob.angle = [p2](const RVec& x) { return legendrian_angle(*p2, x); };
    prob.metric = [p2](const RVec& x) { return gram_matrix(p2->jacobian(x)); };
    return prob;
}

namespace {

template <typename F>
void for_nodes(const Grid& g, ExecutionMode mode, F&& body) {
    const long total = static_cast<long>(g.size());
    if (mode == ExecutionMode::parallel) {
#pragma omp parallel for schedule(static)
        for (long id = 0; id < total; ++id) body(static_cast<size_t>(id));
    } else {
        for (long id = 0; id < total; ++id) body(static_cast<size_t>(id));
    }
}

// unwrapped field value at idx offset along one or two axes; crossing a
// periodic wrap shifts the branch by the axis winding
double shifted_beta(const Grid& g, const std::vector<double>& beta,
                    const std::vector<int>& winding, std::vector<int> idx,
                    std::initializer_list<std::pair<int, int>> shifts) {
    double corr = 0.0;
    for (auto [ax, off] : shifts) {
        int v = idx[ax] + off;
        if (g.axes[ax].periodic) {
            while (v >= g.counts[ax]) {
                v -= g.counts[ax];
                corr += kTwoPi * winding[ax];
            }
            while (v < 0) {
                v += g.counts[ax];
                corr -= kTwoPi * winding[ax];
            }
        }
        idx[ax] = v;
    }
    return beta[g.flatten(idx)] + corr;
}

}  // namespace

AngleField angle_field(const AngleProblem& prob, const GridSpec& spec,
                       ExecutionMode mode) {
    AngleField field;
    field.grid = make_grid(prob.axes, spec);
    const Grid& g = field.grid;
    const int d = prob.dim;
    const size_t total = g.size();

    std::vector<double> raw(total);
    std::vector<std::string> failure(1);
    for_nodes(g, mode, [&](size_t id) {
        try {
            raw[id] = prob.angle(g.point(g.unflatten(id)));
        } catch (const Error& e) {
#pragma omp critical
            failure[0] = e.what();
        }
    });
    if (!failure[0].empty())
        throw DegenerateFrame("angle_field: " + failure[0]);

    // unwrap: each node takes its branch from the neighbor obtained by
    // decrementing the first nonzero index (axis-0 lines first, then
    // successive axes, all rooted at the grid origin)
    field.beta.assign(total, 0.0);
    field.beta[0] = raw[0];
    for (size_t id = 1; id < total; ++id) {
        auto idx = g.unflatten(id);
        int ax = 0;
        while (idx[static_cast<size_t>(ax)] == 0) ++ax;
        auto ref = idx;
        ref[static_cast<size_t>(ax)] -= 1;
        size_t rid = g.flatten(ref);
        double jump = principal_angle(raw[id] - raw[rid]);
        if (std::abs(jump) > kPi - 1e-3) {
            std::string where;
            for (int v : idx) where += std::to_string(v) + " ";
            throw UnwrapAmbiguity("angle_field: ambiguous branch at node " +
                                  where + "- refine the grid");
        }
        field.beta[id] = field.beta[rid] + jump;
    }

    // winding numbers along the base line of each periodic axis
    field.winding.assign(d, 0);
    for (int ax = 0; ax < d; ++ax) {
        if (!g.axes[ax].periodic) continue;
        double tot = 0.0;
        std::vector<int> idx(d, 0);
        for (int k = 0; k < g.counts[ax]; ++k) {
            idx[ax] = k;
            size_t a = g.flatten(idx);
            idx[ax] = (k + 1) % g.counts[ax];
            size_t b = g.flatten(idx);
            tot += principal_angle(raw[b] - raw[a]);
        }
        field.winding[ax] = static_cast<int>(std::lround(tot / kTwoPi));
    }

    // derivatives: 4th-order stencils on the grid for beta; metric
    // coefficients differentiated off-grid (the evaluator is smooth)
    field.grad.assign(total, RVec());
    field.laplacian.assign(total, kNaN);
    for_nodes(g, mode, [&](size_t id) {
        auto idx = g.unflatten(id);
        if (!g.interior(idx)) return;
        RVec p = g.point(idx);
        RVec db(d, 0.0);
        std::vector<RVec> d2b(d, RVec(d, 0.0));
        for (int i = 0; i < d; ++i) {
            double s1 = 0.0, s2 = 0.0;
            for (int o = -2; o <= 2; ++o) {
                double v = shifted_beta(g, field.beta, field.winding, idx, {{i, o}});
                s1 += kD1[o + 2] * v;
                s2 += kD2[o + 2] * v;
            }
            db[i] = s1 / g.h[i];
            d2b[i][i] = s2 / (g.h[i] * g.h[i]);
        }
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                double s = 0.0;
                for (int a = -2; a <= 2; ++a) {
                    if (kD1[a + 2] == 0.0) continue;
                    for (int b = -2; b <= 2; ++b) {
                        if (kD1[b + 2] == 0.0) continue;
                        s += kD1[a + 2] * kD1[b + 2] *
                             shifted_beta(g, field.beta, field.winding, idx,
                                          {{i, a}, {j, b}});
                    }
                }
                d2b[i][j] = d2b[j][i] = s / (g.h[i] * g.h[j]);
            }

        auto gm = prob.metric(p);
        auto ginv = invert_spd(gm);
        auto ev = symmetric_eigenvalues(gm);
        double det = 1.0;
        for (double e : ev) det *= e;
        double sqrtg = std::sqrt(det);

        RVec grad(d, 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) grad[i] += ginv[i][j] * db[j];
        field.grad[id] = grad;

        // Delta beta = g^{ij} d_i d_j beta + b^j d_j beta with
        // b^j = (1/sqrt g) d_i (sqrt g g^{ij})
        double lap = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) lap += ginv[i][j] * d2b[i][j];
        for (int j = 0; j < d; ++j) {
            double bj = 0.0;
            for (int i = 0; i < d; ++i) {
                auto coeff = [&](const RVec& q) {
                    auto gq = prob.metric(q);
                    auto gqinv = invert_spd(gq);
                    auto evq = symmetric_eigenvalues(gq);
                    double dq = 1.0;
                    for (double e : evq) dq *= e;
                    return std::sqrt(dq) * gqinv[i][j];
                };
                bj += fd_partial(coeff, p, i, 1e-3);
            }
            lap += bj / sqrtg * db[j];
        }
        field.laplacian[id] = lap;
    });
    return field;
}

namespace {

// branch-matched local angle evaluations around p
RVec local_angle_gradient(const std::function<double(const RVec&)>& angle,
                          const RVec& p, int d, double h = 1e-3) {
    double base = angle(p);
    auto f = [&](const RVec& q) { return match_branch(angle(q), base); };
    RVec db(d);
    for (int j = 0; j < d; ++j) db[j] = fd_partial(f, p, j, h);
    return db;
}

}  // namespace

CVec mean_curvature(const LagrangianImmersion& im, const RVec& p) {
    const int n = im.dim;
    const double h = 1e-3;
    for (int i = 0; i < n; ++i) {
        if (im.axes[i].periodic) continue;
        if (p[i] - 2 * h < im.axes[i].a || p[i] + 2 * h > im.axes[i].b)
            throw InvalidInput(
                "mean_curvature: point too close to the domain boundary");
    }
    auto prob = angle_problem(im);
    RVec db = local_angle_gradient(prob.angle, p, n, h);
    auto jac = im.jacobian(p);
    auto ginv = invert_spd(gram_matrix(jac));
    CVec grad(n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        double ci = 0.0;
        for (int j = 0; j < n; ++j) ci += ginv[i][j] * db[j];
        for (int k = 0; k < n; ++k) grad[k] += ci * jac[i][k];
    }
    for (int k = 0; k < n; ++k) grad[k] *= Complex(0.0, 1.0 / n);
    return grad;
}

CVec mean_curvature_oracle(const LagrangianImmersion& im, const RVec& p) {
    const int n = im.dim;
    const double h = 1e-3;
    auto jac = im.jacobian(p);
    auto ginv = invert_spd(gram_matrix(jac));
    auto frame = orthonormalize_real(jac);

    // ambient Hessian d_i d_j Phi from FD of the Jacobian columns
    auto col = [&im](const RVec& q, int j) { return im.jacobian(q)[j]; };
    CVec H(n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CVec hij(n, Complex(0.0, 0.0));
            for (int o = -2; o <= 2; ++o) {
                if (kD1[o + 2] == 0.0) continue;
                RVec q = p;
                q[i] += o * h;
                CVec cj = col(q, j);
                for (int k = 0; k < n; ++k) hij[k] += kD1[o + 2] / h * cj[k];
            }
            // normal projection
            for (const CVec& e : frame) {
                double c = real_inner(hij, e);
                for (int k = 0; k < n; ++k) hij[k] -= c * e[k];
            }
            for (int k = 0; k < n; ++k) H[k] += ginv[i][j] * hij[k] / double(n);
        }
    return H;
}

std::vector<double> covariant_hessian_beta(const LagrangianImmersion& im,
                                           const AngleField& field,
                                           ExecutionMode mode) {
    const Grid& g = field.grid;
    const int d = im.dim;
    std::vector<double> norms(g.size(), kNaN);
    for_nodes(g, mode, [&](size_t id) {
        auto idx = g.unflatten(id);
        if (!g.interior(idx)) return;
        RVec p = g.point(idx);
        RVec db(d, 0.0);
        std::vector<RVec> d2b(d, RVec(d, 0.0));
        for (int i = 0; i < d; ++i) {
            double s1 = 0.0, s2 = 0.0;
            for (int o = -2; o <= 2; ++o) {
                double v = shifted_beta(g, field.beta, field.winding, idx, {{i, o}});
                s1 += kD1[o + 2] * v;
                s2 += kD2[o + 2] * v;
            }
            db[i] = s1 / g.h[i];
            d2b[i][i] = s2 / (g.h[i] * g.h[i]);
        }
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                double s = 0.0;
                for (int a = -2; a <= 2; ++a) {
                    if (kD1[a + 2] == 0.0) continue;
                    for (int b = -2; b <= 2; ++b) {
                        if (kD1[b + 2] == 0.0) continue;
                        s += kD1[a + 2] * kD1[b + 2] *
                             shifted_beta(g, field.beta, field.winding, idx,
                                          {{i, a}, {j, b}});
                    }
                }
                d2b[i][j] = d2b[j][i] = s / (g.h[i] * g.h[j]);
            }
        MetricSample ms = induced_metric(im, p);
        double fro = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double hess = d2b[i][j];
                for (int k = 0; k < d; ++k)
                    hess -= ms.christoffel[k][i][j] * db[k];
                fro += hess * hess;
            }
        norms[id] = std::sqrt(fro);
    });
    return norms;
}

DivAField div_A_phi(const LagrangianSurface& surf, int n1, int n2,
                    const GridSpec& spec, ExecutionMode mode) {
    if (!surf.beta || !surf.arg1 || !surf.arg2)
        throw InvalidInput(
            "div_A_phi: surface lacks continuous angle/argument fields");
    auto sp = std::make_shared<LagrangianSurface>(surf);
    auto G = [sp, n1, n2](const RVec& q) {
        return sp->beta(q) + (n1 - 1) * sp->arg1(q) + (n2 - 1) * sp->arg2(q);
    };
    auto W = [sp, n1, n2](const RVec& q) {
        CVec v = sp->im.value(q);
        if (std::abs(v[0]) < 1e-9 || std::abs(v[1]) < 1e-9)
            throw SingularPoint("div_A_phi: phi component vanishes on grid");
        return std::pow(std::abs(v[0]), n1 - 1) * std::pow(std::abs(v[1]), n2 - 1);
    };

    DivAField out;
    out.grid = make_grid(surf.im.axes, spec);
    const Grid& g = out.grid;
    out.div.assign(g.size(), kNaN);
    const double h = 1e-3;
    const bool conformal = static_cast<bool>(surf.conformal_factor);

    std::vector<double> maxes(g.size(), 0.0);
    for_nodes(g, mode, [&](size_t id) {
        auto idx = g.unflatten(id);
        if (!g.interior(idx)) return;
        RVec p = g.point(idx);
        double div;
        if (conformal) {
            // g = F (ds^2 + dt^2): div A = (1/F)[(W G_s)_s + (W G_t)_t]
            auto flux = [&](const RVec& q, int i) {
                return W(q) * fd_partial(G, q, i, h);
            };
            div = (fd_partial([&](const RVec& q) { return flux(q, 0); }, p, 0, h) +
                   fd_partial([&](const RVec& q) { return flux(q, 1); }, p, 1, h)) /
                  sp->conformal_factor(p);
        } else {
            auto flux = [&](const RVec& q, int i) {
                auto gm = gram_matrix(sp->im.jacobian(q));
                auto ginv = invert_spd(gm);
                double sqrtg =
                    std::sqrt(gm[0][0] * gm[1][1] - gm[0][1] * gm[0][1]);
                return sqrtg * W(q) *
                       (ginv[i][0] * fd_partial(G, q, 0, h) +
                        ginv[i][1] * fd_partial(G, q, 1, h));
            };
            auto gm = gram_matrix(sp->im.jacobian(p));
            double sqrtg = std::sqrt(gm[0][0] * gm[1][1] - gm[0][1] * gm[0][1]);
            div = (fd_partial([&](const RVec& q) { return flux(q, 0); }, p, 0, h) +
                   fd_partial([&](const RVec& q) { return flux(q, 1); }, p, 1, h)) /
                  sqrtg;
        }
        out.div[id] = div;
        maxes[id] = std::abs(div);
    });
    out.max_abs = *std::max_element(maxes.begin(), maxes.end());
    return out;
}

bool VerificationReport::all_pass() const {
    for (const auto& [name, c] : checks) {
        // parallel mean curvature classifies the example; H-minimal
        // immersions without it are still correct constructions
        if (name == "parallelH") continue;
        if (c.ran && !c.pass) return false;
    }
    return true;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
    for (const auto& [n, c] : checks)
        if (n == name) return &c;
    return nullptr;
}

namespace {

CheckResult make_check(double residual, double tol) {
    CheckResult c;
    c.max_residual = residual;
    c.tolerance = tol;
    c.pass = residual <= tol;
    c.ran = true;
    return c;
}

CheckResult skipped_check() { return CheckResult{}; }

double max_over_nodes(const Grid& g, ExecutionMode mode,
                      const std::function<double(const RVec&)>& f) {
    std::vector<double> vals(g.size(), 0.0);
    for_nodes(g, mode, [&](size_t id) { vals[id] = f(g.point(g.unflatten(id))); });
    return *std::max_element(vals.begin(), vals.end());
}

double legendrian_sample_max(const LegendrianMap& psi,
                             const std::function<double(const LegendrianMap&,
                                                        const RVec&)>& f) {
    if (psi.intrinsic_dim == 0) return f(psi, {});
    GridSpec spec;
    spec.counts.assign(psi.axes.size(), 9);
    Grid g = make_grid(psi.axes, spec);
    double worst = 0.0;
    for (size_t id = 0; id < g.size(); ++id)
        worst = std::max(worst, f(psi, g.point(g.unflatten(id))));
    return worst;
}

}  // namespace

VerificationReport certify(const LagrangianImmersion& im, const GridSpec& spec,
                           const Tolerances& tol, ExecutionMode mode) {
    VerificationReport rep;
    rep.grid_counts = spec.counts;

    AngleField field = lagrangian_angle_field(im, spec, mode);
    const Grid& g = field.grid;

    rep.checks.emplace_back(
        "symplectic",
        make_check(max_over_nodes(g, mode,
                                  [&](const RVec& p) {
                                      return symplectic_residual(im, p);
                                  }),
                   tol.symplectic));

    // contact residuals of the Legendrian ingredients
    std::vector<const LegendrianMap*> psis;
    if (im.provenance) {
        for (auto p : {im.provenance->psi, im.provenance->psi1,
                       im.provenance->psi2})
            if (p) psis.push_back(p.get());
    }
    if (psis.empty()) {
        rep.checks.emplace_back("contact", skipped_check());
    } else {
        double worst = 0.0;
        for (const LegendrianMap* p : psis) {
            worst = std::max(worst,
                             legendrian_sample_max(*p, [](const LegendrianMap& m,
                                                          const RVec& x) {
                                 return std::max(contact_residual(m, x),
                                                 unit_norm_residual(m, x));
                             }));
        }
        rep.checks.emplace_back("contact", make_check(worst, tol.contact));
    }

    if (im.predicted_metric) {
        double worst = max_over_nodes(g, mode, [&](const RVec& p) {
            auto gm = gram_matrix(im.jacobian(p));
            auto pm = im.predicted_metric(p);
            double w = 0.0;
            for (size_t i = 0; i < gm.size(); ++i)
                for (size_t j = 0; j < gm.size(); ++j)
                    w = std::max(w, std::abs(gm[i][j] - pm[i][j]));
            return w;
        });
        rep.checks.emplace_back("metric-match", make_check(worst, tol.metric_match));
    } else {
        rep.checks.emplace_back("metric-match", skipped_check());
    }

    if (im.predicted_beta) {
        auto prob = angle_problem(im);
        double worst = max_over_nodes(g, mode, [&](const RVec& p) {
            return std::abs(principal_angle(prob.angle(p) - im.predicted_beta(p)));
        });
        rep.checks.emplace_back("angle-match", make_check(worst, tol.angle_match));
    } else {
        rep.checks.emplace_back("angle-match", skipped_check());
    }

    double lap_worst = 0.0, lap_sum = 0.0, match_worst = 0.0;
    size_t interior = 0;
    for (size_t id = 0; id < g.size(); ++id) {
        double lap = field.laplacian[id];
        if (std::isnan(lap)) continue;
        ++interior;
        lap_sum += lap;
        lap_worst = std::max(lap_worst, std::abs(lap));
        if (im.predicted_laplacian) {
            RVec p = g.point(g.unflatten(id));
            match_worst =
                std::max(match_worst, std::abs(lap - im.predicted_laplacian(p)));
        }
    }
    if (interior == 0)
        throw InvalidParameter("certify: grid has no interior nodes");
    rep.mean_laplacian = lap_sum / static_cast<double>(interior);
    if (im.predicted_laplacian)
        rep.checks.emplace_back("laplacian-match",
                                make_check(match_worst, tol.laplacian_match));
    else
        rep.checks.emplace_back("laplacian-match", skipped_check());
    rep.checks.emplace_back("hminimal", make_check(lap_worst, tol.hminimal));

    auto hess = covariant_hessian_beta(im, field, mode);
    double hess_worst = 0.0;
    for (double v : hess)
        if (!std::isnan(v)) hess_worst = std::max(hess_worst, v);
    rep.checks.emplace_back("parallelH", make_check(hess_worst, tol.parallel_h));

    if (im.provenance && im.provenance->kind == "thm3" && im.provenance->surface) {
        GridSpec s2;
        s2.counts = {spec.counts[0], spec.counts[1]};
        auto da = div_A_phi(*im.provenance->surface, im.provenance->n1,
                            im.provenance->n2, s2, mode);
        rep.checks.emplace_back("divA", make_check(da.max_abs, tol.div_a));
    } else {
        rep.checks.emplace_back("divA", skipped_check());
    }

    for (int ax = 0; ax < im.dim; ++ax)
        if (g.axes[ax].periodic)
            rep.notes.push_back("winding axis " + std::to_string(ax) + ": " +
                                std::to_string(field.winding[ax]));
    return rep;
}

VerificationReport certify_legendrian(const LegendrianMap& psi,
                                      const GridSpec& spec,
                                      const Tolerances& tol,
                                      ExecutionMode mode) {
    VerificationReport rep;
    rep.grid_counts = spec.counts;
    AngleField field = angle_field(angle_problem(psi), spec, mode);
    const Grid& g = field.grid;

    rep.checks.emplace_back(
        "unit-norm",
        make_check(max_over_nodes(g, mode,
                                  [&](const RVec& x) {
                                      return unit_norm_residual(psi, x);
                                  }),
                   tol.contact));
    rep.checks.emplace_back(
        "contact",
        make_check(max_over_nodes(g, mode,
                                  [&](const RVec& x) {
                                      return contact_residual(psi, x);
                                  }),
                   tol.contact));

    double lap_worst = 0.0, lap_sum = 0.0;
    size_t interior = 0;
    for (double lap : field.laplacian) {
        if (std::isnan(lap)) continue;
        ++interior;
        lap_sum += lap;
        lap_worst = std::max(lap_worst, std::abs(lap));
    }
    if (interior == 0)
        throw InvalidParameter("certify_legendrian: grid has no interior nodes");
    rep.mean_laplacian = lap_sum / static_cast<double>(interior);
    rep.checks.emplace_back("cminimal",
                            make_check(lap_worst, tol.laplacian_match));
    for (size_t ax = 0; ax < psi.axes.size(); ++ax)
        if (g.axes[ax].periodic)
            rep.notes.push_back("winding axis " + std::to_string(ax) + ": " +
                                std::to_string(field.winding[ax]));
    return rep;
}

}  // namespace lagmin
