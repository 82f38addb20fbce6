#include "lagmin/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lagmin {

double AngleCache::query(double s, double raw) const {
    double sc = std::clamp(s, s0, s1);
    double u = (sc - s0) / ds;
    size_t i = std::min(static_cast<size_t>(u), vals.size() - 2);
    double frac = u - static_cast<double>(i);
    double approx = vals[i] + frac * (vals[i + 1] - vals[i]);
    return match_branch(raw, approx);
}

AngleCache build_angle_cache(const std::function<double(double)>& raw_angle,
                             double a, double b, int samples) {
    AngleCache c;
    c.s0 = a;
    c.s1 = b;
    c.ds = (b - a) / (samples - 1);
    AngleSeries raw;
    raw.samples.resize(samples);
    for (int i = 0; i < samples; ++i)
        raw.samples[i] = raw_angle(a + i * c.ds);
    AngleSeries uw = unwrap(raw);
    // anchor: principal branch at the domain midpoint
    size_t mid = static_cast<size_t>(samples / 2);
    double shift =
        kTwoPi * std::round((uw.samples[mid] - principal_angle(uw.samples[mid])) /
                            kTwoPi);
    c.vals = std::move(uw.samples);
    for (double& v : c.vals) v -= shift;
    return c;
}

PlanarCurve::PlanarCurve(CurveFamily fam, std::function<Complex(double)> value,
                         std::function<Complex(double)> deriv,
                         std::function<Complex(double)> second,
                         std::function<double(double)> kappa, double a, double b,
                         bool arclength)
    : family_(fam),
      value_(std::move(value)),
      deriv_(std::move(deriv)),
      second_(std::move(second)),
      kappa_(std::move(kappa)),
      dom_a_(a),
      dom_b_(b),
      arclength_(arclength) {
    ensure_caches();
}

void PlanarCurve::ensure_caches() const {
    const int samples = 4097;
    if (!arg_der_cache_) {
        try {
            arg_der_cache_ = std::make_shared<AngleCache>(build_angle_cache(
                [this](double s) { return std::arg(deriv_(s)); }, dom_a_, dom_b_,
                samples));
        } catch (const UnwrapAmbiguity&) {
            // curve with a tangent reversal in-domain; arg_deriv will reject
        }
    }
    if (!arg_val_cache_) {
        try {
            arg_val_cache_ = std::make_shared<AngleCache>(build_angle_cache(
                [this](double s) { return std::arg(value_(s)); }, dom_a_, dom_b_,
                samples));
        } catch (const UnwrapAmbiguity&) {
            // curve passing through (or near) the origin; arg_value will reject
        }
    }
}

double PlanarCurve::curvature(double s) const {
    if (std::abs(deriv_(s)) < 1e-12)
        throw SingularPoint("curvature: |alpha'| vanishes");
    return kappa_(s);
}

double PlanarCurve::curvature_deriv(double s) const {
    switch (family_) {
        case CurveFamily::line:
        case CurveFamily::circle:
            return 0.0;
        case CurveFamily::cornu:
            return lambda;
        default:
            return fd_derivative([this](double t) { return kappa_(t); }, s, 1e-4);
    }
}

double PlanarCurve::arg_value(double s) const {
    Complex z = value_(s);
    if (std::abs(z) < 1e-12)
        throw OriginCrossing("arg_value: curve passes through the origin");
    if (!arg_val_cache_)
        throw OriginCrossing("arg_value: no continuous branch of arg(alpha) on domain");
    return arg_val_cache_->query(s, std::arg(z));
}

double PlanarCurve::arg_deriv(double s) const {
    Complex z = deriv_(s);
    if (std::abs(z) < 1e-12) throw SingularPoint("arg_deriv: |alpha'| vanishes");
    if (!arg_der_cache_)
        throw SingularPoint("arg_deriv: no continuous branch of arg(alpha') on domain");
    return arg_der_cache_->query(s, std::arg(z));
}

PlanarCurve make_line(Complex p0, Complex direction, double a, double b) {
    double n = std::abs(direction);
    if (n < 1e-15) throw InvalidParameter("make_line: zero direction");
    Complex d = direction / n;
    PlanarCurve c(
        CurveFamily::line, [p0, d](double s) { return p0 + d * s; },
        [d](double) { return d; }, [](double) { return Complex(0.0, 0.0); },
        [](double) { return 0.0; }, a, b, true);
    return c;
}

PlanarCurve make_circle(double radius) {
    if (!(radius > 0.0)) throw InvalidParameter("make_circle: radius must be > 0");
    double R = radius;
    PlanarCurve c(
        CurveFamily::circle,
        [R](double s) { return R * std::exp(Complex(0.0, s / R)); },
        [R](double s) { return Complex(0.0, 1.0) * std::exp(Complex(0.0, s / R)); },
        [R](double s) { return -std::exp(Complex(0.0, s / R)) / R; },
        [R](double) { return 1.0 / R; }, 0.0, kTwoPi * R, true);
    c.radius = R;
    return c;
}

PlanarCurve make_cornu(double lambda, double a, double b) {
    if (lambda == 0.0)
        throw InvalidParameter("make_cornu: lambda must be nonzero (use make_line)");
    double lam = lambda;
    auto value = [lam](double s) {
        double x = integrate_adaptive(
            [lam](double t) { return std::cos(0.5 * lam * t * t); }, 0.0, s);
        double y = integrate_adaptive(
            [lam](double t) { return std::sin(0.5 * lam * t * t); }, 0.0, s);
        return Complex(x, y);
    };
    auto deriv = [lam](double s) {
        return std::exp(Complex(0.0, 0.5 * lam * s * s));
    };
    auto second = [lam](double s) {
        return Complex(0.0, lam * s) * std::exp(Complex(0.0, 0.5 * lam * s * s));
    };
    PlanarCurve c(CurveFamily::cornu, value, deriv, second,
                  [lam](double s) { return lam * s; }, a, b, true);
    c.lambda = lam;
    return c;
}

namespace {

// state (x, y, theta): alpha' = e^{i theta},
// theta' = c r^{1-n} - (n-1) Im(conj(alpha) e^{i theta}) / r^2
double constantA_theta_rate(int n, double c, double x, double y, double theta) {
    double r2 = x * x + y * y;
    double r = std::sqrt(r2);
    double u = x * std::sin(theta) - y * std::cos(theta);  // Im(conj(alpha) e^{i theta})
    return c * std::pow(r, 1.0 - n) - (n - 1) * u / r2;
}

}  // namespace

PlanarCurve make_constantA(int n, double c, double r0, double theta0,
                           double length) {
    if (n < 2) throw InvalidParameter("make_constantA: n must be >= 2");
    if (!(r0 > 0.0)) throw InvalidParameter("make_constantA: r0 must be > 0");

    OdeSystem sys;
    sys.dim = 3;
    sys.field = [n, c](double, const RVec& y, RVec& dy) {
        double r2 = y[0] * y[0] + y[1] * y[1];
        if (r2 < 1e-12)
            throw OriginCrossing("make_constantA: trajectory reached the origin");
        dy[0] = std::cos(y[2]);
        dy[1] = std::sin(y[2]);
        dy[2] = constantA_theta_rate(n, c, y[0], y[1], y[2]);
    };

    RVec y0 = {r0, 0.0, theta0};
    StepPolicy pol;
    pol.abs_tol = pol.rel_tol = 1e-12;
    // tight cap: dense-output interpolation error gets divided by h^2
    // when grid stencils differentiate quantities along the curve
    pol.max_step = 0.002;
    double end = length;
    std::shared_ptr<Trajectory> traj;
    try {
        traj = std::make_shared<Trajectory>(integrate_ode(sys, y0, 0.0, end, pol));
    } catch (const OriginCrossing&) {
        throw;
    }
    // origin-approach truncation
    double trunc = end;
    for (size_t i = 0; i < traj->size(); ++i) {
        const RVec& st = traj->state(i);
        if (std::hypot(st[0], st[1]) < 1e-6) {
            trunc = traj->time(i > 0 ? i - 1 : 0);
            break;
        }
    }
    if (trunc < end)
        throw OriginCrossing("make_constantA: |alpha| < 1e-6 reached at s = " +
                             std::to_string(trunc));

    auto t = traj;
    auto value = [t](double s) {
        RVec st = t->at(s);
        return Complex(st[0], st[1]);
    };
    auto deriv = [t](double s) {
        RVec st = t->at(s);
        return std::exp(Complex(0.0, st[2]));
    };
    auto kappa = [t, n, c](double s) {
        RVec st = t->at(s);
        return constantA_theta_rate(n, c, st[0], st[1], st[2]);
    };
    auto second = [t, n, c](double s) {
        RVec st = t->at(s);
        double k = constantA_theta_rate(n, c, st[0], st[1], st[2]);
        return Complex(0.0, k) * std::exp(Complex(0.0, st[2]));
    };
    PlanarCurve curve(CurveFamily::constant_a, value, deriv, second, kappa, 0.0,
                      end, true);
    curve.ambient_n = n;
    curve.target_c = c;
    curve.r0 = r0;
    curve.theta0 = theta0;
    curve.attach_trajectory(t);
    return curve;
}

double g_alpha(const PlanarCurve& c, int n, double s) {
    if (n < 2) throw InvalidParameter("g_alpha: n must be >= 2");
    return c.arg_deriv(s) + (n - 1) * c.arg_value(s);
}

double g_alpha_deriv(const PlanarCurve& c, int n, double s) {
    Complex a = c.value(s), d = c.deriv(s);
    double r2 = std::norm(a);
    if (r2 < 1e-24) throw OriginCrossing("g_alpha_deriv: alpha vanishes");
    double u = std::imag(d * std::conj(a));  // <alpha', J alpha>
    return std::abs(d) * c.curvature(s) + (n - 1) * u / r2;
}

double a_alpha(const PlanarCurve& c, int n, double s) {
    double r = std::abs(c.value(s));
    if (r < 1e-12) throw OriginCrossing("a_alpha: alpha vanishes");
    return std::pow(r, n - 1) * g_alpha_deriv(c, n, s);
}

double a_alpha_kappa(const PlanarCurve& c, int n, double s) {
    Complex a = c.value(s), d = c.deriv(s), dd = c.second_deriv(s);
    double r = std::abs(a);
    if (r < 1e-12) throw OriginCrossing("a_alpha_kappa: alpha vanishes");
    // beta = alpha^n; signed curvature Im(conj(beta') beta'') / |beta'|^3
    Complex an1 = std::pow(a, n - 1), an2 = std::pow(a, n - 2);
    Complex b1 = static_cast<double>(n) * an1 * d;
    Complex b2 = static_cast<double>(n) * (static_cast<double>(n - 1) * an2 * d * d +
                                           an1 * dd);
    double nb1 = std::abs(b1);
    if (nb1 < 1e-12) throw SingularPoint("a_alpha_kappa: (alpha^n)' vanishes");
    double kap = std::imag(std::conj(b1) * b2) / (nb1 * nb1 * nb1);
    return std::pow(r, 2 * n - 2) * kap;
}

namespace {

struct Apsis {
    double s;
    double arg;  // unwrapped arg(alpha) at the apsis
};

// Radial minima of a constant-A trajectory: zeros of
// v(s) = Re(conj(alpha) e^{i theta}) = r r' crossing - to +.
std::vector<Apsis> radial_minima(const Trajectory& t) {
    auto v_of = [&](double s) {
        RVec st = t.at(s);
        return st[0] * std::cos(st[2]) + st[1] * std::sin(st[2]);
    };
    std::vector<double> zeros;
    for (size_t i = 0; i + 1 < t.size(); ++i) {
        double a = t.time(i), b = t.time(i + 1);
        double va = v_of(a), vb = v_of(b);
        if (va < 0.0 && vb >= 0.0) {
            for (int it = 0; it < 80; ++it) {
                double m = 0.5 * (a + b);
                (v_of(m) < 0.0 ? a : b) = m;
            }
            zeros.push_back(0.5 * (a + b));
        }
    }
    // unwrapped arg(alpha) accumulated along trajectory nodes
    std::vector<Apsis> out;
    if (zeros.empty()) return out;
    double acc = std::arg(Complex(t.state(0)[0], t.state(0)[1]));
    double prev_raw = acc;
    size_t zi = 0;
    for (size_t i = 1; i < t.size() && zi < zeros.size(); ++i) {
        double raw = std::arg(Complex(t.state(i)[0], t.state(i)[1]));
        acc += principal_angle(raw - prev_raw);
        prev_raw = raw;
        while (zi < zeros.size() && zeros[zi] <= t.time(i)) {
            RVec st = t.at(zeros[zi]);
            double za = std::arg(Complex(st[0], st[1]));
            out.push_back({zeros[zi], match_branch(za, acc)});
            ++zi;
        }
    }
    return out;
}

}  // namespace

ClosureResult detect_closure(const PlanarCurve& c, double tol) {
    ClosureResult res;
    switch (c.family()) {
        case CurveFamily::line:
        case CurveFamily::cornu:
            res.closed = false;
            return res;
        case CurveFamily::circle:
            res.closed = true;
            res.period = kTwoPi * c.radius;
            res.return_gap = 0.0;
            res.p = res.q = 1;
            return res;
        default:
            break;
    }
    const Trajectory* t = c.trajectory();
    if (!t)
        throw NeedsMoreIntegration("detect_closure: curve has no stored trajectory",
                                   60.0);
    // degenerate (circular) orbit: no genuine radial oscillation
    double rmin = 1e300, rmax = 0.0;
    for (size_t i = 0; i < t->size(); ++i) {
        double r = std::hypot(t->state(i)[0], t->state(i)[1]);
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    if (rmax - rmin < 1e-7) {
        double R = 0.5 * (rmin + rmax);
        double T = kTwoPi * R;
        if (T > t->t_end())
            throw NeedsMoreIntegration(
                "detect_closure: circular orbit longer than the trajectory",
                T + 1.0);
        RVec a = t->at(0.0), b = t->at(T);
        res.period = T;
        res.return_gap = std::hypot(b[0] - a[0], b[1] - a[1]) +
                         std::abs(principal_angle(b[2] - a[2]));
        res.closed = res.return_gap <= tol;
        res.p = res.q = 1;
        return res;
    }

    auto minima = radial_minima(*t);
    if (minima.size() < 2)
        throw NeedsMoreIntegration("detect_closure: fewer than two radial minima",
                                   2.0 * (t->t_end() - t->t_begin()) + 20.0);

    double S = minima[1].s - minima[0].s;          // radial period
    double dphi = minima[1].arg - minima[0].arg;   // apsidal rotation
    double rot = dphi / kTwoPi;
    auto [p, q] = rational_approx(rot, 64);
    res.p = p;
    res.q = q;

    double T = q * S;
    double s0 = minima[0].s;
    if (s0 + T > t->t_end())
        throw NeedsMoreIntegration("detect_closure: trajectory shorter than the "
                                   "candidate period",
                                   s0 + T + S + 1.0);
    RVec a = t->at(s0), b = t->at(s0 + T);
    double gap = std::hypot(b[0] - a[0], b[1] - a[1]) +
                 std::abs(principal_angle(b[2] - a[2]));
    res.period = T;
    res.return_gap = gap;
    res.closed = gap <= tol;
    return res;
}

namespace {

// Apsidal rotation number for one initial radius; curve built with
// enough arclength for two minima, growing on demand.
std::optional<double> rotation_number(int n, double c, double r0,
                                      PlanarCurve* out_curve,
                                      double max_length = 240.0) {
    double len = 40.0;
    while (len <= max_length) {
        PlanarCurve curve = make_constantA(n, c, r0, kPi / 2.0, len);
        auto minima = radial_minima(*curve.trajectory());
        if (minima.size() >= 2) {
            if (out_curve) *out_curve = curve;
            return (minima[1].arg - minima[0].arg) / kTwoPi;
        }
        len *= 2.0;
    }
    return std::nullopt;
}

}  // namespace

std::optional<ClosedCurveHit> scan_closed_constantA(int n, double c,
                                                    double r0_min, double r0_max,
                                                    double tol, int samples) {
    RVec r0s(samples), rots(samples, std::nan(""));
    for (int i = 0; i < samples; ++i) {
        r0s[i] = r0_min + (r0_max - r0_min) * i / (samples - 1);
        auto rot = rotation_number(n, c, r0s[i], nullptr);
        if (rot) rots[i] = *rot;
    }
    for (int i = 0; i + 1 < samples; ++i) {
        if (!std::isfinite(rots[i]) || !std::isfinite(rots[i + 1])) continue;
        double lo = std::min(rots[i], rots[i + 1]);
        double hi = std::max(rots[i], rots[i + 1]);
        if (hi - lo < 1e-12) continue;
        // smallest-denominator rational strictly inside (lo, hi)
        for (long q = 1; q <= 16; ++q) {
            long pmin = static_cast<long>(std::floor(lo * q)) + 1;
            long pmax = static_cast<long>(std::ceil(hi * q)) - 1;
            for (long p = pmin; p <= pmax; ++p) {
                if (std::gcd(std::abs(p), q) != 1) continue;
                double target = static_cast<double>(p) / q;
                if (!(target > lo && target < hi)) continue;
                // bisect r0 for rotation number == target
                double a = r0s[i], b = r0s[i + 1];
                double fa = rots[i] - target;
                PlanarCurve best = make_circle(1.0);  // placeholder
                for (int it = 0; it < 60; ++it) {
                    double m = 0.5 * (a + b);
                    auto rm = rotation_number(n, c, m, &best);
                    if (!rm) break;
                    double fm = *rm - target;
                    if ((fm < 0) == (fa < 0)) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                double r0_hit = 0.5 * (a + b);
                PlanarCurve curve = make_circle(1.0);
                if (!rotation_number(n, c, r0_hit, &curve)) continue;
                try {
                    ClosureResult cl = detect_closure(curve, tol);
                    if (cl.closed) return ClosedCurveHit{curve, cl, r0_hit};
                } catch (const NeedsMoreIntegration& e) {
                    PlanarCurve longer = make_constantA(n, c, r0_hit, kPi / 2.0,
                                                        e.suggested_length);
                    ClosureResult cl = detect_closure(longer, tol);
                    if (cl.closed) return ClosedCurveHit{longer, cl, r0_hit};
                }
            }
            // only try the coarsest rational per bracket; finer ones rarely close
            if (pmax >= pmin) break;
        }
    }
    return std::nullopt;
}

std::optional<ClosedCurveHit> scan_closed_constantA2(double c_min, double c_max,
                                                     double tol, int samples) {
    if (!(c_min > 2.0 && c_max > c_min))
        throw InvalidParameter("scan_closed_constantA2: need 2 < c_min < c_max");
    double mid = 0.5 * (c_min + c_max);
    RVec cs(samples), rots(samples, std::nan(""));
    for (int i = 0; i < samples; ++i) {
        cs[i] = c_min + (c_max - c_min) * i / (samples - 1);
        auto rot = rotation_number(2, cs[i], 1.0, nullptr);
        if (rot) rots[i] = *rot;
    }
    std::optional<ClosedCurveHit> best;
    for (int i = 0; i + 1 < samples; ++i) {
        if (!std::isfinite(rots[i]) || !std::isfinite(rots[i + 1])) continue;
        double lo = std::min(rots[i], rots[i + 1]);
        double hi = std::max(rots[i], rots[i + 1]);
        if (hi - lo < 1e-12) continue;
        for (long q = 1; q <= 32; ++q) {
            long pmin = static_cast<long>(std::floor(lo * q)) + 1;
            long pmax = static_cast<long>(std::ceil(hi * q)) - 1;
            for (long p = pmin; p <= pmax; ++p) {
                if (std::gcd(std::abs(p), q) != 1) continue;
                double target = static_cast<double>(p) / q;
                if (!(target > lo && target < hi)) continue;
                double a = cs[i], b = cs[i + 1];
                double fa = rots[i] - target;
                for (int it = 0; it < 60; ++it) {
                    double m = 0.5 * (a + b);
                    auto rm = rotation_number(2, m, 1.0, nullptr);
                    if (!rm) break;
                    double fm = *rm - target;
                    if ((fm < 0) == (fa < 0)) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                double c_hit = 0.5 * (a + b);
                if (best && std::abs(best->curve.target_c - mid) <=
                                std::abs(c_hit - mid))
                    continue;
                PlanarCurve curve = make_circle(1.0);
                if (!rotation_number(2, c_hit, 1.0, &curve)) continue;
                try {
                    ClosureResult cl = detect_closure(curve, tol);
                    if (cl.closed) best = ClosedCurveHit{curve, cl, 1.0};
                } catch (const NeedsMoreIntegration& e) {
                    PlanarCurve longer = make_constantA(2, c_hit, 1.0, kPi / 2.0,
                                                        e.suggested_length);
                    ClosureResult cl = detect_closure(longer, tol);
                    if (cl.closed) best = ClosedCurveHit{longer, cl, 1.0};
                }
            }
        }
    }
    return best;
}

}  // namespace lagmin
