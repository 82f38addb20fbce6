#include "lagmin/ode.hpp"

#include <algorithm>
#include <cmath>

namespace lagmin {

void Trajectory::push(double t, const RVec& y, const RVec& dy) {
    times_.push_back(t);
    states_.push_back(y);
    derivs_.push_back(dy);
}

size_t Trajectory::locate(double t) const {
    double span = times_.back() - times_.front();
    if (t < times_.front() - 1e-9 * span || t > times_.back() + 1e-9 * span)
        throw InvalidInput("Trajectory: query outside the integrated range");
    if (t <= times_.front()) return 0;
    if (t >= times_.back()) return times_.size() - 2;
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    size_t i = static_cast<size_t>(it - times_.begin()) - 1;
    return std::min(i, times_.size() - 2);
}

RVec Trajectory::at(double t) const {
    if (times_.size() == 1) return states_.front();
    size_t i = locate(t);
    double t0 = times_[i], t1 = times_[i + 1], dt = t1 - t0;
    double u = (t - t0) / dt;
    double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    double h10 = u * (1 - u) * (1 - u);
    double h01 = u * u * (3 - 2 * u);
    double h11 = u * u * (u - 1);
    const RVec &y0 = states_[i], &y1 = states_[i + 1];
    const RVec &d0 = derivs_[i], &d1 = derivs_[i + 1];
    RVec out(y0.size());
    for (size_t k = 0; k < out.size(); ++k)
        out[k] = h00 * y0[k] + h10 * dt * d0[k] + h01 * y1[k] + h11 * dt * d1[k];
    return out;
}

RVec Trajectory::derivative_at(double t) const {
    if (times_.size() == 1) return derivs_.front();
    size_t i = locate(t);
    double t0 = times_[i], t1 = times_[i + 1], dt = t1 - t0;
    double u = (t - t0) / dt;
    double g00 = (6 * u * u - 6 * u) / dt;
    double g10 = 3 * u * u - 4 * u + 1;
    double g01 = (6 * u - 6 * u * u) / dt;
    double g11 = 3 * u * u - 2 * u;
    const RVec &y0 = states_[i], &y1 = states_[i + 1];
    const RVec &d0 = derivs_[i], &d1 = derivs_[i + 1];
    RVec out(y0.size());
    for (size_t k = 0; k < out.size(); ++k)
        out[k] = g00 * y0[k] + g10 * d0[k] + g01 * y1[k] + g11 * d1[k];
    return out;
}

namespace {

void check_state(const RVec& y) {
    for (double v : y)
        if (!std::isfinite(v)) throw InvalidInput("integrate_ode: non-finite state");
}

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct DpStep {
    RVec y_new;
    RVec f_new;  // FSAL
    double error;  // scaled error norm
};

DpStep dp_step(const OdeSystem& sys, double t, const RVec& y, const RVec& f1,
               double h, double atol, double rtol) {
    const int n = sys.dim;
    RVec k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n);

    auto axpy = [&](const std::vector<std::pair<double, const RVec*>>& terms) {
        for (int i = 0; i < n; ++i) {
            double s = y[i];
            for (auto& [c, v] : terms) s += h * c * (*v)[i];
            tmp[i] = s;
        }
    };

    axpy({{a21, &f1}});
    sys.field(t + c2 * h, tmp, k2);
    axpy({{a31, &f1}, {a32, &k2}});
    sys.field(t + c3 * h, tmp, k3);
    axpy({{a41, &f1}, {a42, &k2}, {a43, &k3}});
    sys.field(t + c4 * h, tmp, k4);
    axpy({{a51, &f1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    sys.field(t + c5 * h, tmp, k5);
    axpy({{a61, &f1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    sys.field(t + h, tmp, k6);

    DpStep out;
    out.y_new.resize(n);
    for (int i = 0; i < n; ++i)
        out.y_new[i] = y[i] + h * (b1 * f1[i] + b3 * k3[i] + b4 * k4[i] +
                                   b5 * k5[i] + b6 * k6[i]);
    out.f_new.resize(n);
    sys.field(t + h, out.y_new, out.f_new);
    k7 = out.f_new;

    double err = 0.0;
    for (int i = 0; i < n; ++i) {
        double e = h * (e1 * f1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                        e6 * k6[i] + e7 * k7[i]);
        double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(out.y_new[i]));
        double r = e / sc;
        err += r * r;
    }
    out.error = std::sqrt(err / n);
    return out;
}

}  // namespace

Trajectory integrate_ode(const OdeSystem& sys, const RVec& y0, double t0,
                         double t1, const StepPolicy& policy) {
    if (!(t1 > t0)) throw InvalidParameter("integrate_ode: requires t1 > t0");
    check_state(y0);

    Trajectory traj;
    const int n = sys.dim;
    RVec y = y0, f(n);
    sys.field(t0, y, f);
    traj.push(t0, y, f);

    RVec inv_max(sys.invariants.size(), 0.0);
    auto monitor = [&](double t, const RVec& yy) {
        for (size_t k = 0; k < sys.invariants.size(); ++k)
            inv_max[k] = std::max(inv_max[k], std::abs(sys.invariants[k](t, yy)));
    };
    monitor(t0, y);

    if (policy.mode == StepPolicy::Mode::fixed) {
        // classical RK4
        double h = policy.h;
        long steps = std::lround(std::ceil((t1 - t0) / h - 1e-12));
        h = (t1 - t0) / static_cast<double>(steps);
        RVec k1(n), k2(n), k3(n), k4(n), tmp(n);
        double t = t0;
        for (long s = 0; s < steps; ++s) {
            sys.field(t, y, k1);
            for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
            sys.field(t + 0.5 * h, tmp, k2);
            for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
            sys.field(t + 0.5 * h, tmp, k3);
            for (int i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
            sys.field(t + h, tmp, k4);
            for (int i = 0; i < n; ++i)
                y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            t = (s + 1 == steps) ? t1 : t0 + (s + 1) * h;
            check_state(y);
            sys.field(t, y, f);
            traj.push(t, y, f);
            monitor(t, y);
        }
        traj.set_invariant_maxima(std::move(inv_max));
        return traj;
    }

    double t = t0;
    double h = std::min(policy.max_step, (t1 - t0) / 10.0);
    const double h_min = 1e-14 * std::max(1.0, std::abs(t1 - t0));
    while (t < t1) {
        h = std::min({h, policy.max_step, t1 - t});
        DpStep st = dp_step(sys, t, y, f, h, policy.abs_tol, policy.rel_tol);
        if (!std::isfinite(st.error)) {
            // overflowing stage values; retry with a much smaller step
            h *= 0.1;
            if (h < h_min)
                throw IntegrationError("integrate_ode: step underflow", t);
            continue;
        }
        if (st.error <= 1.0) {
            t += h;
            y = st.y_new;
            f = st.f_new;
            check_state(y);
            traj.push(t, y, f);
            monitor(t, y);
            double fac = 0.9 * std::pow(std::max(st.error, 1e-10), -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            double fac = 0.9 * std::pow(st.error, -0.2);
            h *= std::clamp(fac, 0.1, 0.9);
            if (h < h_min)
                throw IntegrationError("integrate_ode: step underflow", t);
        }
    }
    traj.set_invariant_maxima(std::move(inv_max));
    return traj;
}

}  // namespace lagmin
