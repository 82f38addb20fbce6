#pragma once

#include <functional>

#include "lagmin/types.hpp"

namespace lagmin {

struct OdeSystem {
    int dim = 0;
    // (t, y) -> dy/dt
    std::function<void(double, const RVec&, RVec&)> field;
    // optional conserved-quantity residual monitors, (t, y) -> residual
    std::vector<std::function<double(double, const RVec&)>> invariants;
};

struct StepPolicy {
    enum class Mode { fixed, adaptive };
    Mode mode = Mode::adaptive;
    double h = 1e-3;       // fixed mode step
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double max_step = 0.01;  // bound on accepted steps (keeps dense output tight)
};

// Dense trajectory: accepted nodes with stored derivatives, cubic
// Hermite interpolation in between.
class Trajectory {
public:
    double t_begin() const { return times_.front(); }
    double t_end() const { return times_.back(); }
    size_t size() const { return times_.size(); }
    double time(size_t i) const { return times_[i]; }
    const RVec& state(size_t i) const { return states_[i]; }

    RVec at(double t) const;
    RVec derivative_at(double t) const;

    // max over nodes of each declared invariant monitor
    const RVec& invariant_maxima() const { return invariant_max_; }

    void push(double t, const RVec& y, const RVec& dy);
    void set_invariant_maxima(RVec m) { invariant_max_ = std::move(m); }

private:
    size_t locate(double t) const;
    std::vector<double> times_;
    std::vector<RVec> states_;
    std::vector<RVec> derivs_;
    RVec invariant_max_;
};

Trajectory integrate_ode(const OdeSystem& sys, const RVec& y0, double t0,
                         double t1, const StepPolicy& policy = {});

}  // namespace lagmin
