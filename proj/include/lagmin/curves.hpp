#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "lagmin/numerics.hpp"
#include "lagmin/ode.hpp"
#include "lagmin/types.hpp"

namespace lagmin {

enum class CurveFamily { line, circle, cornu, constant_a, sampled };

// Dense unwrapped samples of an R/2piZ-valued function along an
// interval, anchored to the principal branch at the interval midpoint.
// Queries return the branch representative of a raw value nearest to
// the interpolated cache.
struct AngleCache {
    double s0 = 0.0, s1 = 0.0, ds = 0.0;
    RVec vals;

    double query(double s, double raw) const;
};

AngleCache build_angle_cache(const std::function<double(double)>& raw_angle,
                             double a, double b, int samples);

// Planar curve s -> alpha(s) in C.  Immutable after construction; all
// evaluators are pure and re-entrant.
class PlanarCurve {
public:
    CurveFamily family() const { return family_; }
    double domain_begin() const { return dom_a_; }
    double domain_end() const { return dom_b_; }
    bool arclength() const { return arclength_; }

    Complex value(double s) const { return value_(s); }
    Complex deriv(double s) const { return deriv_(s); }
    Complex second_deriv(double s) const { return second_(s); }

    // Signed curvature.  Throws SingularPoint when |alpha'| < 1e-12.
    double curvature(double s) const;
    // d(kappa)/ds, used by the product-immersion Laplacian formula.
    double curvature_deriv(double s) const;

    // Unwrapped arg(alpha) / arg(alpha'), anchored at the domain midpoint.
    double arg_value(double s) const;
    double arg_deriv(double s) const;

    // family parameters (meaningful per family, see factories)
    double radius = 0.0;       // circle
    double lambda = 0.0;       // cornu
    int ambient_n = 0;         // constant_a
    double target_c = 0.0;     // constant_a
    double r0 = 0.0, theta0 = 0.0;

    const Trajectory* trajectory() const { return traj_.get(); }

    // construction helpers (used by the factories below)
    PlanarCurve(CurveFamily fam, std::function<Complex(double)> value,
                std::function<Complex(double)> deriv,
                std::function<Complex(double)> second,
                std::function<double(double)> kappa, double a, double b,
                bool arclength);

    void attach_trajectory(std::shared_ptr<Trajectory> t) { traj_ = std::move(t); }

private:
    void ensure_caches() const;

    CurveFamily family_;
    std::function<Complex(double)> value_, deriv_, second_;
    std::function<double(double)> kappa_;
    double dom_a_, dom_b_;
    bool arclength_;
    std::shared_ptr<Trajectory> traj_;
    mutable std::shared_ptr<AngleCache> arg_val_cache_, arg_der_cache_;
};

PlanarCurve make_line(Complex p0, Complex direction, double a = -5.0,
                      double b = 5.0);
// Circle centered at the origin, alpha(s) = R e^{is/R}.
PlanarCurve make_circle(double radius);
PlanarCurve make_cornu(double lambda, double a = -6.0, double b = 6.0);

// Curve with A_alpha == c in ambient dimension n, integrated from
// alpha(0) = r0, heading theta0.  Throws OriginCrossing if the
// trajectory reaches |alpha| < 1e-6 (domain truncated at the error).
PlanarCurve make_constantA(int n, double c, double r0, double theta0,
                           double length = 60.0);

// G_alpha = arg alpha' + (n-1) arg alpha, unwrapped along the domain.
double g_alpha(const PlanarCurve& c, int n, double s);
// d/ds G_alpha, analytic: |alpha'| kappa + (n-1)<alpha',J alpha>/|alpha|^2.
double g_alpha_deriv(const PlanarCurve& c, int n, double s);

// Operative A_alpha = |alpha|^{n-1} G'_alpha.
double a_alpha(const PlanarCurve& c, int n, double s);
// The alternative expression |alpha|^{2n-2} kappa_{alpha^n}.  Since
// arg((alpha^n)') = G_alpha, this equals a_alpha / n for unit-speed
// curves: the two normalizations differ by the factor n.
double a_alpha_kappa(const PlanarCurve& c, int n, double s);

struct ClosureResult {
    bool closed = false;
    double period = 0.0;
    double return_gap = 0.0;
    long p = 0, q = 0;  // rational approximation of the apsidal rotation / 2pi
};

ClosureResult detect_closure(const PlanarCurve& c, double tol = 1e-5);

struct ClosedCurveHit {
    PlanarCurve curve;
    ClosureResult closure;
    double r0;
};

// Shooting scan over initial radii for a closed constant-A curve
// (n >= 3; scaling changes A there, so r0 steers the shape).
std::optional<ClosedCurveHit> scan_closed_constantA(int n, double c,
                                                    double r0_min,
                                                    double r0_max,
                                                    double tol = 1e-5,
                                                    int samples = 25);

// n = 2 only: A is invariant under dilations, so r0 is pure gauge and
// the apsidal rotation depends on the constant alone.  Shoots over c
// and returns the closed curve whose constant is nearest the window
// midpoint.
std::optional<ClosedCurveHit> scan_closed_constantA2(double c_min,
                                                     double c_max,
                                                     double tol = 1e-5,
                                                     int samples = 25);

}  // namespace lagmin
