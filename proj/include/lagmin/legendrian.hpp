#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "lagmin/curves.hpp"
#include "lagmin/numerics.hpp"
#include "lagmin/ode.hpp"
#include "lagmin/types.hpp"

namespace lagmin {

struct Axis {
    double a = 0.0, b = 1.0;
    bool periodic = false;
};

// Immersion of a parameter box into S^{2k-1} subset C^k (intrinsic
// dimension m = k-1).  Immutable; evaluators pure and re-entrant.
struct LegendrianMap {
    int ambient_dim = 0;   // k
    int intrinsic_dim = 0; // m
    std::vector<Axis> axes;
    std::function<CVec(const RVec&)> value;
    // m Jacobian columns, each of length k
    std::function<std::vector<CVec>(const RVec&)> jacobian;
    std::string family;

    // Continuous closed-form Legendrian angle, when the family has one.
    std::function<double(const RVec&)> beta_closed;
    // Constant Laplacian of beta when known (0 for C-minimal families).
    std::optional<double> beta_laplacian;
};

// Legendrian curve in the unit anti de Sitter space H^3_1 in C^2.
struct HyperbolicLegendrianCurve {
    std::function<Complex(double)> a1, a2;   // components
    std::function<Complex(double)> d1, d2;   // derivatives
    double dom_a = 0.0, dom_b = 0.0;
    std::string family;
    double q = 0.0, r = 0.0;  // alpha_{q,r}
    double delta = 0.0;       // alpha_delta
};

// Totally geodesic S^m in S^{2m+1} (spherical-coordinate chart,
// imaginary parts zero).
LegendrianMap geodesic_sphere(int m);

// psi(s,t) = (e^{is}, e^{it}, e^{-i(s+t)}) / sqrt(3), flat and minimal.
LegendrianMap flat_torus();

// 0-dimensional map to the point 1 in C (identity factor for joins).
LegendrianMap point_legendrian();

// gamma_phi(s) = (cos phi e^{i tan phi s}, sin phi e^{-i cot phi s}).
LegendrianMap gamma_phi(double phi, double t_end = kTwoPi * 8.0);

LegendrianMap gamma_n1n2(int n1, int n2);

// Integrates gamma_j' conj(gamma_j) = (-1)^{j-1} i e^{i mu t}
// conj(gamma_1)^{n1} conj(gamma_2)^{n2}; the relation determines
// gamma' by division wherever gamma_1, gamma_2 are nonzero.
LegendrianMap solve_gammamu(int n1, int n2, double mu, const CVec& gamma0,
                            double t_end);

// alpha_{q,r}(t) = (sqrt(q) e^{i sqrt(r/q) t}, sqrt(r) e^{i sqrt(q/r) t})
//                  / sqrt(r - q), 0 < q < r.
HyperbolicLegendrianCurve alpha_qr(long q, long r);

// alpha_delta(t) = (sinh d e^{i coth d t}, cosh d e^{i tanh d t}).
HyperbolicLegendrianCurve alpha_delta(double delta);

// Hopf projections onto S^2(1/2) / H^2(-1/2).
std::array<double, 3> hopf_project_sphere(Complex z, Complex w);
std::array<double, 3> hopf_project_hyperbolic(Complex z, Complex w);

// arg det_C { psi(x), e_1, ..., e_m } with (e_i) the Gram-Schmidt
// orthonormalization of the Jacobian columns (column order fixes the
// orientation).  Principal value in (-pi, pi].
double legendrian_angle(const LegendrianMap& m, const RVec& x);

// Psi(t,x,y) = (gamma_1(t) psi_1(x), gamma_2(t) psi_2(y)).
LegendrianMap join_legendrian(const LegendrianMap& gamma,
                              const LegendrianMap& psi1,
                              const LegendrianMap& psi2);

// Diagnostics used by tests and the verification engine.
double unit_norm_residual(const LegendrianMap& m, const RVec& x);
double contact_residual(const LegendrianMap& m, const RVec& x);

}  // namespace lagmin
