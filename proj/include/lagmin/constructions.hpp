#pragma once

#include <memory>

#include "lagmin/curves.hpp"
#include "lagmin/legendrian.hpp"

namespace lagmin {

struct LagrangianSurface;

struct ProvenanceData {
    std::string kind;
    std::vector<PlanarCurve> curves;
    std::shared_ptr<LegendrianMap> psi, psi1, psi2;
    std::shared_ptr<LagrangianSurface> surface;
    int n1 = 0, n2 = 0;
};

// Immersion of an n-dimensional parameter box into C^n.
struct LagrangianImmersion {
    int dim = 0;  // n
    std::vector<Axis> axes;
    std::function<CVec(const RVec&)> value;
    // n Jacobian columns, each of length n (complex)
    std::function<std::vector<CVec>(const RVec&)> jacobian;
    std::string family;

    // Closed-form predictions (continuous in the parameters); empty when
    // the combinator has none for the given ingredients.
    std::function<double(const RVec&)> predicted_beta;
    std::function<std::vector<RVec>(const RVec&)> predicted_metric;
    std::function<double(const RVec&)> predicted_laplacian;

    std::shared_ptr<const ProvenanceData> provenance;
};

// Lagrangian surface in C^2 with component split (phi_1, phi_2),
// continuous component arguments and closed-form Lagrangian angle.
struct LagrangianSurface {
    LagrangianImmersion im;  // dim 2, ambient C^2
    std::function<double(const RVec&)> arg1, arg2;  // continuous arg phi_j
    std::function<double(const RVec&)> beta;        // continuous beta_phi
    // xi_3 + eta_3, the conformal factor of a gamma (.) alpha join
    std::function<double(const RVec&)> conformal_factor;
};

LagrangianImmersion product_of_curves(const std::vector<PlanarCurve>& curves);

LagrangianImmersion curve_times_legendrian(const PlanarCurve& alpha,
                                           const LegendrianMap& psi);

LagrangianImmersion cone(const LegendrianMap& psi, double s_min, double s_max);

LagrangianImmersion surface_times_two_legendrians(const LagrangianSurface& phi,
                                                  const LegendrianMap& psi1,
                                                  const LegendrianMap& psi2);

// Surface built as the product of two planar curves.
LagrangianSurface surface_from_curves(const PlanarCurve& c1,
                                      const PlanarCurve& c2);

// phi(s,t) = scale (cos s e^{it}, sin s e^{it}); the parallel-mean-
// curvature surface with minimal Legendrian factors.
LagrangianSurface surface_cor5_case3(double scale = 1.0, double margin = 1e-2);

// phi = gamma (.) alpha = (gamma_1 alpha_1, gamma_2 alpha_2), conformal.
// s_min/s_max restrict the curve parameter of gamma (NaN = full domain);
// component-argument fields are only available where the components do
// not vanish.
LagrangianSurface curve_join_surface(const LegendrianMap& gamma,
                                     const HyperbolicLegendrianCurve& alpha,
                                     double s_min = std::nan(""),
                                     double s_max = std::nan(""));

// Continuous Legendrian angle along a curve in S^3 (unwrapped over the
// curve's domain).
std::function<double(double)> beta_along_s3_curve(const LegendrianMap& gamma);
// Continuous Legendrian angle of a curve in H^3_1, taken with the
// Lorentzian determinant sign (arg of alpha_2 alpha_1' - alpha_1 alpha_2').
std::function<double(double)> beta_along_h31_curve(
    const HyperbolicLegendrianCurve& alpha);

struct CondSufficientSeries {
    RVec s_samples, c1_series;
    RVec t_samples, c2_series;
};

// Evaluates |gamma_1|^{n1-1}|gamma_2|^{n2-1} G_s along gamma and the
// analogous product along alpha; each series is constant exactly when
// the corresponding sufficient condition for div A_phi = 0 holds.
CondSufficientSeries check_cond_sufficient(const LegendrianMap& gamma,
                                           const HyperbolicLegendrianCurve& alpha,
                                           int n1, int n2, int samples = 100);

// Symplectic residual |omega(d_i Phi, d_j Phi)| maximized over i < j.
double symplectic_residual(const LagrangianImmersion& im, const RVec& p);

}  // namespace lagmin
