#pragma once

#include <string>

#include "lagmin/recipe.hpp"

namespace lagmin {

// All emitters return complete file contents (UTF-8, '.' decimal,
// header row for CSV) and are byte-deterministic for fixed inputs.

// s, re, im, kappa, G_alpha, A_alpha.  The angle columns are nan when
// the curve passes through the origin.
std::string csv_planar_curve(const PlanarCurve& c, int ambient_n, int samples);

// t, re1, im1, re2, im2, beta
std::string csv_s3_curve(const LegendrianMap& gamma, int samples);
std::string csv_h31_curve(const HyperbolicLegendrianCurve& alpha, int samples);

// t, x1, x2, x3 (Hopf projection onto S^2(1/2) or H^2(-1/2))
std::string csv_hopf_sphere(const LegendrianMap& gamma, int samples);
std::string csv_hopf_hyperbolic(const HyperbolicLegendrianCurve& alpha,
                                int samples);

// parameter columns, then interleaved re/im per complex coordinate
std::string csv_immersion(const LagrangianImmersion& im, const GridSpec& spec);

// node coordinates, |Delta beta| and covariant Hessian norm per node
// (nan off the interior)
std::string csv_residuals(const AngleField& field,
                          const std::vector<double>& hessian);

// plain-text verification report, stable key order
std::string report_text(const VerificationReport& rep);

// standalone SVG polyline through the given planar points, 1:1 aspect
std::string svg_curve(const std::vector<std::pair<double, double>>& pts,
                      double stroke_width = 0.5);

// standalone SVG heatmap of a scalar field on a 2D grid (row-major,
// counts[0] x counts[1]); nan cells are left unfilled
std::string svg_heatmap(const std::vector<int>& counts,
                        const std::vector<double>& values);

}  // namespace lagmin
