#pragma once

#include <map>
#include <optional>

#include "lagmin/constructions.hpp"

namespace lagmin {

struct GridSpec {
    std::vector<int> counts;  // nodes per axis
};

enum class ExecutionMode { serial, parallel };

struct MetricSample {
    RVec point;
    std::vector<RVec> g, ginv;
    double sqrt_det = 0.0;
    double min_eigenvalue = 0.0;
    // christoffel[k][i][j]
    std::vector<std::vector<RVec>> christoffel;
};

MetricSample induced_metric(const LagrangianImmersion& im, const RVec& p);

// Structured grid over the immersion axes.  Periodic axes wrap
// (spacing (b-a)/N); non-periodic axes include both endpoints
// (spacing (b-a)/(N-1)) and differential quantities are only
// defined on interior nodes (2-node margin).
struct Grid {
    std::vector<Axis> axes;
    std::vector<int> counts;
    std::vector<double> h;

    size_t size() const;
    std::vector<int> unflatten(size_t id) const;
    size_t flatten(const std::vector<int>& idx) const;
    RVec point(const std::vector<int>& idx) const;
    bool interior(const std::vector<int>& idx, int margin = 2) const;
    // neighbor offset along one axis; returns false when it leaves a
    // non-periodic axis range
    bool shift(std::vector<int> idx, int axis, int off,
               std::vector<int>& out) const;
};

Grid make_grid(const std::vector<Axis>& axes, const GridSpec& spec);

struct AngleField {
    Grid grid;
    std::vector<double> beta;        // unwrapped, per node
    std::vector<RVec> grad;          // contravariant components g^{ij} d_j beta
    std::vector<double> laplacian;   // NaN off the interior
    std::vector<int> winding;        // per axis (0 for non-periodic)
};

// Generic target for grid angle analysis (Lagrangian immersions and
// Legendrian maps share the machinery).
struct AngleProblem {
    std::vector<Axis> axes;
    int dim = 0;
    std::function<double(const RVec&)> angle;  // principal value
    std::function<std::vector<RVec>(const RVec&)> metric;
};

AngleProblem angle_problem(const LagrangianImmersion& im);
AngleProblem angle_problem(const LegendrianMap& psi);

AngleField angle_field(const AngleProblem& prob, const GridSpec& spec,
                       ExecutionMode mode = ExecutionMode::parallel);

inline AngleField lagrangian_angle_field(const LagrangianImmersion& im,
                                         const GridSpec& spec,
                                         ExecutionMode mode = ExecutionMode::parallel) {
    return angle_field(angle_problem(im), spec, mode);
}

// H = J grad(beta) / n, ambient coordinates, by local FD of the angle.
CVec mean_curvature(const LagrangianImmersion& im, const RVec& p);

// Independent oracle: trace of the second fundamental form over n
// (normal projection of the FD Hessian of the position vector).
CVec mean_curvature_oracle(const LagrangianImmersion& im, const RVec& p);

// Frobenius norm of the covariant Hessian of beta per interior node.
std::vector<double> covariant_hessian_beta(const LagrangianImmersion& im,
                                           const AngleField& field,
                                           ExecutionMode mode = ExecutionMode::parallel);

struct DivAField {
    Grid grid;
    std::vector<double> div;  // NaN off the interior
    double max_abs = 0.0;
};

// A_phi = |phi_1|^{n1-1} |phi_2|^{n2-1} grad_g G_phi and its metric
// divergence; uses the conformal shortcut when the surface carries a
// conformal factor.
DivAField div_A_phi(const LagrangianSurface& surf, int n1, int n2,
                    const GridSpec& spec,
                    ExecutionMode mode = ExecutionMode::parallel);

struct CheckResult {
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool ran = false;
};

struct Tolerances {
    double symplectic = 1e-8;
    double contact = 1e-7;
    double metric_match = 1e-7;
    double angle_match = 1e-7;
    double laplacian_match = 1e-5;
    double hminimal = 1e-6;
    double parallel_h = 1e-5;
    double div_a = 1e-5;
};

struct VerificationReport {
    std::vector<int> grid_counts;
    std::vector<std::pair<std::string, CheckResult>> checks;
    std::vector<std::string> notes;
    double mean_laplacian = 0.0;

    // verdict over every ran check except parallelH, which only
    // classifies the example (parallel vs merely H-minimal)
    bool all_pass() const;
    const CheckResult* find(const std::string& name) const;
};

VerificationReport certify(const LagrangianImmersion& im, const GridSpec& spec,
                           const Tolerances& tol = {},
                           ExecutionMode mode = ExecutionMode::parallel);

// C-minimality certification of a Legendrian map (contact, unit norm,
// Legendrian-angle harmonicity).
VerificationReport certify_legendrian(const LegendrianMap& psi,
                                      const GridSpec& spec,
                                      const Tolerances& tol = {},
                                      ExecutionMode mode = ExecutionMode::parallel);

}  // namespace lagmin
