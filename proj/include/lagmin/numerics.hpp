#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "lagmin/types.hpp"

namespace lagmin {

// Dense complex matrix for the small frames this library works with
// (tangent frames in C^n, n <= 8). Row-major.
class ComplexMatrix {
public:
    static constexpr int kMaxDim = 8;

    explicit ComplexMatrix(int dim);
    ComplexMatrix(int dim, const CVec& entries);

    int dim() const { return dim_; }

    Complex& at(int i, int j) { return entries_[i * dim_ + j]; }
    const Complex& at(int i, int j) const { return entries_[i * dim_ + j]; }

    void set_column(int j, const CVec& col);

    // Throws InvalidInput if any entry is NaN/Inf.
    void validate() const;

private:
    int dim_;
    std::array<Complex, kMaxDim * kMaxDim> entries_;
};

// Determinant by LU with partial pivoting (modulus pivot).
Complex det_complex(const ComplexMatrix& m);

// Gram-Schmidt orthonormalization of the columns of a k x m complex
// matrix with respect to the real inner product Re(u, v).  Columns are
// processed in order; the orientation is therefore the column order.
// cols[j] has length k.  Throws DegenerateFrame if a column collapses
// below `floor`.
std::vector<CVec> orthonormalize_real(const std::vector<CVec>& cols,
                                      double floor = 1e-10);

// Hermitian inner product (u, v) = sum u_j conj(v_j).
inline Complex hermitian_inner(const CVec& u, const CVec& v) {
    Complex s(0.0, 0.0);
    for (size_t j = 0; j < u.size(); ++j) s += u[j] * std::conj(v[j]);
    return s;
}

// Real Gram matrix Re(cols_i, cols_j).
std::vector<RVec> gram_matrix(const std::vector<CVec>& cols);

inline double real_inner(const CVec& u, const CVec& v) {
    double s = 0.0;
    for (size_t j = 0; j < u.size(); ++j)
        s += u[j].real() * v[j].real() + u[j].imag() * v[j].imag();
    return s;
}

// 4th-order central difference d/dx f(x).
template <typename F>
auto fd_derivative(F&& f, double x, double h = 1e-3) {
    return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) /
           (12.0 * h);
}

// Partial derivative along one axis of a function of several reals.
template <typename F>
auto fd_partial(F&& f, const RVec& p, int axis, double h = 1e-3) {
    RVec q = p;
    auto eval = [&](double x) {
        q[axis] = x;
        return f(q);
    };
    return fd_derivative(eval, p[axis], h);
}

// 4th-order second derivative.
template <typename F>
auto fd_second(F&& f, double x, double h = 1e-3) {
    return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
            f(x - 2 * h)) /
           (12.0 * h * h);
}

// R/2piZ-valued samples along a line; unwrapping is always explicit.
struct AngleSeries {
    RVec samples;
    bool unwrapped = false;
};

// Removes the 2pi jumps of a finely sampled continuous angle function.
// Throws UnwrapAmbiguity when a raw increment is within `tol` of pi.
AngleSeries unwrap(const AngleSeries& a, double tol = 1e-9);

// Branch-matched angle: the representative of `raw` (mod 2pi) nearest
// to `reference`.
inline double match_branch(double raw, double reference) {
    return raw + kTwoPi * std::round((reference - raw) / kTwoPi);
}

// Adaptive Simpson quadrature of a real function, absolute target `tol`.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-11);

// Eigenvalues of a small symmetric matrix (Jacobi rotations), ascending.
RVec symmetric_eigenvalues(const std::vector<RVec>& m);

// Solve the n x n real symmetric positive definite system a x = b
// (Cholesky).  Used for metric inversions; n <= 8.
RVec solve_spd(const std::vector<RVec>& a, const RVec& b);

// Inverse of a small SPD matrix.
std::vector<RVec> invert_spd(const std::vector<RVec>& a);

// Continued-fraction rational approximation of x with denominator
// bound qmax; returns (p, q) coprime minimizing |x - p/q|.
std::pair<long, long> rational_approx(double x, long qmax);

}  // namespace lagmin
