#include "lagmin/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lagmin {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim)
        throw InvalidInput("ComplexMatrix: dim must be in [1, 8], got " +
                           std::to_string(dim));
    entries_.fill(Complex(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int dim, const CVec& entries) : ComplexMatrix(dim) {
    if (static_cast<int>(entries.size()) != dim * dim)
        throw InvalidInput("ComplexMatrix: entry count mismatch");
    std::copy(entries.begin(), entries.end(), entries_.begin());
    validate();
}

void ComplexMatrix::set_column(int j, const CVec& col) {
    if (static_cast<int>(col.size()) != dim_)
        throw InvalidInput("ComplexMatrix::set_column: length mismatch");
    for (int i = 0; i < dim_; ++i) at(i, j) = col[i];
}

void ComplexMatrix::validate() const {
    for (int i = 0; i < dim_ * dim_; ++i) {
        const Complex& z = entries_[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidInput("ComplexMatrix: non-finite entry");
    }
}

Complex det_complex(const ComplexMatrix& m) {
    m.validate();
    const int n = m.dim();
    std::array<Complex, ComplexMatrix::kMaxDim * ComplexMatrix::kMaxDim> a;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i * n + j] = m.at(i, j);

    Complex det(1.0, 0.0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a[k * n + k]);
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(a[i * n + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return Complex(0.0, 0.0);
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
            det = -det;
        }
        det *= a[k * n + k];
        for (int i = k + 1; i < n; ++i) {
            Complex f = a[i * n + k] / a[k * n + k];
            for (int j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
        }
    }
    return det;
}

std::vector<CVec> orthonormalize_real(const std::vector<CVec>& cols,
                                      double floor) {
    std::vector<CVec> e;
    e.reserve(cols.size());
    for (const CVec& c : cols) {
        CVec v = c;
        // two passes of re-orthogonalization for stability
        for (int pass = 0; pass < 2; ++pass) {
            for (const CVec& u : e) {
                double p = real_inner(v, u);
                for (size_t j = 0; j < v.size(); ++j) v[j] -= p * u[j];
            }
        }
        double norm = std::sqrt(real_inner(v, v));
        if (norm < floor)
            throw DegenerateFrame("orthonormalize_real: rank-deficient frame");
        for (auto& z : v) z /= norm;
        e.push_back(std::move(v));
    }
    return e;
}

std::vector<RVec> gram_matrix(const std::vector<CVec>& cols) {
    const size_t m = cols.size();
    std::vector<RVec> g(m, RVec(m, 0.0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i; j < m; ++j)
            g[i][j] = g[j][i] = hermitian_inner(cols[i], cols[j]).real();
    return g;
}

AngleSeries unwrap(const AngleSeries& a, double tol) {
    AngleSeries out;
    out.samples.reserve(a.samples.size());
    out.unwrapped = true;
    if (a.samples.empty()) return out;
    out.samples.push_back(a.samples.front());
    for (size_t i = 1; i < a.samples.size(); ++i) {
        double jump = principal_angle(a.samples[i] - a.samples[i - 1]);
        if (std::abs(std::abs(jump) - kPi) < tol)
            throw UnwrapAmbiguity(
                "unwrap: increment within tolerance of pi at index " +
                std::to_string(i) + "; refine the sampling");
        out.samples.push_back(out.samples.back() + jump);
    }
    return out;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol) {
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = simpson(a, fa, b, fb, fm);
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

RVec symmetric_eigenvalues(const std::vector<RVec>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<RVec> a = m;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    RVec ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

namespace {

std::vector<RVec> cholesky(const std::vector<RVec>& a) {
    const int n = static_cast<int>(a.size());
    std::vector<RVec> l(n, RVec(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[i][j];
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (s <= 0.0)
                    throw SingularPoint("solve_spd: matrix not positive definite");
                l[i][j] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return l;
}

}  // namespace

RVec solve_spd(const std::vector<RVec>& a, const RVec& b) {
    const int n = static_cast<int>(a.size());
    auto l = cholesky(a);
    RVec y(n), x(n);
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= l[i][k] * y[k];
        y[i] = s / l[i][i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < n; ++k) s -= l[k][i] * x[k];
        x[i] = s / l[i][i];
    }
    return x;
}

std::vector<RVec> invert_spd(const std::vector<RVec>& a) {
    const int n = static_cast<int>(a.size());
    std::vector<RVec> inv(n, RVec(n, 0.0));
    for (int j = 0; j < n; ++j) {
        RVec e(n, 0.0);
        e[j] = 1.0;
        RVec col = solve_spd(a, e);
        for (int i = 0; i < n; ++i) inv[i][j] = col[i];
    }
    // symmetrize against rounding
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = 0.5 * (inv[i][j] + inv[j][i]);
            inv[i][j] = inv[j][i] = v;
        }
    return inv;
}

std::pair<long, long> rational_approx(double x, long qmax) {
    long best_p = std::lround(x), best_q = 1;
    double best_err = std::abs(x - static_cast<double>(best_p));
    // continued fraction convergents
    double v = x;
    long p0 = 1, q0 = 0, p1 = std::lround(std::floor(v)), q1 = 1;
    double frac = v - std::floor(v);
    for (int iter = 0; iter < 64 && q1 <= qmax; ++iter) {
        double err = std::abs(x - static_cast<double>(p1) / q1);
        if (err < best_err) {
            best_err = err;
            best_p = p1;
            best_q = q1;
        }
        if (frac < 1e-15) break;
        v = 1.0 / frac;
        long a = static_cast<long>(std::floor(v));
        frac = v - std::floor(v);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    long g = std::gcd(std::abs(best_p), best_q);
    if (g > 1) {
        best_p /= g;
        best_q /= g;
    }
    return {best_p, best_q};
}

}  // namespace lagmin
