#pragma once

#include <cmath>
#include <limits>

namespace hessreg {

/// Symmetric 2x2 matrix [[a, c], [c, b]].
struct SymMat2 {
    double a = 0.0;  // entry (1,1)
    double b = 0.0;  // entry (2,2)
    double c = 0.0;  // off-diagonal, stored once

    double frobenius() const { return std::sqrt(a * a + b * b + 2.0 * c * c); }
};

inline SymMat2 operator+(const SymMat2& x, const SymMat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c}; }
inline SymMat2 operator-(const SymMat2& x, const SymMat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c}; }
inline SymMat2 operator*(double s, const SymMat2& x) { return {s * x.a, s * x.b, s * x.c}; }

/// tr(y^T x) for symmetric arguments; the off-diagonal counts twice.
inline double trace_dot(const SymMat2& x, const SymMat2& y) {
    return x.a * y.a + x.b * y.b + 2.0 * x.c * y.c;
}

/// Eigen-decomposition Q(theta) diag(lambda1, lambda2) Q(theta)^T with
/// |lambda1| >= |lambda2|; ties broken with the positive eigenvalue first.
struct SpectralDecomp2 {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double theta = 0.0;  // radians; first eigenvector is (cos theta, sin theta)
};

/// Singular values sorted in decreasing order.
struct SingularPair {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
};

constexpr double kInfinityOrder = std::numeric_limits<double>::infinity();

SpectralDecomp2 spectral_decompose(const SymMat2& m);
SymMat2 spectral_reconstruct(const SpectralDecomp2& d);

SingularPair singular_values(const SymMat2& m);

/// (sigma1^p + sigma2^p)^(1/p); spectral norm for p = infinity.
double schatten_norm(const SymMat2& m, double p);

double lq_norm(const SingularPair& v, double q);

/// Euclidean projection of a sorted nonnegative pair onto {w >= 0 : ||w||_q <= rho}.
SingularPair project_lq_ball(const SingularPair& v, double q, double rho);

/// Unit-radius l1-ball soft threshold for a sorted nonnegative pair.
/// Exposed separately so the analytic rule can be checked against the
/// generic root-finder.
double l1_threshold(const SingularPair& v);

/// Generic lq-ball projection via the Lagrange dual root-finder (any q >= 1).
SingularPair project_lq_ball_rootfind(const SingularPair& v, double q, double rho);

/// Projection onto {X symmetric : ||X||_Sq <= rho}: spectral decomposition,
/// lq projection of the singular values, reconstruction. Frobenius (q = 2)
/// skips the decomposition and scales the matrix directly.
SymMat2 project_schatten_ball(const SymMat2& m, double q, double rho);

}  // namespace hessreg
