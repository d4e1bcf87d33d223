#include "hessreg/linalg2x2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hessreg {

namespace {

void check_order(double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("Schatten/lq order must satisfy q >= 1");
}

}  // namespace

SpectralDecomp2 spectral_decompose(const SymMat2& m) {
    const double fro = m.frobenius();
    // Near-isotropic input: treat as diagonal to keep theta stable.
    if (std::abs(m.c) <= 1e-14 * fro && std::abs(m.a - m.b) <= 1e-14 * fro) {
        return {m.a, m.b, 0.0};
    }
    const double mean = 0.5 * (m.a + m.b);
    const double half_gap = 0.5 * (m.a - m.b);
    const double radius = std::hypot(half_gap, m.c);
    double l1 = mean + radius;
    double l2 = mean - radius;
    double theta = 0.5 * std::atan2(2.0 * m.c, m.a - m.b);
    // l1 >= l2 by construction; reorder by magnitude, positive first on ties.
    if (std::abs(l2) > std::abs(l1)) {
        std::swap(l1, l2);
        theta += (theta > 0.0) ? -M_PI_2 : M_PI_2;
    }
    return {l1, l2, theta};
}

SymMat2 spectral_reconstruct(const SpectralDecomp2& d) {
    const double ct = std::cos(d.theta);
    const double st = std::sin(d.theta);
    return {d.lambda1 * ct * ct + d.lambda2 * st * st,
            d.lambda1 * st * st + d.lambda2 * ct * ct,
            (d.lambda1 - d.lambda2) * ct * st};
}

SingularPair singular_values(const SymMat2& m) {
    const SpectralDecomp2 d = spectral_decompose(m);
    double s1 = std::abs(d.lambda1);
    double s2 = std::abs(d.lambda2);
    if (s2 > s1) std::swap(s1, s2);
    return {s1, s2};
}

double lq_norm(const SingularPair& v, double q) {
    check_order(q);
    if (std::isinf(q)) return std::max(v.sigma1, v.sigma2);
    if (q == 1.0) return v.sigma1 + v.sigma2;
    if (q == 2.0) return std::hypot(v.sigma1, v.sigma2);
    return std::pow(std::pow(v.sigma1, q) + std::pow(v.sigma2, q), 1.0 / q);
}

double schatten_norm(const SymMat2& m, double p) {
    check_order(p);
    if (p == 2.0) return m.frobenius();
    return lq_norm(singular_values(m), p);
}

double l1_threshold(const SingularPair& v) {
    if (v.sigma1 <= 1.0 - v.sigma2) return 0.0;
    if (v.sigma1 <= 1.0 + v.sigma2) return 0.5 * (v.sigma1 + v.sigma2 - 1.0);
    return v.sigma1 - 1.0;
}

namespace {

// Solve w + mu * w^(q-1) = v for w in [0, v]; monotone increasing in w.
double solve_scalar(double v, double mu, double q) {
    if (v <= 0.0) return 0.0;
    if (q == 1.0) return std::max(v - mu, 0.0);
    if (q == 2.0) return v / (1.0 + mu);
    double lo = 0.0, hi = v;
    for (int it = 0; it < 200; ++it) {
        const double w = 0.5 * (lo + hi);
        const double f = w + mu * std::pow(w, q - 1.0) - v;
        (f < 0.0 ? lo : hi) = w;
        if (hi - lo <= 1e-16 * v) break;
    }
    double w = 0.5 * (lo + hi);
    // Newton polish; the derivative 1 + mu (q-1) w^(q-2) is >= 1 for q >= 2
    // and finite away from 0 otherwise.
    for (int it = 0; it < 4 && w > 0.0; ++it) {
        const double f = w + mu * std::pow(w, q - 1.0) - v;
        const double df = 1.0 + mu * (q - 1.0) * std::pow(w, q - 2.0);
        const double step = f / df;
        if (!std::isfinite(step)) break;
        w = std::clamp(w - step, 0.0, v);
    }
    return w;
}

}  // namespace

SingularPair project_lq_ball_rootfind(const SingularPair& v, double q, double rho) {
    check_order(q);
    if (!(rho > 0.0)) throw std::invalid_argument("projection radius must be positive");
    if (lq_norm(v, q) <= rho) return v;
    // Bisect the multiplier mu > 0 so that ||w(mu)||_q = rho.
    double lo = 0.0;
    double hi = 1.0;
    auto norm_at = [&](double mu) {
        return lq_norm({solve_scalar(v.sigma1, mu, q), solve_scalar(v.sigma2, mu, q)}, q);
    };
    while (norm_at(hi) > rho) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mu = 0.5 * (lo + hi);
        const double n = norm_at(mu);
        if (std::abs(n - rho) <= 1e-13 * rho) { lo = hi = mu; break; }
        (n > rho ? lo : hi) = mu;
    }
    const double mu = 0.5 * (lo + hi);
    return {solve_scalar(v.sigma1, mu, q), solve_scalar(v.sigma2, mu, q)};
}

SingularPair project_lq_ball(const SingularPair& v, double q, double rho) {
    check_order(q);
    if (!(rho > 0.0)) throw std::invalid_argument("projection radius must be positive");
    if (std::isinf(q)) return {std::min(v.sigma1, rho), std::min(v.sigma2, rho)};
    if (q == 2.0) {
        const double n = std::hypot(v.sigma1, v.sigma2);
        if (n <= rho) return v;
        const double s = rho / n;
        return {s * v.sigma1, s * v.sigma2};
    }
    if (q == 1.0) {
        // Analytic threshold is stated for the unit ball; rescale through it.
        const SingularPair scaled{v.sigma1 / rho, v.sigma2 / rho};
        const double gamma = l1_threshold(scaled);
        return {rho * std::max(scaled.sigma1 - gamma, 0.0),
                rho * std::max(scaled.sigma2 - gamma, 0.0)};
    }
    return project_lq_ball_rootfind(v, q, rho);
}

SymMat2 project_schatten_ball(const SymMat2& m, double q, double rho) {
    check_order(q);
    if (!(rho > 0.0)) throw std::invalid_argument("projection radius must be positive");
    if (q == 2.0) {
        const double n = m.frobenius();
        if (n <= rho) return m;
        return (rho / n) * m;
    }
    const SpectralDecomp2 d = spectral_decompose(m);
    const double s1 = std::abs(d.lambda1);
    const double s2 = std::abs(d.lambda2);
    if (lq_norm({s1, s2}, q) <= rho) return m;
    const SingularPair w = project_lq_ball({s1, s2}, q, rho);
    // Signs live in V; reconstruction re-applies them to the projected values.
    return spectral_reconstruct({std::copysign(w.sigma1, d.lambda1),
                                 std::copysign(w.sigma2, d.lambda2), d.theta});
}

}  // namespace hessreg
