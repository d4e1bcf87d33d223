#include "hessreg/regularizer.hpp"

#include <cmath>
#include <stdexcept>

namespace hessreg {

SchattenOrder SchattenOrder::from_p(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("Schatten order must satisfy p >= 1");
    if (p == 1.0) return {1.0, kInfinityOrder};
    if (std::isinf(p)) return {kInfinityOrder, 1.0};
    if (p == 2.0) return {2.0, 2.0};
    return {p, p / (p - 1.0)};
}

double mixed_l1_sp(const HessianField& psi, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("mixed_l1_sp: p must satisfy p >= 1");
    double acc = 0.0;
    for (std::size_t n = 0; n < psi.size(); ++n) acc += schatten_norm(psi.pixel(n), p);
    return acc;
}

double mixed_linf_sq(const HessianField& omega, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("mixed_linf_sq: q must satisfy q >= 1");
    double best = 0.0;
    for (std::size_t n = 0; n < omega.size(); ++n)
        best = std::max(best, schatten_norm(omega.pixel(n), q));
    return best;
}

void dual_ball_project_inplace(HessianField& omega, double q) {
    for (std::size_t n = 0; n < omega.size(); ++n)
        omega.set_pixel(n, project_schatten_ball(omega.pixel(n), q, 1.0));
}

HessianField dual_ball_project(const HessianField& omega, double q) {
    HessianField out = omega;
    dual_ball_project_inplace(out, q);
    return out;
}

HessianField dual_witness(const HessianField& omega, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("dual_witness: q must satisfy q >= 1");
    std::size_t k = 0;
    double best = -1.0;
    for (std::size_t n = 0; n < omega.size(); ++n) {
        const double v = schatten_norm(omega.pixel(n), q);
        if (v > best) {  // strict: smallest index wins ties
            best = v;
            k = n;
        }
    }
    if (best <= 0.0) throw std::invalid_argument("dual_witness: zero field");

    const SpectralDecomp2 d = spectral_decompose(omega.pixel(k));
    const double s1 = std::abs(d.lambda1);
    const double s2 = std::abs(d.lambda2);
    double e1 = 0.0, e2 = 0.0;
    if (std::isinf(q)) {
        // Limit case p = 1: all weight on the top singular pair.
        e1 = 1.0;
    } else {
        if (s1 > 0.0) e1 = std::pow(s1 / best, q - 1.0);
        if (s2 > 0.0) e2 = std::pow(s2 / best, q - 1.0);
    }
    HessianField out(omega.width, omega.height);
    out.set_pixel(k, spectral_reconstruct({std::copysign(e1, d.lambda1),
                                           std::copysign(e2, d.lambda2), d.theta}));
    return out;
}

}  // namespace hessreg
