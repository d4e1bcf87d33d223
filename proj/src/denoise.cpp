#include "hessreg/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hessreg {

bool BoxConstraint::is_unbounded() const { return std::isinf(lower) && std::isinf(upper); }

void BoxConstraint::validate() const {
    if (!(lower <= upper)) throw std::invalid_argument("BoxConstraint: lower > upper");
}

Image box_project(const Image& x, const BoxConstraint& box) {
    Image out = x;
    if (box.is_unbounded()) return out;
    for (double& v : out.data) v = std::clamp(v, box.lower, box.upper);
    return out;
}

double dual_objective(const HessianField& omega, const Image& z, double tau, const BoxConstraint& box) {
    Image v = z - tau * apply_adjoint(omega);
    const Image pv = box_project(v, box);
    return 0.5 * norm2(pv - v) + 0.5 * norm2(z) - 0.5 * norm2(v);
}

HessianField dual_gradient(const HessianField& omega, const Image& z, double tau, const BoxConstraint& box) {
    if (omega.width != z.width || omega.height != z.height)
        throw std::invalid_argument("dual_gradient: dimension mismatch");
    Image v = z - tau * apply_adjoint(omega);
    return field_scale(tau, apply_hessian(box_project(v, box)));
}

double primal_objective(const Image& x, const Image& z, double tau, double p) {
    return 0.5 * norm2(x - z) + tau * mixed_l1_sp(apply_hessian(x), p);
}

namespace {

Image recover_primal(const HessianField& omega, const Image& z, double tau, const BoxConstraint& box) {
    return box_project(z - tau * apply_adjoint(omega), box);
}

bool finite(const HessianField& f) {
    for (std::size_t n = 0; n < f.size(); ++n)
        if (!std::isfinite(f.d11[n]) || !std::isfinite(f.d22[n]) || !std::isfinite(f.d12[n]))
            return false;
    return true;
}

}  // namespace

DenoiseResult denoise(const Image& z, const DenoiseConfig& cfg) {
    cfg.box.validate();
    if (!(cfg.tau >= 0.0)) throw std::invalid_argument("denoise: tau must be nonnegative");
    if (cfg.max_iters < 1) throw std::invalid_argument("denoise: max_iters must be positive");

    DenoiseResult res;
    if (cfg.tau == 0.0) {
        // Prox of the zero functional: plain clamp.
        res.x_hat = box_project(z, cfg.box);
        res.omega_hat = HessianField(z.width, z.height);
        res.primal_values.push_back(primal_objective(res.x_hat, z, 0.0, cfg.order.p));
        res.dual_values = res.primal_values;
        return res;
    }

    const double tau = cfg.tau;
    const double q = cfg.order.q;
    const double step = 1.0 / (64.0 * tau * tau);

    HessianField omega_prev =
        (cfg.warm_start && cfg.warm_start->width == z.width && cfg.warm_start->height == z.height)
            ? *cfg.warm_start
            : HessianField(z.width, z.height);
    HessianField xi = omega_prev;
    double t = 1.0;

    HessianField best_omega = omega_prev;
    double best_dual = dual_objective(best_omega, z, tau, cfg.box);
    double prev_dual = best_dual;

    for (int k = 0; k < cfg.max_iters; ++k) {
        HessianField omega = field_add(xi, field_scale(step, dual_gradient(xi, z, tau, cfg.box)));
        dual_ball_project_inplace(omega, q);
        if (!finite(omega))
            throw std::runtime_error("denoise: non-finite dual iterate at iteration " + std::to_string(k + 1));

        const double s = dual_objective(omega, z, tau, cfg.box);
        if (s > best_dual) {
            best_dual = s;
            best_omega = omega;
        }
        res.dual_values.push_back(s);
        res.primal_values.push_back(
            primal_objective(recover_primal(omega, z, tau, cfg.box), z, tau, cfg.order.p));

        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        xi = field_add(omega, field_scale((t - 1.0) / t_next, field_sub(omega, omega_prev)));
        omega_prev = omega;
        t = t_next;

        if (cfg.tol > 0.0 && std::abs(s - prev_dual) < cfg.tol * (1.0 + std::abs(prev_dual))) break;
        prev_dual = s;
    }

    res.omega_hat = best_omega;
    res.x_hat = recover_primal(best_omega, z, tau, cfg.box);
    return res;
}

}  // namespace hessreg
