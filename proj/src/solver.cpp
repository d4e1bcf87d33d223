#include "hessreg/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hessreg/metrics.hpp"
#include "hessreg/rng.hpp"

namespace hessreg {

OperatorNormEstimate estimate_operator_norm(const ForwardModel& a, int iters, std::uint64_t seed) {
    CounterRng rng(seed);
    Image x(a.in_width(), a.in_height());
    for (double& v : x.data) v = rng.next_double() - 0.5;
    double xn = std::sqrt(norm2(x));
    if (xn == 0.0) return {0.0, true};
    for (double& v : x.data) v /= xn;

    double estimate = 0.0;
    double prev = 0.0;
    for (int it = 0; it < iters; ++it) {
        Image ax = a.adjoint(a.apply(x));
        const double n = std::sqrt(norm2(ax));
        if (n == 0.0) return {0.0, true};
        prev = estimate;
        estimate = n;
        for (std::size_t k = 0; k < x.size(); ++k) x.data[k] = ax.data[k] / n;
    }
    const bool converged = std::abs(estimate - prev) <= 1e-3 * (1.0 + estimate);
    return {estimate, converged};
}

double majorizer_alpha(const OperatorNormEstimate& est) {
    const double floor = 16.0 * std::numeric_limits<double>::epsilon();
    return 1.01 * std::max(est.value, floor);
}

double reconstruction_objective(const Image& x, const Image& y, const ForwardModel& a, double tau,
                                double p) {
    return 0.5 * norm2(y - a.apply(x)) + tau * mixed_l1_sp(apply_hessian(x), p);
}

Image mm_step(const Image& x0, const Image& y, const ForwardModel& a, double alpha,
              const DenoiseConfig& inner_cfg, std::optional<HessianField>* omega_state) {
    const Image z = x0 + (1.0 / alpha) * a.adjoint(y - a.apply(x0));
    DenoiseConfig cfg = inner_cfg;
    cfg.tau = inner_cfg.tau / alpha;
    if (omega_state && *omega_state) cfg.warm_start = **omega_state;
    DenoiseResult r = denoise(z, cfg);
    if (omega_state) *omega_state = std::move(r.omega_hat);
    return r.x_hat;
}

ReconstructionResult reconstruct(const Image& y, const ForwardModel& a,
                                 const ReconstructionConfig& cfg, const Image* ground_truth,
                                 const Image* degraded_for_isnr) {
    if (cfg.outer_iters < 1) throw std::invalid_argument("reconstruct: outer_iters must be positive");
    if (!(cfg.outer_tol >= 0.0)) throw std::invalid_argument("reconstruct: outer_tol must be nonnegative");
    if (cfg.continuation && !(cfg.continuation->factor > 0.0 && cfg.continuation->factor < 1.0))
        throw std::invalid_argument("reconstruct: continuation factor must be in (0, 1)");

    const auto t_start = std::chrono::steady_clock::now();
    const double alpha = majorizer_alpha(estimate_operator_norm(a, 200, cfg.seed));

    Image x = box_project(a.adjoint(y), cfg.box);
    Image x_prev = x;
    Image v = x;
    double t = 1.0;
    std::optional<HessianField> omega_state;  // warm start across outer iterations

    ReconstructionResult out;
    out.trace.entries.reserve(cfg.outer_iters);

    double tau_active = cfg.continuation ? cfg.continuation->tau_start : cfg.tau;
    double obj_prev = std::numeric_limits<double>::infinity();

    int k = 0;
    for (; k < cfg.outer_iters; ++k) {
        if (cfg.continuation) {
            tau_active = std::max(cfg.continuation->tau_start *
                                      std::pow(cfg.continuation->factor, static_cast<double>(k)),
                                  cfg.continuation->tau_floor);
        }
        DenoiseConfig inner;
        inner.tau = tau_active;
        inner.order = cfg.order;
        inner.box = cfg.box;
        inner.max_iters = cfg.inner_iters;

        const Image candidate = mm_step(v, y, a, alpha, inner, &omega_state);
        const double obj_candidate = reconstruction_objective(candidate, y, a, tau_active, cfg.order.p);
        const double obj_prev_iterate = reconstruction_objective(x, y, a, tau_active, cfg.order.p);

        x_prev = x;
        double obj;
        if (obj_candidate <= obj_prev_iterate) {
            x = candidate;
            obj = obj_candidate;
        } else {
            obj = obj_prev_iterate;  // keep x (monotone acceptance)
        }
        if (!std::isfinite(obj))
            throw std::runtime_error("reconstruct: non-finite objective at outer iteration " +
                                     std::to_string(k + 1));

        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        v = x + (t / t_next) * (candidate - x) + ((t - 1.0) / t_next) * (x - x_prev);
        t = t_next;

        TraceEntry e;
        e.iteration = k + 1;
        e.tau = tau_active;
        e.objective = obj;
        if (ground_truth && degraded_for_isnr)
            e.isnr_db = isnr(*ground_truth, *degraded_for_isnr, x);
        e.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        out.trace.entries.push_back(e);

        const double dx = std::sqrt(norm2(x - x_prev));
        const double nx = std::sqrt(norm2(x_prev));
        if (cfg.outer_tol > 0.0 && dx <= cfg.outer_tol * (nx > 0.0 ? nx : 1.0)) {
            ++k;
            break;
        }
        obj_prev = obj;
        (void)obj_prev;
    }

    out.trace.iterations_used = k;
    out.trace.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    out.x_hat = std::move(x);
    return out;
}

std::string trace_to_text(const ReconstructionTrace& t) {
    std::ostringstream os;
    os.precision(17);
    for (const TraceEntry& e : t.entries) {
        os << "iteration=" << e.iteration << " tau=" << e.tau << " objective=" << e.objective;
        if (e.isnr_db) os << " isnr_db=" << *e.isnr_db;
        os << " seconds=" << e.seconds << "\n";
    }
    return os.str();
}

}  // namespace hessreg
