#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hessreg/denoise.hpp"
#include "hessreg/forward.hpp"
#include "hessreg/image.hpp"

namespace hessreg {

struct OperatorNormEstimate {
    double value = 0.0;  // estimate of ||A^T A||
    bool converged = true;
};

/// Power iteration on A^T A from a seeded random start.
OperatorNormEstimate estimate_operator_norm(const ForwardModel& a, int iters = 200,
                                            std::uint64_t seed = 0);

/// 1.01 x max(estimate, machine floor); strict majorizer margin.
double majorizer_alpha(const OperatorNormEstimate& est);

struct ContinuationSchedule {
    double tau_start = 0.0;
    double factor = 0.75;  // geometric decay per outer iteration
    double tau_floor = 0.0;
};

struct ReconstructionConfig {
    double tau = 1e-3;
    SchattenOrder order = SchattenOrder::from_p(1.0);
    BoxConstraint box = BoxConstraint::unit();
    int outer_iters = 100;
    double outer_tol = 1e-5;
    int inner_iters = 10;
    std::optional<ContinuationSchedule> continuation;
    std::uint64_t seed = 0;
};

struct TraceEntry {
    int iteration = 0;
    double tau = 0.0;
    double objective = 0.0;
    std::optional<double> isnr_db;
    double seconds = 0.0;
};

struct ReconstructionTrace {
    std::vector<TraceEntry> entries;
    int iterations_used = 0;
    double wall_seconds = 0.0;
};

struct ReconstructionResult {
    Image x_hat;
    ReconstructionTrace trace;
};

/// 1/2 ||y - Ax||^2 + tau ||Hx||_{1,p}
double reconstruction_objective(const Image& x, const Image& y, const ForwardModel& a, double tau,
                                double p);

/// One majorize-minimize step: denoise z = x0 + A^T (y - A x0) / alpha at
/// effective weight tau / alpha.
Image mm_step(const Image& x0, const Image& y, const ForwardModel& a, double alpha,
              const DenoiseConfig& inner_cfg, std::optional<HessianField>* omega_state = nullptr);

/// Monotone FISTA outer loop with optional tau continuation.
ReconstructionResult reconstruct(const Image& y, const ForwardModel& a,
                                 const ReconstructionConfig& cfg,
                                 const Image* ground_truth = nullptr,
                                 const Image* degraded_for_isnr = nullptr);

/// Line-delimited trace export: iteration, tau, objective, ISNR, seconds.
std::string trace_to_text(const ReconstructionTrace& t);

}  // namespace hessreg
