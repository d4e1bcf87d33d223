#pragma once

#include <optional>
#include <vector>

#include "hessreg/hessian.hpp"
#include "hessreg/image.hpp"
#include "hessreg/regularizer.hpp"

namespace hessreg {

struct BoxConstraint {
    double lower = -kInfinityOrder;
    double upper = kInfinityOrder;

    static BoxConstraint unbounded() { return {}; }
    static BoxConstraint unit() { return {0.0, 1.0}; }

    bool is_unbounded() const;
    void validate() const;
};

Image box_project(const Image& x, const BoxConstraint& box);

struct DenoiseConfig {
    double tau = 0.1;
    SchattenOrder order = SchattenOrder::from_p(1.0);
    BoxConstraint box;
    int max_iters = 10;
    double tol = 0.0;  // 0 runs the full iteration budget
    std::optional<HessianField> warm_start;
};

struct DenoiseResult {
    Image x_hat;
    HessianField omega_hat;
    std::vector<double> primal_values;
    std::vector<double> dual_values;
};

/// s(Omega) = 1/2 ||P_C(v) - v||^2 + 1/2 ||z||^2 - 1/2 ||v||^2, v = z - tau H* Omega.
double dual_objective(const HessianField& omega, const Image& z, double tau, const BoxConstraint& box);

/// grad s(Omega) = tau H P_C(z - tau H* Omega).
HessianField dual_gradient(const HessianField& omega, const Image& z, double tau, const BoxConstraint& box);

/// 1/2 ||x - z||^2 + tau ||Hx||_{1,p}
double primal_objective(const Image& x, const Image& z, double tau, double p);

/// Accelerated projected dual ascent for
/// argmin_{x in C} 1/2 ||x - z||^2 + tau ||Hx||_{1,p},
/// with constant step 1/(64 tau^2) and primal recovery from the best dual
/// iterate.
DenoiseResult denoise(const Image& z, const DenoiseConfig& cfg);

}  // namespace hessreg
