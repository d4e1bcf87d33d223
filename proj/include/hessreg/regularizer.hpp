#pragma once

#include "hessreg/hessian.hpp"
#include "hessreg/linalg2x2.hpp"

namespace hessreg {

/// A Schatten order p >= 1 together with its conjugate exponent q.
/// The (1, inf) pairs are enumerated, never derived from 1/(p-1).
struct SchattenOrder {
    double p = 2.0;
    double q = 2.0;

    static SchattenOrder from_p(double p);

    bool operator==(const SchattenOrder&) const = default;
};

/// sum_n ||Psi_n||_Sp
double mixed_l1_sp(const HessianField& psi, double p);

/// max_n ||Omega_n||_Sq
double mixed_linf_sq(const HessianField& omega, double q);

/// Per-pixel projection onto the unit Sq ball.
HessianField dual_ball_project(const HessianField& omega, double q);

/// In-place variant used by the inner solver loop.
void dual_ball_project_inplace(HessianField& omega, double q);

/// The extremal field pairing a nonzero Omega with its mixed-norm value:
/// concentrated on the pixel of largest Sq norm (smallest index on ties),
/// with unit l1-Sp norm.
HessianField dual_witness(const HessianField& omega, double q);

}  // namespace hessreg
