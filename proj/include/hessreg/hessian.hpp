#pragma once

#include <cstdint>
#include <vector>

#include "hessreg/image.hpp"
#include "hessreg/linalg2x2.hpp"

namespace hessreg {

/// Per-pixel symmetric 2x2 matrix field; d12 is stored once and counts
/// twice in every inner product and adjoint.
struct HessianField {
    int width = 0;
    int height = 0;
    std::vector<double> d11, d22, d12;

    HessianField() = default;
    HessianField(int w, int h)
        : width(w), height(h),
          d11(static_cast<std::size_t>(w) * h, 0.0),
          d22(static_cast<std::size_t>(w) * h, 0.0),
          d12(static_cast<std::size_t>(w) * h, 0.0) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("HessianField: non-positive dimensions");
    }

    std::size_t size() const { return d11.size(); }

    SymMat2 pixel(std::size_t n) const { return {d11[n], d22[n], d12[n]}; }
    void set_pixel(std::size_t n, const SymMat2& m) {
        d11[n] = m.a;
        d22[n] = m.b;
        d12[n] = m.c;
    }

    bool same_shape(const HessianField& o) const { return width == o.width && height == o.height; }
};

/// Second-order forward differences with Neumann boundary handling.
HessianField apply_hessian(const Image& x);

/// Exact transpose of apply_hessian, built by scattering each forward
/// stencil back onto the image grid.
Image apply_adjoint(const HessianField& y);

/// <X, Y> = sum_n tr(Y_n^T X_n).
double field_inner_product(const HessianField& x, const HessianField& y);

double field_norm(const HessianField& x);

/// Certified bound on the operator norm of the discrete Hessian.
double hessian_norm_bound();

/// Power-iteration estimate of ||H|| on a given grid; diagnostic companion
/// to the certified bound.
double estimate_hessian_norm(int width, int height, int iters = 500, std::uint64_t seed = 0);

HessianField field_add(const HessianField& a, const HessianField& b);
HessianField field_sub(const HessianField& a, const HessianField& b);
HessianField field_scale(double c, const HessianField& a);

}  // namespace hessreg
