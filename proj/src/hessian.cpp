#include "hessreg/hessian.hpp"

#include <cmath>
#include <stdexcept>

#include "hessreg/rng.hpp"

namespace hessreg {

HessianField apply_hessian(const Image& x) {
    if (x.width < 2 || x.height < 2) throw std::invalid_argument("apply_hessian: image must be at least 2x2");
    const int nx = x.width, ny = x.height;
    HessianField out(nx, ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const std::size_t n = static_cast<std::size_t>(j) * nx + i;
            // Row direction: forward second difference, last two rows share
            // the same boundary value.
            out.d11[n] = (i <= nx - 3) ? x.at(i + 2, j) - 2.0 * x.at(i + 1, j) + x.at(i, j)
                                       : x.at(nx - 2, j) - x.at(nx - 1, j);
            out.d22[n] = (j <= ny - 3) ? x.at(i, j + 2) - 2.0 * x.at(i, j + 1) + x.at(i, j)
                                       : x.at(i, ny - 2) - x.at(i, ny - 1);
            out.d12[n] = (i <= nx - 2 && j <= ny - 2)
                             ? x.at(i + 1, j + 1) - x.at(i + 1, j) - x.at(i, j + 1) + x.at(i, j)
                             : 0.0;
        }
    }
    return out;
}

Image apply_adjoint(const HessianField& y) {
    if (y.width < 2 || y.height < 2) throw std::invalid_argument("apply_adjoint: field must be at least 2x2");
    const int nx = y.width, ny = y.height;
    Image out(nx, ny, 0.0);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const std::size_t n = static_cast<std::size_t>(j) * nx + i;
            const double c11 = y.d11[n];
            if (i <= nx - 3) {
                out.at(i + 2, j) += c11;
                out.at(i + 1, j) -= 2.0 * c11;
                out.at(i, j) += c11;
            } else {
                out.at(nx - 2, j) += c11;
                out.at(nx - 1, j) -= c11;
            }
            const double c22 = y.d22[n];
            if (j <= ny - 3) {
                out.at(i, j + 2) += c22;
                out.at(i, j + 1) -= 2.0 * c22;
                out.at(i, j) += c22;
            } else {
                out.at(i, ny - 2) += c22;
                out.at(i, ny - 1) -= c22;
            }
            // Stored once, contributes as Y^(1,2) + Y^(2,1).
            const double c12 = 2.0 * y.d12[n];
            if (i <= nx - 2 && j <= ny - 2) {
                out.at(i + 1, j + 1) += c12;
                out.at(i + 1, j) -= c12;
                out.at(i, j + 1) -= c12;
                out.at(i, j) += c12;
            }
        }
    }
    return out;
}

double field_inner_product(const HessianField& x, const HessianField& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("field_inner_product: dimension mismatch");
    double acc = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n)
        acc += x.d11[n] * y.d11[n] + x.d22[n] * y.d22[n] + 2.0 * x.d12[n] * y.d12[n];
    return acc;
}

double field_norm(const HessianField& x) { return std::sqrt(field_inner_product(x, x)); }

double hessian_norm_bound() { return 8.0; }

double estimate_hessian_norm(int width, int height, int iters, std::uint64_t seed) {
    CounterRng rng(seed);
    Image x(width, height);
    for (double& v : x.data) v = rng.next_double() - 0.5;
    double xn = std::sqrt(norm2(x));
    if (xn == 0.0) return 0.0;
    for (double& v : x.data) v /= xn;
    double estimate = 0.0;
    for (int it = 0; it < iters; ++it) {
        Image hx = apply_adjoint(apply_hessian(x));
        const double n = std::sqrt(norm2(hx));  // Rayleigh quotient of H*H at unit x
        if (n == 0.0) return 0.0;
        estimate = std::sqrt(n);
        for (std::size_t k = 0; k < x.size(); ++k) x.data[k] = hx.data[k] / n;
    }
    return estimate;
}

HessianField field_add(const HessianField& a, const HessianField& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("field_add: dimension mismatch");
    HessianField out(a.width, a.height);
    for (std::size_t n = 0; n < a.size(); ++n) {
        out.d11[n] = a.d11[n] + b.d11[n];
        out.d22[n] = a.d22[n] + b.d22[n];
        out.d12[n] = a.d12[n] + b.d12[n];
    }
    return out;
}

HessianField field_sub(const HessianField& a, const HessianField& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("field_sub: dimension mismatch");
    HessianField out(a.width, a.height);
    for (std::size_t n = 0; n < a.size(); ++n) {
        out.d11[n] = a.d11[n] - b.d11[n];
        out.d22[n] = a.d22[n] - b.d22[n];
        out.d12[n] = a.d12[n] - b.d12[n];
    }
    return out;
}

HessianField field_scale(double c, const HessianField& a) {
    HessianField out(a.width, a.height);
    for (std::size_t n = 0; n < a.size(); ++n) {
        out.d11[n] = c * a.d11[n];
        out.d22[n] = c * a.d22[n];
        out.d12[n] = c * a.d12[n];
    }
    return out;
}

}  // namespace hessreg
