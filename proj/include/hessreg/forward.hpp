#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hessreg/image.hpp"

namespace hessreg {

/// Odd-support convolution kernel stored row-major like Image (w taps per
/// row, h rows).
struct Kernel {
    int width = 1;
    int height = 1;
    std::vector<double> taps{1.0};

    double at(int i, int j) const { return taps[static_cast<std::size_t>(j) * width + i]; }
    double& at(int i, int j) { return taps[static_cast<std::size_t>(j) * width + i]; }
    double sum() const;
};

Kernel gaussian_kernel(int support, double sigma_b);
Kernel uniform_kernel(int support);
Kernel identity_kernel();

/// Adds seeded Gaussian noise of the given standard deviation per tap.
/// Deliberately not renormalized.
Kernel perturb_kernel(const Kernel& k, double sigma = 1e-3, std::uint64_t seed = 0);

/// 2-D correlation with symmetric (half-sample mirror) boundary extension.
Image apply_blur(const Image& x, const Kernel& k);
/// Exact transpose of apply_blur (mirror-aware scatter).
Image adjoint_blur(const Image& u, const Kernel& k);

struct MaskBitmap {
    int width = 0;
    int height = 0;
    double ratio = 1.0;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> keep;  // 1 = observed pixel

    std::size_t kept_count() const;
};

/// Uniform sample without replacement of round(ratio * N) kept pixels
/// (Fisher-Yates prefix on the counter-based generator).
MaskBitmap make_mask(int width, int height, double ratio, std::uint64_t seed);

Image decimate(const Image& x, int factor);
Image decimate_adjoint(const Image& u, int factor, int full_width, int full_height);

/// Abstract linear degradation operator with an exact adjoint.
class ForwardModel {
public:
    virtual ~ForwardModel() = default;
    virtual Image apply(const Image& x) const = 0;
    virtual Image adjoint(const Image& u) const = 0;
    virtual int in_width() const = 0;
    virtual int in_height() const = 0;
    virtual std::string kind() const = 0;
};

std::unique_ptr<ForwardModel> identity_model(int width, int height);
std::unique_ptr<ForwardModel> blur_model(int width, int height, const Kernel& k);
std::unique_ptr<ForwardModel> mask_model(const MaskBitmap& mask);
std::unique_ptr<ForwardModel> decimate_model(int width, int height, int factor);
/// A = S F: filter, then subsample.
std::unique_ptr<ForwardModel> zoom_model(int width, int height, const Kernel& k, int factor);

struct NoisyObservation {
    Image y;
    double sigma_w = 0.0;
};

/// sigma_w = sqrt(var(Ax) / 10^(bsnr/10)) with population variance;
/// y = Ax + seeded white Gaussian noise.
NoisyObservation add_noise_at_bsnr(const Image& ax, double bsnr_db, std::uint64_t seed);

}  // namespace hessreg
