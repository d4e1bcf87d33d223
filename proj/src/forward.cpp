#include "hessreg/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hessreg/parallel.hpp"
#include "hessreg/rng.hpp"

namespace hessreg {

double Kernel::sum() const { return std::accumulate(taps.begin(), taps.end(), 0.0); }

Kernel gaussian_kernel(int support, double sigma_b) {
    if (support < 1 || support % 2 == 0) throw std::invalid_argument("gaussian_kernel: support must be odd");
    if (!(sigma_b > 0.0)) throw std::invalid_argument("gaussian_kernel: sigma must be positive");
    Kernel k;
    k.width = k.height = support;
    k.taps.assign(static_cast<std::size_t>(support) * support, 0.0);
    const int r = support / 2;
    for (int j = 0; j < support; ++j)
        for (int i = 0; i < support; ++i) {
            const double dx = i - r, dy = j - r;
            k.at(i, j) = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma_b * sigma_b));
        }
    const double s = k.sum();
    for (double& t : k.taps) t /= s;
    return k;
}

Kernel uniform_kernel(int support) {
    if (support < 1 || support % 2 == 0) throw std::invalid_argument("uniform_kernel: support must be odd");
    Kernel k;
    k.width = k.height = support;
    k.taps.assign(static_cast<std::size_t>(support) * support,
                  1.0 / (static_cast<double>(support) * support));
    return k;
}

Kernel identity_kernel() { return Kernel{}; }

Kernel perturb_kernel(const Kernel& k, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("perturb_kernel: sigma must be nonnegative");
    Kernel out = k;
    if (sigma == 0.0) return out;
    CounterRng rng(seed);
    for (double& t : out.taps) t += sigma * rng.next_gaussian();
    return out;
}

namespace {

// Half-sample mirror: ... 2 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...
int reflect(int idx, int n) {
    while (idx < 0 || idx >= n) {
        if (idx < 0) idx = -idx - 1;
        if (idx >= n) idx = 2 * n - 1 - idx;
    }
    return idx;
}

}  // namespace

Image apply_blur(const Image& x, const Kernel& k) {
    if (k.width > x.width || k.height > x.height)
        throw std::invalid_argument("apply_blur: kernel larger than image");
    const int rx = k.width / 2, ry = k.height / 2;
    Image out(x.width, x.height);
    parallel_for(x.height, [&](int j_begin, int j_end) {
        for (int j = j_begin; j < j_end; ++j)
            for (int i = 0; i < x.width; ++i) {
                double acc = 0.0;
                for (int kj = 0; kj < k.height; ++kj)
                    for (int ki = 0; ki < k.width; ++ki)
                        acc += k.at(ki, kj) *
                               x.at(reflect(i + ki - rx, x.width), reflect(j + kj - ry, x.height));
                out.at(i, j) = acc;
            }
    });
    return out;
}

Image adjoint_blur(const Image& u, const Kernel& k) {
    if (k.width > u.width || k.height > u.height)
        throw std::invalid_argument("adjoint_blur: kernel larger than image");
    const int rx = k.width / 2, ry = k.height / 2;
    Image out(u.width, u.height, 0.0);
    for (int j = 0; j < u.height; ++j)
        for (int i = 0; i < u.width; ++i) {
            const double v = u.at(i, j);
            for (int kj = 0; kj < k.height; ++kj)
                for (int ki = 0; ki < k.width; ++ki)
                    out.at(reflect(i + ki - rx, u.width), reflect(j + kj - ry, u.height)) +=
                        k.at(ki, kj) * v;
        }
    return out;
}

std::size_t MaskBitmap::kept_count() const {
    return static_cast<std::size_t>(std::count(keep.begin(), keep.end(), std::uint8_t{1}));
}

MaskBitmap make_mask(int width, int height, double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio <= 1.0)) throw std::invalid_argument("make_mask: ratio must be in (0, 1]");
    const std::size_t n = static_cast<std::size_t>(width) * height;
    const std::size_t kept = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    CounterRng rng(seed);
    // Fisher-Yates prefix: only the first `kept` draws matter.
    for (std::size_t i = 0; i < kept && i + 1 < n; ++i) {
        const std::size_t j = i + rng.next_below(n - i);
        std::swap(idx[i], idx[j]);
    }
    MaskBitmap m;
    m.width = width;
    m.height = height;
    m.ratio = ratio;
    m.seed = seed;
    m.keep.assign(n, 0);
    for (std::size_t i = 0; i < kept; ++i) m.keep[idx[i]] = 1;
    return m;
}

Image decimate(const Image& x, int factor) {
    if (factor < 1) throw std::invalid_argument("decimate: factor must be >= 1");
    const int ow = (x.width + factor - 1) / factor;
    const int oh = (x.height + factor - 1) / factor;
    Image out(ow, oh);
    for (int j = 0; j < oh; ++j)
        for (int i = 0; i < ow; ++i) out.at(i, j) = x.at(i * factor, j * factor);
    return out;
}

Image decimate_adjoint(const Image& u, int factor, int full_width, int full_height) {
    Image out(full_width, full_height, 0.0);
    for (int j = 0; j < u.height; ++j)
        for (int i = 0; i < u.width; ++i) out.at(i * factor, j * factor) = u.at(i, j);
    return out;
}

namespace {

class IdentityModel final : public ForwardModel {
public:
    IdentityModel(int w, int h) : w_(w), h_(h) {}
    Image apply(const Image& x) const override { return x; }
    Image adjoint(const Image& u) const override { return u; }
    int in_width() const override { return w_; }
    int in_height() const override { return h_; }
    std::string kind() const override { return "identity"; }

private:
    int w_, h_;
};

class BlurModel final : public ForwardModel {
public:
    BlurModel(int w, int h, Kernel k) : w_(w), h_(h), k_(std::move(k)) {}
    Image apply(const Image& x) const override { return apply_blur(x, k_); }
    Image adjoint(const Image& u) const override { return adjoint_blur(u, k_); }
    int in_width() const override { return w_; }
    int in_height() const override { return h_; }
    std::string kind() const override { return "blur"; }

private:
    int w_, h_;
    Kernel k_;
};

class MaskModel final : public ForwardModel {
public:
    explicit MaskModel(MaskBitmap m) : m_(std::move(m)) {}
    Image apply(const Image& x) const override {
        Image out = x;
        for (std::size_t n = 0; n < out.size(); ++n)
            if (!m_.keep[n]) out.data[n] = 0.0;
        return out;
    }
    Image adjoint(const Image& u) const override { return apply(u); }  // diagonal projection
    int in_width() const override { return m_.width; }
    int in_height() const override { return m_.height; }
    std::string kind() const override { return "mask"; }

private:
    MaskBitmap m_;
};

class DecimateModel final : public ForwardModel {
public:
    DecimateModel(int w, int h, int f) : w_(w), h_(h), f_(f) {}
    Image apply(const Image& x) const override { return decimate(x, f_); }
    Image adjoint(const Image& u) const override { return decimate_adjoint(u, f_, w_, h_); }
    int in_width() const override { return w_; }
    int in_height() const override { return h_; }
    std::string kind() const override { return "decimate"; }

private:
    int w_, h_, f_;
};

class ZoomModel final : public ForwardModel {
public:
    ZoomModel(int w, int h, Kernel k, int f) : w_(w), h_(h), k_(std::move(k)), f_(f) {}
    Image apply(const Image& x) const override { return decimate(apply_blur(x, k_), f_); }
    Image adjoint(const Image& u) const override {
        return adjoint_blur(decimate_adjoint(u, f_, w_, h_), k_);
    }
    int in_width() const override { return w_; }
    int in_height() const override { return h_; }
    std::string kind() const override { return "zoom"; }

private:
    int w_, h_;
    Kernel k_;
    int f_;
};

}  // namespace

std::unique_ptr<ForwardModel> identity_model(int w, int h) { return std::make_unique<IdentityModel>(w, h); }
std::unique_ptr<ForwardModel> blur_model(int w, int h, const Kernel& k) {
    return std::make_unique<BlurModel>(w, h, k);
}
std::unique_ptr<ForwardModel> mask_model(const MaskBitmap& m) { return std::make_unique<MaskModel>(m); }
std::unique_ptr<ForwardModel> decimate_model(int w, int h, int f) {
    if (f < 1) throw std::invalid_argument("decimate_model: factor must be >= 1");
    return std::make_unique<DecimateModel>(w, h, f);
}
std::unique_ptr<ForwardModel> zoom_model(int w, int h, const Kernel& k, int f) {
    if (f < 1) throw std::invalid_argument("zoom_model: factor must be >= 1");
    return std::make_unique<ZoomModel>(w, h, k, f);
}

NoisyObservation add_noise_at_bsnr(const Image& ax, double bsnr_db, std::uint64_t seed) {
    const double n = static_cast<double>(ax.size());
    double mean = 0.0;
    for (double v : ax.data) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : ax.data) var += (v - mean) * (v - mean);
    var /= n;  // population variance
    if (var <= 0.0) throw std::invalid_argument("add_noise_at_bsnr: zero-variance input");
    const double sigma_w = std::sqrt(var / std::pow(10.0, bsnr_db / 10.0));
    NoisyObservation obs{ax, sigma_w};
    CounterRng rng(seed);
    for (double& v : obs.y.data) v += sigma_w * rng.next_gaussian();
    return obs;
}

}  // namespace hessreg
