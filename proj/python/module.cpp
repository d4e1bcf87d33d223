#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hessreg/denoise.hpp"
#include "hessreg/forward.hpp"
#include "hessreg/hessian.hpp"
#include "hessreg/metrics.hpp"
#include "hessreg/regularizer.hpp"
#include "hessreg/solver.hpp"

namespace py = pybind11;
using namespace hessreg;

namespace {

// Arrays are (height, width) = (N_y, N_x); row r of the array is column j
// of the internal layout, so a C-contiguous numpy buffer maps directly onto
// Image::data.
Image to_image(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-d array");
    Image img(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    std::copy(a.data(), a.data() + img.size(), img.data.begin());
    return img;
}

py::array_t<double> from_image(const Image& img) {
    py::array_t<double> a({img.height, img.width});
    std::copy(img.data.begin(), img.data.end(), a.mutable_data());
    return a;
}

py::array_t<double> from_field(const HessianField& f) {
    py::array_t<double> a({3, f.height, f.width});
    const auto n = f.size();
    std::copy(f.d11.begin(), f.d11.end(), a.mutable_data());
    std::copy(f.d22.begin(), f.d22.end(), a.mutable_data() + n);
    std::copy(f.d12.begin(), f.d12.end(), a.mutable_data() + 2 * n);
    return a;
}

HessianField to_field(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 3 || a.shape(0) != 3) throw std::invalid_argument("expected a (3, h, w) array");
    HessianField f(static_cast<int>(a.shape(2)), static_cast<int>(a.shape(1)));
    const auto n = f.size();
    std::copy(a.data(), a.data() + n, f.d11.begin());
    std::copy(a.data() + n, a.data() + 2 * n, f.d22.begin());
    std::copy(a.data() + 2 * n, a.data() + 3 * n, f.d12.begin());
    return f;
}

std::unique_ptr<ForwardModel> build_model(const std::string& kind, int width, int height,
                                          int support, double sigma, double ratio, int factor,
                                          std::uint64_t seed) {
    if (kind == "identity") return identity_model(width, height);
    if (kind == "blur") return blur_model(width, height, gaussian_kernel(support, sigma));
    if (kind == "uniform_blur") return blur_model(width, height, uniform_kernel(support));
    if (kind == "mask") return mask_model(make_mask(width, height, ratio, seed));
    if (kind == "decimate") return decimate_model(width, height, factor);
    if (kind == "zoom") return zoom_model(width, height, gaussian_kernel(support, sigma), factor);
    throw std::invalid_argument("unknown model kind: " + kind);
}

}  // namespace

PYBIND11_MODULE(_hessreg, m) {
    m.doc() = "Hessian Schatten-norm regularized reconstruction";

    m.def("hessian", [](py::array_t<double, py::array::c_style | py::array::forcecast> x) {
        return from_field(apply_hessian(to_image(x)));
    });
    m.def("hessian_adjoint", [](py::array_t<double, py::array::c_style | py::array::forcecast> f) {
        return from_image(apply_adjoint(to_field(f)));
    });
    m.def("hessian_norm_bound", &hessian_norm_bound);

    m.def("mixed_l1_sp", [](py::array_t<double, py::array::c_style | py::array::forcecast> f,
                            double p) { return mixed_l1_sp(to_field(f), p); });
    m.def("mixed_linf_sq", [](py::array_t<double, py::array::c_style | py::array::forcecast> f,
                              double q) { return mixed_linf_sq(to_field(f), q); });
    m.def("dual_ball_project",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> f, double q) {
              return from_field(dual_ball_project(to_field(f), q));
          });
    m.def("project_schatten_ball", [](double a, double b, double c, double q, double rho) {
        const SymMat2 r = project_schatten_ball({a, b, c}, q, rho);
        return py::make_tuple(r.a, r.b, r.c);
    });

    m.def(
        "denoise",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> z, double tau, double p,
           double box_lo, double box_hi, int iters) {
            DenoiseConfig cfg;
            cfg.tau = tau;
            cfg.order = SchattenOrder::from_p(p);
            cfg.box = {box_lo, box_hi};
            cfg.max_iters = iters;
            DenoiseResult r = denoise(to_image(z), cfg);
            return py::make_tuple(from_image(r.x_hat), r.primal_values, r.dual_values);
        },
        py::arg("z"), py::arg("tau"), py::arg("p") = 1.0, py::arg("box_lo") = -kInfinityOrder,
        py::arg("box_hi") = kInfinityOrder, py::arg("iters") = 10);

    m.def(
        "reconstruct",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> y,
           const std::string& model, int width, int height, double tau, double p, int outer_iters,
           int inner_iters, int support, double sigma, double ratio, int factor,
           std::uint64_t seed) {
            auto a = build_model(model, width, height, support, sigma, ratio, factor, seed);
            ReconstructionConfig cfg;
            cfg.tau = tau;
            cfg.order = SchattenOrder::from_p(p);
            cfg.outer_iters = outer_iters;
            cfg.inner_iters = inner_iters;
            cfg.seed = seed;
            ReconstructionResult r = reconstruct(to_image(y), *a, cfg);
            std::vector<double> objectives;
            for (const auto& e : r.trace.entries) objectives.push_back(e.objective);
            return py::make_tuple(from_image(r.x_hat), objectives);
        },
        py::arg("y"), py::arg("model"), py::arg("width"), py::arg("height"), py::arg("tau"),
        py::arg("p") = 1.0, py::arg("outer_iters") = 100, py::arg("inner_iters") = 10,
        py::arg("support") = 9, py::arg("sigma") = 4.0, py::arg("ratio") = 0.1,
        py::arg("factor") = 2, py::arg("seed") = 0);

    m.def(
        "degrade",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> x,
           const std::string& model, double bsnr_db, int support, double sigma, double ratio,
           int factor, std::uint64_t seed) {
            Image img = to_image(x);
            auto a = build_model(model, img.width, img.height, support, sigma, ratio, factor, seed);
            Image ax = a->apply(img);
            NoisyObservation obs = add_noise_at_bsnr(ax, bsnr_db, seed);
            return py::make_tuple(from_image(obs.y), obs.sigma_w);
        },
        py::arg("x"), py::arg("model"), py::arg("bsnr_db") = 40.0, py::arg("support") = 9,
        py::arg("sigma") = 4.0, py::arg("ratio") = 0.1, py::arg("factor") = 2, py::arg("seed") = 0);

    m.def("mse", [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
                    py::array_t<double, py::array::c_style | py::array::forcecast> b) {
        return mse(to_image(a), to_image(b));
    });
    m.def("isnr", [](py::array_t<double, py::array::c_style | py::array::forcecast> orig,
                     py::array_t<double, py::array::c_style | py::array::forcecast> degraded,
                     py::array_t<double, py::array::c_style | py::array::forcecast> restored) {
        return isnr(to_image(orig), to_image(degraded), to_image(restored));
    });
    m.def(
        "psnr",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> ref,
           py::array_t<double, py::array::c_style | py::array::forcecast> est, double peak) {
            return psnr(to_image(ref), to_image(est), peak);
        },
        py::arg("ref"), py::arg("est"), py::arg("peak") = 1.0);
}
