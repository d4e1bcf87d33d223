// Acceptance suite: one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hessreg/denoise.hpp"
#include "hessreg/forward.hpp"
#include "hessreg/hessian.hpp"
#include "hessreg/io.hpp"
#include "hessreg/metrics.hpp"
#include "hessreg/regularizer.hpp"
#include "hessreg/rng.hpp"
#include "hessreg/solver.hpp"
#include "oracles.hpp"

using namespace hessreg;
namespace fs = std::filesystem;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

Image random_image(int w, int h, CounterRng& rng) {
    Image x(w, h);
    for (auto& v : x.data) v = rng.next_double();
    return x;
}

HessianField random_field(int w, int h, CounterRng& rng, double scale = 1.0) {
    HessianField f(w, h);
    for (std::size_t n = 0; n < f.size(); ++n) {
        f.d11[n] = scale * (2.0 * rng.next_double() - 1.0);
        f.d22[n] = scale * (2.0 * rng.next_double() - 1.0);
        f.d12[n] = scale * (2.0 * rng.next_double() - 1.0);
    }
    return f;
}

SymMat2 random_mat(CounterRng& rng, double scale = 2.0) {
    return {scale * (2.0 * rng.next_double() - 1.0), scale * (2.0 * rng.next_double() - 1.0),
            scale * (2.0 * rng.next_double() - 1.0)};
}

// ---------------------------------------------------------------- criterion 1

bool criterion1(std::string& detail) {
    Timer timer;
    CounterRng rng(101);
    double worst = 0.0;
    for (auto [w, h] : {std::pair{2, 2}, {3, 5}, {16, 16}, {64, 64}}) {
        for (int t = 0; t < 100; ++t) {
            const Image x = random_image(w, h, rng);
            const HessianField y = random_field(w, h, rng);
            const HessianField hx = apply_hessian(x);
            const double lhs = field_inner_product(hx, y);
            const double rhs = dot(apply_adjoint(y), x);
            const double bound = 1e-10 * (field_norm(hx) * field_norm(y) + 1.0);
            worst = std::max(worst, std::abs(lhs - rhs) / bound);
            if (std::abs(lhs - rhs) > bound) {
                detail = "adjoint identity violated";
                return false;
            }
        }
    }
    std::ostringstream os;
    os << "worst residual " << worst << "x the bound, " << timer.seconds() << " s";
    detail = os.str();
    return timer.seconds() < 5.0;
}

// ---------------------------------------------------------------- criterion 2

bool criterion2(std::string& detail) {
    Timer timer;
    CounterRng rng(102);
    const double qs[] = {1.0, 1.5, 2.0, 3.0, kInfinityOrder};
    const double rhos[] = {0.5, 1.0, 2.0};
    double worst = 0.0;
    int tested = 0;
    for (double q : qs)
        for (double rho : rhos)
            for (int t = 0; t < 34; ++t) {
                const SymMat2 m = random_mat(rng);
                const SymMat2 got = project_schatten_ball(m, q, rho);
                const SymMat2 want = oracle::project_schatten_grid(m, q, rho);
                const double err = (got - want).frobenius();
                worst = std::max(worst, err);
                ++tested;
                if (err > 1e-6) {
                    std::ostringstream os;
                    os << "mismatch " << err << " at q=" << q << " rho=" << rho;
                    detail = os.str();
                    return false;
                }
            }
    std::ostringstream os;
    os << tested << " projections, worst deviation " << worst << ", " << timer.seconds() << " s";
    detail = os.str();
    return timer.seconds() < 30.0;
}

// ---------------------------------------------------------------- criterion 3

bool criterion3(std::string& detail) {
    CounterRng rng(103);
    int branch_counts[3] = {0, 0, 0};
    for (int t = 0; t < 1000; ++t) {
        double v1 = 3.0 * rng.next_double();
        double v2 = 3.0 * rng.next_double();
        if (v2 > v1) std::swap(v1, v2);
        const SingularPair v{v1, v2};
        if (v1 + v2 <= 1.0)
            ++branch_counts[0];
        else if (v1 <= 1.0 + v2)
            ++branch_counts[1];
        else
            ++branch_counts[2];
        const auto a = project_lq_ball(v, 1.0, 1.0);
        const auto b = project_lq_ball_rootfind(v, 1.0, 1.0);
        if (std::abs(a.sigma1 - b.sigma1) > 1e-10 || std::abs(a.sigma2 - b.sigma2) > 1e-10) {
            detail = "analytic threshold disagrees with the root-finder";
            return false;
        }
    }
    if (!branch_counts[0] || !branch_counts[1] || !branch_counts[2]) {
        detail = "a threshold branch was never exercised";
        return false;
    }
    auto check = [](SingularPair v, double w1, double w2) {
        const auto r = project_lq_ball(v, 1.0, 1.0);
        return std::abs(r.sigma1 - w1) < 1e-12 && std::abs(r.sigma2 - w2) < 1e-12;
    };
    if (!check({0.5, 0.3}, 0.5, 0.3) || !check({1.2, 0.4}, 0.9, 0.1) || !check({3.0, 0.5}, 1.0, 0.0)) {
        detail = "worked example mismatch";
        return false;
    }
    std::ostringstream os;
    os << "branch counts " << branch_counts[0] << "/" << branch_counts[1] << "/" << branch_counts[2]
       << ", worked examples reproduced";
    detail = os.str();
    return true;
}

// ---------------------------------------------------------------- criterion 4

bool criterion4(std::string& detail) {
    double worst_est = 0.0;
    for (int n : {16, 64, 128, 256}) {
        const double est = estimate_hessian_norm(n, n, 300, 11);
        worst_est = std::max(worst_est, est);
        if (est > 8.0) {
            detail = "power-iteration estimate exceeds the certified bound";
            return false;
        }
    }
    CounterRng rng(104);
    for (int t = 0; t < 10; ++t) {
        DenoiseConfig cfg;
        cfg.tau = 0.05 + 0.3 * rng.next_double();
        cfg.order = SchattenOrder::from_p(t % 2 ? 1.0 : 2.0);
        cfg.box = t % 3 ? BoxConstraint::unit() : BoxConstraint::unbounded();
        cfg.max_iters = 200;
        const auto r = denoise(random_image(12, 12, rng), cfg);
        double best = -1e300;
        for (double v : r.dual_values) {
            const double next = std::max(best, v);
            if (next < best) {
                detail = "best dual value decreased";
                return false;
            }
            best = next;
        }
        if (!(best > r.dual_values.front() - 1e-15)) {
            detail = "dual ascent made no progress";
            return false;
        }
    }
    std::ostringstream os;
    os << "max norm estimate " << worst_est << " <= 8; best dual value monotone on 10 instances";
    detail = os.str();
    return true;
}

// ---------------------------------------------------------------- criterion 5

bool criterion5(std::string& detail) {
    CounterRng rng(105);
    const std::pair<double, double> pairs[] = {{1.0, kInfinityOrder}, {2.0, 2.0}, {1.5, 3.0},
                                               {kInfinityOrder, 1.0}};
    for (const auto& [p, q] : pairs) {
        for (int t = 0; t < 250; ++t) {
            const HessianField omega = random_field(6, 7, rng);
            const HessianField psi = random_field(6, 7, rng);
            const double pairing = std::abs(field_inner_product(psi, omega));
            const double bound = mixed_l1_sp(psi, p) * mixed_linf_sq(omega, q);
            if (pairing > bound * (1.0 + 1e-12) + 1e-12) {
                detail = "duality inequality violated";
                return false;
            }
            const HessianField w = dual_witness(omega, q);
            const double attained = field_inner_product(w, omega);
            const double target = mixed_linf_sq(omega, q);
            if (std::abs(attained - target) > 1e-10 * (1.0 + target)) {
                detail = "witness does not attain the dual norm";
                return false;
            }
        }
    }
    detail = "1000 pairs per check across four conjugate orders";
    return true;
}

// ---------------------------------------------------------------- criterion 6

bool criterion6(std::string& detail) {
    Timer timer;
    CounterRng rng(106);
    const double taus[] = {0.01, 0.1, 1.0};
    const double ps[] = {1.0, 2.0, kInfinityOrder};
    double worst_gap = 0.0, worst_rel = 0.0;
    int instance = 0;
    bool ok = true;
    while (instance < 20) {
        for (double tau : taus)
            for (double p : ps)
                for (int boxed = 0; boxed < 2 && instance < 20; ++boxed) {
                    ++instance;
                    DenoiseConfig cfg;
                    cfg.tau = tau;
                    cfg.order = SchattenOrder::from_p(p);
                    cfg.box = boxed ? BoxConstraint::unit() : BoxConstraint::unbounded();
                    const Image z = random_image(8, 8, rng);

                    cfg.max_iters = 10000;
                    const auto ref = denoise(z, cfg);
                    double fstar = 1e300, dual_best = -1e300;
                    for (double v : ref.primal_values) fstar = std::min(fstar, v);
                    for (double v : ref.dual_values) dual_best = std::max(dual_best, v);
                    const double gap = fstar - dual_best;
                    worst_gap = std::max(worst_gap, gap);

                    cfg.max_iters = 10;
                    const auto quick = denoise(z, cfg);
                    const double f10 = primal_objective(quick.x_hat, z, tau, p);
                    const double rel = (f10 - fstar) / std::abs(fstar);
                    worst_rel = std::max(worst_rel, rel);
                    if (gap >= 1e-6 || rel >= 1e-3) ok = false;
                }
    }
    std::ostringstream os;
    os << "worst certified gap " << worst_gap << " (need < 1e-6), worst 10-iteration relative "
       << "suboptimality " << worst_rel << " (need < 1e-3), " << timer.seconds() << " s";
    detail = os.str();
    return ok && timer.seconds() < 60.0;
}

// ---------------------------------------------------------------- criterion 7

bool criterion7(std::string& detail) {
    CounterRng rng(107);
    const int n = 32;
    Image truth = random_image(n, n, rng);
    auto model = blur_model(n, n, gaussian_kernel(9, 4.0));
    const Image y = add_noise_at_bsnr(model->apply(truth), 30.0, 7).y;

    ReconstructionConfig cfg;
    cfg.tau = 1e-4;
    cfg.outer_iters = 100;
    cfg.outer_tol = 0.0;
    const auto r = reconstruct(y, *model, cfg);
    for (std::size_t k = 1; k < r.trace.entries.size(); ++k)
        if (r.trace.entries[k].objective > r.trace.entries[k - 1].objective + 1e-12) {
            detail = "objective increased between outer iterations";
            return false;
        }

    const double alpha = majorizer_alpha(estimate_operator_norm(*model, 200, 3));
    for (int t = 0; t < 1000; ++t) {
        const Image x = random_image(n, n, rng);
        const Image x0 = random_image(n, n, rng);
        const Image rx0 = y - model->apply(x0);
        const Image dx = x - x0;
        const double surrogate = 0.5 * norm2(rx0) - dot(model->apply(dx), rx0) +
                                 0.5 * alpha * norm2(dx);
        const Image rx = y - model->apply(x);
        if (surrogate < 0.5 * norm2(rx) - 1e-9) {
            detail = "majorizer fell below the data term";
            return false;
        }
    }
    detail = "objective non-increasing over 100 outer iterations; majorizer valid on 1000 probes";
    return true;
}

// ---------------------------------------------------------------- criterion 8

bool criterion8(std::string& detail) {
    CounterRng rng(108);
    for (double p : {1.0, 1.5, 2.0, kInfinityOrder}) {
        const HessianField f = random_field(7, 6, rng);
        const double base = mixed_l1_sp(f, p);
        for (double c : {2.0, -3.5, 0.25}) {
            const double scaled = mixed_l1_sp(field_scale(c, f), p);
            if (std::abs(scaled - std::abs(c) * base) > 1e-12 * std::abs(c) * base) {
                detail = "mixed norm is not absolutely homogeneous";
                return false;
            }
        }
    }
    for (double tau : {0.01, 0.1, 1.0, 10.0})
        for (double p : {1.0, 1.5, 2.0, kInfinityOrder}) {
            DenoiseConfig cfg;
            cfg.tau = tau;
            cfg.order = SchattenOrder::from_p(p);
            cfg.max_iters = 25;
            const auto r = denoise(Image(9, 9, 0.42), cfg);
            for (double v : r.x_hat.data)
                if (std::abs(v - 0.42) > 1e-10) {
                    detail = "constant image is not a denoiser fixed point";
                    return false;
                }
        }
    const Image z = random_image(10, 10, rng);
    Image shifted = z;
    for (auto& v : shifted.data) v += 1.3;
    DenoiseConfig cfg;
    cfg.tau = 0.2;
    cfg.max_iters = 40;
    const auto a = denoise(z, cfg);
    const auto b = denoise(shifted, cfg);
    for (std::size_t n = 0; n < z.size(); ++n)
        if (std::abs(b.x_hat.data[n] - a.x_hat.data[n] - 1.3) > 1e-9) {
            detail = "denoiser does not commute with constant shifts";
            return false;
        }
    detail = "homogeneity, constant fixed points and shift equivariance all hold";
    return true;
}

// ---------------------------------------------------------------- criterion 9

Image synthetic_scene() {
    const int n = 64;
    Image x(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double v = 0.15 + 0.5 * i / (n - 1.0);  // linear ramp
            const double dx = i - 22.0, dy = j - 24.0;
            if (dx * dx + dy * dy <= 144.0) v = 0.85;              // disk
            if (std::abs(i - (n - 10 - j / 3)) <= 1) v = 0.05;     // thin ridge
            x.at(i, j) = v;
        }
    return x;
}

struct TaskRun {
    std::string name;
    Image y;
    Image baseline;  // degraded observation on the full grid
    std::unique_ptr<ForwardModel> model;
};

struct Criterion9Output {
    bool pass = false;
    std::string detail;
    std::string record;                       // deterministic metric record
    std::map<std::string, Image> images;      // outputs per task
};

double grid_search(const Image& y, const ForwardModel& model, const Image& truth,
                   const Image& baseline, double p, const std::vector<double>& taus, Image& best_x) {
    double best_isnr = -kInfinityOrder;
    for (double tau : taus) {
        ReconstructionConfig cfg;
        cfg.tau = tau;
        cfg.order = SchattenOrder::from_p(p);
        cfg.outer_iters = 60;
        cfg.outer_tol = 0.0;
        const auto r = reconstruct(y, model, cfg);
        const double v = isnr(truth, baseline, r.x_hat);
        if (v > best_isnr) {
            best_isnr = v;
            best_x = r.x_hat;
        }
    }
    return best_isnr;
}

Criterion9Output run_criterion9() {
    Criterion9Output out;
    Timer timer;
    const Image truth = synthetic_scene();
    const std::vector<double> taus = {3e-4, 1e-3, 3e-3, 1e-2};

    std::vector<TaskRun> tasks;
    {
        auto blur = blur_model(64, 64, gaussian_kernel(9, 4.0));
        Image y = add_noise_at_bsnr(blur->apply(truth), 25.0, 21).y;
        tasks.push_back({"deblur", y, y, std::move(blur)});
    }
    {
        auto mask = mask_model(make_mask(64, 64, 0.10, 22));
        Image y = mask->apply(truth);
        tasks.push_back({"sparse", y, y, std::move(mask)});
    }
    {
        auto dec = decimate_model(64, 64, 4);
        Image y = dec->apply(truth);
        tasks.push_back({"interpolate", y, upsample_replicate(y, 4, 64, 64), std::move(dec)});
    }
    {
        auto zm = zoom_model(64, 64, gaussian_kernel(9, 1.4), 4);
        Image y = zm->apply(truth);
        tasks.push_back({"zoom", y, upsample_replicate(y, 4, 64, 64), std::move(zm)});
    }

    std::ostringstream record, detail;
    record.precision(17);
    bool ok = true;
    for (auto& t : tasks) {
        Image best_x(1, 1);
        const double best_isnr = grid_search(t.y, *t.model, truth, t.baseline, 1.0, taus, best_x);
        const double psnr_rec = psnr(truth, best_x);
        const double psnr_base = psnr(truth, t.baseline);
        record << t.name << " isnr=" << best_isnr << " psnr=" << psnr_rec
               << " baseline_psnr=" << psnr_base << "\n";
        out.images[t.name] = best_x;
        if (t.name == "deblur") {
            if (!(best_isnr > 0.0)) {
                ok = false;
                detail << "deblur ISNR " << best_isnr << " not positive; ";
            }
            Image xinf(1, 1);
            const double isnr_inf =
                grid_search(t.y, *t.model, truth, t.baseline, kInfinityOrder, taus, xinf);
            record << "deblur_sinf isnr=" << isnr_inf << "\n";
            if (!(best_isnr >= isnr_inf)) {
                ok = false;
                detail << "S1 deblur ISNR " << best_isnr << " below Sinf " << isnr_inf << "; ";
            }
        } else if (!(psnr_rec > psnr_base)) {
            ok = false;
            detail << t.name << " PSNR " << psnr_rec << " not above baseline " << psnr_base << "; ";
        }
    }
    out.record = record.str();
    if (timer.seconds() >= 600.0) {
        ok = false;
        detail << "runtime " << timer.seconds() << " s exceeded 600; ";
    }
    if (ok) {
        detail << "all four tasks improved on their baselines, S1 >= Sinf on deblurring, "
               << timer.seconds() << " s";
    }
    out.pass = ok;
    out.detail = detail.str();
    return out;
}

// --------------------------------------------------------------- criterion 10

bool criterion10(const Criterion9Output& first, std::string& detail) {
    const Criterion9Output second = run_criterion9();
    if (first.record != second.record) {
        detail = "metric records differ between identical runs";
        return false;
    }
    const fs::path dir = fs::temp_directory_path() / "hessreg_acceptance";
    fs::create_directories(dir);
    for (const auto& [name, img] : first.images) {
        const auto it = second.images.find(name);
        if (it == second.images.end() || !(it->second.data == img.data)) {
            detail = "output images differ between identical runs";
            return false;
        }
        const std::string p1 = (dir / (name + "_run1.png")).string();
        const std::string p2 = (dir / (name + "_run2.png")).string();
        image_write(p1, img);
        image_write(p2, it->second);
        if (read_text_file(p1) != read_text_file(p2)) {
            detail = "encoded image files are not byte-identical";
            return false;
        }
    }
    fs::remove_all(dir);
    detail = "byte-identical images and metric records across reruns";
    return true;
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int idx, const char* name, bool pass, const std::string& detail) {
        std::printf("criterion %2d [%s]: %s (%s)\n", idx, pass ? "PASS" : "FAIL", name,
                    detail.c_str());
        if (!pass) ++failures;
        std::fflush(stdout);
    };

    std::string d;
    report(1, "hessian adjoint identity", criterion1(d), d);
    report(2, "schatten projection oracle equivalence", criterion2(d), d);
    report(3, "nuclear-ball closed form vs root-finder", criterion3(d), d);
    report(4, "operator norm bound and dual ascent", criterion4(d), d);
    report(5, "mixed-norm duality and witness", criterion5(d), d);
    report(6, "prox solver certification", criterion6(d), d);
    report(7, "monotone outer loop and majorizer validity", criterion7(d), d);
    report(8, "structural invariances", criterion8(d), d);
    const Criterion9Output c9 = run_criterion9();
    report(9, "desk-scale task suite", c9.pass, c9.detail);
    report(10, "determinism of the task suite", criterion10(c9, d), d);

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
