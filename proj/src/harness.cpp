#include "hessreg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hessreg/io.hpp"
#include "hessreg/metrics.hpp"
#include "hessreg/rng.hpp"

namespace hessreg {

namespace {

constexpr const char* kArtifactVersion = "hessreg-1.0.0";

const std::vector<std::string> kKnownKeys = {
    "task",        "input",       "output",      "ground_truth", "p",
    "tau",         "tau_grid",    "bsnr_db",     "sigma_w",      "kernel",
    "perturb_sigma", "kernel_file", "mask_ratio", "mask_file",    "factor",
    "box_lo",      "box_hi",      "outer_iters", "inner_iters",  "outer_tol",
    "continuation", "seed",       "trace",       "force"};

double parse_order(const std::string& s) {
    if (s == "inf") return kInfinityOrder;
    return std::stod(s);
}

double parse_bound(const std::string& s) {
    if (s == "inf") return kInfinityOrder;
    if (s == "-inf") return -kInfinityOrder;
    return std::stod(s);
}

Task parse_task(const std::string& s) {
    if (s == "denoise") return Task::denoise;
    if (s == "deblur") return Task::deblur;
    if (s == "sparse") return Task::sparse;
    if (s == "interpolate") return Task::interpolate;
    if (s == "zoom") return Task::zoom;
    throw ConfigError("unknown task: " + s);
}

KernelSpec parse_kernel(const std::string& s) {
    KernelSpec k;
    if (s == "identity") return k;
    std::istringstream is(s);
    std::string head;
    std::getline(is, head, ':');
    std::string rest;
    std::vector<std::string> args;
    while (std::getline(is, rest, ':')) args.push_back(rest);
    if (head == "gaussian" && args.size() == 2) {
        k.kind = KernelSpec::Kind::gaussian;
        k.support = std::stoi(args[0]);
        k.sigma = std::stod(args[1]);
    } else if (head == "uniform" && args.size() == 1) {
        k.kind = KernelSpec::Kind::uniform;
        k.support = std::stoi(args[0]);
    } else if (head == "file" && args.size() == 1) {
        k.kind = KernelSpec::Kind::file;
        k.path = args[0];
    } else {
        throw ConfigError("bad kernel spec: " + s);
    }
    return k;
}

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw ConfigError("empty tau_grid");
    return out;
}

ContinuationSchedule parse_continuation(const std::string& s, double tau) {
    ContinuationSchedule c;
    if (s == "auto") {
        c.tau_start = 10.0 * tau;
        c.factor = 0.75;
        c.tau_floor = tau;
        return c;
    }
    std::istringstream is(s);
    char sep;
    if (!(is >> c.tau_start >> sep >> c.factor >> sep >> c.tau_floor))
        throw ConfigError("bad continuation spec: " + s + " (want start:factor:floor or auto)");
    return c;
}

std::map<std::string, std::string, std::less<>> parse_pairs(const std::string& text) {
    std::map<std::string, std::string, std::less<>> kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            s = (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
        };
        trim(key);
        trim(value);
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ConfigError("unknown config key: " + key);
        kv[key] = value;
    }
    return kv;
}

}  // namespace

std::string canonicalize_config(const std::string& text) {
    const auto kv = parse_pairs(text);
    std::ostringstream os;
    for (const auto& [k, v] : kv) os << k << "=" << v << "\n";
    return os.str();
}

std::uint64_t config_hash(const std::string& canonical_text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : canonical_text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

ExperimentConfig parse_config_text(const std::string& text) {
    const auto kv = parse_pairs(text);
    ExperimentConfig cfg;
    auto get = [&](const char* key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    try {
        if (const auto* v = get("task")) cfg.task = parse_task(*v);
        if (const auto* v = get("input")) cfg.input = *v;
        if (const auto* v = get("output")) cfg.output = *v;
        if (const auto* v = get("ground_truth")) cfg.ground_truth = *v;
        if (const auto* v = get("p")) cfg.p = parse_order(*v);
        if (const auto* v = get("tau")) cfg.tau = std::stod(*v);
        if (const auto* v = get("tau_grid")) cfg.tau_grid = parse_grid(*v);
        if (const auto* v = get("bsnr_db")) cfg.bsnr_db = std::stod(*v);
        if (const auto* v = get("sigma_w")) cfg.sigma_w = std::stod(*v);
        if (const auto* v = get("kernel")) cfg.kernel = parse_kernel(*v);
        if (const auto* v = get("perturb_sigma")) cfg.perturb_sigma = std::stod(*v);
        if (const auto* v = get("kernel_file")) cfg.kernel_file = *v;
        if (const auto* v = get("mask_ratio")) cfg.mask_ratio = std::stod(*v);
        if (const auto* v = get("mask_file")) cfg.mask_file = *v;
        if (const auto* v = get("factor")) cfg.factor = std::stoi(*v);
        if (const auto* v = get("box_lo")) cfg.box_lo = parse_bound(*v);
        if (const auto* v = get("box_hi")) cfg.box_hi = parse_bound(*v);
        if (const auto* v = get("outer_iters")) cfg.outer_iters = std::stoi(*v);
        if (const auto* v = get("inner_iters")) cfg.inner_iters = std::stoi(*v);
        if (const auto* v = get("outer_tol")) cfg.outer_tol = std::stod(*v);
        if (const auto* v = get("seed")) cfg.seed = std::stoull(*v);
        if (const auto* v = get("trace")) cfg.trace_path = *v;
        if (const auto* v = get("force")) cfg.force = (*v == "1" || *v == "true");
        if (const auto* v = get("continuation"); v && *v != "none")
            cfg.continuation = parse_continuation(*v, cfg.tau);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }

    if (!(cfg.p >= 1.0)) throw ConfigError("p must satisfy p >= 1");
    if (!(cfg.tau >= 0.0)) throw ConfigError("tau must be nonnegative");
    if (!(cfg.box_lo <= cfg.box_hi)) throw ConfigError("box_lo must not exceed box_hi");
    if (cfg.outer_iters < 1 || cfg.inner_iters < 1) throw ConfigError("iteration budgets must be positive");
    if (cfg.factor < 1) throw ConfigError("factor must be >= 1");
    if (!(cfg.mask_ratio > 0.0 && cfg.mask_ratio <= 1.0)) throw ConfigError("mask_ratio must be in (0, 1]");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    return parse_config_text(read_text_file(path));
}

namespace {

Kernel realize_kernel(const ExperimentConfig& cfg) {
    switch (cfg.kernel.kind) {
        case KernelSpec::Kind::identity: return identity_kernel();
        case KernelSpec::Kind::gaussian: return gaussian_kernel(cfg.kernel.support, cfg.kernel.sigma);
        case KernelSpec::Kind::uniform: return uniform_kernel(cfg.kernel.support);
        case KernelSpec::Kind::file: return load_kernel(cfg.kernel.path);
    }
    throw ConfigError("unreachable kernel kind");
}

std::string sidecar_path(const std::string& output) { return output + ".json"; }

std::string canonical_for_hash(const ExperimentConfig& cfg) {
    // Hash over the run-defining fields, in fixed order.
    std::ostringstream os;
    os.precision(17);
    os << "task=" << static_cast<int>(cfg.task) << "\ninput=" << cfg.input
       << "\noutput=" << cfg.output << "\np=" << cfg.p << "\ntau=" << cfg.tau;
    os << "\ntau_grid=";
    for (double t : cfg.tau_grid) os << t << ",";
    if (cfg.bsnr_db) os << "\nbsnr_db=" << *cfg.bsnr_db;
    if (cfg.sigma_w) os << "\nsigma_w=" << *cfg.sigma_w;
    os << "\nkernel=" << static_cast<int>(cfg.kernel.kind) << ":" << cfg.kernel.support << ":"
       << cfg.kernel.sigma << ":" << cfg.kernel.path << "\nperturb_sigma=" << cfg.perturb_sigma
       << "\nmask_ratio=" << cfg.mask_ratio << "\nfactor=" << cfg.factor
       << "\nbox=" << cfg.box_lo << ":" << cfg.box_hi << "\nouter_iters=" << cfg.outer_iters
       << "\ninner_iters=" << cfg.inner_iters << "\nouter_tol=" << cfg.outer_tol
       << "\nseed=" << cfg.seed;
    if (cfg.continuation)
        os << "\ncontinuation=" << cfg.continuation->tau_start << ":" << cfg.continuation->factor
           << ":" << cfg.continuation->tau_floor;
    return os.str();
}

void check_replay(const ExperimentConfig& cfg, std::uint64_t hash) {
    const std::string side = sidecar_path(cfg.output);
    if (!std::filesystem::exists(side) || cfg.force) return;
    try {
        const auto j = nlohmann::json::parse(read_text_file(side));
        if (j.contains("config_hash") && j["config_hash"].get<std::uint64_t>() != hash)
            throw ConfigError("output sidecar " + side +
                              " was produced by a different config; pass force=1 to overwrite");
    } catch (const nlohmann::json::exception&) {
        // Unreadable sidecar: treat as absent.
    }
}

void write_record(const ExperimentConfig& cfg, std::uint64_t hash, nlohmann::json extra) {
    extra["config_hash"] = hash;
    extra["version"] = kArtifactVersion;
    write_text_file(sidecar_path(cfg.output), extra.dump(2) + "\n");
}

std::unique_ptr<ForwardModel> build_model(const ExperimentConfig& cfg, int w, int h,
                                          bool for_reconstruct) {
    switch (cfg.task) {
        case Task::denoise:
            return identity_model(w, h);
        case Task::deblur: {
            Kernel k = cfg.kernel_file.empty() ? realize_kernel(cfg) : load_kernel(cfg.kernel_file);
            if (for_reconstruct && cfg.perturb_sigma > 0.0)
                k = perturb_kernel(k, cfg.perturb_sigma, cfg.seed + 1);
            return blur_model(w, h, k);
        }
        case Task::sparse: {
            const MaskBitmap m = cfg.mask_file.empty() || !std::filesystem::exists(cfg.mask_file)
                                     ? make_mask(w, h, cfg.mask_ratio, cfg.seed)
                                     : load_mask(cfg.mask_file);
            return mask_model(m);
        }
        case Task::interpolate:
            return decimate_model(w, h, cfg.factor);
        case Task::zoom: {
            Kernel k = cfg.kernel_file.empty() ? realize_kernel(cfg) : load_kernel(cfg.kernel_file);
            if (for_reconstruct && cfg.perturb_sigma > 0.0)
                k = perturb_kernel(k, cfg.perturb_sigma, cfg.seed + 1);
            return zoom_model(w, h, k, cfg.factor);
        }
    }
    throw ConfigError("unreachable task");
}

Image degraded_on_full_grid(const ExperimentConfig& cfg, const Image& y, int full_w, int full_h) {
    if (cfg.task == Task::interpolate || cfg.task == Task::zoom)
        return upsample_replicate(y, cfg.factor, full_w, full_h);
    return y;
}

}  // namespace

int cmd_degrade(const ExperimentConfig& cfg) {
    if (cfg.input.empty() || cfg.output.empty()) throw ConfigError("degrade needs input and output");
    const Image x = image_read(cfg.input);
    const std::uint64_t hash = config_hash(canonical_for_hash(cfg));
    check_replay(cfg, hash);

    nlohmann::json record;
    record["task"] = static_cast<int>(cfg.task);
    record["seed"] = cfg.seed;

    if ((cfg.task == Task::deblur || cfg.task == Task::zoom) && !cfg.kernel_file.empty()) {
        save_kernel(cfg.kernel_file, realize_kernel(cfg));
        record["kernel_file"] = cfg.kernel_file;
    }
    if (cfg.task == Task::sparse && !cfg.mask_file.empty()) {
        save_mask(cfg.mask_file, make_mask(x.width, x.height, cfg.mask_ratio, cfg.seed));
        record["mask_file"] = cfg.mask_file;
    }

    const auto model = build_model(cfg, x.width, x.height, false);
    Image y = model->apply(x);
    if (cfg.bsnr_db) {
        const NoisyObservation obs = add_noise_at_bsnr(y, *cfg.bsnr_db, cfg.seed);
        y = obs.y;
        record["sigma_w"] = obs.sigma_w;
        record["bsnr_db"] = *cfg.bsnr_db;
    } else if (cfg.sigma_w && *cfg.sigma_w > 0.0) {
        CounterRng rng(cfg.seed);
        for (double& v : y.data) v += *cfg.sigma_w * rng.next_gaussian();
        record["sigma_w"] = *cfg.sigma_w;
    }
    image_write(cfg.output, y);
    write_record(cfg, hash, std::move(record));
    return 0;
}

int cmd_reconstruct(const ExperimentConfig& cfg) {
    if (cfg.input.empty() || cfg.output.empty()) throw ConfigError("reconstruct needs input and output");
    const Image y = image_read(cfg.input);
    const std::uint64_t hash = config_hash(canonical_for_hash(cfg));
    check_replay(cfg, hash);

    int full_w = y.width, full_h = y.height;
    if (cfg.task == Task::interpolate || cfg.task == Task::zoom) {
        full_w = y.width * cfg.factor;
        full_h = y.height * cfg.factor;
    }
    const auto model = build_model(cfg, full_w, full_h, true);

    ReconstructionConfig rc;
    rc.tau = cfg.tau;
    rc.order = SchattenOrder::from_p(cfg.p);
    rc.box = {cfg.box_lo, cfg.box_hi};
    rc.outer_iters = cfg.outer_iters;
    rc.outer_tol = cfg.outer_tol;
    rc.inner_iters = cfg.inner_iters;
    rc.continuation = cfg.continuation;
    rc.seed = cfg.seed;

    std::optional<Image> truth;
    std::optional<Image> degraded_full;
    if (!cfg.ground_truth.empty()) {
        truth = image_read(cfg.ground_truth);
        degraded_full = degraded_on_full_grid(cfg, y, truth->width, truth->height);
    }

    const ReconstructionResult res =
        reconstruct(y, *model, rc, truth ? &*truth : nullptr,
                    degraded_full ? &*degraded_full : nullptr);

    image_write(cfg.output, res.x_hat);
    if (!cfg.trace_path.empty()) write_text_file(cfg.trace_path, trace_to_text(res.trace));

    nlohmann::json record;
    record["iterations"] = res.trace.iterations_used;
    record["seconds"] = res.trace.wall_seconds;
    record["tau"] = cfg.tau;
    if (truth) {
        const MetricReport r = metric_report(*truth, *degraded_full, res.x_hat);
        record["metrics"] = metric_record_line(r);
        record["isnr_db"] = r.isnr_db;
        record["psnr_db"] = r.psnr_db;
    }
    write_record(cfg, hash, std::move(record));
    return 0;
}

int cmd_gridsearch(const ExperimentConfig& cfg) {
    if (cfg.ground_truth.empty()) throw ConfigError("gridsearch needs ground_truth for ISNR ranking");
    std::vector<double> grid = cfg.tau_grid.empty() ? std::vector<double>{cfg.tau} : cfg.tau_grid;

    double best_isnr = -kInfinityOrder;
    double best_tau = grid.front();
    nlohmann::json points = nlohmann::json::array();
    for (double tau : grid) {
        ExperimentConfig point = cfg;
        point.tau = tau;
        point.tau_grid.clear();
        point.force = true;
        if (point.continuation) point.continuation->tau_floor = tau;
        cmd_reconstruct(point);
        const auto rec = nlohmann::json::parse(read_text_file(sidecar_path(point.output)));
        const double v = rec["isnr_db"].get<double>();
        points.push_back({{"tau", tau}, {"isnr_db", v}});
        if (v > best_isnr) {
            best_isnr = v;
            best_tau = tau;
        }
    }
    // Re-run the winner so the written image matches the reported record.
    ExperimentConfig best = cfg;
    best.tau = best_tau;
    best.tau_grid.clear();
    best.force = true;
    if (best.continuation) best.continuation->tau_floor = best_tau;
    cmd_reconstruct(best);

    auto rec = nlohmann::json::parse(read_text_file(sidecar_path(cfg.output)));
    rec["grid"] = points;
    rec["best_tau"] = best_tau;
    rec["best_isnr_db"] = best_isnr;
    write_text_file(sidecar_path(cfg.output), rec.dump(2) + "\n");
    return 0;
}

int cmd_metrics(const ExperimentConfig& cfg) {
    if (cfg.ground_truth.empty() || cfg.input.empty() || cfg.output.empty())
        throw ConfigError("metrics needs ground_truth, input (degraded), output (restored)");
    const Image truth = image_read(cfg.ground_truth);
    const Image restored = image_read(cfg.output);
    Image degraded = image_read(cfg.input);
    degraded = degraded_on_full_grid(cfg, degraded, truth.width, truth.height);
    const MetricReport r = metric_report(truth, degraded, restored);
    std::printf("%s\n", metric_record_line(r).c_str());
    return 0;
}

}  // namespace hessreg
