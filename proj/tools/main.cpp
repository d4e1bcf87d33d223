#include <CLI11.hpp>

#include <cstdio>
#include <limits>
#include <string>

#include "hessreg/harness.hpp"
#include "hessreg/io.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 3 numerical failure.
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

struct CommonFlags {
    std::string config_path;
    std::string input, output, ground_truth, trace_path;
    std::string task, kernel, continuation, p;
    double tau = -1.0;
    std::string tau_grid;
    double bsnr_db = std::numeric_limits<double>::quiet_NaN();
    double mask_ratio = -1.0;
    int factor = -1;
    int outer_iters = -1;
    int inner_iters = -1;
    long long seed = -1;
    bool force = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "flat key=value config file");
    cmd->add_option("--task", f.task, "denoise|deblur|sparse|interpolate|zoom");
    cmd->add_option("--input", f.input);
    cmd->add_option("--output", f.output);
    cmd->add_option("--ground-truth", f.ground_truth);
    cmd->add_option("--p", f.p, "Schatten order (decimal or inf)");
    cmd->add_option("--tau", f.tau);
    cmd->add_option("--tau-grid", f.tau_grid, "comma-separated tau values");
    cmd->add_option("--bsnr", f.bsnr_db, "target BSNR in dB");
    cmd->add_option("--mask-ratio", f.mask_ratio);
    cmd->add_option("--kernel", f.kernel, "identity | gaussian:support:sigma | uniform:support | file:path");
    cmd->add_option("--factor", f.factor);
    cmd->add_option("--outer-iters", f.outer_iters);
    cmd->add_option("--inner-iters", f.inner_iters);
    cmd->add_option("--continuation", f.continuation, "start:factor:floor | auto | none");
    cmd->add_option("--seed", f.seed);
    cmd->add_option("--trace", f.trace_path);
    cmd->add_flag("--force", f.force, "overwrite outputs from a different config");
}

// Flags override config-file values by being appended to the document.
hessreg::ExperimentConfig build_config(const CommonFlags& f) {
    std::string text;
    if (!f.config_path.empty()) text = hessreg::read_text_file(f.config_path);
    auto append = [&](const std::string& key, const std::string& value) {
        if (!value.empty()) text += "\n" + key + "=" + value;
    };
    append("task", f.task);
    append("input", f.input);
    append("output", f.output);
    append("ground_truth", f.ground_truth);
    append("p", f.p);
    if (f.tau >= 0.0) text += "\ntau=" + std::to_string(f.tau);
    append("tau_grid", f.tau_grid);
    if (f.bsnr_db == f.bsnr_db) text += "\nbsnr_db=" + std::to_string(f.bsnr_db);
    if (f.mask_ratio > 0.0) text += "\nmask_ratio=" + std::to_string(f.mask_ratio);
    append("kernel", f.kernel);
    if (f.factor > 0) text += "\nfactor=" + std::to_string(f.factor);
    if (f.outer_iters > 0) text += "\nouter_iters=" + std::to_string(f.outer_iters);
    if (f.inner_iters > 0) text += "\ninner_iters=" + std::to_string(f.inner_iters);
    append("continuation", f.continuation);
    if (f.seed >= 0) text += "\nseed=" + std::to_string(f.seed);
    append("trace", f.trace_path);
    if (f.force) text += "\nforce=1";
    return hessreg::parse_config_text(text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hessian Schatten-norm regularized image reconstruction"};
    app.require_subcommand(1);

    CommonFlags f_degrade, f_reconstruct, f_gridsearch, f_metrics;
    CLI::App* degrade = app.add_subcommand("degrade", "apply a forward model and noise to an image");
    CLI::App* reconstruct = app.add_subcommand("reconstruct", "solve the regularized inverse problem");
    CLI::App* gridsearch = app.add_subcommand("gridsearch", "reconstruct over a tau grid, keep the best ISNR");
    CLI::App* metrics = app.add_subcommand("metrics", "report MSE/ISNR/PSNR for a restored image");
    add_common(degrade, f_degrade);
    add_common(reconstruct, f_reconstruct);
    add_common(gridsearch, f_gridsearch);
    add_common(metrics, f_metrics);

    CLI11_PARSE(app, argc, argv);

    try {
        if (degrade->parsed()) return hessreg::cmd_degrade(build_config(f_degrade));
        if (reconstruct->parsed()) return hessreg::cmd_reconstruct(build_config(f_reconstruct));
        if (gridsearch->parsed()) return hessreg::cmd_gridsearch(build_config(f_gridsearch));
        if (metrics->parsed()) return hessreg::cmd_metrics(build_config(f_metrics));
    } catch (const hessreg::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kNumericalError;
    }
    return kConfigError;
}
