#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hessreg/solver.hpp"

namespace hessreg {

/// Raised for malformed configs; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Task { denoise, deblur, sparse, interpolate, zoom };

struct KernelSpec {
    enum class Kind { identity, gaussian, uniform, file } kind = Kind::identity;
    int support = 1;
    double sigma = 1.0;
    std::string path;
};

struct ExperimentConfig {
    Task task = Task::denoise;
    std::string input;
    std::string output;
    std::string ground_truth;
    double p = 1.0;
    double tau = 1e-3;
    std::vector<double> tau_grid;
    std::optional<double> bsnr_db;
    std::optional<double> sigma_w;
    KernelSpec kernel;
    double perturb_sigma = 0.0;
    std::string kernel_file;
    double mask_ratio = 0.1;
    std::string mask_file;
    int factor = 4;
    double box_lo = 0.0;
    double box_hi = 1.0;
    int outer_iters = 100;
    int inner_iters = 10;
    double outer_tol = 1e-5;
    std::optional<ContinuationSchedule> continuation;
    std::uint64_t seed = 0;
    std::string trace_path;
    bool force = false;
};

/// Flat key=value document; '#' starts a comment; unknown keys are rejected.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// FNV-1a over the canonicalized key=value form.
std::uint64_t config_hash(const std::string& canonical_text);
std::string canonicalize_config(const std::string& text);

int cmd_degrade(const ExperimentConfig& cfg);
int cmd_reconstruct(const ExperimentConfig& cfg);
int cmd_gridsearch(const ExperimentConfig& cfg);
int cmd_metrics(const ExperimentConfig& cfg);

}  // namespace hessreg
