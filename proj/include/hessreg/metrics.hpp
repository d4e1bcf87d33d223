#pragma once

#include <optional>
#include <string>

#include "hessreg/image.hpp"

namespace hessreg {

struct MetricReport {
    double mse_in = 0.0;
    double mse_out = 0.0;
    double isnr_db = 0.0;
    double psnr_db = 0.0;
    std::optional<double> realized_bsnr_db;
};

double mse(const Image& a, const Image& b);

/// 10 log10(MSE_in / MSE_out); +inf sentinel for a perfect restoration.
double isnr(const Image& original, const Image& degraded, const Image& restored);

double psnr(const Image& reference, const Image& estimate, double peak = 1.0);

/// Pixel replication to the original grid, used to compare against
/// subsampled observations.
Image upsample_replicate(const Image& low, int factor, int full_width, int full_height);

MetricReport metric_report(const Image& original, const Image& degraded, const Image& restored,
                           double peak = 1.0);

std::string metric_record_line(const MetricReport& r);

}  // namespace hessreg
