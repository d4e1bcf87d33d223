#include "hessreg/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hessreg {

double mse(const Image& a, const Image& b) {
    check_same_shape(a, b, "mse");
    double acc = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        const double d = a.data[n] - b.data[n];
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

double isnr(const Image& original, const Image& degraded, const Image& restored) {
    const double mse_in = mse(original, degraded);
    const double mse_out = mse(original, restored);
    if (mse_out == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(mse_in / mse_out);
}

double psnr(const Image& reference, const Image& estimate, double peak) {
    const double m = mse(reference, estimate);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / m);
}

Image upsample_replicate(const Image& low, int factor, int full_width, int full_height) {
    Image out(full_width, full_height);
    for (int j = 0; j < full_height; ++j)
        for (int i = 0; i < full_width; ++i)
            out.at(i, j) = low.at(std::min(i / factor, low.width - 1),
                                  std::min(j / factor, low.height - 1));
    return out;
}

MetricReport metric_report(const Image& original, const Image& degraded, const Image& restored,
                           double peak) {
    MetricReport r;
    r.mse_in = mse(original, degraded);
    r.mse_out = mse(original, restored);
    r.isnr_db = (r.mse_out == 0.0) ? std::numeric_limits<double>::infinity()
                                   : 10.0 * std::log10(r.mse_in / r.mse_out);
    r.psnr_db = psnr(original, restored, peak);
    return r;
}

std::string metric_record_line(const MetricReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "mse_in=" << r.mse_in << " mse_out=" << r.mse_out << " isnr_db=" << r.isnr_db
       << " psnr_db=" << r.psnr_db;
    if (r.realized_bsnr_db) os << " realized_bsnr_db=" << *r.realized_bsnr_db;
    return os.str();
}

}  // namespace hessreg
