#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hessreg {

/// Real-valued intensity grid. Pixel (i, j) with 0-based row index i
/// (first image dimension) and column index j is stored at j*width + i,
/// matching the rasterization n = j*N_x + (i+1) for 1-based indices.
struct Image {
    int width = 0;   // N_x, extent of the first (row) dimension
    int height = 0;  // N_y, extent of the second (column) dimension
    std::vector<double> data;

    Image() = default;
    Image(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("Image: non-positive dimensions");
    }

    std::size_t size() const { return data.size(); }

    double& at(int i, int j) { return data[static_cast<std::size_t>(j) * width + i]; }
    double at(int i, int j) const { return data[static_cast<std::size_t>(j) * width + i]; }

    bool same_shape(const Image& o) const { return width == o.width && height == o.height; }
};

inline void check_same_shape(const Image& a, const Image& b, const char* what) {
    if (!a.same_shape(b)) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

double dot(const Image& a, const Image& b);
double norm2(const Image& a);

Image operator+(const Image& a, const Image& b);
Image operator-(const Image& a, const Image& b);
Image operator*(double c, const Image& a);

}  // namespace hessreg
