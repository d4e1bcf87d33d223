#include "hessreg/image.hpp"

#include <cmath>

namespace hessreg {

double dot(const Image& a, const Image& b) {
    check_same_shape(a, b, "dot");
    double acc = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) acc += a.data[n] * b.data[n];
    return acc;
}

double norm2(const Image& a) {
    double acc = 0.0;
    for (double v : a.data) acc += v * v;
    return acc;
}

Image operator+(const Image& a, const Image& b) {
    check_same_shape(a, b, "operator+");
    Image out(a.width, a.height);
    for (std::size_t n = 0; n < a.size(); ++n) out.data[n] = a.data[n] + b.data[n];
    return out;
}

Image operator-(const Image& a, const Image& b) {
    check_same_shape(a, b, "operator-");
    Image out(a.width, a.height);
    for (std::size_t n = 0; n < a.size(); ++n) out.data[n] = a.data[n] - b.data[n];
    return out;
}

Image operator*(double c, const Image& a) {
    Image out(a.width, a.height);
    for (std::size_t n = 0; n < a.size(); ++n) out.data[n] = c * a.data[n];
    return out;
}

}  // namespace hessreg
