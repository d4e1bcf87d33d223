#pragma once

#include <string>

#include "hessreg/forward.hpp"
#include "hessreg/image.hpp"

namespace hessreg {

/// Reads 8/16-bit grayscale PGM (P2/P5) or grayscale PNG; values are scaled
/// by the file's maximum sample value into [0, 1].
Image image_read(const std::string& path);

/// Writes 16-bit output; format chosen from the extension (.pgm -> binary
/// P5, .png -> grayscale PNG). Values are clamped to [0, 1] at write time.
void image_write(const std::string& path, const Image& img);

/// Plain-text kernel file: first line "w h", then h rows of w reals.
Kernel load_kernel(const std::string& path);
void save_kernel(const std::string& path, const Kernel& k);

/// Text mask file: "width height ratio seed" header, then run-length pairs
/// "value count" over the raster order.
MaskBitmap load_mask(const std::string& path);
void save_mask(const std::string& path, const MaskBitmap& m);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace hessreg
