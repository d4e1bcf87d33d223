#include "hessreg/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hessreg {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw std::runtime_error(path + ": " + why);
}

bool has_suffix(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

int pnm_next_token(std::istream& in, std::string& tok) {
    tok.clear();
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
        } else if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            while ((c = in.get()) != EOF && !std::isspace(c) && c != '#') tok.push_back(static_cast<char>(c));
            if (c == '#') in.unget();
            return 0;
        }
    }
    return -1;
}

Image read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    std::string tok;
    if (pnm_next_token(in, tok) != 0) fail(path, "truncated header");
    const bool binary = tok == "P5";
    if (!binary && tok != "P2") fail(path, "not a P2/P5 PGM file");
    int w, h, maxval;
    auto next_int = [&](int& out) {
        if (pnm_next_token(in, tok) != 0) fail(path, "truncated header");
        out = std::stoi(tok);
    };
    next_int(w);
    next_int(h);
    next_int(maxval);
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) fail(path, "bad PGM header");

    // File raster is row-major top-to-bottom; file row index maps to the
    // second image dimension j, file column to i.
    Image img(h, w);  // N_x = rows, N_y = columns per the grid convention
    const double scale = 1.0 / maxval;
    if (binary) {
        const int bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> buf(static_cast<std::size_t>(w) * h * bytes);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (!in) fail(path, "truncated pixel data");
        for (int r = 0; r < h; ++r)
            for (int c2 = 0; c2 < w; ++c2) {
                const std::size_t k = (static_cast<std::size_t>(r) * w + c2) * bytes;
                const int v = bytes == 2 ? (buf[k] << 8) | buf[k + 1] : buf[k];
                img.at(r, c2) = v * scale;
            }
    } else {
        for (int r = 0; r < h; ++r)
            for (int c2 = 0; c2 < w; ++c2) {
                if (pnm_next_token(in, tok) != 0) fail(path, "truncated pixel data");
                img.at(r, c2) = std::stoi(tok) * scale;
            }
    }
    return img;
}

void write_pgm(const std::string& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    const int rows = img.width, cols = img.height;
    out << "P5\n" << cols << " " << rows << "\n65535\n";
    std::vector<unsigned char> buf(static_cast<std::size_t>(rows) * cols * 2);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const double v = std::clamp(img.at(r, c), 0.0, 1.0);
            const int q = static_cast<int>(std::lround(v * 65535.0));
            const std::size_t k = (static_cast<std::size_t>(r) * cols + c) * 2;
            buf[k] = static_cast<unsigned char>((q >> 8) & 0xFF);
            buf[k + 1] = static_cast<unsigned char>(q & 0xFF);
        }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) fail(path, "write failed");
}

struct PngReadCloser {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* fp = nullptr;
    ~PngReadCloser() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

Image read_png(const std::string& path) {
    PngReadCloser s;
    s.fp = std::fopen(path.c_str(), "rb");
    if (!s.fp) fail(path, "cannot open");
    s.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    s.info = png_create_info_struct(s.png);
    if (!s.png || !s.info) fail(path, "libpng init failed");
    if (setjmp(png_jmpbuf(s.png))) fail(path, "libpng read error");
    png_init_io(s.png, s.fp);
    png_read_info(s.png, s.info);

    const png_uint_32 w = png_get_image_width(s.png, s.info);
    const png_uint_32 h = png_get_image_height(s.png, s.info);
    const int color = png_get_color_type(s.png, s.info);
    int depth = png_get_bit_depth(s.png, s.info);
    if (color != PNG_COLOR_TYPE_GRAY) fail(path, "only grayscale PNG is supported");
    if (depth < 8) {
        png_set_expand_gray_1_2_4_to_8(s.png);
        depth = 8;
    }
    png_read_update_info(s.png, s.info);

    const int bytes = depth > 8 ? 2 : 1;
    std::vector<unsigned char> row(static_cast<std::size_t>(w) * bytes);
    Image img(static_cast<int>(h), static_cast<int>(w));
    const double scale = depth > 8 ? 1.0 / 65535.0 : 1.0 / 255.0;
    for (png_uint_32 r = 0; r < h; ++r) {
        png_read_row(s.png, row.data(), nullptr);
        for (png_uint_32 c = 0; c < w; ++c) {
            const int v = bytes == 2 ? (row[2 * c] << 8) | row[2 * c + 1] : row[c];
            img.at(static_cast<int>(r), static_cast<int>(c)) = v * scale;
        }
    }
    return img;
}

struct PngWriteCloser {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* fp = nullptr;
    ~PngWriteCloser() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp) std::fclose(fp);
    }
};

void write_png(const std::string& path, const Image& img) {
    PngWriteCloser s;
    s.fp = std::fopen(path.c_str(), "wb");
    if (!s.fp) fail(path, "cannot open for writing");
    s.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    s.info = png_create_info_struct(s.png);
    if (!s.png || !s.info) fail(path, "libpng init failed");
    if (setjmp(png_jmpbuf(s.png))) fail(path, "libpng write error");
    png_init_io(s.png, s.fp);

    const int rows = img.width, cols = img.height;
    png_set_IHDR(s.png, s.info, static_cast<png_uint_32>(cols), static_cast<png_uint_32>(rows), 16,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(s.png, s.info);
    std::vector<unsigned char> row(static_cast<std::size_t>(cols) * 2);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const double v = std::clamp(img.at(r, c), 0.0, 1.0);
            const int q = static_cast<int>(std::lround(v * 65535.0));
            row[2 * c] = static_cast<unsigned char>((q >> 8) & 0xFF);
            row[2 * c + 1] = static_cast<unsigned char>(q & 0xFF);
        }
        png_write_row(s.png, row.data());
    }
    png_write_end(s.png, nullptr);
}

}  // namespace

Image image_read(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) fail(path, "cannot open");
    char magic[2] = {0, 0};
    probe.read(magic, 2);
    probe.close();
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) return read_pgm(path);
    if (static_cast<unsigned char>(magic[0]) == 0x89 && magic[1] == 'P') return read_png(path);
    fail(path, "unsupported image format (want PGM P2/P5 or grayscale PNG)");
}

void image_write(const std::string& path, const Image& img) {
    if (has_suffix(path, ".png")) {
        write_png(path, img);
    } else if (has_suffix(path, ".pgm")) {
        write_pgm(path, img);
    } else {
        fail(path, "unsupported output extension (want .pgm or .png)");
    }
}

Kernel load_kernel(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open");
    int w, h;
    if (!(in >> w >> h) || w < 1 || h < 1) fail(path, "bad kernel header");
    std::string line;
    std::getline(in, line);
    Kernel k;
    k.width = w;
    k.height = h;
    k.taps.assign(static_cast<std::size_t>(w) * h, 0.0);
    for (int j = 0; j < h; ++j) {
        if (!std::getline(in, line)) fail(path, "truncated kernel file");
        std::istringstream row(line);
        for (int i = 0; i < w; ++i)
            if (!(row >> k.at(i, j))) fail(path, "ragged kernel row " + std::to_string(j + 1));
        double extra;
        if (row >> extra) fail(path, "ragged kernel row " + std::to_string(j + 1));
    }
    return k;
}

void save_kernel(const std::string& path, const Kernel& k) {
    std::ostringstream os;
    os.precision(17);
    os << k.width << " " << k.height << "\n";
    for (int j = 0; j < k.height; ++j) {
        for (int i = 0; i < k.width; ++i) os << (i ? " " : "") << k.at(i, j);
        os << "\n";
    }
    write_text_file(path, os.str());
}

MaskBitmap load_mask(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open");
    MaskBitmap m;
    if (!(in >> m.width >> m.height >> m.ratio >> m.seed)) fail(path, "bad mask header");
    const std::size_t n = static_cast<std::size_t>(m.width) * m.height;
    m.keep.reserve(n);
    int value;
    std::size_t count;
    while (in >> value >> count) {
        if (value != 0 && value != 1) fail(path, "bad mask run value");
        m.keep.insert(m.keep.end(), count, static_cast<std::uint8_t>(value));
    }
    if (m.keep.size() != n) fail(path, "mask payload does not cover the grid");
    return m;
}

void save_mask(const std::string& path, const MaskBitmap& m) {
    std::ostringstream os;
    os.precision(17);
    os << m.width << " " << m.height << " " << m.ratio << " " << m.seed << "\n";
    std::size_t i = 0;
    while (i < m.keep.size()) {
        std::size_t j = i;
        while (j < m.keep.size() && m.keep[j] == m.keep[i]) ++j;
        os << static_cast<int>(m.keep[i]) << " " << (j - i) << "\n";
        i = j;
    }
    write_text_file(path, os.str());
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << content;
    if (!out) fail(path, "write failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace hessreg
