#include "bhtv/imgio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "bhtv/error.hpp"

namespace bhtv {

namespace {

class HeaderReader {
public:
    HeaderReader(std::string_view bytes, std::size_t start) : bytes_(bytes), pos_(start) {}

    std::size_t pos() const noexcept { return pos_; }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    unsigned long read_uint(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        unsigned long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            value = value * 10 + static_cast<unsigned long>(bytes_[pos_] - '0');
            if (value > 0xFFFFFFFFul) throw ParseError(std::string(what) + " is too large", start);
            ++pos_;
        }
        if (pos_ == start) {
            if (pos_ >= bytes_.size()) throw ParseError(std::string("unexpected end of data reading ") + what, pos_);
            throw ParseError(std::string("expected ") + what, pos_);
        }
        return value;
    }

    // Exactly one whitespace byte separates the header from a binary payload.
    void expect_single_space() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
            throw ParseError("expected whitespace after maxval", pos_);
        }
        ++pos_;
    }

private:
    std::string_view bytes_;
    std::size_t pos_;
};

long quantize(double x, int maxval) {
    const double clamped = std::clamp(std::isfinite(x) ? x : 0.0, 0.0, 1.0);
    return std::lround(clamped * maxval);
}

void check_raster(const Raster& raster) {
    if (raster.planes.size() != 1 && raster.planes.size() != 3) {
        throw ParameterError("raster must have 1 or 3 planes");
    }
    for (const Image& p : raster.planes) {
        if (!p.same_shape(raster.planes.front())) throw DimensionError("raster planes differ in shape");
    }
}

}  // namespace

Raster decode_netpbm(std::string_view bytes) {
    if (bytes.size() < 2) throw ParseError("file too short for a Netpbm header", 0);
    if (bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '3' && bytes[1] != '5' && bytes[1] != '6')) {
        throw ParseError("unsupported magic number", 0);
    }
    const bool color = bytes[1] == '3' || bytes[1] == '6';
    const bool binary = bytes[1] == '5' || bytes[1] == '6';

    HeaderReader in(bytes, 2);
    if (bytes.size() > 2 && !std::isspace(static_cast<unsigned char>(bytes[2])) && bytes[2] != '#') {
        throw ParseError("unsupported magic number", 0);
    }
    const unsigned long width = in.read_uint("width");
    const unsigned long height = in.read_uint("height");
    in.skip_space_and_comments();
    const std::size_t maxval_at = in.pos();
    const unsigned long maxval = in.read_uint("maxval");
    if (width == 0 || height == 0) throw ParseError("zero image dimension", maxval_at);
    if (width > 1u << 20 || height > 1u << 20) throw ParseError("image dimensions too large", maxval_at);
    if (maxval == 0 || maxval > 65535) throw ParseError("maxval must lie in [1, 65535]", maxval_at);

    const int n = static_cast<int>(height);
    const int m = static_cast<int>(width);
    const int channels = color ? 3 : 1;
    Raster out;
    for (int c = 0; c < channels; ++c) out.planes.emplace_back(n, m);
    const double scale = 1.0 / static_cast<double>(maxval);

    if (binary) {
        in.expect_single_space();
        std::size_t pos = in.pos();
        const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
        const std::size_t needed = static_cast<std::size_t>(n) * m * channels * bytes_per_sample;
        if (bytes.size() - pos < needed) throw ParseError("truncated payload", bytes.size());
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < m; ++j) {
                for (int c = 0; c < channels; ++c) {
                    unsigned long v = static_cast<unsigned char>(bytes[pos++]);
                    if (bytes_per_sample == 2) v = (v << 8) | static_cast<unsigned char>(bytes[pos++]);
                    if (v > maxval) throw ParseError("sample exceeds maxval", pos - bytes_per_sample);
                    out.planes[c](i, j) = static_cast<double>(v) * scale;
                }
            }
        }
        return out;
    }

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            for (int c = 0; c < channels; ++c) {
                const std::size_t at = in.pos();
                const unsigned long v = in.read_uint("sample");
                if (v > maxval) throw ParseError("sample exceeds maxval", at);
                out.planes[c](i, j) = static_cast<double>(v) * scale;
            }
        }
    }
    return out;
}

std::string encode_netpbm(const Raster& raster, const WriteOptions& options) {
    check_raster(raster);
    if (options.maxval < 1 || options.maxval > 65535) throw ParameterError("maxval must lie in [1, 65535]");
    const bool color = raster.is_color();
    const bool binary = options.encoding == Encoding::Binary;
    const char magic = color ? (binary ? '6' : '3') : (binary ? '5' : '2');
    const int n = raster.rows();
    const int m = raster.cols();

    std::string out = "P";
    out += magic;
    out += '\n' + std::to_string(m) + ' ' + std::to_string(n) + '\n' + std::to_string(options.maxval) + '\n';

    if (binary) {
        const bool wide = options.maxval > 255;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < m; ++j) {
                for (const Image& p : raster.planes) {
                    const long v = quantize(p(i, j), options.maxval);
                    if (wide) out += static_cast<char>((v >> 8) & 0xFF);
                    out += static_cast<char>(v & 0xFF);
                }
            }
        }
        return out;
    }
    for (int i = 0; i < n; ++i) {
        std::string line;
        for (int j = 0; j < m; ++j) {
            for (const Image& p : raster.planes) {
                if (!line.empty()) line += ' ';
                line += std::to_string(quantize(p(i, j), options.maxval));
            }
        }
        out += line;
        out += '\n';
    }
    return out;
}

Raster read_image(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for reading");
    const std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (f.bad()) throw IoError("read failed for " + path.string());
    return decode_netpbm(bytes);
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw IoError("write failed for " + path.string());
}

void write_image(const std::filesystem::path& path, const Raster& raster, const WriteOptions& options) {
    write_text(path, encode_netpbm(raster, options));
}

Raster gray_raster(Image plane) {
    Raster r;
    r.planes.push_back(std::move(plane));
    return r;
}

Raster color_raster(ColorImage planes) {
    Raster r;
    for (Image& p : planes) r.planes.push_back(std::move(p));
    return r;
}

ColorImage color_planes(const Raster& raster) {
    if (raster.is_color()) return {raster.planes[0], raster.planes[1], raster.planes[2]};
    if (raster.planes.size() != 1) throw ParameterError("raster must have 1 or 3 planes");
    return {raster.planes[0], raster.planes[0], raster.planes[0]};
}

Image to_gray(const Raster& raster) {
    check_raster(raster);
    if (!raster.is_color()) return raster.planes.front();
    Image g(raster.rows(), raster.cols());
    const auto r = raster.planes[0].values();
    const auto gr = raster.planes[1].values();
    const auto b = raster.planes[2].values();
    auto out = g.values();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = 0.299 * r[k] + 0.587 * gr[k] + 0.114 * b[k];
    return g;
}

int middle_row(int rows) noexcept { return (rows + 1) / 2; }

std::string slice_csv(const Image& img, std::optional<int> row) {
    const int r = row.value_or(middle_row(img.rows()));
    if (r < 1 || r > img.rows()) {
        throw ParameterError("slice row " + std::to_string(r) + " outside 1.." + std::to_string(img.rows()));
    }
    std::string out = "j,value\n";
    char buf[64];
    for (int j = 0; j < img.cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", j + 1, img(r - 1, j));
        out += buf;
    }
    return out;
}

void export_slice(const Image& img, std::optional<int> row, const std::filesystem::path& path) {
    write_text(path, slice_csv(img, row));
}

}  // namespace bhtv
