#pragma once

// Netpbm (P2/P3/P5/P6) reading and writing, plus CSV row-slice export.
// Samples are normalised to [0,1] by maxval on load and quantised with
// round(x * maxval), clamped, on save. 16-bit binary samples are big-endian.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bhtv/grid.hpp"

namespace bhtv {

/// One plane for grayscale files, three (r, g, b) for colour files.
struct Raster {
    std::vector<Image> planes;

    bool is_color() const noexcept { return planes.size() == 3; }
    int rows() const noexcept { return planes.empty() ? 0 : planes.front().rows(); }
    int cols() const noexcept { return planes.empty() ? 0 : planes.front().cols(); }
};

enum class Encoding { Ascii, Binary };

struct WriteOptions {
    Encoding encoding = Encoding::Binary;
    int maxval = 255;
};

Raster decode_netpbm(std::string_view bytes);
std::string encode_netpbm(const Raster& raster, const WriteOptions& options = {});

Raster read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const Raster& raster, const WriteOptions& options = {});

Raster gray_raster(Image plane);
Raster color_raster(ColorImage planes);
ColorImage color_planes(const Raster& raster);

/// Luma 0.299 R + 0.587 G + 0.114 B for colour rasters, the plane itself otherwise.
Image to_gray(const Raster& raster);

/// 1-based middle row floor((n + 1) / 2).
int middle_row(int rows) noexcept;

/// CSV "j,value" (1-based j), one line per column of the chosen 1-based row.
std::string slice_csv(const Image& img, std::optional<int> row = std::nullopt);
void export_slice(const Image& img, std::optional<int> row, const std::filesystem::path& path);

/// Writes a text file exactly as given; throws IoError on failure.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace bhtv
