#pragma once

#include "qrsl/microqr.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qrsl {

/// 8-bit grayscale image, row-major.
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    Raster() = default;
    Raster(int w, int h, std::uint8_t fill = 255)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    void set(int x, int y, std::uint8_t v) { pixels[static_cast<std::size_t>(y) * width + x] = v; }

    bool operator==(const Raster&) const = default;
};

/// Axis-aligned pixel box.
struct BBox {
    int x = 0, y = 0, w = 0, h = 0;

    int right() const { return x + w; }   // exclusive
    int bottom() const { return y + h; }  // exclusive
    bool inside(const Raster& r) const {
        return x >= 0 && y >= 0 && w >= 1 && h >= 1 && right() <= r.width && bottom() <= r.height;
    }
    bool operator==(const BBox&) const = default;
};

/// Intersection-over-union of two boxes (0 when disjoint).
double bbox_iou(const BBox& a, const BBox& b);

/// Renders a symbol: dark modules 0, light 255, quiet zone around.
/// Output side = (side + 2*quiet_zone_modules) * module_px.
Raster rasterize_symbol(const SymbolMatrix& symbol, int module_px, int quiet_zone_modules);

/// Samples a side x side module grid from a raster region: a module is dark
/// when the intensity at its center is below the threshold.
SymbolMatrix sample_symbol_grid(const Raster& raster, const BBox& box, int side,
                                std::uint8_t threshold);

Raster resize_bilinear(const Raster& src, int new_w, int new_h);

/// Copies src into dst at (x, y); parts outside dst are clipped.
void paste(Raster& dst, const Raster& src, int x, int y);

/// Otsu threshold over a region (whole image when box covers it). Returns
/// the threshold maximizing between-class variance; 128 for flat regions.
std::uint8_t otsu_threshold(const Raster& raster, const BBox& box);

// Binary 8-bit PGM (P5).
void write_pgm(const Raster& raster, const std::filesystem::path& path);
Raster read_pgm(const std::filesystem::path& path);

} // namespace qrsl
