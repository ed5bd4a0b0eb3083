#include "qrsl/raster.hpp"

#include "qrsl/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

namespace qrsl {

double bbox_iou(const BBox& a, const BBox& b) {
    int ix = std::max(a.x, b.x);
    int iy = std::max(a.y, b.y);
    int ir = std::min(a.right(), b.right());
    int ib = std::min(a.bottom(), b.bottom());
    if (ir <= ix || ib <= iy)
        return 0.0;
    double inter = static_cast<double>(ir - ix) * (ib - iy);
    double uni = static_cast<double>(a.w) * a.h + static_cast<double>(b.w) * b.h - inter;
    return inter / uni;
}

Raster rasterize_symbol(const SymbolMatrix& symbol, int module_px, int quiet_zone_modules) {
    if (module_px < 1)
        throw Error("rasterize_symbol: module_px must be >= 1");
    if (quiet_zone_modules < 0)
        throw Error("rasterize_symbol: quiet zone must be >= 0");
    int side_px = (symbol.side + 2 * quiet_zone_modules) * module_px;
    Raster out(side_px, side_px, 255);
    for (int my = 0; my < symbol.side; ++my) {
        for (int mx = 0; mx < symbol.side; ++mx) {
            if (!symbol.get(mx, my))
                continue;
            int x0 = (mx + quiet_zone_modules) * module_px;
            int y0 = (my + quiet_zone_modules) * module_px;
            for (int dy = 0; dy < module_px; ++dy)
                for (int dx = 0; dx < module_px; ++dx)
                    out.set(x0 + dx, y0 + dy, 0);
        }
    }
    return out;
}

SymbolMatrix sample_symbol_grid(const Raster& raster, const BBox& box, int side,
                                std::uint8_t threshold) {
    if (!box.inside(raster))
        throw Error("sample_symbol_grid: box outside raster");
    SymbolMatrix m(side);
    double mod_w = static_cast<double>(box.w) / side;
    double mod_h = static_cast<double>(box.h) / side;
    for (int my = 0; my < side; ++my) {
        for (int mx = 0; mx < side; ++mx) {
            int px = box.x + static_cast<int>((mx + 0.5) * mod_w);
            int py = box.y + static_cast<int>((my + 0.5) * mod_h);
            px = std::min(px, box.right() - 1);
            py = std::min(py, box.bottom() - 1);
            m.set(mx, my, raster.at(px, py) < threshold);
        }
    }
    return m;
}

Raster resize_bilinear(const Raster& src, int new_w, int new_h) {
    if (new_w < 1 || new_h < 1)
        throw Error("resize_bilinear: target size must be >= 1");
    if (new_w == src.width && new_h == src.height)
        return src;
    Raster out(new_w, new_h, 0);
    double sx = static_cast<double>(src.width) / new_w;
    double sy = static_cast<double>(src.height) / new_h;
    for (int y = 0; y < new_h; ++y) {
        double fy = (y + 0.5) * sy - 0.5;
        int y0 = static_cast<int>(std::floor(fy));
        double wy = fy - y0;
        int y1 = std::min(y0 + 1, src.height - 1);
        y0 = std::clamp(y0, 0, src.height - 1);
        for (int x = 0; x < new_w; ++x) {
            double fx = (x + 0.5) * sx - 0.5;
            int x0 = static_cast<int>(std::floor(fx));
            double wx = fx - x0;
            int x1 = std::min(x0 + 1, src.width - 1);
            x0 = std::clamp(x0, 0, src.width - 1);
            double v = (1 - wy) * ((1 - wx) * src.at(x0, y0) + wx * src.at(x1, y0)) +
                       wy * ((1 - wx) * src.at(x0, y1) + wx * src.at(x1, y1));
            out.set(x, y, static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0))));
        }
    }
    return out;
}

void paste(Raster& dst, const Raster& src, int x, int y) {
    int x0 = std::max(0, -x), y0 = std::max(0, -y);
    int x1 = std::min(src.width, dst.width - x);
    int y1 = std::min(src.height, dst.height - y);
    for (int sy = y0; sy < y1; ++sy)
        for (int sx = x0; sx < x1; ++sx)
            dst.set(x + sx, y + sy, src.at(sx, sy));
}

std::uint8_t otsu_threshold(const Raster& raster, const BBox& box) {
    if (!box.inside(raster))
        throw Error("otsu_threshold: box outside raster");
    std::array<long, 256> hist{};
    for (int y = box.y; y < box.bottom(); ++y)
        for (int x = box.x; x < box.right(); ++x)
            ++hist[raster.at(x, y)];

    long total = static_cast<long>(box.w) * box.h;
    double sum_all = 0;
    for (int i = 0; i < 256; ++i)
        sum_all += static_cast<double>(i) * hist[i];

    long w_bg = 0;
    double sum_bg = 0, best_var = -1.0;
    int best_t = 128;
    for (int t = 0; t < 256; ++t) {
        w_bg += hist[t];
        if (w_bg == 0)
            continue;
        long w_fg = total - w_bg;
        if (w_fg == 0)
            break;
        sum_bg += static_cast<double>(t) * hist[t];
        double mean_bg = sum_bg / w_bg;
        double mean_fg = (sum_all - sum_bg) / w_fg;
        double between = static_cast<double>(w_bg) * w_fg * (mean_bg - mean_fg) * (mean_bg - mean_fg);
        if (between > best_var) {
            best_var = between;
            best_t = t + 1; // dark strictly below threshold
        }
    }
    if (best_var <= 0.0)
        return 128; // flat region
    return static_cast<std::uint8_t>(std::clamp(best_t, 1, 255));
}

void write_pgm(const Raster& raster, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("write_pgm: cannot open " + path.string());
    out << "P5\n" << raster.width << " " << raster.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(raster.pixels.data()),
              static_cast<std::streamsize>(raster.pixels.size()));
    if (!out)
        throw IoError("write_pgm: write failed for " + path.string());
}

Raster read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("read_pgm: cannot open " + path.string());
    std::string magic;
    in >> magic;
    if (magic != "P5")
        throw ParseError("read_pgm: not a binary PGM: " + path.string());
    auto next_int = [&in, &path]() {
        // Skip whitespace and '#' comment lines.
        int c;
        while ((c = in.peek()) != EOF) {
            if (c == '#') {
                std::string line;
                std::getline(in, line);
            } else if (std::isspace(c)) {
                in.get();
            } else {
                break;
            }
        }
        long v = -1;
        in >> v;
        if (v < 0)
            throw ParseError("read_pgm: bad header in " + path.string());
        return v;
    };
    long w = next_int(), h = next_int(), maxval = next_int();
    if (w < 1 || h < 1 || maxval != 255)
        throw ParseError("read_pgm: unsupported header in " + path.string());
    in.get(); // single whitespace after maxval
    Raster r(static_cast<int>(w), static_cast<int>(h), 0);
    in.read(reinterpret_cast<char*>(r.pixels.data()), static_cast<std::streamsize>(r.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(r.pixels.size()))
        throw ParseError("read_pgm: truncated pixel data in " + path.string());
    return r;
}

} // namespace qrsl
