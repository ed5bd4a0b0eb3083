#include "qrsl/detect.hpp"

#include "qrsl/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qrsl {
namespace {

struct FinderCandidate {
    double cx = 0, cy = 0;   // finder center, px
    double module = 0;       // module size estimate, px
    int hits = 1;
};

// Checks five consecutive runs against the 1:1:3:1:1 finder ratio.
bool ratios_match(const int runs[5], double& module_out) {
    int total = runs[0] + runs[1] + runs[2] + runs[3] + runs[4];
    if (total < 7)
        return false;
    double m = total / 7.0;
    double tol = std::max(0.55 * m, 1.0);
    static const int expected[5] = {1, 1, 3, 1, 1};
    for (int i = 0; i < 5; ++i)
        if (std::abs(runs[i] - expected[i] * m) > tol * expected[i])
            return false;
    module_out = m;
    return true;
}

// Vertical 1:1:3:1:1 check through (cx, y_hint); returns center y and module.
bool confirm_vertical(const std::vector<std::uint8_t>& dark, int width, int height, int cx,
                      int y_hint, double module_hint, double& cy_out, double& mv_out) {
    auto is_dark = [&](int x, int y) { return dark[static_cast<std::size_t>(y) * width + x] != 0; };
    if (!is_dark(cx, y_hint))
        return false;
    // run 2 (center) extent
    int top = y_hint;
    while (top > 0 && is_dark(cx, top - 1))
        --top;
    int bot = y_hint;
    while (bot + 1 < height && is_dark(cx, bot + 1))
        ++bot;
    int runs[5];
    runs[2] = bot - top + 1;
    // run 1 and 0 above
    int y = top - 1;
    int len = 0;
    while (y >= 0 && !is_dark(cx, y) && len < runs[2]) { --y; ++len; }
    runs[1] = len;
    len = 0;
    while (y >= 0 && is_dark(cx, y) && len < runs[2]) { --y; ++len; }
    runs[0] = len;
    // run 3 and 4 below
    y = bot + 1;
    len = 0;
    while (y < height && !is_dark(cx, y) && len < runs[2]) { ++y; ++len; }
    runs[3] = len;
    len = 0;
    while (y < height && is_dark(cx, y) && len < runs[2]) { ++y; ++len; }
    runs[4] = len;

    if (runs[0] == 0 || runs[1] == 0 || runs[3] == 0 || runs[4] == 0)
        return false;
    double mv;
    if (!ratios_match(runs, mv))
        return false;
    if (mv > 2.5 * module_hint || module_hint > 2.5 * mv)
        return false;
    cy_out = top + runs[2] / 2.0;
    mv_out = mv;
    return true;
}

// Walks the timing pattern from the finder edge outward and reports how many
// modules the symbol spans; snaps to the Micro QR sides.
int estimate_side(const std::vector<std::uint8_t>& dark, int width, int height, double x0,
                  double y0, double mx, double my, bool horizontal) {
    auto sample = [&](double fx, double fy) -> int {
        int x = static_cast<int>(fx), y = static_cast<int>(fy);
        if (x < 0 || y < 0 || x >= width || y >= height)
            return -1;
        return dark[static_cast<std::size_t>(y) * width + x] ? 1 : 0;
    };
    int last = 7; // finder spans modules 0..6; module 7 is the separator
    for (int i = 8; i <= 20; ++i) {
        double fx = horizontal ? x0 + (i + 0.5) * mx : x0 + 0.5 * mx;
        double fy = horizontal ? y0 + 0.5 * my : y0 + (i + 0.5) * my;
        int v = sample(fx, fy);
        if (v < 0)
            break;
        if (v != (i % 2 == 0 ? 1 : 0))
            break;
        last = i;
    }
    int side_est = last + 1;
    int best = 0, best_diff = 99;
    for (int side : {11, 13, 15, 17}) {
        int d = std::abs(side - side_est);
        if (d < best_diff) {
            best_diff = d;
            best = side;
        }
    }
    return best_diff <= 2 ? best : 0;
}

} // namespace

const char* to_string(DecodeFailure f) {
    switch (f) {
    case DecodeFailure::Blur: return "blur";
    case DecodeFailure::Occlusion: return "occlusion";
    case DecodeFailure::Unreadable: return "unreadable";
    }
    return "?";
}

std::optional<DecodeFailure> decode_failure_from_string(std::string_view s) {
    if (s == "blur") return DecodeFailure::Blur;
    if (s == "occlusion") return DecodeFailure::Occlusion;
    if (s == "unreadable") return DecodeFailure::Unreadable;
    return std::nullopt;
}

std::vector<BBox> locate_symbols(const Raster& raster) {
    std::vector<BBox> out;
    if (raster.width < 11 || raster.height < 11)
        return out;

    std::uint8_t thr = otsu_threshold(raster, BBox{0, 0, raster.width, raster.height});
    std::vector<std::uint8_t> dark(static_cast<std::size_t>(raster.width) * raster.height);
    bool any_dark = false;
    for (int y = 0; y < raster.height; ++y) {
        for (int x = 0; x < raster.width; ++x) {
            bool d = raster.at(x, y) < thr;
            dark[static_cast<std::size_t>(y) * raster.width + x] = d;
            any_dark = any_dark || d;
        }
    }
    if (!any_dark)
        return out;

    std::vector<FinderCandidate> candidates;
    auto add_candidate = [&](double cx, double cy, double m) {
        for (FinderCandidate& c : candidates) {
            if (std::abs(c.cx - cx) < 2.0 * c.module && std::abs(c.cy - cy) < 2.0 * c.module) {
                // running average keeps the estimate stable across rows
                c.cx = (c.cx * c.hits + cx) / (c.hits + 1);
                c.cy = (c.cy * c.hits + cy) / (c.hits + 1);
                c.module = (c.module * c.hits + m) / (c.hits + 1);
                ++c.hits;
                return;
            }
        }
        candidates.push_back({cx, cy, m, 1});
    };

    for (int y = 0; y < raster.height; ++y) {
        // run-length encode the row
        int runs[5] = {0, 0, 0, 0, 0};
        int run_start[5] = {0, 0, 0, 0, 0};
        int n_runs = 0;
        int x = 0;
        while (x < raster.width) {
            bool d = dark[static_cast<std::size_t>(y) * raster.width + x];
            int start = x;
            while (x < raster.width && dark[static_cast<std::size_t>(y) * raster.width + x] == d)
                ++x;
            // shift window
            if (n_runs == 5) {
                std::copy(runs + 1, runs + 5, runs);
                std::copy(run_start + 1, run_start + 5, run_start);
                runs[4] = x - start;
                run_start[4] = start;
            } else {
                runs[n_runs] = x - start;
                run_start[n_runs] = start;
                ++n_runs;
            }
            // window must start with a dark run
            if (n_runs == 5 && dark[static_cast<std::size_t>(y) * raster.width + run_start[0]]) {
                double m;
                if (ratios_match(runs, m)) {
                    double cx = run_start[2] + runs[2] / 2.0;
                    double cy, mv;
                    if (confirm_vertical(dark, raster.width, raster.height, static_cast<int>(cx), y,
                                         m, cy, mv))
                        add_candidate(cx, cy, (m + mv) / 2.0);
                }
            }
        }
    }

    for (const FinderCandidate& c : candidates) {
        double x0 = c.cx - 3.5 * c.module;
        double y0 = c.cy - 3.5 * c.module;
        int side = estimate_side(dark, raster.width, raster.height, x0, y0, c.module, c.module, true);
        if (side == 0)
            side = estimate_side(dark, raster.width, raster.height, x0, y0, c.module, c.module, false);
        if (side == 0)
            side = 13; // undecidable: mid hypothesis, decode will filter
        int bx = static_cast<int>(std::lround(x0));
        int by = static_cast<int>(std::lround(y0));
        int bs = static_cast<int>(std::lround(side * c.module));
        bx = std::clamp(bx, 0, raster.width - 1);
        by = std::clamp(by, 0, raster.height - 1);
        bs = std::max(bs, 7);
        BBox box{bx, by, std::min(bs, raster.width - bx), std::min(bs, raster.height - by)};
        bool dup = false;
        for (const BBox& b : out)
            dup = dup || bbox_iou(b, box) > 0.6;
        if (!dup)
            out.push_back(box);
    }
    return out;
}

std::vector<Detection> detect_and_decode(const Raster& raster, std::optional<BBox> roi,
                                         const DetectOptions& options) {
    if (roi && !roi->inside(raster))
        throw Error("detect_and_decode: roi outside raster");

    // locate within the roi by cropping, then shift boxes back
    std::vector<BBox> boxes;
    if (roi) {
        Raster crop(roi->w, roi->h, 255);
        for (int y = 0; y < roi->h; ++y)
            for (int x = 0; x < roi->w; ++x)
                crop.set(x, y, raster.at(roi->x + x, roi->y + y));
        boxes = locate_symbols(crop);
        for (BBox& b : boxes) {
            b.x += roi->x;
            b.y += roi->y;
        }
    } else {
        boxes = locate_symbols(raster);
    }

    std::vector<Detection> detections;
    for (const BBox& box : boxes) {
        std::uint8_t thr =
            options.fixed_threshold ? *options.fixed_threshold : otsu_threshold(raster, box);

        std::optional<DecodedPayload> decoded;
        // Try each version hypothesis with small box jitter; the symbol side
        // is not known reliably at 1-2 px/module.
        for (int side : {11, 13, 15, 17}) {
            for (int dx : {0, -1, 1}) {
                for (int dy : {0, -1, 1}) {
                    for (int dw : {0, -1, 1}) {
                        BBox jb{box.x + dx, box.y + dy, box.w + dw, box.h + dw};
                        if (!jb.inside(raster))
                            continue;
                        SymbolMatrix grid = sample_symbol_grid(raster, jb, side, thr);
                        DecodeResult r = try_decode(grid);
                        if (r.status == DecodeStatus::Ok) {
                            decoded = std::move(r.payload);
                            break;
                        }
                    }
                    if (decoded) break;
                }
                if (decoded) break;
            }
            if (decoded) break;
        }

        Detection det;
        det.bbox = box;
        if (decoded)
            det.name = decoded->text;
        else
            det.decode_failure = DecodeFailure::Unreadable;
        detections.push_back(std::move(det));
    }
    return detections;
}

} // namespace qrsl
