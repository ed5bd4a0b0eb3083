#include "qrsl/degrade.hpp"

#include "qrsl/error.hpp"
#include "qrsl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qrsl {
namespace {

Raster gaussian_blur(const Raster& src, double sigma) {
    int radius = static_cast<int>(std::ceil(3.0 * sigma));
    if (radius < 1)
        return src;
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += kernel[i + radius];
    }
    for (double& k : kernel)
        k /= sum;

    // separable: horizontal pass into a float buffer, then vertical
    std::vector<double> tmp(static_cast<std::size_t>(src.width) * src.height);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                int xx = std::clamp(x + k, 0, src.width - 1);
                acc += kernel[k + radius] * src.at(xx, y);
            }
            tmp[static_cast<std::size_t>(y) * src.width + x] = acc;
        }
    }
    Raster out(src.width, src.height, 0);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                int yy = std::clamp(y + k, 0, src.height - 1);
                acc += kernel[k + radius] * tmp[static_cast<std::size_t>(yy) * src.width + x];
            }
            out.set(x, y, static_cast<std::uint8_t>(std::lround(std::clamp(acc, 0.0, 255.0))));
        }
    }
    return out;
}

Raster motion_blur(const Raster& src, double len, double angle) {
    int n = static_cast<int>(std::lround(len));
    if (n < 2)
        return src;
    double cx = std::cos(angle), cy = std::sin(angle);
    Raster out(src.width, src.height, 0);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                double t = k - (n - 1) / 2.0;
                int xx = std::clamp(static_cast<int>(std::lround(x + t * cx)), 0, src.width - 1);
                int yy = std::clamp(static_cast<int>(std::lround(y + t * cy)), 0, src.height - 1);
                acc += src.at(xx, yy);
            }
            out.set(x, y, static_cast<std::uint8_t>(std::lround(std::clamp(acc / n, 0.0, 255.0))));
        }
    }
    return out;
}

void occlude(Raster& img, double fraction, SplitMix64& rng) {
    if (fraction <= 0.0)
        return;
    if (fraction >= 1.0) {
        std::fill(img.pixels.begin(), img.pixels.end(), std::uint8_t{128});
        return;
    }
    double area = fraction * img.width * img.height;
    double aspect = rng.next_range(0.5, 2.0);
    int w = std::clamp(static_cast<int>(std::lround(std::sqrt(area * aspect))), 1, img.width);
    int h = std::clamp(static_cast<int>(std::ceil(area / w)), 1, img.height);
    if (static_cast<double>(w) * h < area) // h was clamped; widen instead
        w = std::clamp(static_cast<int>(std::ceil(area / h)), 1, img.width);
    int x0 = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(img.width - w + 1)));
    int y0 = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(img.height - h + 1)));
    for (int y = y0; y < y0 + h; ++y)
        for (int x = x0; x < x0 + w; ++x)
            img.set(x, y, 128);
}

} // namespace

void DegradationSpec::validate() const {
    if (gaussian_sigma < 0 || motion_len < 0 || occlusion_fraction < 0 || occlusion_fraction > 1 ||
        scale <= 0 || scale > 1 || !std::isfinite(gaussian_sigma) || !std::isfinite(motion_len) ||
        !std::isfinite(motion_angle) || !std::isfinite(occlusion_fraction) || !std::isfinite(scale))
        throw Error("DegradationSpec: field out of range");
}

Raster degrade(const Raster& raster, const DegradationSpec& spec, std::uint64_t seed) {
    spec.validate();
    if (spec.is_identity())
        return raster;

    SplitMix64 rng(seed);
    Raster img = spec.gaussian_sigma > 0 ? gaussian_blur(raster, spec.gaussian_sigma) : raster;
    img = motion_blur(img, spec.motion_len, spec.motion_angle);
    occlude(img, spec.occlusion_fraction, rng);
    if (spec.scale < 1.0) {
        int nw = std::max(1, static_cast<int>(std::lround(img.width * spec.scale)));
        int nh = std::max(1, static_cast<int>(std::lround(img.height * spec.scale)));
        img = resize_bilinear(img, nw, nh);
    }
    return img;
}

} // namespace qrsl
