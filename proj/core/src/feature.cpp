#include "qrsl/feature.hpp"

#include "qrsl/error.hpp"

#include <cmath>

namespace qrsl {

double FeatureVector::norm() const {
    double s = 0;
    for (double v : values)
        s += v * v;
    return std::sqrt(s);
}

void FeatureVector::normalize() {
    double n = norm();
    if (n <= 0)
        return;
    for (double& v : values)
        v /= n;
}

double cosine(const FeatureVector& a, const FeatureVector& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("cosine: dimension mismatch");
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na <= 0 || nb <= 0)
        return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

FeatureVector extract_feature(const Raster& raster, const BBox& bbox) {
    if (!bbox.inside(raster))
        throw Error("extract_feature: bbox outside raster");
    if (bbox.w < 2 || bbox.h < 2)
        throw DegenerateBBox("extract_feature: bbox smaller than 2x2");

    Raster crop(bbox.w, bbox.h, 0);
    for (int y = 0; y < bbox.h; ++y)
        for (int x = 0; x < bbox.w; ++x)
            crop.set(x, y, raster.at(bbox.x + x, bbox.y + y));

    Raster patch = resize_bilinear(crop, 8, 8);

    FeatureVector f;
    f.values.resize(kBuiltinFeatureDim, 0.0);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
            f.values[static_cast<std::size_t>(y) * 8 + x] = patch.at(x, y) / 255.0;

    // 16-bin gradient orientation histogram over the crop, magnitude-weighted
    for (int y = 1; y + 1 < crop.height; ++y) {
        for (int x = 1; x + 1 < crop.width; ++x) {
            double gx = (crop.at(x + 1, y) - crop.at(x - 1, y)) / 255.0;
            double gy = (crop.at(x, y + 1) - crop.at(x, y - 1)) / 255.0;
            double mag = std::sqrt(gx * gx + gy * gy);
            if (mag <= 0)
                continue;
            double angle = std::atan2(gy, gx); // [-pi, pi]
            int bin = static_cast<int>((angle + M_PI) / (2 * M_PI) * 16.0);
            bin = std::min(bin, 15);
            f.values[64 + static_cast<std::size_t>(bin)] += mag;
        }
    }

    f.normalize();
    return f;
}

} // namespace qrsl
