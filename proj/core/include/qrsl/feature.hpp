#pragma once

#include "qrsl/raster.hpp"

#include <vector>

namespace qrsl {

/// Unit-norm appearance descriptor. dim() is 80 for the built-in extractor
/// (64 intensity + 16 gradient bins); externally computed vectors of any
/// dimension can be ingested alongside.
struct FeatureVector {
    std::vector<double> values;

    std::size_t dim() const { return values.size(); }
    double norm() const;
    void normalize(); // no-op on the zero vector

    bool operator==(const FeatureVector&) const = default;
};

double cosine(const FeatureVector& a, const FeatureVector& b); // 0 when either is zero

/// Built-in descriptor: an 8x8 bilinear-downsampled intensity patch (64
/// dims) concatenated with a 16-bin gradient-orientation histogram, then
/// L2-normalized. A constant patch yields an all-zero gradient block and the
/// normalization runs over the intensity block alone; never NaN.
FeatureVector extract_feature(const Raster& raster, const BBox& bbox);

inline constexpr int kBuiltinFeatureDim = 80;

} // namespace qrsl
