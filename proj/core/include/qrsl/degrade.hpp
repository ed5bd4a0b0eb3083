#pragma once

#include "qrsl/raster.hpp"

#include <cstdint>

namespace qrsl {

/// Image degradation parameters. Applied in order: gaussian blur, motion
/// blur, occlusion, downscale.
struct DegradationSpec {
    double gaussian_sigma = 0.0;    // px, >= 0
    double motion_len = 0.0;        // px, >= 0
    double motion_angle = 0.0;      // radians
    double occlusion_fraction = 0.0; // [0, 1] of raster area, painted mid-gray
    double scale = 1.0;             // (0, 1], bilinear resample

    bool is_identity() const {
        return gaussian_sigma == 0.0 && motion_len < 2.0 && occlusion_fraction == 0.0 &&
               scale == 1.0;
    }
    void validate() const; // throws Error on out-of-range fields
};

/// Deterministic for a fixed seed (the seed drives only the occlusion
/// rectangle). An identity spec returns the input unchanged.
Raster degrade(const Raster& raster, const DegradationSpec& spec, std::uint64_t seed);

} // namespace qrsl
