#pragma once

#include "qrsl/microqr.hpp"
#include "qrsl/raster.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qrsl {

/// Why a located candidate produced no name. The detector itself reports
/// Unreadable; Blur/Occlusion are attributed by callers that know the
/// degradation applied to the frame (e.g. from a scene manifest).
enum class DecodeFailure { Blur, Occlusion, Unreadable };

const char* to_string(DecodeFailure f);
std::optional<DecodeFailure> decode_failure_from_string(std::string_view s);

/// A per-frame object candidate. Exactly one of name / decode_failure is set
/// once decoding has been attempted (name present = positive object).
struct Detection {
    int frame_idx = 0;
    BBox bbox;
    std::optional<std::string> name;
    std::optional<DecodeFailure> decode_failure;
};

/// Scans binarized rows for the 1:1:3:1:1 finder signature, confirms each
/// hit vertically, and estimates the symbol extent along the timing
/// patterns. Returns axis-aligned candidate boxes (possibly with false
/// positives; decode filters them). Never returns out-of-bounds boxes.
std::vector<BBox> locate_symbols(const Raster& raster);

struct DetectOptions {
    /// Fixed binarization threshold instead of per-candidate Otsu.
    std::optional<std::uint8_t> fixed_threshold;
};

/// locate + grid-sample + decode within an optional region of interest.
/// Candidates that fail to decode are reported with
/// decode_failure = Unreadable.
std::vector<Detection> detect_and_decode(const Raster& raster, std::optional<BBox> roi = {},
                                         const DetectOptions& options = {});

} // namespace qrsl
