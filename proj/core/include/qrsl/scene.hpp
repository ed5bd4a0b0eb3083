#pragma once

#include "qrsl/degrade.hpp"
#include "qrsl/detect.hpp"
#include "qrsl/raster.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qrsl {

/// Picks the symbol parameters the pipeline uses for an object name:
/// M2-L when the name fits (the default for short names), else the smallest
/// of M3-L / M4-L that holds it.
struct SymbolChoice {
    MicroQrVersion version;
    EcLevel ec;
    PayloadMode mode;
};
SymbolChoice default_symbol_choice(const std::string& name);

struct SceneObject {
    std::string name;
    int qr_size_cm = 2;          // 1, 2 or 3
    std::uint64_t feature_seed = 0; // drives the object's surface texture
};

struct CameraSpec {
    int width = 320;
    int height = 240;
    double px_per_cm = 12.0; // symbol pixel size = qr_size_cm * px_per_cm
};

enum class DegradationSchedule { None, Constant, Alternate, Random };

const char* to_string(DegradationSchedule s);
DegradationSchedule schedule_from_string(const std::string& s);

struct SceneDegradation {
    DegradationSpec base;
    DegradationSchedule schedule = DegradationSchedule::None;
};

struct SceneSpec {
    std::vector<SceneObject> objects;
    int frames = 0;
    double fps = 10.0;
    CameraSpec camera;
    std::vector<std::string> hand_script; // touched object per frame, "" = none
    SceneDegradation degradation;

    void validate() const; // throws Error
};

struct SceneResult {
    std::vector<Raster> frames;
    std::vector<Detection> truth;           // ground-truth boxes, name always set
    std::vector<std::string> hand_trace;    // per-frame touched name ("" = none)
    std::vector<DegradationSpec> applied;   // per-frame degradation actually used
};

/// Renders the scene: per frame, the touched object's textured patch with
/// its Micro QR symbol, degraded per the schedule. Per-frame seeds derive
/// from (seed, frame_idx) so frames can be generated in any order.
SceneResult synth_scene(const SceneSpec& spec, std::uint64_t seed);

struct RecallTable {
    std::vector<int> sizes_cm;
    std::vector<double> sigmas;
    // recall[size_idx][sigma_idx], percent
    std::vector<std::vector<double>> recall;
    // decoded / rendered over the whole grid, percent, per size
    std::vector<double> total;
};

/// Renders `trials` symbols per (size, sigma) cell with common random
/// payloads/positions across cells, runs detect_and_decode, and reports
/// recall. The default blur grid for studies is {0, 0.4, 0.8, 1.2, 1.6}.
RecallTable recall_study(const std::vector<int>& sizes_cm, const std::vector<double>& sigmas,
                         int trials, std::uint64_t seed, double px_per_cm = 12.0);

std::vector<double> default_blur_grid();

} // namespace qrsl
