#include "qrsl/scene.hpp"

#include "qrsl/error.hpp"
#include "qrsl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qrsl {
namespace {

// Smooth per-object surface texture so appearance features are stable and
// object-specific: seeded noise, two box-blur passes, mapped to a light range
// that stays above the symbol's dark modules.
Raster make_object_texture(int size_px, std::uint64_t feature_seed) {
    SplitMix64 rng(feature_seed);
    std::vector<double> noise(static_cast<std::size_t>(size_px) * size_px);
    for (double& v : noise)
        v = rng.next_unit();

    auto box_blur = [&](int radius) {
        std::vector<double> tmp = noise;
        for (int y = 0; y < size_px; ++y) {
            for (int x = 0; x < size_px; ++x) {
                double acc = 0;
                int n = 0;
                for (int dy = -radius; dy <= radius; ++dy) {
                    for (int dx = -radius; dx <= radius; ++dx) {
                        int xx = x + dx, yy = y + dy;
                        if (xx < 0 || yy < 0 || xx >= size_px || yy >= size_px)
                            continue;
                        acc += tmp[static_cast<std::size_t>(yy) * size_px + xx];
                        ++n;
                    }
                }
                noise[static_cast<std::size_t>(y) * size_px + x] = acc / n;
            }
        }
    };
    box_blur(2);
    box_blur(2);

    double lo = 1e9, hi = -1e9;
    for (double v : noise) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double span = hi > lo ? hi - lo : 1.0;
    Raster out(size_px, size_px, 0);
    for (int y = 0; y < size_px; ++y)
        for (int x = 0; x < size_px; ++x) {
            double u = (noise[static_cast<std::size_t>(y) * size_px + x] - lo) / span;
            out.set(x, y, static_cast<std::uint8_t>(std::lround(140 + 90 * u)));
        }
    return out;
}

// Object patch: textured square with the symbol (plus light quiet zone)
// centered on it.
Raster make_object_patch(const SceneObject& obj, double px_per_cm) {
    SymbolChoice choice = default_symbol_choice(obj.name);
    SymbolMatrix sym = encode(Payload{choice.mode, obj.name}, choice.version, choice.ec);
    int target_px = std::max(sym.side, static_cast<int>(std::lround(obj.qr_size_cm * px_per_cm)));
    int module_px = std::max(1, static_cast<int>(std::lround(static_cast<double>(target_px) / sym.side)));
    Raster qr = rasterize_symbol(sym, module_px, 2);

    int patch_px = std::max(3 * target_px, qr.width + 4);
    Raster patch = make_object_texture(patch_px, obj.feature_seed);
    paste(patch, qr, (patch_px - qr.width) / 2, (patch_px - qr.height) / 2);
    return patch;
}

DegradationSpec frame_degradation(const SceneDegradation& deg, int frame_idx, SplitMix64& rng) {
    switch (deg.schedule) {
    case DegradationSchedule::None:
        return {};
    case DegradationSchedule::Constant:
        return deg.base;
    case DegradationSchedule::Alternate:
        return frame_idx % 2 == 0 ? DegradationSpec{} : deg.base;
    case DegradationSchedule::Random: {
        double u = rng.next_unit();
        DegradationSpec s = deg.base;
        s.gaussian_sigma *= u;
        s.motion_len *= u;
        s.occlusion_fraction *= u;
        return s;
    }
    }
    return {};
}

} // namespace

const char* to_string(DegradationSchedule s) {
    switch (s) {
    case DegradationSchedule::None: return "none";
    case DegradationSchedule::Constant: return "constant";
    case DegradationSchedule::Alternate: return "alternate";
    case DegradationSchedule::Random: return "random";
    }
    return "?";
}

DegradationSchedule schedule_from_string(const std::string& s) {
    if (s == "none") return DegradationSchedule::None;
    if (s == "constant") return DegradationSchedule::Constant;
    if (s == "alternate") return DegradationSchedule::Alternate;
    if (s == "random") return DegradationSchedule::Random;
    throw ParseError("unknown degradation schedule: " + s);
}

SymbolChoice default_symbol_choice(const std::string& name) {
    PayloadMode mode = narrowest_mode(name);
    int len = static_cast<int>(name.size());
    if (len == 0)
        throw Error("default_symbol_choice: empty name");
    for (MicroQrVersion v : {MicroQrVersion::M2, MicroQrVersion::M3, MicroQrVersion::M4})
        if (char_capacity(v, EcLevel::L, mode) >= len)
            return {v, EcLevel::L, mode};
    throw CapacityExceeded("default_symbol_choice: name too long for any Micro QR symbol: " + name);
}

void SceneSpec::validate() const {
    if (frames < 1)
        throw Error("SceneSpec: frames must be >= 1");
    if (fps <= 0)
        throw Error("SceneSpec: fps must be > 0");
    if (camera.width < 32 || camera.height < 32)
        throw Error("SceneSpec: camera resolution too small");
    if (camera.px_per_cm <= 0)
        throw Error("SceneSpec: px_per_cm must be > 0");
    if (objects.empty())
        throw Error("SceneSpec: at least one object required");
    std::set<std::string> names;
    for (const SceneObject& o : objects) {
        if (o.name.empty())
            throw Error("SceneSpec: object name empty");
        if (o.qr_size_cm != 1 && o.qr_size_cm != 2 && o.qr_size_cm != 3)
            throw Error("SceneSpec: qr_size_cm must be 1, 2 or 3");
        if (!names.insert(o.name).second)
            throw Error("SceneSpec: duplicate object name " + o.name);
    }
    for (const std::string& touched : hand_script)
        if (!touched.empty() && !names.count(touched))
            throw Error("SceneSpec: hand_script references unknown object " + touched);
    degradation.base.validate();
    if (degradation.base.scale != 1.0)
        throw Error("SceneSpec: in-scene downscaling is not supported (ground truth boxes would drift)");
}

SceneResult synth_scene(const SceneSpec& spec, std::uint64_t seed) {
    spec.validate();

    // Patches are frame-independent; build once.
    std::vector<Raster> patches;
    patches.reserve(spec.objects.size());
    for (const SceneObject& obj : spec.objects)
        patches.push_back(make_object_patch(obj, spec.camera.px_per_cm));

    SceneResult result;
    result.frames.reserve(static_cast<std::size_t>(spec.frames));
    for (int i = 0; i < spec.frames; ++i) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        Raster frame(spec.camera.width, spec.camera.height, 245);

        std::string touched =
            i < static_cast<int>(spec.hand_script.size()) ? spec.hand_script[i] : std::string();
        if (!touched.empty()) {
            std::size_t obj_idx = 0;
            for (std::size_t k = 0; k < spec.objects.size(); ++k)
                if (spec.objects[k].name == touched)
                    obj_idx = k;
            const Raster& patch = patches[obj_idx];
            int max_x = std::max(1, frame.width - patch.width);
            int max_y = std::max(1, frame.height - patch.height);
            int px = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_x)));
            int py = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_y)));
            paste(frame, patch, px, py);

            Detection truth;
            truth.frame_idx = i;
            truth.bbox = BBox{px, py, std::min(patch.width, frame.width - px),
                              std::min(patch.height, frame.height - py)};
            truth.name = touched;
            result.truth.push_back(std::move(truth));
        }

        DegradationSpec deg = frame_degradation(spec.degradation, i, rng);
        result.applied.push_back(deg);
        result.frames.push_back(degrade(frame, deg, derive_seed(seed, 0x10000u + i)));
        result.hand_trace.push_back(touched);
    }
    return result;
}

std::vector<double> default_blur_grid() { return {0.0, 0.4, 0.8, 1.2, 1.6}; }

RecallTable recall_study(const std::vector<int>& sizes_cm, const std::vector<double>& sigmas,
                         int trials, std::uint64_t seed, double px_per_cm) {
    if (trials < 1)
        throw Error("recall_study: trials must be >= 1");
    if (sizes_cm.empty() || sigmas.empty())
        throw Error("recall_study: empty grid");

    RecallTable table;
    table.sizes_cm = sizes_cm;
    table.sigmas = sigmas;
    table.recall.assign(sizes_cm.size(), std::vector<double>(sigmas.size(), 0.0));
    table.total.assign(sizes_cm.size(), 0.0);

    for (std::size_t si = 0; si < sizes_cm.size(); ++si) {
        long decoded_total = 0;
        for (std::size_t gi = 0; gi < sigmas.size(); ++gi) {
            int decoded = 0;
            for (int t = 0; t < trials; ++t) {
                // Common random numbers: payload, position and occlusion seed
                // depend only on the trial, so cells differ purely by (size, sigma).
                SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
                std::string payload = "T";
                for (int k = 0; k < 3; ++k)
                    payload += static_cast<char>('0' + rng.next_below(10));

                SymbolChoice choice = default_symbol_choice(payload);
                SymbolMatrix sym = encode(Payload{choice.mode, payload}, choice.version, choice.ec);
                int target_px =
                    std::max(sym.side, static_cast<int>(std::lround(sizes_cm[si] * px_per_cm)));
                int module_px =
                    std::max(1, static_cast<int>(std::lround(static_cast<double>(target_px) / sym.side)));
                Raster qr = rasterize_symbol(sym, module_px, 3);

                Raster frame(120, 120, 245);
                int max_x = std::max(1, frame.width - qr.width);
                int max_y = std::max(1, frame.height - qr.height);
                int px = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_x)));
                int py = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_y)));
                paste(frame, qr, px, py);

                DegradationSpec deg;
                deg.gaussian_sigma = sigmas[gi];
                Raster shown = degrade(frame, deg, rng.next_u64());

                bool ok = false;
                for (const Detection& d : detect_and_decode(shown))
                    ok = ok || (d.name && *d.name == payload);
                decoded += ok ? 1 : 0;
            }
            table.recall[si][gi] = 100.0 * decoded / trials;
            decoded_total += decoded;
        }
        table.total[si] =
            100.0 * static_cast<double>(decoded_total) / (static_cast<double>(trials) * sigmas.size());
    }
    return table;
}

} // namespace qrsl
