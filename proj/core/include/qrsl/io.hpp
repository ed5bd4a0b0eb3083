#pragma once

#include "qrsl/align.hpp"
#include "qrsl/detect.hpp"
#include "qrsl/dictionary.hpp"
#include "qrsl/embed.hpp"
#include "qrsl/metrics.hpp"
#include "qrsl/scene.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qrsl {

/// Writes content to a temporary file in the target directory, then renames
/// it into place. Readers never observe partial writes.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// --- detections: JSON lines, one object per line ---
// {"frame": int, "bbox": [x,y,w,h], "name": string|null, "failure": string|null}
// Labeled detections add "source" ("qr"|"linked") and "similarity".
std::string detections_to_jsonl(const std::vector<Detection>& detections);
std::vector<Detection> detections_from_jsonl(const std::string& text);
std::string labeled_to_jsonl(const std::vector<LabeledDetection>& labeled);
std::vector<LabeledDetection> labeled_from_jsonl(const std::string& text);

// --- per-frame name sets: JSON lines {"frame": int, "names": [string...]} ---
std::string name_sets_to_jsonl(const std::vector<std::vector<std::string>>& sets);
std::vector<std::vector<std::string>> name_sets_from_jsonl(const std::string& text);

// --- object dictionary: {"dim": D, "entries": {name: {"mean": [...], "count": n}}} ---
std::string dictionary_to_json(const ObjectDictionary& dict);
ObjectDictionary dictionary_from_json(const std::string& text);

// --- plain-text matrices: header "N D", then N rows of D decimals ---
std::string matrix_to_text(const Matrix& m);
Matrix matrix_from_text(const std::string& text);

// feature files share the matrix format; rows pair with a detections JSONL
// by line order
std::vector<FeatureVector> features_from_text(const std::string& text);
std::string features_to_text(const std::vector<FeatureVector>& features);

// --- name-embedding table: {"dim": D, "vectors": {name: [...]}} ---
std::string name_table_to_json(const NameEmbeddingTable& table);
NameEmbeddingTable name_table_from_json(const std::string& text);

// --- segments CSV: step_index,step_text,start_frame,end_frame,start_sec,end_sec ---
std::string segments_to_csv(const SegmentList& segments);
SegmentList segments_from_csv(const std::string& text, double fps);

// --- protocol CSV: step_index,step_text[,gt_start_sec,gt_end_sec] ---
struct ProtocolStep {
    int step_index = 0;
    std::string step_text;
    std::optional<double> gt_start_sec;
    std::optional<double> gt_end_sec;
};
struct ProtocolFile {
    std::vector<ProtocolStep> steps;

    std::vector<std::string> step_texts() const;
    bool has_ground_truth() const;
    /// frame = floor(sec * fps)
    SegmentList ground_truth_segments(double fps) const;
    AnnotationTrack as_track() const;
};
std::string protocol_to_csv(const ProtocolFile& protocol);
ProtocolFile protocol_from_csv(const std::string& text);

/// Column-name adapter: {"step_index": "...", "step_text": "...",
/// "gt_start_sec": "...", "gt_end_sec": "..."} maps arbitrary CSV headers
/// onto the canonical protocol columns.
std::string adapt_protocol_csv(const std::string& csv_text, const std::string& mapping_json);

// --- QR payload -> object name map (JSON object) ---
using QrNameMap = std::map<std::string, std::string>;
std::string name_map_to_json(const QrNameMap& map);
QrNameMap name_map_from_json(const std::string& text);

// --- scene config / manifest ---
SceneSpec scene_spec_from_json(const std::string& text);
std::string scene_spec_to_json(const SceneSpec& spec);

struct SceneManifest {
    int n_frames = 0;
    double fps = 10.0;
    std::uint64_t seed = 0;
    double px_per_cm = 12.0;
    std::vector<std::string> frame_files;
    std::vector<DegradationSpec> applied;
};
std::string manifest_to_json(const SceneManifest& manifest);
SceneManifest manifest_from_json(const std::string& text);

// --- metrics report ---
std::string metrics_to_json(const MetricsReport& report);
/// Fixed-width table in Table-4 column order: MoF / Prec. / Rec. / tIoU.
std::string metrics_to_table(const MetricsReport& report);

// CSV helpers (RFC-4180: quoted fields, doubled quotes, header row mandatory)
std::vector<std::vector<std::string>> parse_csv(const std::string& text);
std::string csv_escape(const std::string& field);
std::string format_double(double v);

} // namespace qrsl
