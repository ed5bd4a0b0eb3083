#pragma once

#include "qrsl/align.hpp"

#include <string>
#include <vector>

namespace qrsl {

/// Per-frame step labels; 0 = BACKGROUND, 1..K = steps.
inline constexpr int kBackground = 0;

struct FrameLabeling {
    std::vector<int> labels;
    int n_steps = 0; // K

    int n_frames() const { return static_cast<int>(labels.size()); }
};

/// Frames inside segment k get label k, all others BACKGROUND.
/// Throws OutOfRange when a segment exceeds [0, n_frames).
FrameLabeling segments_to_frame_labels(const SegmentList& segments, int n_frames, int n_steps = 0);

struct StepMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double tiou = 0.0;
};

/// All values are percentages. Aggregate precision/recall/tIoU are
/// macro-means over steps; MoF is frame-global with BACKGROUND counting as a
/// category.
struct MetricsReport {
    double mof = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double tiou = 0.0;
    std::vector<StepMetrics> per_step;
};

/// Frame-set conventions for a step k with predicted set P and truth set G:
/// both empty -> 100 everywhere; precision = |P&G|/|P| (0 when P empty),
/// recall = |P&G|/|G| (0 when G empty), tIoU = |P&G|/|P|G union|.
MetricsReport compute_metrics(const FrameLabeling& pred, const FrameLabeling& truth);

/// One annotator's pass: (step_id, start_sec, end_sec) events,
/// non-overlapping within the track.
struct AnnotationTrack {
    struct Event {
        int step_id = 0;
        double start_sec = 0.0;
        double end_sec = 0.0;
    };
    std::vector<Event> events;
};

/// Inter-annotator agreement: per-step interval IoU on the time axis,
/// macro-averaged over the steps present in both tracks. Symmetric.
/// Throws NoCommonSteps when the tracks share no step_id.
double agreement_tiou(const AnnotationTrack& a, const AnnotationTrack& b);

} // namespace qrsl
