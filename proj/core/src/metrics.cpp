#include "qrsl/metrics.hpp"

#include "qrsl/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qrsl {

FrameLabeling segments_to_frame_labels(const SegmentList& segments, int n_frames, int n_steps) {
    FrameLabeling out;
    out.labels.assign(static_cast<std::size_t>(n_frames), kBackground);
    int k_max = n_steps;
    for (const Segment& seg : segments.segments) {
        if (seg.start_frame < 0 || seg.end_frame >= n_frames || seg.start_frame > seg.end_frame)
            throw OutOfRange("segments_to_frame_labels: segment outside [0, n_frames)");
        for (int f = seg.start_frame; f <= seg.end_frame; ++f) {
            if (out.labels[static_cast<std::size_t>(f)] != kBackground)
                throw Error("segments_to_frame_labels: overlapping segments");
            out.labels[static_cast<std::size_t>(f)] = seg.step_index;
        }
        k_max = std::max(k_max, seg.step_index);
    }
    out.n_steps = k_max;
    return out;
}

MetricsReport compute_metrics(const FrameLabeling& pred, const FrameLabeling& truth) {
    if (pred.n_frames() != truth.n_frames())
        throw ShapeMismatch("compute_metrics: frame counts differ");
    const int n = pred.n_frames();
    if (n == 0)
        throw ShapeMismatch("compute_metrics: empty labelings");
    const int k_steps = std::max(pred.n_steps, truth.n_steps);

    MetricsReport report;

    // MoF: frame-global, BACKGROUND included as a category
    int agree = 0;
    for (int i = 0; i < n; ++i)
        agree += pred.labels[static_cast<std::size_t>(i)] == truth.labels[static_cast<std::size_t>(i)];
    report.mof = 100.0 * agree / n;

    // per-step frame sets
    double sum_p = 0, sum_r = 0, sum_iou = 0;
    for (int k = 1; k <= k_steps; ++k) {
        long np = 0, ng = 0, ni = 0;
        for (int i = 0; i < n; ++i) {
            bool in_p = pred.labels[static_cast<std::size_t>(i)] == k;
            bool in_g = truth.labels[static_cast<std::size_t>(i)] == k;
            np += in_p;
            ng += in_g;
            ni += in_p && in_g;
        }
        StepMetrics sm;
        if (np == 0 && ng == 0) {
            // absent from both: full credit by convention
            sm.precision = sm.recall = sm.tiou = 100.0;
        } else {
            sm.precision = np > 0 ? 100.0 * ni / np : 0.0;
            sm.recall = ng > 0 ? 100.0 * ni / ng : 0.0;
            long nu = np + ng - ni;
            sm.tiou = 100.0 * ni / nu;
        }
        report.per_step.push_back(sm);
        sum_p += sm.precision;
        sum_r += sm.recall;
        sum_iou += sm.tiou;
    }
    if (k_steps > 0) {
        report.precision = sum_p / k_steps;
        report.recall = sum_r / k_steps;
        report.tiou = sum_iou / k_steps;
    }
    return report;
}

namespace {

// union of a step's intervals as a sorted, merged list
std::vector<std::pair<double, double>> step_intervals(const AnnotationTrack& t, int step_id) {
    std::vector<std::pair<double, double>> iv;
    for (const auto& e : t.events)
        if (e.step_id == step_id) {
            if (e.end_sec < e.start_sec)
                throw Error("agreement_tiou: event with end < start");
            iv.emplace_back(e.start_sec, e.end_sec);
        }
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& [s, e] : iv) {
        if (!merged.empty() && s <= merged.back().second)
            merged.back().second = std::max(merged.back().second, e);
        else
            merged.emplace_back(s, e);
    }
    return merged;
}

double total_len(const std::vector<std::pair<double, double>>& iv) {
    double s = 0;
    for (const auto& [a, b] : iv)
        s += b - a;
    return s;
}

double intersection_len(const std::vector<std::pair<double, double>>& a,
                        const std::vector<std::pair<double, double>>& b) {
    double s = 0;
    for (const auto& [a0, a1] : a)
        for (const auto& [b0, b1] : b) {
            double lo = std::max(a0, b0), hi = std::min(a1, b1);
            if (hi > lo)
                s += hi - lo;
        }
    return s;
}

} // namespace

double agreement_tiou(const AnnotationTrack& a, const AnnotationTrack& b) {
    std::set<int> steps_a, steps_b;
    for (const auto& e : a.events)
        steps_a.insert(e.step_id);
    for (const auto& e : b.events)
        steps_b.insert(e.step_id);
    std::vector<int> common;
    std::set_intersection(steps_a.begin(), steps_a.end(), steps_b.begin(), steps_b.end(),
                          std::back_inserter(common));
    if (common.empty())
        throw NoCommonSteps("agreement_tiou: tracks share no step ids");

    double sum = 0;
    for (int step : common) {
        auto ia = step_intervals(a, step);
        auto ib = step_intervals(b, step);
        double inter = intersection_len(ia, ib);
        double uni = total_len(ia) + total_len(ib) - inter;
        sum += uni > 0 ? inter / uni : 1.0; // two zero-length events at the same spot agree fully
    }
    return 100.0 * sum / static_cast<double>(common.size());
}

} // namespace qrsl
