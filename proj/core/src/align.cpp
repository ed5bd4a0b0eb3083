#include "qrsl/align.hpp"

#include "qrsl/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qrsl {

Matrix cost_matrix(const Matrix& fused_frames, const Matrix& step_embeddings) {
    if (fused_frames.cols != step_embeddings.cols)
        throw DimensionMismatch("cost_matrix: embedding dimensions differ");
    for (double v : fused_frames.data)
        if (!std::isfinite(v))
            throw Error("cost_matrix: non-finite frame embedding");
    for (double v : step_embeddings.data)
        if (!std::isfinite(v))
            throw Error("cost_matrix: non-finite step embedding");

    const std::size_t n = fused_frames.rows, k = step_embeddings.rows, d = fused_frames.cols;
    std::vector<double> frame_norm(n, 0.0), step_norm(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = fused_frames.row(i);
        double s = 0;
        for (std::size_t j = 0; j < d; ++j)
            s += row[j] * row[j];
        frame_norm[i] = std::sqrt(s);
    }
    for (std::size_t i = 0; i < k; ++i) {
        const double* row = step_embeddings.row(i);
        double s = 0;
        for (std::size_t j = 0; j < d; ++j)
            s += row[j] * row[j];
        step_norm[i] = std::sqrt(s);
    }

    Matrix c(k, n);
    for (std::size_t ki = 0; ki < k; ++ki) {
        const double* srow = step_embeddings.row(ki);
        for (std::size_t ni = 0; ni < n; ++ni) {
            const double* frow = fused_frames.row(ni);
            double cos_v = 0.0; // zero vectors keep cos = 0 by convention
            if (step_norm[ki] > 0 && frame_norm[ni] > 0) {
                double dot = 0;
                for (std::size_t j = 0; j < d; ++j)
                    dot += srow[j] * frow[j];
                cos_v = dot / (step_norm[ki] * frame_norm[ni]);
            }
            c.at(ki, ni) = 1.0 - cos_v;
        }
    }
    return c;
}

double drop_cost(const Matrix& cost, double percentile) {
    if (cost.data.empty())
        throw Error("drop_cost: empty cost matrix");
    if (percentile <= 0.0 || percentile > 1.0)
        throw Error("drop_cost: percentile must be in (0, 1]");
    std::vector<double> values = cost.data;
    std::sort(values.begin(), values.end());
    std::size_t rank = static_cast<std::size_t>(
        std::ceil(percentile * static_cast<double>(values.size())));
    rank = std::max<std::size_t>(rank, 1);
    return values[rank - 1];
}

AlignmentResult align(const Matrix& cost, double d) {
    const int k_steps = static_cast<int>(cost.rows);
    const int n_frames = static_cast<int>(cost.cols);
    if (k_steps < 1 || n_frames < 1)
        throw Error("align: empty cost matrix");
    if (k_steps > n_frames)
        throw Infeasible("align: more steps than frames");

    const double inf = std::numeric_limits<double>::infinity();
    // dp[k][n], k steps started, n frames consumed
    std::vector<std::vector<double>> dp(static_cast<std::size_t>(k_steps) + 1,
                                        std::vector<double>(static_cast<std::size_t>(n_frames) + 1, inf));
    dp[0][0] = 0.0;
    for (int n = 1; n <= n_frames; ++n)
        dp[0][n] = dp[0][n - 1] + d;
    for (int k = 1; k <= k_steps; ++k) {
        for (int n = 1; n <= n_frames; ++n) {
            double best = dp[k][n - 1] + d;                          // drop frame n
            best = std::min(best, dp[k][n - 1] + cost.at(k - 1, n - 1)); // continue step k
            best = std::min(best, dp[k - 1][n - 1] + cost.at(k - 1, n - 1)); // open step k
            dp[k][n] = best;
        }
    }

    AlignmentResult result;
    result.drop_cost = d;
    result.total_cost = dp[k_steps][n_frames];
    result.assignment.assign(static_cast<std::size_t>(n_frames), kDrop);

    // Backtrack; ties prefer match-continue, then new-step, then drop.
    int k = k_steps, n = n_frames;
    while (n > 0) {
        if (k == 0) {
            result.assignment[static_cast<std::size_t>(n - 1)] = kDrop;
            --n;
            continue;
        }
        double here = dp[k][n];
        if (here == dp[k][n - 1] + cost.at(k - 1, n - 1)) {
            result.assignment[static_cast<std::size_t>(n - 1)] = k;
            --n;
        } else if (here == dp[k - 1][n - 1] + cost.at(k - 1, n - 1)) {
            result.assignment[static_cast<std::size_t>(n - 1)] = k;
            --n;
            --k;
        } else {
            result.assignment[static_cast<std::size_t>(n - 1)] = kDrop;
            --n;
        }
    }
    return result;
}

SegmentList extract_segments(const AlignmentResult& result, double fps,
                             const std::vector<std::string>& step_texts) {
    int k_max = 0;
    for (int a : result.assignment)
        k_max = std::max(k_max, a);

    SegmentList list;
    list.fps = fps;
    for (int k = 1; k <= k_max; ++k) {
        int first = -1, last = -1;
        for (int i = 0; i < static_cast<int>(result.assignment.size()); ++i) {
            if (result.assignment[static_cast<std::size_t>(i)] == k) {
                if (first < 0)
                    first = i;
                last = i;
            }
        }
        if (first < 0)
            throw Error("extract_segments: step without matched frames");
        Segment seg;
        seg.step_index = k;
        if (static_cast<std::size_t>(k - 1) < step_texts.size())
            seg.step_text = step_texts[static_cast<std::size_t>(k - 1)];
        seg.start_frame = first;
        seg.end_frame = last;
        list.segments.push_back(std::move(seg));
    }
    return list;
}

SegmentList localize(const std::vector<std::string>& step_texts, const EmbeddingTimeline& timeline,
                     const LocalizeConfig& cfg) {
    if (step_texts.empty())
        throw Error("localize: no protocol steps");
    const std::size_t dim = timeline.frames.cols;

    Matrix steps(step_texts.size(), dim);
    for (std::size_t k = 0; k < step_texts.size(); ++k) {
        std::vector<double> e = embed_name(step_texts[k], cfg.fusion, dim);
        std::copy(e.begin(), e.end(), steps.row(k));
    }

    Matrix fused = fuse(timeline, cfg.fusion);
    Matrix c = cost_matrix(fused, steps);
    double d = drop_cost(c, cfg.drop_percentile);
    AlignmentResult aligned = align(c, d);
    return extract_segments(aligned, timeline.fps, step_texts);
}

} // namespace qrsl
