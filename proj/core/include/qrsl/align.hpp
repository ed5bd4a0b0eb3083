#pragma once

#include "qrsl/embed.hpp"

#include <string>
#include <vector>

namespace qrsl {

/// Frame assignment produced by the aligner: 1-based step index, or DROP.
inline constexpr int kDrop = 0;

struct AlignmentResult {
    std::vector<int> assignment; // per frame: kDrop or step 1..K
    double total_cost = 0.0;
    double drop_cost = 0.0;
};

/// Per-step frame spans (f_start, f_end), inclusive, in protocol order and
/// strictly disjoint: end_k < start_{k+1}.
struct Segment {
    int step_index = 0; // 1-based
    std::string step_text;
    int start_frame = 0;
    int end_frame = 0;
};

struct SegmentList {
    std::vector<Segment> segments;
    double fps = 10.0;

    double start_sec(std::size_t i) const { return segments[i].start_frame / fps; }
    double end_sec(std::size_t i) const { return segments[i].end_frame / fps; }
};

/// C[k][n] = 1 - cos(S_k, V_n); zero vectors use cos = 0 by convention.
Matrix cost_matrix(const Matrix& fused_frames, const Matrix& step_embeddings);

/// Nearest-rank percentile over all K*N entries: sort ascending, take the
/// value at 1-based index ceil(p * K * N).
double drop_cost(const Matrix& cost, double percentile = 0.75);

/// One-sided Drop-DTW: every step matches >= 1 frame in order; frames may
/// be dropped at cost d. Minimizes sum of matched costs + d * dropped.
/// dp[0][0]=0, dp[0][n]=dp[0][n-1]+d, dp[k][0]=inf,
/// dp[k][n]=min(dp[k][n-1]+d, dp[k][n-1]+C[k][n], dp[k-1][n-1]+C[k][n]);
/// backtracking ties prefer match-continue, then new-step, then drop.
/// Throws Infeasible when K > N.
AlignmentResult align(const Matrix& cost, double d);

/// Segment k spans [first matched frame of k, last matched frame of k];
/// interior drops are absorbed into the span (frame-level labels keep DROP).
SegmentList extract_segments(const AlignmentResult& result, double fps,
                             const std::vector<std::string>& step_texts = {});

/// End-to-end: embed step texts, fuse, cost, drop percentile, align,
/// extract. Deterministic.
struct LocalizeConfig {
    FusionConfig fusion;
    double drop_percentile = 0.75;
};

SegmentList localize(const std::vector<std::string>& step_texts, const EmbeddingTimeline& timeline,
                     const LocalizeConfig& cfg);

} // namespace qrsl
