// Shared synthetic fixtures for the step-localization tests and the
// acceptance suite.
#pragma once

#include "qrsl/align.hpp"
#include "qrsl/embed.hpp"
#include "qrsl/metrics.hpp"
#include "qrsl/rng.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace qrsl::testing {

struct SyntheticTimeline {
    EmbeddingTimeline timeline;
    std::vector<std::string> step_texts;
    NameEmbeddingTable table; // vectors for step texts and object names
    FrameLabeling truth;      // per-frame gt step (1..K), no background
};

inline std::vector<double> random_unit(SplitMix64& rng, std::size_t dim) {
    std::vector<double> v(dim);
    double n2 = 0;
    for (double& x : v) {
        x = rng.next_normal();
        n2 += x * x;
    }
    double n = std::sqrt(n2);
    for (double& x : v)
        x /= n;
    return v;
}

struct TimelineParams {
    int steps = 4;
    int frames = 80;
    int dim = 64;
    double noise_sigma = 0.4;    // per-component noise on frame embeddings
    double name_prob = 0.6;      // chance a frame carries its step's object name
    double name_noise = 0.25;    // object-name vectors = normalize(S_k + this * g)
    bool uninformative_name = false; // add a shared, step-unrelated name everywhere
};

/// Frames follow K ordered ground-truth spans; F_i = S_k(i) + sigma * g.
/// Object names correlate with the true step through the embedding table,
/// mirroring a video whose hand-touched objects cue the current step.
inline SyntheticTimeline make_synthetic_timeline(std::uint64_t seed, const TimelineParams& p) {
    SplitMix64 rng(seed);
    SyntheticTimeline out;

    std::vector<std::vector<double>> step_dirs;
    for (int k = 0; k < p.steps; ++k) {
        step_dirs.push_back(random_unit(rng, static_cast<std::size_t>(p.dim)));
        out.step_texts.push_back("step " + std::to_string(k + 1));
        out.table.vectors[out.step_texts.back()] = step_dirs.back();
    }
    out.table.dim = static_cast<std::size_t>(p.dim);

    std::vector<std::string> object_names;
    for (int k = 0; k < p.steps; ++k) {
        object_names.push_back("obj" + std::to_string(k + 1));
        std::vector<double> v = step_dirs[static_cast<std::size_t>(k)];
        for (double& x : v)
            x += p.name_noise * rng.next_normal();
        double n2 = 0;
        for (double x : v)
            n2 += x * x;
        double n = std::sqrt(n2);
        for (double& x : v)
            x /= n;
        out.table.vectors[object_names.back()] = v;
    }
    if (p.uninformative_name)
        out.table.vectors["sharedtool"] = random_unit(rng, static_cast<std::size_t>(p.dim));

    // ordered spans, each at least 2 frames
    std::vector<int> cuts{0};
    for (int k = 1; k < p.steps; ++k)
        cuts.push_back(2 * k + static_cast<int>(rng.next_below(
                                   static_cast<std::uint64_t>(p.frames - 2 * p.steps))));
    std::sort(cuts.begin() + 1, cuts.end());
    for (int k = 1; k < p.steps; ++k)
        cuts[static_cast<std::size_t>(k)] = std::max(cuts[static_cast<std::size_t>(k)], 2 * k);
    cuts.push_back(p.frames);

    out.timeline.frames = Matrix(static_cast<std::size_t>(p.frames), static_cast<std::size_t>(p.dim));
    out.timeline.names.resize(static_cast<std::size_t>(p.frames));
    out.timeline.fps = 10.0;
    out.truth.labels.resize(static_cast<std::size_t>(p.frames));
    out.truth.n_steps = p.steps;

    for (int k = 0; k < p.steps; ++k) {
        for (int i = cuts[static_cast<std::size_t>(k)]; i < cuts[static_cast<std::size_t>(k) + 1]; ++i) {
            out.truth.labels[static_cast<std::size_t>(i)] = k + 1;
            double* row = out.timeline.frames.row(static_cast<std::size_t>(i));
            for (int d = 0; d < p.dim; ++d)
                row[d] = step_dirs[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)] +
                         p.noise_sigma * rng.next_normal();
            if (rng.next_unit() < p.name_prob)
                out.timeline.names[static_cast<std::size_t>(i)].push_back(
                    object_names[static_cast<std::size_t>(k)]);
            if (p.uninformative_name)
                out.timeline.names[static_cast<std::size_t>(i)].push_back("sharedtool");
        }
    }
    return out;
}

/// MoF of localize() against the fixture's ground truth at a given lambda.
inline double localize_mof(const SyntheticTimeline& fixture, double lambda) {
    LocalizeConfig cfg;
    cfg.fusion.lambda = lambda;
    cfg.fusion.embedder = Embedder::LoadedTable;
    cfg.fusion.table = &fixture.table;
    SegmentList segments = localize(fixture.step_texts, fixture.timeline, cfg);
    FrameLabeling pred = segments_to_frame_labels(segments, fixture.truth.n_frames(),
                                                  fixture.truth.n_steps);
    return compute_metrics(pred, fixture.truth).mof;
}

} // namespace qrsl::testing
