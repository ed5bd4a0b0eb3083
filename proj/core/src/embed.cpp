#include "qrsl/embed.hpp"

#include "qrsl/error.hpp"
#include "qrsl/rng.hpp"

#include <cmath>

namespace qrsl {

std::vector<double> embed_name(const std::string& name, const FusionConfig& cfg, std::size_t dim) {
    if (dim < 2)
        throw Error("embed_name: dimension must be >= 2");
    if (cfg.embedder == Embedder::LoadedTable) {
        if (!cfg.table)
            throw Error("embed_name: LoadedTable embedder without a table");
        auto it = cfg.table->vectors.find(name);
        if (it == cfg.table->vectors.end())
            throw UnknownName("embed_name: name not in table: " + name);
        if (it->second.size() != dim)
            throw DimensionMismatch("embed_name: table vector dimension mismatch for " + name);
        return it->second;
    }

    SplitMix64 rng(fnv1a64(name));
    std::vector<double> v(dim);
    double norm2 = 0.0;
    for (double& x : v) {
        x = rng.next_normal();
        norm2 += x * x;
    }
    double n = std::sqrt(norm2);
    if (n > 0)
        for (double& x : v)
            x /= n;
    return v;
}

std::vector<std::vector<double>> embed_names(const std::vector<std::string>& names,
                                             const FusionConfig& cfg, std::size_t dim) {
    std::vector<std::vector<double>> out;
    out.reserve(names.size());
    for (const std::string& name : names)
        out.push_back(embed_name(name, cfg, dim));
    return out;
}

Matrix fuse(const EmbeddingTimeline& timeline, const FusionConfig& cfg) {
    if (!std::isfinite(cfg.lambda) || cfg.lambda < 0)
        throw Error("fuse: lambda must be finite and >= 0");
    if (timeline.frames.rows == 0)
        throw Error("fuse: empty timeline");
    if (!timeline.names.empty() && timeline.names.size() != timeline.frames.rows)
        throw DimensionMismatch("fuse: name sets do not match frame count");

    Matrix v = timeline.frames;
    if (cfg.lambda == 0.0 || timeline.names.empty())
        return v;

    const std::size_t dim = timeline.frames.cols;
    for (std::size_t i = 0; i < v.rows; ++i) {
        const auto& frame_names = timeline.names[i];
        if (frame_names.empty())
            continue; // E_i = 0
        std::vector<double> e(dim, 0.0);
        for (const std::string& name : frame_names) {
            std::vector<double> emb = embed_name(name, cfg, dim);
            for (std::size_t d = 0; d < dim; ++d)
                e[d] += emb[d];
        }
        double* row = v.row(i);
        for (std::size_t d = 0; d < dim; ++d)
            row[d] += cfg.lambda * e[d];
    }
    return v;
}

} // namespace qrsl
