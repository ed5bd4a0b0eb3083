#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qrsl {

/// Dense row-major matrix of embeddings, one row per frame/step.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double* row(std::size_t r) { return data.data() + r * cols; }
    const double* row(std::size_t r) const { return data.data() + r * cols; }
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    bool operator==(const Matrix&) const = default;
};

/// Frame embeddings F (N x D) plus the per-frame object-name sets produced
/// by the labeling stage.
struct EmbeddingTimeline {
    Matrix frames;                                   // F
    std::vector<std::vector<std::string>> names;     // n_{i,j}, one set per frame
    double fps = 10.0;
};

/// Step texts with their embeddings S (K x D), in protocol order.
struct StepEmbeddings {
    Matrix steps;
    std::vector<std::string> step_texts;
};

enum class Embedder { ToyHash, LoadedTable };

/// name -> vector table for externally computed text embeddings.
struct NameEmbeddingTable {
    std::size_t dim = 0;
    std::map<std::string, std::vector<double>> vectors;
};

struct FusionConfig {
    double lambda = 0.5;
    Embedder embedder = Embedder::ToyHash;
    const NameEmbeddingTable* table = nullptr; // required for LoadedTable
};

/// Deterministic text embedding for one name. ToyHash: FNV-1a(64) of the
/// UTF-8 bytes seeds a splitmix64 stream, D standard-normal draws,
/// L2-normalized. LoadedTable: table lookup, UnknownName on miss.
std::vector<double> embed_name(const std::string& name, const FusionConfig& cfg, std::size_t dim);

/// Embeds a list of names (empty list -> empty output).
std::vector<std::vector<double>> embed_names(const std::vector<std::string>& names,
                                             const FusionConfig& cfg, std::size_t dim);

/// V_i = F_i + lambda * E_i with E_i the sum of the frame's name embeddings
/// (zero vector for an empty set). lambda = 0 returns F bit-identically.
Matrix fuse(const EmbeddingTimeline& timeline, const FusionConfig& cfg);

} // namespace qrsl
