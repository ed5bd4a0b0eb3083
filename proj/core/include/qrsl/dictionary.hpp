#pragma once

#include "qrsl/detect.hpp"
#include "qrsl/feature.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qrsl {

/// Object name -> mean appearance vector, built from positive detections.
class ObjectDictionary {
public:
    struct Entry {
        FeatureVector mean; // L2-renormalized average
        int count = 0;
    };

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, Entry>& entries() const { return entries_; }
    const Entry* find(const std::string& name) const;

    /// Accumulates one positive sample. Order-independent up to float
    /// rounding: a plain running sum is kept and renormalized on demand.
    void add(const std::string& name, const FeatureVector& feature);

    /// Merges partial dictionaries (parallel reduction step).
    void merge(const ObjectDictionary& other);

private:
    struct Acc {
        std::vector<double> sum;
        int count = 0;
    };
    std::map<std::string, Acc> sums_;
    mutable std::map<std::string, Entry> entries_;
    mutable bool dirty_ = false;

    void refresh() const;
};

/// Builds the dictionary from (detection, feature) pairs; only positives
/// (name present) contribute. Throws NoPositives when nothing qualifies.
ObjectDictionary build_dictionary(const std::vector<std::pair<Detection, FeatureVector>>& stream);

struct LinkResult {
    std::string name;
    double similarity = 0.0; // cos in [-1, 1]
};

/// Argmax of cosine similarity over dictionary means; ties break
/// lexicographically by name. Returns nullopt when min_similarity is set and
/// the best match falls below it (the Unlabeled outcome).
std::optional<LinkResult> link(const FeatureVector& feature, const ObjectDictionary& dict,
                               std::optional<double> min_similarity = std::nullopt);

enum class LabelSource { QrDecoded, DictionaryLinked };

const char* to_string(LabelSource s);

struct LabeledDetection {
    Detection detection;
    std::string assigned_name;
    LabelSource source = LabelSource::QrDecoded;
    double similarity = 1.0; // 1.0 when QrDecoded
};

/// Positive detections keep their decoded names; negatives are linked
/// through the dictionary (skipped entirely when below min_similarity).
std::vector<LabeledDetection> label_detections(
    const std::vector<std::pair<Detection, FeatureVector>>& stream, const ObjectDictionary& dict,
    std::optional<double> min_similarity = std::nullopt);

/// Per-sampled-frame deduplicated name sets at sample_fps: sampled frame k
/// covers source frame floor(k * native_fps / sample_fps). Frames without
/// detections yield empty sets.
std::vector<std::vector<std::string>> frame_name_sets(const std::vector<LabeledDetection>& labeled,
                                                      int n_frames, double native_fps,
                                                      double sample_fps);

} // namespace qrsl
