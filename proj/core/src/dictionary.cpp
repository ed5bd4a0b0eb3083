#include "qrsl/dictionary.hpp"

#include "qrsl/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qrsl {

void ObjectDictionary::add(const std::string& name, const FeatureVector& feature) {
    Acc& acc = sums_[name];
    if (acc.sum.empty())
        acc.sum.assign(feature.dim(), 0.0);
    if (acc.sum.size() != feature.dim())
        throw DimensionMismatch("ObjectDictionary::add: feature dimension changed");
    for (std::size_t i = 0; i < feature.dim(); ++i)
        acc.sum[i] += feature.values[i];
    ++acc.count;
    dirty_ = true;
}

void ObjectDictionary::merge(const ObjectDictionary& other) {
    for (const auto& [name, acc] : other.sums_) {
        Acc& mine = sums_[name];
        if (mine.sum.empty())
            mine.sum.assign(acc.sum.size(), 0.0);
        if (mine.sum.size() != acc.sum.size())
            throw DimensionMismatch("ObjectDictionary::merge: feature dimension mismatch");
        for (std::size_t i = 0; i < acc.sum.size(); ++i)
            mine.sum[i] += acc.sum[i];
        mine.count += acc.count;
    }
    dirty_ = true;
}

void ObjectDictionary::refresh() const {
    if (!dirty_)
        return;
    entries_.clear();
    for (const auto& [name, acc] : sums_) {
        Entry e;
        e.count = acc.count;
        e.mean.values.resize(acc.sum.size());
        for (std::size_t i = 0; i < acc.sum.size(); ++i)
            e.mean.values[i] = acc.sum[i] / acc.count;
        e.mean.normalize();
        entries_[name] = std::move(e);
    }
    dirty_ = false;
}

const ObjectDictionary::Entry* ObjectDictionary::find(const std::string& name) const {
    refresh();
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
}

ObjectDictionary build_dictionary(const std::vector<std::pair<Detection, FeatureVector>>& stream) {
    ObjectDictionary dict;
    for (const auto& [det, feature] : stream)
        if (det.name)
            dict.add(*det.name, feature);
    if (dict.entries().empty())
        throw NoPositives("build_dictionary: no positive detections in the stream");
    return dict;
}

std::optional<LinkResult> link(const FeatureVector& feature, const ObjectDictionary& dict,
                               std::optional<double> min_similarity) {
    if (dict.empty())
        throw Error("link: empty dictionary");
    std::string best_name;
    double best_sim = -2.0;
    for (const auto& [name, entry] : dict.entries()) {
        double sim = cosine(feature, entry.mean);
        if (sim > best_sim) { // map iteration is name-ascending, so ties keep the first
            best_sim = sim;
            best_name = name;
        }
    }
    if (min_similarity && best_sim < *min_similarity)
        return std::nullopt;
    return LinkResult{best_name, best_sim};
}

const char* to_string(LabelSource s) {
    return s == LabelSource::QrDecoded ? "qr" : "linked";
}

std::vector<LabeledDetection> label_detections(
    const std::vector<std::pair<Detection, FeatureVector>>& stream, const ObjectDictionary& dict,
    std::optional<double> min_similarity) {
    std::vector<LabeledDetection> out;
    out.reserve(stream.size());
    for (const auto& [det, feature] : stream) {
        LabeledDetection ld;
        ld.detection = det;
        if (det.name) { // decoded names always win over linking
            ld.assigned_name = *det.name;
            ld.source = LabelSource::QrDecoded;
            ld.similarity = 1.0;
            out.push_back(std::move(ld));
            continue;
        }
        std::optional<LinkResult> linked = link(feature, dict, min_similarity);
        if (!linked)
            continue; // below threshold: left unlabeled
        ld.assigned_name = linked->name;
        ld.source = LabelSource::DictionaryLinked;
        ld.similarity = linked->similarity;
        out.push_back(std::move(ld));
    }
    return out;
}

std::vector<std::vector<std::string>> frame_name_sets(const std::vector<LabeledDetection>& labeled,
                                                      int n_frames, double native_fps,
                                                      double sample_fps) {
    if (n_frames < 0 || native_fps <= 0 || sample_fps <= 0)
        throw Error("frame_name_sets: bad sampling parameters");

    // names per source frame
    std::vector<std::set<std::string>> per_source(static_cast<std::size_t>(n_frames));
    for (const LabeledDetection& ld : labeled) {
        int f = ld.detection.frame_idx;
        if (f < 0 || f >= n_frames)
            throw Error("frame_name_sets: detection frame out of range");
        per_source[static_cast<std::size_t>(f)].insert(ld.assigned_name);
    }

    int n_sampled = static_cast<int>(std::floor((n_frames - 1) * sample_fps / native_fps)) + 1;
    if (n_frames == 0)
        n_sampled = 0;
    std::vector<std::vector<std::string>> out(static_cast<std::size_t>(n_sampled));
    for (int k = 0; k < n_sampled; ++k) {
        int src = static_cast<int>(std::floor(k * native_fps / sample_fps));
        src = std::min(src, n_frames - 1);
        const auto& s = per_source[static_cast<std::size_t>(src)];
        out[static_cast<std::size_t>(k)].assign(s.begin(), s.end());
    }
    return out;
}

} // namespace qrsl
