#include "qrsl/io.hpp"

#include "qrsl/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace qrsl {

using nlohmann::json;

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path dir = path.parent_path();
    if (dir.empty())
        dir = ".";
    fs::create_directories(dir);
    fs::path tmp = dir / (path.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out)
            throw IoError("atomic_write: cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw IoError("atomic_write: write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("read_file: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{})
        throw Error("format_double: conversion failed");
    return std::string(buf, ptr);
}

// ---------- CSV ----------

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };
    while (i < text.size()) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            end_row();
        } else if (c != '\r') {
            field += c;
        }
        ++i;
    }
    if (!field.empty() || !row.empty())
        end_row();
    if (quoted)
        throw ParseError("parse_csv: unterminated quote");
    return rows;
}

// ---------- detections ----------

namespace {

json detection_to_json(const Detection& d) {
    json j;
    j["frame"] = d.frame_idx;
    j["bbox"] = {d.bbox.x, d.bbox.y, d.bbox.w, d.bbox.h};
    j["name"] = d.name ? json(*d.name) : json(nullptr);
    j["failure"] = d.decode_failure ? json(to_string(*d.decode_failure)) : json(nullptr);
    return j;
}

Detection detection_from_json(const json& j) {
    Detection d;
    d.frame_idx = j.at("frame").get<int>();
    const auto& b = j.at("bbox");
    if (!b.is_array() || b.size() != 4)
        throw ParseError("detections: bbox must be [x,y,w,h]");
    d.bbox = BBox{b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), b[3].get<int>()};
    if (j.contains("name") && !j["name"].is_null())
        d.name = j["name"].get<std::string>();
    if (j.contains("failure") && !j["failure"].is_null()) {
        auto f = decode_failure_from_string(j["failure"].get<std::string>());
        if (!f)
            throw ParseError("detections: unknown failure cause");
        d.decode_failure = f;
    }
    return d;
}

} // namespace

std::string detections_to_jsonl(const std::vector<Detection>& detections) {
    std::string out;
    for (const Detection& d : detections) {
        out += detection_to_json(d).dump();
        out += '\n';
    }
    return out;
}

std::vector<Detection> detections_from_jsonl(const std::string& text) {
    std::vector<Detection> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        out.push_back(detection_from_json(json::parse(line)));
    }
    return out;
}

std::string labeled_to_jsonl(const std::vector<LabeledDetection>& labeled) {
    std::string out;
    for (const LabeledDetection& ld : labeled) {
        json j = detection_to_json(ld.detection);
        j["name"] = ld.assigned_name;
        j["source"] = to_string(ld.source);
        j["similarity"] = ld.similarity;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<LabeledDetection> labeled_from_jsonl(const std::string& text) {
    std::vector<LabeledDetection> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        json j = json::parse(line);
        LabeledDetection ld;
        ld.detection = detection_from_json(j);
        ld.assigned_name = j.at("name").get<std::string>();
        std::string src = j.value("source", "qr");
        ld.source = src == "qr" ? LabelSource::QrDecoded : LabelSource::DictionaryLinked;
        ld.similarity = j.value("similarity", 1.0);
        out.push_back(std::move(ld));
    }
    return out;
}

// ---------- name sets ----------

std::string name_sets_to_jsonl(const std::vector<std::vector<std::string>>& sets) {
    std::string out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        json j;
        j["frame"] = i;
        j["names"] = sets[i];
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<std::vector<std::string>> name_sets_from_jsonl(const std::string& text) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        json j = json::parse(line);
        std::size_t frame = j.at("frame").get<std::size_t>();
        if (frame >= out.size())
            out.resize(frame + 1);
        out[frame] = j.at("names").get<std::vector<std::string>>();
    }
    return out;
}

// ---------- dictionary ----------

std::string dictionary_to_json(const ObjectDictionary& dict) {
    json entries = json::object();
    std::size_t dim = 0;
    for (const auto& [name, entry] : dict.entries()) {
        entries[name] = {{"mean", entry.mean.values}, {"count", entry.count}};
        dim = entry.mean.dim();
    }
    json j = {{"dim", dim}, {"entries", entries}};
    return j.dump(1) + "\n";
}

ObjectDictionary dictionary_from_json(const std::string& text) {
    json j = json::parse(text);
    std::size_t dim = j.at("dim").get<std::size_t>();
    ObjectDictionary dict;
    for (const auto& [name, entry] : j.at("entries").items()) {
        FeatureVector mean;
        mean.values = entry.at("mean").get<std::vector<double>>();
        if (mean.dim() != dim)
            throw ParseError("dictionary: entry dimension mismatch for " + name);
        int count = entry.at("count").get<int>();
        if (count < 1)
            throw ParseError("dictionary: count must be >= 1 for " + name);
        // adding the mean count times reproduces mean and count exactly
        for (int i = 0; i < count; ++i)
            dict.add(name, mean);
    }
    return dict;
}

// ---------- matrices ----------

std::string matrix_to_text(const Matrix& m) {
    std::string out = std::to_string(m.rows) + " " + std::to_string(m.cols) + "\n";
    for (std::size_t r = 0; r < m.rows; ++r) {
        const double* row = m.row(r);
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (c)
                out += ' ';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

Matrix matrix_from_text(const std::string& text) {
    std::istringstream in(text);
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows < 1 || cols < 1)
        throw ParseError("matrix: bad header (want \"N D\")");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i)
        if (!(in >> m.data[i]))
            throw ParseError("matrix: truncated data");
    return m;
}

std::vector<FeatureVector> features_from_text(const std::string& text) {
    Matrix m = matrix_from_text(text);
    std::vector<FeatureVector> out(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        out[r].values.assign(m.row(r), m.row(r) + m.cols);
    return out;
}

std::string features_to_text(const std::vector<FeatureVector>& features) {
    if (features.empty())
        throw Error("features_to_text: empty feature list");
    Matrix m(features.size(), features[0].dim());
    for (std::size_t r = 0; r < features.size(); ++r) {
        if (features[r].dim() != m.cols)
            throw DimensionMismatch("features_to_text: inconsistent dimensions");
        std::copy(features[r].values.begin(), features[r].values.end(), m.row(r));
    }
    return matrix_to_text(m);
}

// ---------- name table ----------

std::string name_table_to_json(const NameEmbeddingTable& table) {
    json vectors = json::object();
    for (const auto& [name, vec] : table.vectors)
        vectors[name] = vec;
    json j = {{"dim", table.dim}, {"vectors", vectors}};
    return j.dump(1) + "\n";
}

NameEmbeddingTable name_table_from_json(const std::string& text) {
    json j = json::parse(text);
    NameEmbeddingTable table;
    table.dim = j.at("dim").get<std::size_t>();
    for (const auto& [name, vec] : j.at("vectors").items()) {
        auto v = vec.get<std::vector<double>>();
        if (v.size() != table.dim)
            throw ParseError("name table: vector dimension mismatch for " + name);
        table.vectors[name] = std::move(v);
    }
    return table;
}

// ---------- segments ----------

std::string segments_to_csv(const SegmentList& segments) {
    std::string out = "step_index,step_text,start_frame,end_frame,start_sec,end_sec\n";
    for (std::size_t i = 0; i < segments.segments.size(); ++i) {
        const Segment& s = segments.segments[i];
        out += std::to_string(s.step_index) + ',' + csv_escape(s.step_text) + ',' +
               std::to_string(s.start_frame) + ',' + std::to_string(s.end_frame) + ',' +
               format_double(segments.start_sec(i)) + ',' + format_double(segments.end_sec(i)) + '\n';
    }
    return out;
}

SegmentList segments_from_csv(const std::string& text, double fps) {
    auto rows = parse_csv(text);
    if (rows.empty() || rows[0].size() < 4 || rows[0][0] != "step_index")
        throw ParseError("segments CSV: missing or wrong header");
    SegmentList list;
    list.fps = fps;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() < 4)
            throw ParseError("segments CSV: short row " + std::to_string(i));
        Segment s;
        s.step_index = std::stoi(r[0]);
        s.step_text = r[1];
        s.start_frame = std::stoi(r[2]);
        s.end_frame = std::stoi(r[3]);
        list.segments.push_back(std::move(s));
    }
    return list;
}

// ---------- protocol ----------

std::vector<std::string> ProtocolFile::step_texts() const {
    std::vector<std::string> out;
    out.reserve(steps.size());
    for (const ProtocolStep& s : steps)
        out.push_back(s.step_text);
    return out;
}

bool ProtocolFile::has_ground_truth() const {
    return !steps.empty() && std::all_of(steps.begin(), steps.end(), [](const ProtocolStep& s) {
        return s.gt_start_sec && s.gt_end_sec;
    });
}

SegmentList ProtocolFile::ground_truth_segments(double fps) const {
    if (!has_ground_truth())
        throw Error("protocol: ground-truth timestamps missing");
    SegmentList list;
    list.fps = fps;
    int prev_end = -1;
    for (const ProtocolStep& s : steps) {
        Segment seg;
        seg.step_index = s.step_index;
        seg.step_text = s.step_text;
        // frame = floor(sec * fps); [start_sec, end_sec) covers frames
        // [floor(start*fps), floor(end*fps) - 1]
        seg.start_frame = static_cast<int>(std::floor(*s.gt_start_sec * fps));
        seg.end_frame =
            std::max(seg.start_frame, static_cast<int>(std::floor(*s.gt_end_sec * fps)) - 1);
        if (seg.start_frame <= prev_end)
            throw ParseError("protocol: ground-truth segments overlap at this fps");
        prev_end = seg.end_frame;
        list.segments.push_back(std::move(seg));
    }
    return list;
}

AnnotationTrack ProtocolFile::as_track() const {
    if (!has_ground_truth())
        throw Error("protocol: ground-truth timestamps missing");
    AnnotationTrack track;
    for (const ProtocolStep& s : steps)
        track.events.push_back({s.step_index, *s.gt_start_sec, *s.gt_end_sec});
    return track;
}

std::string protocol_to_csv(const ProtocolFile& protocol) {
    std::string out = "step_index,step_text,gt_start_sec,gt_end_sec\n";
    for (const ProtocolStep& s : protocol.steps) {
        out += std::to_string(s.step_index) + ',' + csv_escape(s.step_text) + ',';
        out += s.gt_start_sec ? format_double(*s.gt_start_sec) : std::string();
        out += ',';
        out += s.gt_end_sec ? format_double(*s.gt_end_sec) : std::string();
        out += '\n';
    }
    return out;
}

ProtocolFile protocol_from_csv(const std::string& text) {
    auto rows = parse_csv(text);
    if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "step_index" ||
        rows[0][1] != "step_text")
        throw ParseError("protocol CSV: missing or wrong header");
    ProtocolFile protocol;
    int expected = 1;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() < 2)
            throw ParseError("protocol CSV: short row " + std::to_string(i));
        ProtocolStep s;
        s.step_index = std::stoi(r[0]);
        if (s.step_index != expected++)
            throw ParseError("protocol CSV: step_index must be dense from 1");
        s.step_text = r[1];
        if (r.size() >= 4) {
            if (!r[2].empty())
                s.gt_start_sec = std::stod(r[2]);
            if (!r[3].empty())
                s.gt_end_sec = std::stod(r[3]);
            if (s.gt_start_sec && s.gt_end_sec && *s.gt_end_sec < *s.gt_start_sec)
                throw ParseError("protocol CSV: gt_end_sec before gt_start_sec");
        }
        protocol.steps.push_back(std::move(s));
    }
    return protocol;
}

std::string adapt_protocol_csv(const std::string& csv_text, const std::string& mapping_json) {
    json mapping = json::parse(mapping_json);
    auto rows = parse_csv(csv_text);
    if (rows.empty())
        throw ParseError("adapt: empty CSV");

    auto column_of = [&rows](const std::string& header) -> int {
        for (std::size_t c = 0; c < rows[0].size(); ++c)
            if (rows[0][c] == header)
                return static_cast<int>(c);
        return -1;
    };

    auto mapped = [&](const char* canonical) -> int {
        if (!mapping.contains(canonical))
            return -1;
        int col = column_of(mapping[canonical].get<std::string>());
        if (col < 0)
            throw ParseError(std::string("adapt: mapped column not found for ") + canonical);
        return col;
    };

    int c_idx = mapped("step_index");
    int c_text = mapped("step_text");
    int c_start = mapped("gt_start_sec");
    int c_end = mapped("gt_end_sec");
    if (c_text < 0)
        throw ParseError("adapt: mapping must name at least step_text");

    std::string out = "step_index,step_text,gt_start_sec,gt_end_sec\n";
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        auto cell = [&](int c) { return c >= 0 && c < static_cast<int>(r.size()) ? r[c] : std::string(); };
        std::string idx = c_idx >= 0 ? cell(c_idx) : std::to_string(i);
        out += idx + ',' + csv_escape(cell(c_text)) + ',' + cell(c_start) + ',' + cell(c_end) + '\n';
    }
    return out;
}

// ---------- QR name map ----------

std::string name_map_to_json(const QrNameMap& map) {
    json j = json::object();
    for (const auto& [payload, name] : map)
        j[payload] = name;
    return j.dump(1) + "\n";
}

QrNameMap name_map_from_json(const std::string& text) {
    json j = json::parse(text);
    QrNameMap map;
    for (const auto& [payload, name] : j.items())
        map[payload] = name.get<std::string>();
    return map;
}

// ---------- scene spec / manifest ----------

namespace {

json degradation_to_json(const DegradationSpec& d) {
    return {{"gaussian_sigma", d.gaussian_sigma}, {"motion_len", d.motion_len},
            {"motion_angle", d.motion_angle},     {"occlusion_fraction", d.occlusion_fraction},
            {"scale", d.scale}};
}

DegradationSpec degradation_from_json(const json& j) {
    DegradationSpec d;
    d.gaussian_sigma = j.value("gaussian_sigma", 0.0);
    d.motion_len = j.value("motion_len", 0.0);
    d.motion_angle = j.value("motion_angle", 0.0);
    d.occlusion_fraction = j.value("occlusion_fraction", 0.0);
    d.scale = j.value("scale", 1.0);
    return d;
}

} // namespace

SceneSpec scene_spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("scene config: ") + e.what());
    }
    SceneSpec spec;
    try {
        for (const auto& obj : j.at("objects")) {
            SceneObject o;
            o.name = obj.at("name").get<std::string>();
            o.qr_size_cm = obj.value("qr_size_cm", 2);
            o.feature_seed = obj.value("feature_seed", 0ULL);
            spec.objects.push_back(std::move(o));
        }
        spec.frames = j.at("frames").get<int>();
        spec.fps = j.value("fps", 10.0);
        if (j.contains("camera")) {
            spec.camera.width = j["camera"].value("width", 320);
            spec.camera.height = j["camera"].value("height", 240);
            spec.camera.px_per_cm = j["camera"].value("px_per_cm", 12.0);
        }
        if (j.contains("hand_script"))
            spec.hand_script = j["hand_script"].get<std::vector<std::string>>();
        if (j.contains("degradation")) {
            spec.degradation.base = degradation_from_json(j["degradation"]);
            spec.degradation.schedule =
                schedule_from_string(j["degradation"].value("schedule", "constant"));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("scene config: ") + e.what());
    }
    return spec;
}

std::string scene_spec_to_json(const SceneSpec& spec) {
    json objects = json::array();
    for (const SceneObject& o : spec.objects)
        objects.push_back(
            {{"name", o.name}, {"qr_size_cm", o.qr_size_cm}, {"feature_seed", o.feature_seed}});
    json deg = degradation_to_json(spec.degradation.base);
    deg["schedule"] = to_string(spec.degradation.schedule);
    json j = {{"objects", objects},
              {"frames", spec.frames},
              {"fps", spec.fps},
              {"camera",
               {{"width", spec.camera.width},
                {"height", spec.camera.height},
                {"px_per_cm", spec.camera.px_per_cm}}},
              {"hand_script", spec.hand_script},
              {"degradation", deg}};
    return j.dump(1) + "\n";
}

std::string manifest_to_json(const SceneManifest& manifest) {
    json frames = json::array();
    for (std::size_t i = 0; i < manifest.frame_files.size(); ++i) {
        json f = {{"file", manifest.frame_files[i]}};
        if (i < manifest.applied.size())
            f["degradation"] = degradation_to_json(manifest.applied[i]);
        frames.push_back(std::move(f));
    }
    json j = {{"n_frames", manifest.n_frames},
              {"fps", manifest.fps},
              {"seed", manifest.seed},
              {"px_per_cm", manifest.px_per_cm},
              {"frames", frames}};
    return j.dump(1) + "\n";
}

SceneManifest manifest_from_json(const std::string& text) {
    json j = json::parse(text);
    SceneManifest m;
    m.n_frames = j.at("n_frames").get<int>();
    m.fps = j.at("fps").get<double>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.px_per_cm = j.value("px_per_cm", 12.0);
    for (const auto& f : j.at("frames")) {
        m.frame_files.push_back(f.at("file").get<std::string>());
        m.applied.push_back(f.contains("degradation") ? degradation_from_json(f["degradation"])
                                                      : DegradationSpec{});
    }
    return m;
}

// ---------- metrics ----------

std::string metrics_to_json(const MetricsReport& report) {
    json per_step = json::array();
    for (std::size_t k = 0; k < report.per_step.size(); ++k)
        per_step.push_back({{"step", k + 1},
                            {"precision", report.per_step[k].precision},
                            {"recall", report.per_step[k].recall},
                            {"tiou", report.per_step[k].tiou}});
    json j = {{"mof", report.mof},
              {"precision", report.precision},
              {"recall", report.recall},
              {"tiou", report.tiou},
              {"per_step", per_step}};
    return j.dump(1) + "\n";
}

std::string metrics_to_table(const MetricsReport& report) {
    char line[128];
    std::string out = "            MoF  Prec.   Rec.  tIoU\n";
    std::snprintf(line, sizeof(line), "%-8s %6.1f %6.1f %6.1f %6.1f\n", "all", report.mof,
                  report.precision, report.recall, report.tiou);
    out += line;
    for (std::size_t k = 0; k < report.per_step.size(); ++k) {
        std::string name = "step" + std::to_string(k + 1);
        std::snprintf(line, sizeof(line), "%-8s %6s %6.1f %6.1f %6.1f\n", name.c_str(), "-",
                      report.per_step[k].precision, report.per_step[k].recall,
                      report.per_step[k].tiou);
        out += line;
    }
    return out;
}

} // namespace qrsl
