#include "gridex/jsonio.hpp"

#include <fstream>
#include <sstream>

#include "gridex/errors.hpp"

namespace gridex {

namespace {

template <typename T>
T require(const nlohmann::json& j, const char* key) {
    if (!j.contains(key))
        throw InvalidArgument(std::string("missing JSON key: ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidArgument(std::string("bad JSON value for key: ") + key);
    }
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidArgument(std::string("bad JSON value for key: ") + key);
    }
}

} // namespace

nlohmann::json to_json(const GeometryTransform& t) {
    return {{"scale_x", t.scale_x},       {"scale_y", t.scale_y},
            {"pad_left", t.pad_left},     {"pad_top", t.pad_top},
            {"original_width", t.original_width}, {"original_height", t.original_height}};
}

GeometryTransform transform_from_json(const nlohmann::json& j) {
    GeometryTransform t;
    t.scale_x = require<double>(j, "scale_x");
    t.scale_y = require<double>(j, "scale_y");
    t.pad_left = get_or(j, "pad_left", 0);
    t.pad_top = get_or(j, "pad_top", 0);
    t.original_width = require<int>(j, "original_width");
    t.original_height = require<int>(j, "original_height");
    return t;
}

nlohmann::json to_json(const BoundarySet& b) {
    return {{"axis", b.axis == Axis::Vertical ? "vertical" : "horizontal"},
            {"coordinates", b.coordinates},
            {"source_bins", b.source_bins},
            {"transform", to_json(b.transform)},
            {"clamped", b.clamped}};
}

BoundarySet boundary_set_from_json(const nlohmann::json& j) {
    BoundarySet b;
    const auto axis = get_or<std::string>(j, "axis", "vertical");
    if (axis == "vertical")
        b.axis = Axis::Vertical;
    else if (axis == "horizontal")
        b.axis = Axis::Horizontal;
    else
        throw InvalidArgument("axis must be vertical or horizontal");
    b.coordinates = require<std::vector<double>>(j, "coordinates");
    b.source_bins = get_or(j, "source_bins", std::vector<int>{});
    if (j.contains("transform")) b.transform = transform_from_json(j.at("transform"));
    b.clamped = get_or(j, "clamped", false);
    return b;
}

nlohmann::json to_json(const RegionPartition& p) {
    auto axis_json = [](const AxisPartition& a) {
        nlohmann::json intervals = nlohmann::json::array();
        double lo = 0.0;
        for (double cut : a.cuts) {
            intervals.push_back({{"lo", lo}, {"hi", cut}});
            lo = cut;
        }
        intervals.push_back({{"lo", lo}, {"hi", a.extent}});
        return nlohmann::json{{"extent", a.extent}, {"cuts", a.cuts}, {"intervals", intervals}};
    };
    return {{"columns", axis_json(p.columns)}, {"rows", axis_json(p.rows)}};
}

GridSpec grid_spec_from_json(const nlohmann::json& j) {
    GridSpec g;
    g.image_width = require<int>(j, "image_width");
    g.image_height = require<int>(j, "image_height");
    g.column_boundaries = require<std::vector<double>>(j, "column_boundaries");
    g.row_boundaries = get_or(j, "row_boundaries", std::vector<double>{});
    g.band_half_width = require<int>(j, "band_half_width");
    g.validate();
    return g;
}

nlohmann::json to_json(const GridSpec& g) {
    return {{"image_width", g.image_width},
            {"image_height", g.image_height},
            {"column_boundaries", g.column_boundaries},
            {"row_boundaries", g.row_boundaries},
            {"band_half_width", g.band_half_width}};
}

NoiseSpec noise_spec_from_json(const nlohmann::json& j) {
    NoiseSpec n;
    n.flip_probability = get_or(j, "flip_probability", 0.0);
    n.dropout_probability = get_or(j, "dropout_probability", 0.0);
    n.seed = get_or<std::uint64_t>(j, "seed", 0);
    return n;
}

MixtureSpec mixture_spec_from_json(const nlohmann::json& j) {
    MixtureSpec spec;
    spec.bin_count = require<int>(j, "bin_count");
    if (!j.contains("components") || !j.at("components").is_array())
        throw InvalidArgument("mixture needs a components array");
    for (const auto& c : j.at("components")) {
        MixtureComponent mc;
        mc.weight = require<double>(c, "weight");
        mc.center = require<double>(c, "center");
        mc.spread = require<double>(c, "spread");
        spec.components.push_back(mc);
    }
    spec.validate();
    return spec;
}

DensityNoiseSpec density_noise_spec_from_json(const nlohmann::json& j) {
    DensityNoiseSpec n;
    const auto model = get_or<std::string>(j, "model", "additive-uniform");
    if (model == "additive-uniform")
        n.model = DensityNoiseModel::AdditiveUniform;
    else if (model == "additive-gaussian")
        n.model = DensityNoiseModel::AdditiveGaussian;
    else
        throw InvalidArgument("noise model must be additive-uniform or additive-gaussian");
    n.amplitude = get_or(j, "amplitude", 0.0);
    n.seed = get_or<std::uint64_t>(j, "seed", 0);
    return n;
}

PipelineConfig pipeline_config_from_json(const nlohmann::json& j) {
    PipelineConfig c;
    c.binarize_threshold = get_or(j, "binarize", c.binarize_threshold);
    if (j.contains("resize")) {
        const auto& r = j.at("resize");
        c.target_width = get_or(r, "width", c.target_width);
        c.target_height = get_or(r, "height", c.target_height);
        const auto mode = get_or<std::string>(r, "mode", "stretch");
        if (mode == "stretch")
            c.resize_mode = ResizeMode::Stretch;
        else if (mode == "pad")
            c.resize_mode = ResizeMode::PadPreserveAspect;
        else
            throw InvalidArgument("resize mode must be stretch or pad");
    }
    const auto intervals = get_or<std::string>(j, "intervals", "all");
    if (intervals == "all")
        c.intervals = IntervalSelection::AllIntervals;
    else if (intervals == "on")
        c.intervals = IntervalSelection::OnRuns;
    else if (intervals == "off")
        c.intervals = IntervalSelection::OffRuns;
    else
        throw InvalidArgument("intervals must be all, on, or off");
    c.epsilon = get_or(j, "epsilon", c.epsilon);
    if (j.contains("schedule")) {
        c.schedule.steps.clear();
        for (const auto& s : j.at("schedule"))
            c.schedule.steps.push_back(
                {require<double>(s, "theta_mult"), require<double>(s, "sigma")});
    }
    const auto tmode = get_or<std::string>(j, "threshold_mode", "std");
    if (tmode == "std")
        c.schedule.mode = ThresholdMode::StdDev;
    else if (tmode == "quantile")
        c.schedule.mode = ThresholdMode::Quantile;
    else
        throw InvalidArgument("threshold_mode must be std or quantile");
    const auto semantics = get_or<std::string>(j, "semantics", "separators");
    if (semantics == "separators")
        c.semantics = RegionSemantics::Separators;
    else if (semantics == "centers")
        c.semantics = RegionSemantics::Centers;
    else
        throw InvalidArgument("semantics must be centers or separators");
    c.gap_factor = get_or(j, "gap_factor", c.gap_factor);
    if (j.contains("energy")) {
        c.energy_lambda = get_or(j.at("energy"), "lambda", c.energy_lambda);
        c.energy_mu = get_or(j.at("energy"), "mu", c.energy_mu);
    }
    c.validate();
    return c;
}

nlohmann::json to_json(const PipelineConfig& c) {
    nlohmann::json schedule = nlohmann::json::array();
    for (const auto& s : c.schedule.steps)
        schedule.push_back({{"theta_mult", s.threshold_multiplier}, {"sigma", s.kernel_sigma}});
    return {
        {"binarize", c.binarize_threshold},
        {"resize",
         {{"width", c.target_width},
          {"height", c.target_height},
          {"mode", c.resize_mode == ResizeMode::Stretch ? "stretch" : "pad"}}},
        {"intervals", c.intervals == IntervalSelection::AllIntervals ? "all"
                      : c.intervals == IntervalSelection::OnRuns     ? "on"
                                                                     : "off"},
        {"epsilon", c.epsilon},
        {"schedule", schedule},
        {"threshold_mode", c.schedule.mode == ThresholdMode::StdDev ? "std" : "quantile"},
        {"semantics", c.semantics == RegionSemantics::Separators ? "separators" : "centers"},
        {"gap_factor", c.gap_factor},
        {"energy", {{"lambda", c.energy_lambda}, {"mu", c.energy_mu}}},
    };
}

WordBox word_box_from_json(const nlohmann::json& j) {
    WordBox w;
    w.text = require<std::string>(j, "text");
    w.x_min = require<double>(j, "x_min");
    w.y_min = require<double>(j, "y_min");
    w.x_max = require<double>(j, "x_max");
    w.y_max = require<double>(j, "y_max");
    if (j.contains("confidence")) w.confidence = require<double>(j, "confidence");
    if (!(w.x_min < w.x_max) || !(w.y_min < w.y_max))
        throw InvalidArgument("degenerate word box: " + w.text);
    return w;
}

nlohmann::json to_json(const WordBox& w) {
    nlohmann::json j = {{"text", w.text}, {"x_min", w.x_min}, {"y_min", w.y_min},
                        {"x_max", w.x_max}, {"y_max", w.y_max}};
    if (w.confidence) j["confidence"] = *w.confidence;
    return j;
}

std::vector<WordBox> word_boxes_from_jsonl(const std::string& text) {
    std::vector<WordBox> words;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw InvalidArgument(std::string("malformed word-box line: ") + e.what());
        }
        words.push_back(word_box_from_json(j));
    }
    return words;
}

std::vector<GroundTruthCell> ground_truth_from_json(const nlohmann::json& j) {
    if (!j.contains("cells") || !j.at("cells").is_array())
        throw InvalidArgument("ground truth needs a cells array");
    std::vector<GroundTruthCell> cells;
    for (const auto& c : j.at("cells")) {
        GroundTruthCell cell;
        cell.row_index = require<int>(c, "row");
        cell.col_index = require<int>(c, "col");
        cell.x_min = require<double>(c, "x_min");
        cell.y_min = require<double>(c, "y_min");
        cell.x_max = require<double>(c, "x_max");
        cell.y_max = require<double>(c, "y_max");
        cell.words = get_or(c, "words", std::vector<std::string>{});
        cells.push_back(std::move(cell));
    }
    return cells;
}

nlohmann::json to_json(const std::vector<GroundTruthCell>& cells) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : cells)
        arr.push_back({{"row", c.row_index},
                       {"col", c.col_index},
                       {"x_min", c.x_min},
                       {"y_min", c.y_min},
                       {"x_max", c.x_max},
                       {"y_max", c.y_max},
                       {"words", c.words}});
    return {{"cells", arr}};
}

nlohmann::json to_json(const CasaReport& r) {
    nlohmann::json per_cell = nlohmann::json::array();
    for (const auto& c : r.per_cell)
        per_cell.push_back(
            {{"row", c.row}, {"col", c.col}, {"total", c.total}, {"correct", c.correct}});
    nlohmann::json failures = nlohmann::json::array();
    for (const auto tag : r.failures) {
        switch (tag) {
            case WordFailure::Matched: failures.push_back("matched"); break;
            case WordFailure::TextMismatch: failures.push_back("text-mismatch"); break;
            case WordFailure::WrongCell: failures.push_back("wrong-cell"); break;
            case WordFailure::Unmatched: failures.push_back("unmatched"); break;
        }
    }
    return {{"total_words", r.total_words},
            {"correct_words", r.correct_words},
            {"casa_percent", r.casa_percent},
            {"per_cell", per_cell},
            {"failures", failures}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace gridex
