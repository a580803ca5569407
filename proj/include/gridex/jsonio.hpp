#ifndef GRIDEX_JSONIO_HPP
#define GRIDEX_JSONIO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "gridex/evaluate.hpp"
#include "gridex/geometry.hpp"
#include "gridex/mask.hpp"
#include "gridex/pipeline.hpp"
#include "gridex/synth.hpp"

// JSON adapters for every externally visible schema. Parsing errors
// surface as InvalidArgument with the offending key in the message.

namespace gridex {

nlohmann::json to_json(const GeometryTransform& t);
GeometryTransform transform_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundarySet& b);
BoundarySet boundary_set_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RegionPartition& p);

GridSpec grid_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GridSpec& g);

NoiseSpec noise_spec_from_json(const nlohmann::json& j);

MixtureSpec mixture_spec_from_json(const nlohmann::json& j);
DensityNoiseSpec density_noise_spec_from_json(const nlohmann::json& j);

PipelineConfig pipeline_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PipelineConfig& c);

// One JSON object per line: {"text","x_min","y_min","x_max","y_max","confidence"?}
std::vector<WordBox> word_boxes_from_jsonl(const std::string& text);
WordBox word_box_from_json(const nlohmann::json& j);
nlohmann::json to_json(const WordBox& w);

// {"cells":[{"row","col","x_min","y_min","x_max","y_max","words":[...]}]}
std::vector<GroundTruthCell> ground_truth_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<GroundTruthCell>& cells);

nlohmann::json to_json(const CasaReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace gridex

#endif
