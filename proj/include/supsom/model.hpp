#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "supsom/dataset.hpp"
#include "supsom/som.hpp"
#include "supsom/supervised.hpp"

namespace supsom {

enum class HeadKind
{
	none,
	regression,
	classification,
};

std::string_view to_string(HeadKind kind);
HeadKind parse_head_kind(std::string_view name);

// A trained map, optionally with a supervised head, plus everything needed to
// apply it to new data.
struct SomModel
{
	static constexpr int format_version = 1;

	SomConfig config;
	DistanceMetric metric;
	WeightGrid grid;
	std::variant<std::monostate, RegressionHead, ClassificationHead> head;
	std::vector<std::string> feature_names;
	std::optional<ScalingRecord> scaling;

	HeadKind head_kind() const;

	// Feature matrix in the model's input space: columns picked by name when
	// both sides carry names, then scaled when the model was trained scaled.
	Matrix prepare(const LabeledDataset& data) const;
};

// Trains the map on `data` (seeded from derive_seed(config.seed,
// "unsupervised")) and then the requested head (seeded from
// derive_seed(config.seed, "supervised")).
SomModel train_model(const LabeledDataset& data, const SomConfig& config, HeadKind head, bool minmax);

std::vector<double> predict_values(const SomModel& model, const LabeledDataset& data);
std::vector<ClassLabel> predict_classes(const SomModel& model, const LabeledDataset& data);

nlohmann::json config_to_json(const SomConfig& config);
// Reads the fields present in `j`, keeping `base` values for absent ones.
SomConfig config_from_json(const nlohmann::json& j, SomConfig base = {});

nlohmann::json model_to_json(const SomModel& model);
SomModel model_from_json(const nlohmann::json& j);

void save_model(const std::filesystem::path& path, const SomModel& model);
SomModel load_model(const std::filesystem::path& path);

} // namespace supsom
