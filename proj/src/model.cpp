#include "supsom/model.hpp"

#include <fstream>

#include "supsom/errors.hpp"

namespace supsom {

using nlohmann::json;

namespace {

json schedule_to_json(const ScheduleSpec& spec)
{
	return {{"kind", to_string(spec.kind)}, {"start", spec.start}, {"end", spec.end}};
}

ScheduleSpec schedule_from_json(const json& j, ScheduleSpec base)
{
	if (j.contains("kind"))
		base.kind = parse_schedule_kind(j.at("kind").get<std::string>());
	if (j.contains("start"))
		base.start = j.at("start").get<double>();
	if (j.contains("end"))
		base.end = j.at("end").get<double>();
	return base;
}

json matrix_to_json(const Matrix& m)
{
	return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::vector<double>(m.data(), m.data() + m.size())}};
}

Matrix matrix_from_json(const json& j)
{
	const auto rows = j.at("rows").get<Eigen::Index>();
	const auto cols = j.at("cols").get<Eigen::Index>();
	const auto data = j.at("data").get<std::vector<double>>();
	if (static_cast<Eigen::Index>(data.size()) != rows * cols)
		throw DataError{"model file: matrix data has the wrong length"};
	return Eigen::Map<const Matrix>(data.data(), rows, cols);
}

} // namespace

std::string_view to_string(HeadKind kind)
{
	switch (kind)
	{
		case HeadKind::none: return "none";
		case HeadKind::regression: return "regression";
		case HeadKind::classification: return "classification";
	}
	return "unknown";
}

HeadKind parse_head_kind(std::string_view name)
{
	for (auto kind : {HeadKind::none, HeadKind::regression, HeadKind::classification})
		if (to_string(kind) == name)
			return kind;
	throw ValidationError{"unknown head kind '" + std::string{name} + "'"};
}

HeadKind SomModel::head_kind() const
{
	if (std::holds_alternative<RegressionHead>(head))
		return HeadKind::regression;
	if (std::holds_alternative<ClassificationHead>(head))
		return HeadKind::classification;
	return HeadKind::none;
}

Matrix SomModel::prepare(const LabeledDataset& data) const
{
	Matrix features = data.features;
	if (!feature_names.empty() && !data.feature_names.empty() && data.feature_names != feature_names)
		features = select_features(data, feature_names).features;
	if (static_cast<std::size_t>(features.cols()) != grid.feature_dim())
		throw ValidationError{"dataset has " + std::to_string(features.cols()) + " features, model expects " + std::to_string(grid.feature_dim())};
	return scaling ? scaling->apply(features) : features;
}

SomModel train_model(const LabeledDataset& data, const SomConfig& config, HeadKind head, bool minmax)
{
	config.validate();
	data.validate();
	if (data.empty())
		throw DataError{"cannot train on an empty dataset"};

	SomModel model;
	model.config = config;
	model.feature_names = data.feature_names;

	LabeledDataset input = data;
	if (minmax)
	{
		auto [scaled, record] = minmax_scale(data);
		input = std::move(scaled);
		model.scaling = std::move(record);
	}

	model.metric = DistanceMetric::fit(config.metric, input.features);
	Rng unsupervised_rng{derive_seed(config.seed, "unsupervised")};
	model.grid = fit_unsupervised(input, config, model.metric, unsupervised_rng);

	Rng supervised_rng{derive_seed(config.seed, "supervised")};
	if (head == HeadKind::regression)
		model.head = fit_regressor(model.grid, input, config, model.metric, supervised_rng);
	else if (head == HeadKind::classification)
		model.head = fit_classifier(model.grid, input, config, model.metric, supervised_rng);
	return model;
}

std::vector<double> predict_values(const SomModel& model, const LabeledDataset& data)
{
	const auto* head = std::get_if<RegressionHead>(&model.head);
	if (!head)
		throw ValidationError{"model has no regression head"};
	return predict_regression(model.grid, *head, model.prepare(data), model.metric);
}

std::vector<ClassLabel> predict_classes(const SomModel& model, const LabeledDataset& data)
{
	const auto* head = std::get_if<ClassificationHead>(&model.head);
	if (!head)
		throw ValidationError{"model has no classification head"};
	return predict_classification(model.grid, *head, model.prepare(data), model.metric);
}

json config_to_json(const SomConfig& config)
{
	return {
	    {"n_row", config.n_row},
	    {"n_column", config.n_column},
	    {"n_iter_unsupervised", config.n_iter_unsupervised},
	    {"n_iter_supervised", config.n_iter_supervised},
	    {"metric", to_string(config.metric)},
	    {"lr_schedule", schedule_to_json(config.lr_schedule)},
	    {"radius_schedule", schedule_to_json(config.radius_schedule)},
	    {"kernel", to_string(config.kernel)},
	    {"update_mode", to_string(config.update_mode)},
	    {"seed", config.seed},
	    {"class_weighting", config.class_weighting},
	};
}

SomConfig config_from_json(const json& j, SomConfig base)
{
	try
	{
		if (j.contains("n_row"))
			base.n_row = j.at("n_row").get<std::size_t>();
		if (j.contains("n_column"))
			base.n_column = j.at("n_column").get<std::size_t>();
		if (j.contains("n_iter_unsupervised"))
			base.n_iter_unsupervised = j.at("n_iter_unsupervised").get<std::size_t>();
		if (j.contains("n_iter_supervised"))
			base.n_iter_supervised = j.at("n_iter_supervised").get<std::size_t>();
		if (j.contains("metric"))
			base.metric = parse_metric(j.at("metric").get<std::string>());
		if (j.contains("lr_schedule"))
			base.lr_schedule = schedule_from_json(j.at("lr_schedule"), base.lr_schedule);
		if (j.contains("radius_schedule"))
			base.radius_schedule = schedule_from_json(j.at("radius_schedule"), base.radius_schedule);
		if (j.contains("kernel"))
			base.kernel = parse_kernel(j.at("kernel").get<std::string>());
		if (j.contains("update_mode"))
			base.update_mode = parse_update_mode(j.at("update_mode").get<std::string>());
		if (j.contains("seed"))
			base.seed = j.at("seed").get<std::uint64_t>();
		if (j.contains("class_weighting"))
			base.class_weighting = j.at("class_weighting").get<bool>();
	}
	catch (const json::exception& e)
	{
		throw ValidationError{std::string{"invalid configuration: "} + e.what()};
	}
	return base;
}

json model_to_json(const SomModel& model)
{
	json j;
	j["format"] = "supsom-model";
	j["format_version"] = SomModel::format_version;
	j["config"] = config_to_json(model.config);
	j["feature_dim"] = model.grid.feature_dim();
	j["feature_names"] = model.feature_names;
	j["metric"] = {{"name", to_string(model.metric.id())}};
	if (model.metric.cov_inv())
		j["metric"]["cov_inv"] = matrix_to_json(*model.metric.cov_inv());
	j["weights"] = matrix_to_json(model.grid.weights());
	if (model.scaling)
		j["scaling"] = {{"offset", model.scaling->offset}, {"range", model.scaling->range}};

	j["head"] = {{"kind", to_string(model.head_kind())}};
	if (const auto* reg = std::get_if<RegressionHead>(&model.head))
		j["head"]["values"] = reg->values;
	else if (const auto* cls = std::get_if<ClassificationHead>(&model.head))
	{
		j["head"]["class_set"] = cls->class_set;
		j["head"]["node_class"] = cls->node_class;
	}
	return j;
}

SomModel model_from_json(const json& j)
{
	try
	{
		if (j.value("format", "") != "supsom-model")
			throw DataError{"not a supsom model file"};
		if (j.at("format_version").get<int>() != SomModel::format_version)
			throw DataError{"unsupported model format version " + j.at("format_version").dump()};

		SomModel model;
		model.config = config_from_json(j.at("config"));
		model.feature_names = j.at("feature_names").get<std::vector<std::string>>();

		const json& metric = j.at("metric");
		std::optional<Matrix> cov_inv;
		if (metric.contains("cov_inv"))
			cov_inv = matrix_from_json(metric.at("cov_inv"));
		model.metric = DistanceMetric{parse_metric(metric.at("name").get<std::string>()), std::move(cov_inv)};

		model.grid = WeightGrid{model.config.shape(), matrix_from_json(j.at("weights"))};
		if (model.grid.feature_dim() != j.at("feature_dim").get<std::size_t>())
			throw DataError{"model file: weight matrix disagrees with feature_dim"};

		if (j.contains("scaling"))
			model.scaling = ScalingRecord{j.at("scaling").at("offset").get<std::vector<double>>(), j.at("scaling").at("range").get<std::vector<double>>()};

		const json& head = j.at("head");
		switch (parse_head_kind(head.at("kind").get<std::string>()))
		{
			case HeadKind::none:
				break;
			case HeadKind::regression:
			{
				RegressionHead reg{model.grid.shape(), head.at("values").get<std::vector<double>>()};
				if (reg.values.size() != model.grid.nodes())
					throw DataError{"model file: regression head size does not match the grid"};
				model.head = std::move(reg);
				break;
			}
			case HeadKind::classification:
			{
				ClassificationHead cls{model.grid.shape(), head.at("class_set").get<std::vector<ClassLabel>>(), head.at("node_class").get<std::vector<std::size_t>>()};
				if (cls.node_class.size() != model.grid.nodes())
					throw DataError{"model file: classification head size does not match the grid"};
				for (auto c : cls.node_class)
					if (c >= cls.class_set.size())
						throw DataError{"model file: node class index out of range"};
				model.head = std::move(cls);
				break;
			}
		}
		return model;
	}
	catch (const json::exception& e)
	{
		throw DataError{std::string{"malformed model file: "} + e.what()};
	}
}

void save_model(const std::filesystem::path& path, const SomModel& model)
{
	std::ofstream out{path};
	if (!out)
		throw DataError{"cannot write model file '" + path.string() + "'"};
	out << model_to_json(model).dump(1) << '\n';
	if (!out)
		throw DataError{"failed writing model file '" + path.string() + "'"};
}

SomModel load_model(const std::filesystem::path& path)
{
	std::ifstream in{path};
	if (!in)
		throw DataError{"cannot open model file '" + path.string() + "'"};
	json j;
	try
	{
		in >> j;
	}
	catch (const json::exception& e)
	{
		throw DataError{"model file '" + path.string() + "' is not valid JSON: " + e.what()};
	}
	return model_from_json(j);
}

} // namespace supsom
