#include "supsom/supervised.hpp"

#include <algorithm>
#include <string>

#include "supsom/errors.hpp"

namespace supsom {

namespace {

void check_training_data(const WeightGrid& unsup, const LabeledDataset& data, LabelKind kind)
{
	if (data.empty())
		throw DataError{"supervised training needs at least one labeled datapoint"};
	if (data.label_kind != kind)
		throw ValidationError{"supervised training needs " + std::string{to_string(kind)} + " labels"};
	if (data.feature_dim() != unsup.feature_dim())
		throw ValidationError{"dataset has " + std::to_string(data.feature_dim()) + " features, map expects " + std::to_string(unsup.feature_dim())};
	data.validate();
}

void check_supervised_schedules(const SomConfig& config)
{
	if (config.n_iter_supervised == 0)
		return;
	if (config.lr_schedule.start > 1.0)
		throw ValidationError{"learning rate start value must not exceed 1"};
	config.supervised_lr().validate();
	config.supervised_radius().validate();
}

} // namespace

std::size_t ClassificationHead::index_of(const ClassLabel& label) const
{
	const auto it = std::lower_bound(class_set.begin(), class_set.end(), label, class_less);
	if (it == class_set.end() || *it != label)
		throw ValidationError{"class '" + label + "' is not in the head's class set"};
	return static_cast<std::size_t>(it - class_set.begin());
}

double ClassWeightTable::operator[](const ClassLabel& label) const
{
	const auto it = weight.find(label);
	if (it == weight.end())
		throw ValidationError{"no class weight for class '" + label + "'"};
	return it->second;
}

RegressionHead fit_regressor(const WeightGrid& unsup, const LabeledDataset& data, const SomConfig& config, const DistanceMetric& metric, Rng& rng)
{
	check_training_data(unsup, data, LabelKind::continuous);
	check_supervised_schedules(config);

	const auto [lo, hi] = std::minmax_element(data.targets.begin(), data.targets.end());
	RegressionHead head{unsup.shape(), std::vector<double>(unsup.nodes())};
	for (double& v : head.values)
		v = rng.uniform(*lo, *hi);

	const std::vector<GridIndex> bmus = transform(unsup, data, metric);
	const ScheduleSpec lr = config.supervised_lr();
	const ScheduleSpec radius = config.supervised_radius();
	for (std::size_t t = 0; t < config.n_iter_supervised; ++t)
	{
		const std::size_t j = rng.index(data.size());
		const double alpha = learning_rate(t, lr);
		const KernelMatrix h = kernel_matrix(bmus[j], neighborhood_radius(t, radius), config.kernel, head.shape);
		const double y = data.targets[j];
		for (std::size_t node = 0; node < head.values.size(); ++node)
			head.values[node] += alpha * h.values[node] * (y - head.values[node]);
	}
	return head;
}

std::vector<double> predict_regression(const WeightGrid& unsup, const RegressionHead& head, const Matrix& features, const DistanceMetric& metric)
{
	if (head.shape != unsup.shape())
		throw ValidationError{"regression head does not match the map"};
	std::vector<double> out;
	out.reserve(static_cast<std::size_t>(features.rows()));
	for (const GridIndex bmu : transform(unsup, features, metric))
		out.push_back(head[bmu]);
	return out;
}

namespace {

ClassificationHead majority_vote(const WeightGrid& unsup, const LabeledDataset& data, std::span<const GridIndex> bmus, Rng& rng)
{
	ClassificationHead head;
	head.shape = unsup.shape();
	head.class_set = class_set_of(data.classes);
	const std::size_t n_classes = head.class_set.size();

	std::vector<std::size_t> label_index(data.size());
	std::vector<std::size_t> global(n_classes, 0);
	for (std::size_t j = 0; j < data.size(); ++j)
	{
		label_index[j] = head.index_of(data.classes[j]);
		++global[label_index[j]];
	}
	// the fallback takes the first modal class in class order
	const std::size_t global_mode = static_cast<std::size_t>(std::max_element(global.begin(), global.end()) - global.begin());

	std::vector<std::vector<std::size_t>> votes(unsup.nodes(), std::vector<std::size_t>(n_classes, 0));
	for (std::size_t j = 0; j < data.size(); ++j)
		++votes[head.shape.flat(bmus[j])][label_index[j]];

	head.node_class.resize(unsup.nodes());
	std::vector<std::size_t> tied;
	for (std::size_t node = 0; node < unsup.nodes(); ++node)
	{
		const auto& v = votes[node];
		const std::size_t top = *std::max_element(v.begin(), v.end());
		if (top == 0)
		{
			head.node_class[node] = global_mode;
			continue;
		}
		tied.clear();
		for (std::size_t k = 0; k < n_classes; ++k)
			if (v[k] == top)
				tied.push_back(k);
		head.node_class[node] = tied.size() == 1 ? tied.front() : tied[rng.index(tied.size())];
	}
	return head;
}

} // namespace

ClassificationHead init_classifier(const WeightGrid& unsup, const LabeledDataset& data, const DistanceMetric& metric, Rng& rng)
{
	check_training_data(unsup, data, LabelKind::categorical);
	return majority_vote(unsup, data, transform(unsup, data, metric), rng);
}

ClassWeightTable class_weights(std::span<const ClassLabel> labels, bool enabled)
{
	if (labels.empty())
		throw DataError{"class weights need at least one label"};
	ClassWeightTable table;
	for (const auto& label : labels)
		++table.count[label];
	const double n = static_cast<double>(labels.size());
	const double n_classes = static_cast<double>(table.count.size());
	for (const auto& [label, count] : table.count)
	{
		table.exact[label] = enabled ? Ratio{labels.size(), table.count.size() * count} : Ratio{1, 1};
		table.weight[label] = enabled ? n / (n_classes * static_cast<double>(count)) : 1.0;
	}
	return table;
}

std::vector<double> class_change_probability(double class_weight, double alpha, const KernelMatrix& h)
{
	std::vector<double> p(h.values.size());
	for (std::size_t node = 0; node < p.size(); ++node)
		p[node] = std::clamp(class_weight * alpha * h.values[node], 0.0, 1.0);
	return p;
}

std::vector<double> class_change_probability(GridIndex bmu, std::size_t t, double class_weight, const SomConfig& config)
{
	const double alpha = learning_rate(t, config.supervised_lr());
	const double sigma = neighborhood_radius(t, config.supervised_radius());
	return class_change_probability(class_weight, alpha, kernel_matrix(bmu, sigma, config.kernel, config.shape()));
}

void apply_class_update(ClassificationHead& head, std::span<const double> probability, std::size_t label, Rng& rng)
{
	if (probability.size() != head.node_class.size())
		throw ValidationError{"probability grid does not match the classification head"};
	if (label >= head.class_set.size())
		throw ValidationError{"class index out of range"};
	for (std::size_t node = 0; node < probability.size(); ++node)
		if (rng.uniform() < probability[node])
			head.node_class[node] = label;
}

ClassificationHead fit_classifier(const WeightGrid& unsup, const LabeledDataset& data, const SomConfig& config, const DistanceMetric& metric, Rng& rng)
{
	check_training_data(unsup, data, LabelKind::categorical);
	check_supervised_schedules(config);
	const std::vector<GridIndex> bmus = transform(unsup, data, metric);
	ClassificationHead head = majority_vote(unsup, data, bmus, rng);

	const ClassWeightTable weights = class_weights(data.classes, config.class_weighting);
	std::vector<std::size_t> label_index(data.size());
	std::vector<double> label_weight(data.size());
	for (std::size_t j = 0; j < data.size(); ++j)
	{
		label_index[j] = head.index_of(data.classes[j]);
		label_weight[j] = weights[data.classes[j]];
	}

	const ScheduleSpec lr = config.supervised_lr();
	const ScheduleSpec radius = config.supervised_radius();
	for (std::size_t t = 0; t < config.n_iter_supervised; ++t)
	{
		const std::size_t j = rng.index(data.size());
		const double alpha = learning_rate(t, lr);
		const KernelMatrix h = kernel_matrix(bmus[j], neighborhood_radius(t, radius), config.kernel, head.shape);
		apply_class_update(head, class_change_probability(label_weight[j], alpha, h), label_index[j], rng);
	}
	return head;
}

std::vector<ClassLabel> predict_classification(const WeightGrid& unsup, const ClassificationHead& head, const Matrix& features, const DistanceMetric& metric)
{
	if (head.shape != unsup.shape())
		throw ValidationError{"classification head does not match the map"};
	std::vector<ClassLabel> out;
	out.reserve(static_cast<std::size_t>(features.rows()));
	for (const GridIndex bmu : transform(unsup, features, metric))
		out.push_back(head[bmu]);
	return out;
}

} // namespace supsom
