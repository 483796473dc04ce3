#include "supsom/som.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "supsom/errors.hpp"

namespace supsom {

std::string_view to_string(KernelKind kind)
{
	switch (kind)
	{
		case KernelKind::gaussian: return "gaussian";
		case KernelKind::mexican_hat: return "mexican-hat";
	}
	return "unknown";
}

KernelKind parse_kernel(std::string_view name)
{
	for (auto kind : {KernelKind::gaussian, KernelKind::mexican_hat})
		if (to_string(kind) == name)
			return kind;
	throw ValidationError{"unknown neighborhood kernel '" + std::string{name} + "'"};
}

std::string_view to_string(UpdateMode mode)
{
	switch (mode)
	{
		case UpdateMode::online: return "online";
		case UpdateMode::batch: return "batch";
	}
	return "unknown";
}

UpdateMode parse_update_mode(std::string_view name)
{
	for (auto mode : {UpdateMode::online, UpdateMode::batch})
		if (to_string(mode) == name)
			return mode;
	throw ValidationError{"unknown update mode '" + std::string{name} + "'"};
}

SomConfig SomConfig::for_grid(std::size_t n_row, std::size_t n_column)
{
	SomConfig config;
	config.n_row = n_row;
	config.n_column = n_column;
	config.radius_schedule.start = static_cast<double>(std::max(n_row, n_column)) / 2.0;
	config.radius_schedule.end = 1.0;
	return config;
}

void SomConfig::validate() const
{
	if (n_row < 1 || n_column < 1)
		throw ValidationError{"grid must have at least one row and one column"};
	if (n_iter_unsupervised < 1 || n_iter_supervised < 1)
		throw ValidationError{"iteration counts must be at least 1"};
	unsupervised_lr().validate();
	supervised_lr().validate();
	// alpha <= 1 keeps every update a convex combination
	if (lr_schedule.start > 1.0)
		throw ValidationError{"learning rate start value must not exceed 1"};
	if (!is_radius_kind(radius_schedule.kind))
		throw ValidationError{"'" + std::string{to_string(radius_schedule.kind)} + "' is not a neighborhood radius schedule"};
	unsupervised_radius().validate();
	supervised_radius().validate();
}

WeightGrid::WeightGrid(GridShape shape, std::size_t feature_dim)
    : _shape{shape}, _weights{Matrix::Zero(static_cast<Eigen::Index>(shape.nodes()), static_cast<Eigen::Index>(feature_dim))}
{
}

WeightGrid::WeightGrid(GridShape shape, Matrix weights) : _shape{shape}, _weights{std::move(weights)}
{
	if (static_cast<std::size_t>(_weights.rows()) != _shape.nodes())
		throw ValidationError{"weight matrix has " + std::to_string(_weights.rows()) + " rows for " + std::to_string(_shape.nodes()) + " nodes"};
	if (!_weights.allFinite())
		throw ValidationError{"weight grid contains non-finite values"};
}

WeightGrid init_weights(const SomConfig& config, const LabeledDataset& data, Rng& rng)
{
	if (data.empty() || data.feature_dim() == 0)
		throw DataError{"cannot initialize a map from an empty dataset"};

	const Eigen::RowVectorXd lo = data.features.colwise().minCoeff();
	const Eigen::RowVectorXd hi = data.features.colwise().maxCoeff();

	WeightGrid grid{config.shape(), data.feature_dim()};
	Matrix& w = grid.weights();
	for (Eigen::Index i = 0; i < w.rows(); ++i)
		for (Eigen::Index j = 0; j < w.cols(); ++j)
			w(i, j) = rng.uniform(lo[j], hi[j]);
	return grid;
}

GridIndex find_bmu(const WeightGrid& grid, std::span<const double> x, const DistanceMetric& metric)
{
	if (x.size() != grid.feature_dim())
		throw ValidationError{"datapoint has " + std::to_string(x.size()) + " features, map expects " + std::to_string(grid.feature_dim())};

	std::size_t best = 0;
	double best_distance = std::numeric_limits<double>::infinity();
	for (std::size_t node = 0; node < grid.nodes(); ++node)
	{
		const double d = metric(grid.node(node), x);
		if (d < best_distance)
		{
			best_distance = d;
			best = node;
		}
	}
	return grid.shape().at(best);
}

KernelMatrix kernel_matrix(GridIndex bmu, double sigma, KernelKind kind, GridShape shape)
{
	if (!(sigma >= min_radius))
		throw ValidationError{"neighborhood radius must be at least 1e-6"};

	KernelMatrix h{shape, std::vector<double>(shape.nodes())};
	const double two_sigma_sq = 2.0 * sigma * sigma;
	const double sigma_sq = sigma * sigma;
	for (std::size_t node = 0; node < shape.nodes(); ++node)
	{
		const double d = grid_distance(bmu, shape.at(node));
		const double d_sq = d * d;
		const double gauss = std::exp(-d_sq / two_sigma_sq);
		h.values[node] = kind == KernelKind::gaussian ? gauss : (1.0 - d_sq / sigma_sq) * gauss;
	}
	return h;
}

void online_update(WeightGrid& grid, std::span<const double> x, double alpha, const KernelMatrix& h)
{
	if (x.size() != grid.feature_dim())
		throw ValidationError{"datapoint dimension does not match the map"};
	if (h.shape != grid.shape())
		throw ValidationError{"kernel matrix shape does not match the map"};

	Matrix& w = grid.weights();
	const Eigen::Map<const Eigen::RowVectorXd> target(x.data(), static_cast<Eigen::Index>(x.size()));
	for (std::size_t node = 0; node < grid.nodes(); ++node)
	{
		const double step = alpha * h.values[node];
		if (step == 0.0)
			continue;
		const auto i = static_cast<Eigen::Index>(node);
		w.row(i) += step * (target - w.row(i));
	}
}

void batch_update(WeightGrid& grid, const LabeledDataset& data, std::span<const GridIndex> bmus, double sigma, KernelKind kind)
{
	if (bmus.size() != data.size())
		throw ValidationError{"batch update needs one BMU per datapoint"};
	if (data.feature_dim() != grid.feature_dim())
		throw ValidationError{"dataset dimension does not match the map"};

	const GridShape shape = grid.shape();
	Matrix numerator = Matrix::Zero(static_cast<Eigen::Index>(grid.nodes()), static_cast<Eigen::Index>(grid.feature_dim()));
	Eigen::VectorXd mass = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.nodes()));

	// datapoints sharing a BMU share a kernel row
	std::vector<std::vector<std::size_t>> members(grid.nodes());
	for (std::size_t j = 0; j < bmus.size(); ++j)
		members[shape.flat(bmus[j])].push_back(j);

	for (std::size_t c = 0; c < members.size(); ++c)
	{
		if (members[c].empty())
			continue;
		Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(grid.feature_dim()));
		for (auto j : members[c])
			sum += data.features.row(static_cast<Eigen::Index>(j));
		const auto count = static_cast<double>(members[c].size());

		const KernelMatrix h = kernel_matrix(shape.at(c), sigma, kind, shape);
		for (std::size_t i = 0; i < grid.nodes(); ++i)
		{
			if (h.values[i] == 0.0)
				continue;
			numerator.row(static_cast<Eigen::Index>(i)) += h.values[i] * sum;
			mass[static_cast<Eigen::Index>(i)] += h.values[i] * count;
		}
	}

	Matrix& w = grid.weights();
	for (Eigen::Index i = 0; i < w.rows(); ++i)
		if (mass[i] != 0.0)
			w.row(i) = numerator.row(i) / mass[i];
}

WeightGrid fit_unsupervised(const LabeledDataset& data, const SomConfig& config, const DistanceMetric& metric, Rng& rng)
{
	config.validate();
	if (data.empty())
		throw DataError{"cannot train a map on an empty dataset"};
	if (metric.id() == MetricId::tanimoto)
		throw ValidationError{"tanimoto distance needs boolean map weights, which training does not preserve; use it for BMU search on boolean maps only"};

	WeightGrid grid = init_weights(config, data, rng);
	const ScheduleSpec lr = config.unsupervised_lr();
	const ScheduleSpec radius = config.unsupervised_radius();

	for (std::size_t t = 0; t < config.n_iter_unsupervised; ++t)
	{
		const double sigma = neighborhood_radius(t, radius);
		if (config.update_mode == UpdateMode::batch)
		{
			const std::vector<GridIndex> bmus = transform(grid, data, metric);
			batch_update(grid, data, bmus, sigma, config.kernel);
			continue;
		}
		const auto x = data.row(rng.index(data.size()));
		const GridIndex bmu = find_bmu(grid, x, metric);
		const double alpha = learning_rate(t, lr);
		online_update(grid, x, alpha, kernel_matrix(bmu, sigma, config.kernel, grid.shape()));
	}
	return grid;
}

std::vector<GridIndex> transform(const WeightGrid& grid, const Matrix& features, const DistanceMetric& metric)
{
	std::vector<GridIndex> bmus;
	bmus.reserve(static_cast<std::size_t>(features.rows()));
	for (Eigen::Index j = 0; j < features.rows(); ++j)
		bmus.push_back(find_bmu(grid, row_span(features, j), metric));
	return bmus;
}

std::vector<GridIndex> transform(const WeightGrid& grid, const LabeledDataset& data, const DistanceMetric& metric)
{
	return transform(grid, data.features, metric);
}

std::vector<std::size_t> bmu_histogram(const WeightGrid& grid, const LabeledDataset& data, const DistanceMetric& metric)
{
	std::vector<std::size_t> counts(grid.nodes(), 0);
	for (const GridIndex bmu : transform(grid, data, metric))
		++counts[grid.shape().flat(bmu)];
	return counts;
}

double quantization_error(const WeightGrid& grid, const LabeledDataset& data, const DistanceMetric& metric)
{
	if (data.empty())
		throw DataError{"quantization error of an empty dataset is undefined"};
	double total = 0.0;
	for (std::size_t j = 0; j < data.size(); ++j)
	{
		const auto x = data.row(j);
		total += metric(grid.node(find_bmu(grid, x, metric)), x);
	}
	return total / static_cast<double>(data.size());
}

} // namespace supsom
