#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "supsom/dataset.hpp"
#include "supsom/distance.hpp"
#include "supsom/rng.hpp"
#include "supsom/schedule.hpp"

namespace supsom {

enum class KernelKind
{
	gaussian,
	mexican_hat,
};

enum class UpdateMode
{
	online,
	batch,
};

std::string_view to_string(KernelKind kind);
KernelKind parse_kernel(std::string_view name);
std::string_view to_string(UpdateMode mode);
UpdateMode parse_update_mode(std::string_view name);

// Hyperparameters for both the unsupervised map and the supervised heads.
// The t_max of the two schedules is ignored here; each phase substitutes its
// own iteration count.
struct SomConfig
{
	std::size_t n_row = 10;
	std::size_t n_column = 10;
	std::size_t n_iter_unsupervised = 1000;
	std::size_t n_iter_supervised = 1000;
	MetricId metric = MetricId::euclidean;
	ScheduleSpec lr_schedule{ScheduleKind::start_end, 0.5, 0.05, 1};
	ScheduleSpec radius_schedule{ScheduleKind::linear, 5.0, 1.0, 1};
	KernelKind kernel = KernelKind::gaussian;
	UpdateMode update_mode = UpdateMode::online;
	std::uint64_t seed = 0;
	bool class_weighting = false;

	// Defaults for a grid: radius start max(n_row, n_column) / 2, end 1.
	static SomConfig for_grid(std::size_t n_row, std::size_t n_column);

	GridShape shape() const { return {n_row, n_column}; }
	ScheduleSpec unsupervised_lr() const { return lr_schedule.with_t_max(n_iter_unsupervised); }
	ScheduleSpec unsupervised_radius() const { return radius_schedule.with_t_max(n_iter_unsupervised); }
	ScheduleSpec supervised_lr() const { return lr_schedule.with_t_max(n_iter_supervised); }
	ScheduleSpec supervised_radius() const { return radius_schedule.with_t_max(n_iter_supervised); }

	void validate() const;
};

// n_row x n_column grid of n-dimensional weights, one matrix row per node in
// row-major node order.
class WeightGrid
{
public:
	WeightGrid() = default;
	WeightGrid(GridShape shape, std::size_t feature_dim);
	WeightGrid(GridShape shape, Matrix weights);

	GridShape shape() const { return _shape; }
	std::size_t feature_dim() const { return static_cast<std::size_t>(_weights.cols()); }
	std::size_t nodes() const { return _shape.nodes(); }

	const Matrix& weights() const { return _weights; }
	Matrix& weights() { return _weights; }

	std::span<const double> node(GridIndex i) const { return row_span(_weights, static_cast<Eigen::Index>(_shape.flat(i))); }
	std::span<double> node(GridIndex i) { return row_span(_weights, static_cast<Eigen::Index>(_shape.flat(i))); }
	std::span<const double> node(std::size_t flat) const { return row_span(_weights, static_cast<Eigen::Index>(flat)); }

private:
	GridShape _shape;
	Matrix _weights;
};

// Neighborhood distance weights h_{c,i} for one BMU, in row-major node order.
struct KernelMatrix
{
	GridShape shape;
	std::vector<double> values;

	double operator[](GridIndex i) const { return values[shape.flat(i)]; }
};

// Uniform draw of every weight component j from [min_j, max_j] of the data.
WeightGrid init_weights(const SomConfig& config, const LabeledDataset& data, Rng& rng);

// Node closest to x; ties go to the smallest row-major index.
GridIndex find_bmu(const WeightGrid& grid, std::span<const double> x, const DistanceMetric& metric);

KernelMatrix kernel_matrix(GridIndex bmu, double sigma, KernelKind kind, GridShape shape);

// w_i <- w_i + alpha * h_{c,i} * (x - w_i) for every node.
void online_update(WeightGrid& grid, std::span<const double> x, double alpha, const KernelMatrix& h);

// w_i <- sum_j h_{c_j,i} x_j / sum_j h_{c_j,i}. Nodes with zero kernel mass
// keep their weights.
void batch_update(WeightGrid& grid, const LabeledDataset& data, std::span<const GridIndex> bmus, double sigma, KernelKind kind);

// Runs the full unsupervised training loop and returns the trained grid.
WeightGrid fit_unsupervised(const LabeledDataset& data, const SomConfig& config, const DistanceMetric& metric, Rng& rng);

std::vector<GridIndex> transform(const WeightGrid& grid, const LabeledDataset& data, const DistanceMetric& metric);
std::vector<GridIndex> transform(const WeightGrid& grid, const Matrix& features, const DistanceMetric& metric);

// Per-node count of datapoints mapped to it, row-major.
std::vector<std::size_t> bmu_histogram(const WeightGrid& grid, const LabeledDataset& data, const DistanceMetric& metric);

// Mean distance between datapoints and the weights of their BMUs.
double quantization_error(const WeightGrid& grid, const LabeledDataset& data, const DistanceMetric& metric);

} // namespace supsom
