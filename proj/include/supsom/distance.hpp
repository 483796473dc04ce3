#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace supsom {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class MetricId
{
	euclidean,
	manhattan,
	tanimoto,
	mahalanobis,
};

std::string_view to_string(MetricId metric);
MetricId parse_metric(std::string_view name);

// Node position on the rectangular map grid.
struct GridIndex
{
	std::size_t row = 0;
	std::size_t column = 0;

	friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

struct GridShape
{
	std::size_t rows = 0;
	std::size_t columns = 0;

	std::size_t nodes() const { return rows * columns; }
	std::size_t flat(GridIndex i) const { return i.row * columns + i.column; }
	GridIndex at(std::size_t flat_index) const { return {flat_index / columns, flat_index % columns}; }

	friend bool operator==(const GridShape&, const GridShape&) = default;
};

// Distance between two feature vectors.
//
// tanimoto requires every component to be exactly 0 or 1; mahalanobis needs an
// n x n inverse covariance matrix. Violations throw ValidationError.
double feature_distance(std::span<const double> a,
                        std::span<const double> b,
                        MetricId metric,
                        const Matrix* cov_inv = nullptr);

// Euclidean distance between two grid positions.
double grid_distance(GridIndex c, GridIndex i);

// Inverse of the sample covariance of the rows of `data`, with a ridge of
// 1e-8 * I added before inversion. Requires at least two rows.
Matrix estimate_inverse_covariance(const Matrix& data);

// A metric together with whatever state it needs (the inverse covariance for
// mahalanobis). This is what BMU search and the model file carry around.
class DistanceMetric
{
public:
	DistanceMetric() = default;
	explicit DistanceMetric(MetricId id, std::optional<Matrix> cov_inv = std::nullopt);

	// Builds the metric for `id`, estimating the inverse covariance from
	// `training_data` when the metric is mahalanobis.
	static DistanceMetric fit(MetricId id, const Matrix& training_data);

	MetricId id() const { return _id; }
	const std::optional<Matrix>& cov_inv() const { return _cov_inv; }

	double operator()(std::span<const double> a, std::span<const double> b) const
	{
		return feature_distance(a, b, _id, _cov_inv ? &*_cov_inv : nullptr);
	}

private:
	MetricId _id = MetricId::euclidean;
	std::optional<Matrix> _cov_inv;
};

inline std::span<const double> row_span(const Matrix& m, Eigen::Index row)
{
	return {m.row(row).data(), static_cast<std::size_t>(m.cols())};
}

inline std::span<double> row_span(Matrix& m, Eigen::Index row)
{
	return {m.row(row).data(), static_cast<std::size_t>(m.cols())};
}

} // namespace supsom
