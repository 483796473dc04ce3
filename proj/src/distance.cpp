#include "supsom/distance.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "supsom/errors.hpp"

namespace supsom {

namespace {

void check_dimensions(std::span<const double> a, std::span<const double> b)
{
	if (a.empty() || a.size() != b.size())
		throw ValidationError{"feature_distance: dimension mismatch (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")"};
}

double euclidean(std::span<const double> a, std::span<const double> b)
{
	double sum = 0.0;
	for (std::size_t k = 0; k < a.size(); ++k)
	{
		const double diff = a[k] - b[k];
		sum += diff * diff;
	}
	return std::sqrt(sum);
}

double manhattan(std::span<const double> a, std::span<const double> b)
{
	double sum = 0.0;
	for (std::size_t k = 0; k < a.size(); ++k)
		sum += std::abs(a[k] - b[k]);
	return sum;
}

bool is_boolean(double v)
{
	return v == 0.0 || v == 1.0;
}

double tanimoto(std::span<const double> a, std::span<const double> b)
{
	std::size_t same = 0; // c_TT + c_FF
	std::size_t differ = 0; // c_TF + c_FT
	for (std::size_t k = 0; k < a.size(); ++k)
	{
		if (!is_boolean(a[k]) || !is_boolean(b[k]))
			throw ValidationError{"tanimoto distance requires boolean (0/1) components; component " + std::to_string(k) + " is not"};
		if (a[k] == b[k])
			++same;
		else
			++differ;
	}
	const double r = 2.0 * static_cast<double>(differ);
	return r / (static_cast<double>(same) + r);
}

double mahalanobis(std::span<const double> a, std::span<const double> b, const Matrix* cov_inv)
{
	const auto n = static_cast<Eigen::Index>(a.size());
	if (!cov_inv)
		throw ValidationError{"mahalanobis distance requires an inverse covariance matrix"};
	if (cov_inv->rows() != n || cov_inv->cols() != n)
		throw ValidationError{"mahalanobis inverse covariance must be " + std::to_string(n) + "x" + std::to_string(n)};

	Eigen::VectorXd diff(n);
	for (Eigen::Index k = 0; k < n; ++k)
		diff[k] = a[k] - b[k];
	const double quad = diff.dot(*cov_inv * diff);
	// rounding can push a PSD quadratic form slightly below zero
	return std::sqrt(std::max(quad, 0.0));
}

} // namespace

std::string_view to_string(MetricId metric)
{
	switch (metric)
	{
		case MetricId::euclidean: return "euclidean";
		case MetricId::manhattan: return "manhattan";
		case MetricId::tanimoto: return "tanimoto";
		case MetricId::mahalanobis: return "mahalanobis";
	}
	return "unknown";
}

MetricId parse_metric(std::string_view name)
{
	for (auto id : {MetricId::euclidean, MetricId::manhattan, MetricId::tanimoto, MetricId::mahalanobis})
		if (to_string(id) == name)
			return id;
	throw ValidationError{"unknown distance metric '" + std::string{name} + "'"};
}

double feature_distance(std::span<const double> a, std::span<const double> b, MetricId metric, const Matrix* cov_inv)
{
	check_dimensions(a, b);
	switch (metric)
	{
		case MetricId::euclidean: return euclidean(a, b);
		case MetricId::manhattan: return manhattan(a, b);
		case MetricId::tanimoto: return tanimoto(a, b);
		case MetricId::mahalanobis: return mahalanobis(a, b, cov_inv);
	}
	throw ValidationError{"unknown distance metric"};
}

double grid_distance(GridIndex c, GridIndex i)
{
	const double dr = static_cast<double>(c.row) - static_cast<double>(i.row);
	const double dc = static_cast<double>(c.column) - static_cast<double>(i.column);
	return std::sqrt(dr * dr + dc * dc);
}

Matrix estimate_inverse_covariance(const Matrix& data)
{
	if (data.rows() < 2)
		throw ValidationError{"estimating a covariance matrix needs at least two datapoints"};

	const Eigen::RowVectorXd mean = data.colwise().mean();
	const Eigen::MatrixXd centered = data.rowwise() - mean;
	Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(data.rows() - 1);
	cov.diagonal().array() += 1e-8;

	Eigen::MatrixXd inv = cov.ldlt().solve(Eigen::MatrixXd::Identity(cov.rows(), cov.cols()));
	// symmetrize away solver round-off
	const Eigen::MatrixXd transposed = inv.transpose();
	inv = 0.5 * (inv + transposed);
	return Matrix{inv};
}

DistanceMetric::DistanceMetric(MetricId id, std::optional<Matrix> cov_inv) : _id{id}, _cov_inv{std::move(cov_inv)}
{
	if (_id == MetricId::mahalanobis)
	{
		if (!_cov_inv)
			throw ValidationError{"mahalanobis metric requires an inverse covariance matrix"};
		if (_cov_inv->rows() != _cov_inv->cols() || _cov_inv->rows() == 0)
			throw ValidationError{"mahalanobis inverse covariance must be a nonempty square matrix"};
	}
}

DistanceMetric DistanceMetric::fit(MetricId id, const Matrix& training_data)
{
	if (id == MetricId::mahalanobis)
		return DistanceMetric{id, estimate_inverse_covariance(training_data)};
	return DistanceMetric{id};
}

} // namespace supsom
