#include <doctest.h>

#include <cmath>
#include <vector>

#include "supsom/distance.hpp"
#include "supsom/errors.hpp"
#include "supsom/rng.hpp"

using namespace supsom;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n, double lo = -5.0, double hi = 5.0)
{
	std::vector<double> v(n);
	for (auto& x : v)
		x = rng.uniform(lo, hi);
	return v;
}

std::vector<double> random_boolean(Rng& rng, std::size_t n)
{
	std::vector<double> v(n);
	for (auto& x : v)
		x = rng.index(2) ? 1.0 : 0.0;
	return v;
}

} // namespace

TEST_CASE("feature_distance worked examples")
{
	const std::vector<double> origin{0, 0}, p34{3, 4};
	CHECK(feature_distance(origin, p34, MetricId::euclidean) == 5.0);

	const std::vector<double> a{1, 2}, b{4, 6};
	CHECK(feature_distance(a, b, MetricId::manhattan) == 7.0);

	// c_TT = c_FF = c_TF = c_FT = 1, R = 4, d = 4 / 6
	const std::vector<double> t1{1, 1, 0, 0}, t2{1, 0, 1, 0};
	CHECK(feature_distance(t1, t2, MetricId::tanimoto) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

	const Matrix identity = Matrix::Identity(2, 2);
	CHECK(feature_distance(origin, p34, MetricId::mahalanobis, &identity) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("feature_distance errors")
{
	const std::vector<double> a{1, 2}, b{1, 2, 3};
	CHECK_THROWS_AS(feature_distance(a, b, MetricId::euclidean), ValidationError);
	CHECK_THROWS_AS(feature_distance(std::vector<double>{}, std::vector<double>{}, MetricId::euclidean), ValidationError);

	const std::vector<double> fractional{0.5, 1}, boolean{1, 0};
	CHECK_THROWS_AS(feature_distance(fractional, boolean, MetricId::tanimoto), ValidationError);

	CHECK_THROWS_AS(feature_distance(boolean, boolean, MetricId::mahalanobis), ValidationError);
	const Matrix wrong = Matrix::Identity(3, 3);
	CHECK_THROWS_AS(feature_distance(boolean, boolean, MetricId::mahalanobis, &wrong), ValidationError);
	CHECK_THROWS_AS(DistanceMetric{MetricId::mahalanobis}, ValidationError);
}

TEST_CASE("grid_distance")
{
	CHECK(grid_distance({0, 0}, {0, 0}) == 0.0);
	CHECK(grid_distance({0, 0}, {3, 4}) == 5.0);
	CHECK(grid_distance({2, 2}, {2, 5}) == 3.0);
	CHECK(grid_distance({2, 5}, {2, 2}) == 3.0);
}

TEST_CASE("metric names round-trip")
{
	for (auto id : {MetricId::euclidean, MetricId::manhattan, MetricId::tanimoto, MetricId::mahalanobis})
		CHECK(parse_metric(to_string(id)) == id);
	CHECK_THROWS_AS(parse_metric("cosine"), ValidationError);
}

TEST_CASE("distance properties on random vectors")
{
	Rng rng{42};
	const Matrix identity = Matrix::Identity(6, 6);
	for (int trial = 0; trial < 500; ++trial)
	{
		const auto a = random_vector(rng, 6);
		const auto b = random_vector(rng, 6);
		for (auto id : {MetricId::euclidean, MetricId::manhattan, MetricId::mahalanobis})
		{
			const double ab = feature_distance(a, b, id, &identity);
			CHECK(ab >= 0.0);
			CHECK(ab == feature_distance(b, a, id, &identity));
			CHECK(feature_distance(a, a, id, &identity) == 0.0);
		}
		CHECK(feature_distance(a, b, MetricId::euclidean) <= feature_distance(a, b, MetricId::manhattan));
		CHECK(std::abs(feature_distance(a, b, MetricId::mahalanobis, &identity) - feature_distance(a, b, MetricId::euclidean)) <= 1e-12);

		const auto p = random_boolean(rng, 7);
		const auto q = random_boolean(rng, 7);
		const double t = feature_distance(p, q, MetricId::tanimoto);
		CHECK(t >= 0.0);
		CHECK(t <= 1.0);
		CHECK(t == feature_distance(q, p, MetricId::tanimoto));
		CHECK(feature_distance(p, p, MetricId::tanimoto) == 0.0);
	}
}

TEST_CASE("inverse covariance estimate")
{
	Rng rng{7};
	Matrix data(500, 3);
	for (Eigen::Index i = 0; i < data.rows(); ++i)
	{
		const double z0 = rng.normal(), z1 = rng.normal(), z2 = rng.normal();
		data.row(i) << 2.0 * z0, z0 + 0.5 * z1, 3.0 * z2 - z0;
	}
	const Matrix inv = estimate_inverse_covariance(data);
	const Eigen::RowVectorXd mean = data.colwise().mean();
	const Eigen::MatrixXd centered = data.rowwise() - mean;
	const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(data.rows() - 1);
	CHECK((inv * cov - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-6);
	CHECK((inv - inv.transpose()).cwiseAbs().maxCoeff() == 0.0);

	CHECK_THROWS_AS(estimate_inverse_covariance(Matrix::Zero(1, 3)), ValidationError);
	// constant data stays invertible thanks to the ridge
	CHECK(estimate_inverse_covariance(Matrix::Ones(10, 2)).allFinite());
}
