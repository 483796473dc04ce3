#include "supsom/metrics.hpp"

#include <algorithm>
#include <string>

#include "supsom/errors.hpp"

namespace supsom {

std::size_t ConfusionMatrix::total() const
{
	std::size_t sum = 0;
	for (const auto& row : counts)
		for (auto c : row)
			sum += c;
	return sum;
}

double r_squared(std::span<const double> y_true, std::span<const double> y_pred)
{
	if (y_true.empty() || y_true.size() != y_pred.size())
		throw ValidationError{"r_squared needs two nonempty vectors of equal length"};

	double mean = 0.0;
	for (double y : y_true)
		mean += y;
	mean /= static_cast<double>(y_true.size());

	double ss_res = 0.0;
	double ss_tot = 0.0;
	for (std::size_t k = 0; k < y_true.size(); ++k)
	{
		ss_res += (y_true[k] - y_pred[k]) * (y_true[k] - y_pred[k]);
		ss_tot += (y_true[k] - mean) * (y_true[k] - mean);
	}
	if (ss_tot == 0.0)
		throw UndefinedMetricError{"R² is undefined for constant reference values"};
	return 1.0 - ss_res / ss_tot;
}

ConfusionMatrix confusion(std::span<const ClassLabel> y_true, std::span<const ClassLabel> y_pred)
{
	if (y_true.empty() || y_true.size() != y_pred.size())
		throw ValidationError{"confusion matrix needs two nonempty label vectors of equal length"};

	std::vector<ClassLabel> all(y_true.begin(), y_true.end());
	all.insert(all.end(), y_pred.begin(), y_pred.end());

	ConfusionMatrix cm;
	cm.class_set = class_set_of(all);
	const std::size_t n = cm.class_set.size();
	cm.counts.assign(n, std::vector<std::size_t>(n, 0));

	const auto index = [&](const ClassLabel& label) {
		return static_cast<std::size_t>(std::lower_bound(cm.class_set.begin(), cm.class_set.end(), label, class_less) - cm.class_set.begin());
	};
	for (std::size_t k = 0; k < y_true.size(); ++k)
		++cm.counts[index(y_true[k])][index(y_pred[k])];
	return cm;
}

double overall_accuracy(const ConfusionMatrix& cm)
{
	const std::size_t total = cm.total();
	if (total == 0)
		throw UndefinedMetricError{"overall accuracy of an empty confusion matrix is undefined"};
	std::size_t correct = 0;
	for (std::size_t k = 0; k < cm.counts.size(); ++k)
		correct += cm.counts[k][k];
	return static_cast<double>(correct) / static_cast<double>(total);
}

double average_accuracy(const ConfusionMatrix& cm)
{
	if (cm.counts.empty())
		throw UndefinedMetricError{"average accuracy of an empty confusion matrix is undefined"};
	double sum = 0.0;
	for (std::size_t k = 0; k < cm.counts.size(); ++k)
	{
		std::size_t row = 0;
		for (auto c : cm.counts[k])
			row += c;
		if (row == 0)
			throw UndefinedMetricError{"average accuracy is undefined: class '" + cm.class_set[k] + "' has no true instances"};
		sum += static_cast<double>(cm.counts[k][k]) / static_cast<double>(row);
	}
	return sum / static_cast<double>(cm.counts.size());
}

double cohens_kappa(const ConfusionMatrix& cm)
{
	const std::size_t total = cm.total();
	if (total == 0)
		throw UndefinedMetricError{"kappa of an empty confusion matrix is undefined"};

	const std::size_t n = cm.counts.size();
	std::vector<std::size_t> rows(n, 0);
	std::vector<std::size_t> cols(n, 0);
	std::size_t correct = 0;
	for (std::size_t i = 0; i < n; ++i)
	{
		correct += cm.counts[i][i];
		for (std::size_t j = 0; j < n; ++j)
		{
			rows[i] += cm.counts[i][j];
			cols[j] += cm.counts[i][j];
		}
	}

	// integer numerators keep the rational cases exact
	unsigned long long chance = 0;
	for (std::size_t k = 0; k < n; ++k)
		chance += static_cast<unsigned long long>(rows[k]) * cols[k];
	const auto total_sq = static_cast<unsigned long long>(total) * total;
	if (chance == total_sq)
		throw UndefinedMetricError{"kappa is undefined when chance agreement is 1"};

	// kappa = (correct * total - chance) / (total^2 - chance)
	const double numerator = static_cast<double>(correct) * static_cast<double>(total) - static_cast<double>(chance);
	return numerator / static_cast<double>(total_sq - chance);
}

} // namespace supsom
