#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "supsom/metrics.hpp"
#include "supsom/model.hpp"

namespace supsom {

// Metrics of one model on one labeled dataset. A metric that is undefined for
// the data (see UndefinedMetricError) is left empty.
struct MetricBlock
{
	std::string name;
	HeadKind kind = HeadKind::none;
	std::size_t datapoints = 0;
	std::optional<double> r_squared;
	std::optional<double> overall_accuracy;
	std::optional<double> average_accuracy;
	std::optional<double> cohens_kappa;
	std::optional<ConfusionMatrix> confusion;
};

struct EvaluationReport
{
	std::vector<MetricBlock> blocks;

	const MetricBlock* find(const std::string& name) const;
};

MetricBlock evaluate_block(const std::string& name, const SomModel& model, const LabeledDataset& data);

// Arithmetic mean of the defined metric values. A metric undefined in any
// input block is undefined in the mean. No confusion matrix.
MetricBlock mean_block(const std::string& name, std::span<const MetricBlock> blocks);

// Text rendering: one "[name]" section per block, "key = value" lines with six
// decimals, and a comma-separated confusion matrix block for classification.
std::string format_report(const EvaluationReport& report);

} // namespace supsom
