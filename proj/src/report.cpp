#include "supsom/report.hpp"

#include <cstdio>
#include <sstream>

#include "supsom/errors.hpp"

namespace supsom {

namespace {

template <typename F>
std::optional<double> defined(F&& metric)
{
	try
	{
		return metric();
	}
	catch (const UndefinedMetricError&)
	{
		return std::nullopt;
	}
}

std::string fixed6(const std::optional<double>& value)
{
	if (!value)
		return "undefined";
	char buffer[64];
	std::snprintf(buffer, sizeof buffer, "%.6f", *value);
	return buffer;
}

std::optional<double> mean_of(std::span<const MetricBlock> blocks, std::optional<double> MetricBlock::*field)
{
	double sum = 0.0;
	for (const auto& block : blocks)
	{
		if (!(block.*field))
			return std::nullopt;
		sum += *(block.*field);
	}
	return sum / static_cast<double>(blocks.size());
}

} // namespace

const MetricBlock* EvaluationReport::find(const std::string& name) const
{
	for (const auto& block : blocks)
		if (block.name == name)
			return &block;
	return nullptr;
}

MetricBlock evaluate_block(const std::string& name, const SomModel& model, const LabeledDataset& data)
{
	MetricBlock block;
	block.name = name;
	block.kind = model.head_kind();
	block.datapoints = data.size();
	if (data.empty())
		throw DataError{"cannot evaluate on an empty dataset"};

	switch (block.kind)
	{
		case HeadKind::none:
			throw ValidationError{"a model without a supervised head cannot be evaluated"};
		case HeadKind::regression:
		{
			if (data.label_kind != LabelKind::continuous)
				throw ValidationError{"regression evaluation needs continuous labels"};
			const auto predicted = predict_values(model, data);
			block.r_squared = defined([&] { return r_squared(data.targets, predicted); });
			break;
		}
		case HeadKind::classification:
		{
			if (data.label_kind != LabelKind::categorical)
				throw ValidationError{"classification evaluation needs categorical labels"};
			const auto predicted = predict_classes(model, data);
			const ConfusionMatrix cm = confusion(data.classes, predicted);
			block.overall_accuracy = defined([&] { return overall_accuracy(cm); });
			block.average_accuracy = defined([&] { return average_accuracy(cm); });
			block.cohens_kappa = defined([&] { return cohens_kappa(cm); });
			block.confusion = cm;
			break;
		}
	}
	return block;
}

MetricBlock mean_block(const std::string& name, std::span<const MetricBlock> blocks)
{
	if (blocks.empty())
		throw ValidationError{"cannot average zero metric blocks"};
	MetricBlock mean;
	mean.name = name;
	mean.kind = blocks.front().kind;
	std::size_t points = 0;
	for (const auto& block : blocks)
		points += block.datapoints;
	mean.datapoints = points;
	if (mean.kind == HeadKind::regression)
		mean.r_squared = mean_of(blocks, &MetricBlock::r_squared);
	else
	{
		mean.overall_accuracy = mean_of(blocks, &MetricBlock::overall_accuracy);
		mean.average_accuracy = mean_of(blocks, &MetricBlock::average_accuracy);
		mean.cohens_kappa = mean_of(blocks, &MetricBlock::cohens_kappa);
	}
	return mean;
}

std::string format_report(const EvaluationReport& report)
{
	std::ostringstream out;
	for (std::size_t b = 0; b < report.blocks.size(); ++b)
	{
		const MetricBlock& block = report.blocks[b];
		if (b)
			out << '\n';
		out << '[' << block.name << "]\n";
		out << "head = " << to_string(block.kind) << '\n';
		out << "datapoints = " << block.datapoints << '\n';
		if (block.kind == HeadKind::regression)
			out << "r_squared = " << fixed6(block.r_squared) << '\n';
		else
		{
			out << "overall_accuracy = " << fixed6(block.overall_accuracy) << '\n';
			out << "average_accuracy = " << fixed6(block.average_accuracy) << '\n';
			out << "cohens_kappa = " << fixed6(block.cohens_kappa) << '\n';
		}
		if (block.confusion)
		{
			const ConfusionMatrix& cm = *block.confusion;
			out << "confusion_matrix:\n";
			out << "true\\predicted";
			for (const auto& c : cm.class_set)
				out << ',' << c;
			out << '\n';
			for (std::size_t i = 0; i < cm.class_set.size(); ++i)
			{
				out << cm.class_set[i];
				for (auto count : cm.counts[i])
					out << ',' << count;
				out << '\n';
			}
		}
	}
	return out.str();
}

} // namespace supsom
