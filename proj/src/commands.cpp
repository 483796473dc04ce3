#include "supsom/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "supsom/errors.hpp"

namespace supsom {

using nlohmann::json;

namespace {

LabelKind label_kind_for(HeadKind head)
{
	switch (head)
	{
		case HeadKind::regression: return LabelKind::continuous;
		case HeadKind::classification: return LabelKind::categorical;
		case HeadKind::none: break;
	}
	return LabelKind::none;
}

void require(const std::string& value, const char* what)
{
	if (value.empty())
		throw ValidationError{std::string{"missing required "} + what};
}

// Loads a dataset with labels of `kind`; kind none still strips the label
// column when the file has one, so it is never read as a feature.
LabeledDataset load_input(const std::string& path, const std::string& label_column, LabelKind kind)
{
	if (kind != LabelKind::none)
		return load_csv(path, label_column, kind);
	const auto header = csv_header(path);
	if (std::find(header.begin(), header.end(), label_column) == header.end())
		return load_csv(path);
	LabeledDataset data = load_csv(path, label_column, LabelKind::categorical);
	data.label_kind = LabelKind::none;
	data.classes.clear();
	return data;
}

json derived_seeds(const RunConfig& run)
{
	json seeds = {
	    {"unsupervised", derive_seed(run.som.seed, "unsupervised")},
	    {"supervised", derive_seed(run.som.seed, "supervised")},
	};
	if (run.command == "crossval")
	{
		seeds["folds"] = derive_seed(run.som.seed, "folds");
		for (std::size_t f = 0; f < run.folds; ++f)
			seeds["fold:" + std::to_string(f + 1)] = derive_seed(run.som.seed, "fold:" + std::to_string(f + 1));
	}
	return seeds;
}

std::string default_record_path(const RunConfig& run)
{
	if (!run.resolved_config.empty())
		return run.resolved_config;
	if (run.command == "train" && !run.model.empty())
		return run.model + ".run.json";
	if (run.command == "export-maps" && !run.out_dir.empty())
		return (std::filesystem::path{run.out_dir} / "run.json").string();
	if (!run.output.empty())
		return run.output + ".run.json";
	return {};
}

void emit_resolved_config(const RunConfig& run)
{
	json record = run_config_to_json(run);
	record["derived_seeds"] = derived_seeds(run);
	const std::string path = default_record_path(run);
	if (path.empty())
	{
		std::clog << "resolved-config: " << record.dump() << '\n';
		return;
	}
	std::ofstream out{path};
	if (!out)
		throw DataError{"cannot write resolved config '" + path + "'"};
	out << record.dump(2) << '\n';
}

// Commands that read a model run with the model's settings, so the record
// shows those rather than the unused command-line defaults.
RunConfig with_model_settings(RunConfig run, const SomModel& model)
{
	run.som = model.config;
	run.head = model.head_kind();
	run.minmax = model.scaling.has_value();
	return run;
}

// Writes to `path`, or to `fallback` when path is empty.
template <typename Writer>
void with_output(const std::string& path, std::ostream& fallback, Writer&& write)
{
	if (path.empty())
	{
		write(fallback);
		return;
	}
	std::ofstream out{path};
	if (!out)
		throw DataError{"cannot write '" + path + "'"};
	write(out);
	if (!out)
		throw DataError{"failed writing '" + path + "'"};
}

} // namespace

json run_config_to_json(const RunConfig& run)
{
	return {
	    {"command", run.command},
	    {"som", config_to_json(run.som)},
	    {"head", to_string(run.head)},
	    {"label_column", run.label_column},
	    {"scale", run.minmax ? "minmax" : "none"},
	    {"folds", run.folds},
	    {"data", run.data},
	    {"train_data", run.train_data},
	    {"model", run.model},
	    {"output", run.output},
	    {"out_dir", run.out_dir},
	    {"resolved_config", run.resolved_config},
	};
}

RunConfig run_config_from_json(const json& j, RunConfig base)
{
	try
	{
		if (j.contains("command"))
			base.command = j.at("command").get<std::string>();
		if (j.contains("som"))
		{
			const json& som = j.at("som");
			base.som = config_from_json(som, base.som);
			const bool grid_given = som.contains("n_row") || som.contains("n_column");
			const bool radius_given = som.contains("radius_schedule") && som.at("radius_schedule").contains("start");
			if (grid_given && !radius_given)
				base.som.radius_schedule.start = static_cast<double>(std::max(base.som.n_row, base.som.n_column)) / 2.0;
		}
		if (j.contains("head"))
			base.head = parse_head_kind(j.at("head").get<std::string>());
		if (j.contains("label_column"))
			base.label_column = j.at("label_column").get<std::string>();
		if (j.contains("scale"))
		{
			const auto scale = j.at("scale").get<std::string>();
			if (scale != "minmax" && scale != "none")
				throw ValidationError{"scale must be 'minmax' or 'none'"};
			base.minmax = scale == "minmax";
		}
		if (j.contains("folds"))
			base.folds = j.at("folds").get<std::size_t>();
		for (auto [key, field] : {std::pair{"data", &RunConfig::data},
		                          std::pair{"train_data", &RunConfig::train_data},
		                          std::pair{"model", &RunConfig::model},
		                          std::pair{"output", &RunConfig::output},
		                          std::pair{"out_dir", &RunConfig::out_dir},
		                          std::pair{"resolved_config", &RunConfig::resolved_config}})
			if (j.contains(key))
				base.*field = j.at(key).get<std::string>();
	}
	catch (const json::exception& e)
	{
		throw ValidationError{std::string{"invalid run configuration: "} + e.what()};
	}
	return base;
}

void cmd_train(const RunConfig& run, std::ostream& out)
{
	require(run.data, "--data");
	require(run.model, "--model");
	run.som.validate();
	emit_resolved_config(run);

	const LabeledDataset data = load_input(run.data, run.label_column, label_kind_for(run.head));
	const SomModel model = train_model(data, run.som, run.head, run.minmax);
	save_model(run.model, model);
	out << "trained " << run.som.n_row << "x" << run.som.n_column << " map on " << data.size() << " datapoints, head "
	    << to_string(run.head) << ", model written to " << run.model << '\n';
}

void cmd_predict(const RunConfig& run, std::ostream& out)
{
	require(run.model, "--model");
	require(run.data, "--data");
	const SomModel model = load_model(run.model);
	emit_resolved_config(with_model_settings(run, model));

	const LabeledDataset data = load_input(run.data, run.label_column, LabelKind::none);
	with_output(run.output, out, [&](std::ostream& o) {
		o << "prediction\n";
		if (model.head_kind() == HeadKind::regression)
		{
			for (double v : predict_values(model, data))
			{
				char buffer[64];
				std::snprintf(buffer, sizeof buffer, "%.17g", v);
				o << buffer << '\n';
			}
		}
		else if (model.head_kind() == HeadKind::classification)
		{
			for (const auto& c : predict_classes(model, data))
				o << c << '\n';
		}
		else
			throw ValidationError{"model has no supervised head to predict with"};
	});
}

EvaluationReport cmd_evaluate(const RunConfig& run, std::ostream& out)
{
	require(run.model, "--model");
	require(run.data, "--data");
	const SomModel model = load_model(run.model);
	emit_resolved_config(with_model_settings(run, model));

	const LabelKind kind = label_kind_for(model.head_kind());
	if (kind == LabelKind::none)
		throw ValidationError{"model has no supervised head to evaluate"};

	EvaluationReport report;
	if (!run.train_data.empty())
		report.blocks.push_back(evaluate_block("train", model, load_input(run.train_data, run.label_column, kind)));
	report.blocks.push_back(evaluate_block("test", model, load_input(run.data, run.label_column, kind)));
	with_output(run.output, out, [&](std::ostream& o) { o << format_report(report); });
	return report;
}

EvaluationReport crossval_report(const LabeledDataset& data, const RunConfig& run)
{
	if (run.head == HeadKind::none)
		throw ValidationError{"cross-validation needs a regression or classification head"};
	Rng fold_rng{derive_seed(run.som.seed, "folds")};
	const auto folds = k_fold(data.size(), run.folds, fold_rng);

	EvaluationReport report;
	std::vector<MetricBlock> train_blocks;
	std::vector<MetricBlock> test_blocks;
	for (std::size_t f = 0; f < folds.size(); ++f)
	{
		const std::string tag = "fold:" + std::to_string(f + 1);
		SomConfig config = run.som;
		config.seed = derive_seed(run.som.seed, tag);

		const LabeledDataset train = data.subset(folds[f].train);
		const LabeledDataset test = data.subset(folds[f].test);
		const SomModel model = train_model(train, config, run.head, run.minmax);

		const std::string prefix = "fold " + std::to_string(f + 1) + " ";
		train_blocks.push_back(evaluate_block(prefix + "train", model, train));
		test_blocks.push_back(evaluate_block(prefix + "test", model, test));
		report.blocks.push_back(train_blocks.back());
		report.blocks.push_back(test_blocks.back());
	}
	report.blocks.push_back(mean_block("mean train", train_blocks));
	report.blocks.push_back(mean_block("mean test", test_blocks));
	return report;
}

EvaluationReport cmd_crossval(const RunConfig& run, std::ostream& out)
{
	require(run.data, "--data");
	run.som.validate();
	if (run.folds < 2)
		throw ValidationError{"--folds must be at least 2"};
	emit_resolved_config(run);

	const LabeledDataset data = load_input(run.data, run.label_column, label_kind_for(run.head));
	EvaluationReport report = crossval_report(data, run);
	with_output(run.output, out, [&](std::ostream& o) { o << format_report(report); });
	return report;
}

void cmd_export_maps(const RunConfig& run, std::ostream& out)
{
	require(run.model, "--model");
	require(run.data, "--data");
	require(run.out_dir, "--out-dir");
	const SomModel model = load_model(run.model);
	std::filesystem::create_directories(run.out_dir);
	emit_resolved_config(with_model_settings(run, model));

	const LabeledDataset data = load_input(run.data, run.label_column, LabelKind::none);
	const GridShape shape = model.grid.shape();
	const std::filesystem::path dir{run.out_dir};

	const std::vector<GridIndex> bmus = transform(model.grid, model.prepare(data), model.metric);
	std::vector<std::size_t> counts(shape.nodes(), 0);
	for (const GridIndex bmu : bmus)
		++counts[shape.flat(bmu)];
	with_output((dir / "bmu_histogram.csv").string(), out, [&](std::ostream& o) {
		o << "row,column,count\n";
		for (std::size_t node = 0; node < shape.nodes(); ++node)
			o << shape.at(node).row << ',' << shape.at(node).column << ',' << counts[node] << '\n';
	});

	if (model.head_kind() == HeadKind::none)
	{
		out << "model has no supervised head; output_map.csv not written\n";
		return;
	}
	with_output((dir / "output_map.csv").string(), out, [&](std::ostream& o) {
		o << "row,column,value\n";
		for (std::size_t node = 0; node < shape.nodes(); ++node)
		{
			o << shape.at(node).row << ',' << shape.at(node).column << ',';
			if (const auto* reg = std::get_if<RegressionHead>(&model.head))
			{
				char buffer[64];
				std::snprintf(buffer, sizeof buffer, "%.17g", reg->values[node]);
				o << buffer;
			}
			else
			{
				const auto& cls = std::get<ClassificationHead>(model.head);
				o << cls.class_set[cls.node_class[node]];
			}
			o << '\n';
		}
	});
}

int run_command(const RunConfig& run, std::ostream& out, std::ostream& err)
{
	try
	{
		if (run.command == "train")
			cmd_train(run, out);
		else if (run.command == "predict")
			cmd_predict(run, out);
		else if (run.command == "evaluate")
			cmd_evaluate(run, out);
		else if (run.command == "crossval")
			cmd_crossval(run, out);
		else if (run.command == "export-maps")
			cmd_export_maps(run, out);
		else
			throw ValidationError{"unknown command '" + run.command + "'"};
		return exit_ok;
	}
	catch (const ValidationError& e)
	{
		err << "error: " << e.what() << '\n';
		return exit_usage;
	}
	catch (const std::exception& e)
	{
		err << "error: " << e.what() << '\n';
		return exit_runtime;
	}
}

} // namespace supsom
