// supsom: train, apply and evaluate supervised self-organizing maps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "supsom/commands.hpp"
#include "supsom/errors.hpp"

namespace {

// Flag values; unset flags leave the config-file (or default) value alone.
struct Overrides
{
	std::optional<std::string> config_file;
	std::optional<std::size_t> n_row, n_column, n_iter_unsupervised, n_iter_supervised, folds;
	std::optional<std::string> metric, lr_schedule, radius_schedule, kernel, update_mode, head, label, scale;
	std::optional<double> lr_start, lr_end, radius_start, radius_end;
	std::optional<std::uint64_t> seed;
	std::optional<bool> class_weighting;
	std::optional<std::string> data, train_data, model, output, out_dir, resolved_config;
};

void add_som_flags(CLI::App* cmd, Overrides& o)
{
	cmd->add_option("--n-row", o.n_row, "Grid rows");
	cmd->add_option("--n-column", o.n_column, "Grid columns");
	cmd->add_option("--n-iter-unsupervised", o.n_iter_unsupervised, "Iterations of the unsupervised map");
	cmd->add_option("--n-iter-supervised", o.n_iter_supervised, "Iterations of the supervised head");
	cmd->add_option("--metric", o.metric, "euclidean | manhattan | tanimoto | mahalanobis");
	cmd->add_option("--lr-schedule", o.lr_schedule, "inverse | linear | power | exponential | start-end");
	cmd->add_option("--lr-start", o.lr_start, "Learning rate start value");
	cmd->add_option("--lr-end", o.lr_end, "Learning rate end value (start-end)");
	cmd->add_option("--radius-schedule", o.radius_schedule, "linear | exponential | start-end");
	cmd->add_option("--radius-start", o.radius_start, "Neighborhood radius start (default max(n_row, n_column)/2)");
	cmd->add_option("--radius-end", o.radius_end, "Neighborhood radius end (start-end)");
	cmd->add_option("--kernel", o.kernel, "gaussian | mexican-hat");
	cmd->add_option("--update-mode", o.update_mode, "online | batch");
	cmd->add_option("--seed", o.seed, "Master random seed");
	cmd->add_option("--class-weighting", o.class_weighting, "Re-weight classes by inverse frequency (true/false)");
	cmd->add_option("--head", o.head, "none | regression | classification");
	cmd->add_option("--scale", o.scale, "Feature scaling: none | minmax");
}

void add_common_flags(CLI::App* cmd, Overrides& o)
{
	cmd->add_option("--config", o.config_file, "Run configuration (JSON, e.g. a resolved-config record)");
	cmd->add_option("--label", o.label, "Label column name (default 'label')");
	cmd->add_option("--resolved-config", o.resolved_config, "Where to write the resolved-config record");
}

supsom::RunConfig resolve(const std::string& command, const Overrides& o)
{
	using namespace supsom;
	RunConfig run;
	bool radius_explicit = false;
	if (o.config_file)
	{
		std::ifstream in{*o.config_file};
		if (!in)
			throw DataError{"cannot open config file '" + *o.config_file + "'"};
		nlohmann::json j;
		try
		{
			in >> j;
		}
		catch (const nlohmann::json::exception& e)
		{
			throw ValidationError{"config file is not valid JSON: " + std::string{e.what()}};
		}
		run = run_config_from_json(j);
		radius_explicit = j.contains("som") && j["som"].contains("radius_schedule") && j["som"]["radius_schedule"].contains("start");
	}
	run.command = command;

	SomConfig& som = run.som;
	if (o.n_row) som.n_row = *o.n_row;
	if (o.n_column) som.n_column = *o.n_column;
	if (o.n_iter_unsupervised) som.n_iter_unsupervised = *o.n_iter_unsupervised;
	if (o.n_iter_supervised) som.n_iter_supervised = *o.n_iter_supervised;
	if (o.metric) som.metric = parse_metric(*o.metric);
	if (o.lr_schedule) som.lr_schedule.kind = parse_schedule_kind(*o.lr_schedule);
	if (o.lr_start) som.lr_schedule.start = *o.lr_start;
	if (o.lr_end) som.lr_schedule.end = *o.lr_end;
	if (o.radius_schedule) som.radius_schedule.kind = parse_schedule_kind(*o.radius_schedule);
	if (o.radius_end) som.radius_schedule.end = *o.radius_end;
	if (o.kernel) som.kernel = parse_kernel(*o.kernel);
	if (o.update_mode) som.update_mode = parse_update_mode(*o.update_mode);
	if (o.seed) som.seed = *o.seed;
	if (o.class_weighting) som.class_weighting = *o.class_weighting;
	if (o.radius_start)
		som.radius_schedule.start = *o.radius_start;
	else if (!radius_explicit)
		som.radius_schedule.start = static_cast<double>(std::max(som.n_row, som.n_column)) / 2.0;

	if (o.head) run.head = parse_head_kind(*o.head);
	if (o.label) run.label_column = *o.label;
	if (o.scale)
	{
		if (*o.scale != "minmax" && *o.scale != "none")
			throw ValidationError{"--scale must be 'minmax' or 'none'"};
		run.minmax = *o.scale == "minmax";
	}
	if (o.folds) run.folds = *o.folds;
	if (o.data) run.data = *o.data;
	if (o.train_data) run.train_data = *o.train_data;
	if (o.model) run.model = *o.model;
	if (o.output) run.output = *o.output;
	if (o.out_dir) run.out_dir = *o.out_dir;
	if (o.resolved_config) run.resolved_config = *o.resolved_config;
	return run;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Supervised self-organizing maps for regression and classification"};
	app.require_subcommand(1);
	Overrides o;

	auto* train = app.add_subcommand("train", "Train a map and optional supervised head");
	add_common_flags(train, o);
	add_som_flags(train, o);
	train->add_option("--data", o.data, "Training CSV");
	train->add_option("--model", o.model, "Model file to write");

	auto* predict = app.add_subcommand("predict", "Predict with a trained model");
	add_common_flags(predict, o);
	predict->add_option("--model", o.model, "Model file");
	predict->add_option("--data", o.data, "Input CSV");
	predict->add_option("--output", o.output, "Predictions CSV (default stdout)");

	auto* evaluate = app.add_subcommand("evaluate", "Evaluate a trained model on labeled data");
	add_common_flags(evaluate, o);
	evaluate->add_option("--model", o.model, "Model file");
	evaluate->add_option("--data", o.data, "Labeled test CSV");
	evaluate->add_option("--train-data", o.train_data, "Labeled training CSV (optional)");
	evaluate->add_option("--output", o.output, "Report file (default stdout)");

	auto* crossval = app.add_subcommand("crossval", "k-fold cross-validation");
	add_common_flags(crossval, o);
	add_som_flags(crossval, o);
	crossval->add_option("--data", o.data, "Labeled CSV");
	crossval->add_option("--folds", o.folds, "Number of folds (default 5)");
	crossval->add_option("--output", o.output, "Report file (default stdout)");

	auto* export_maps = app.add_subcommand("export-maps", "Write BMU histogram and output map CSVs");
	add_common_flags(export_maps, o);
	export_maps->add_option("--model", o.model, "Model file");
	export_maps->add_option("--data", o.data, "CSV whose BMUs are counted");
	export_maps->add_option("--out-dir", o.out_dir, "Output directory");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError& e)
	{
		const int code = app.exit(e);
		return code == 0 ? supsom::exit_ok : supsom::exit_usage;
	}

	const std::string command = app.get_subcommands().front()->get_name();
	supsom::RunConfig run;
	try
	{
		run = resolve(command, o);
	}
	catch (const supsom::ValidationError& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return supsom::exit_usage;
	}
	catch (const std::exception& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return supsom::exit_runtime;
	}
	return supsom::run_command(run, std::cout, std::cerr);
}
