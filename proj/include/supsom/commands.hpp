#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "supsom/model.hpp"
#include "supsom/report.hpp"

namespace supsom {

// Everything a command needs. Serializes to the resolved-config record, which
// can be fed back through --config to repeat the run.
struct RunConfig
{
	std::string command;
	SomConfig som = SomConfig::for_grid(10, 10);
	HeadKind head = HeadKind::none;
	std::string label_column = "label";
	bool minmax = false;
	std::size_t folds = 5;

	std::string data;       // input dataset
	std::string train_data; // evaluate: optional training set
	std::string model;      // model file (written by train, read otherwise)
	std::string output;     // predictions / report file; empty = stdout
	std::string out_dir;    // export-maps target directory
	std::string resolved_config; // where to write the resolved record; empty = skip
};

nlohmann::json run_config_to_json(const RunConfig& run);
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});

// Exit codes shared by all commands.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_runtime = 2;

// Each command throws supsom errors; run_command maps them to exit codes and
// prints the message to `err`.
void cmd_train(const RunConfig& run, std::ostream& out);
void cmd_predict(const RunConfig& run, std::ostream& out);
EvaluationReport cmd_evaluate(const RunConfig& run, std::ostream& out);
EvaluationReport cmd_crossval(const RunConfig& run, std::ostream& out);
void cmd_export_maps(const RunConfig& run, std::ostream& out);

int run_command(const RunConfig& run, std::ostream& out, std::ostream& err);

// Cross-validation on an in-memory dataset; fold i trains with master seed
// derive_seed(run.som.seed, "fold:<i>") and folds come from
// derive_seed(run.som.seed, "folds").
EvaluationReport crossval_report(const LabeledDataset& data, const RunConfig& run);

} // namespace supsom
