#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "supsom/distance.hpp"
#include "supsom/rng.hpp"

namespace supsom {

// Class identifiers are kept as their textual form ("3", "corn", ...).
using ClassLabel = std::string;

// Ordering for class sets: integers compare numerically and sort before
// non-numeric labels, which compare lexicographically.
bool class_less(const ClassLabel& a, const ClassLabel& b);

// Sorted distinct classes of `labels` under class_less.
std::vector<ClassLabel> class_set_of(std::span<const ClassLabel> labels);

enum class LabelKind
{
	none,
	continuous,
	categorical,
};

std::string_view to_string(LabelKind kind);
LabelKind parse_label_kind(std::string_view name);

struct LabeledDataset
{
	Matrix features; // N x n, row per datapoint
	LabelKind label_kind = LabelKind::none;
	std::vector<double> targets;     // continuous labels
	std::vector<ClassLabel> classes; // categorical labels
	std::vector<std::string> feature_names;

	std::size_t size() const { return static_cast<std::size_t>(features.rows()); }
	std::size_t feature_dim() const { return static_cast<std::size_t>(features.cols()); }
	bool empty() const { return size() == 0; }

	std::span<const double> row(std::size_t i) const { return row_span(features, static_cast<Eigen::Index>(i)); }

	LabeledDataset subset(std::span<const std::size_t> indices) const;

	// Throws ValidationError on label-count mismatch or non-finite features.
	void validate() const;
};

// Reads a headed CSV. Every column other than `label_column` is a numeric
// feature. Errors name the offending 1-based data row and column.
LabeledDataset load_csv(const std::filesystem::path& path,
                        const std::optional<std::string>& label_column = std::nullopt,
                        LabelKind label_kind = LabelKind::none);

// Column names from the header row of a CSV file.
std::vector<std::string> csv_header(const std::filesystem::path& path);

// Writes features (full round-trip precision) plus, when present, a trailing
// label column named `label_column`.
void write_csv(const std::filesystem::path& path, const LabeledDataset& data, const std::string& label_column = "label");

// Keeps only the named feature columns, in the given order.
LabeledDataset select_features(const LabeledDataset& data, std::span<const std::string> names);

struct IndexSplit
{
	std::vector<std::size_t> train;
	std::vector<std::size_t> test;
};

// Random partition with |test| = round(N * test_fraction), clamped to [1, N-1].
IndexSplit train_test_split_indices(std::size_t n, double test_fraction, Rng& rng);

std::pair<LabeledDataset, LabeledDataset> train_test_split(const LabeledDataset& data, double test_fraction, Rng& rng);

// k folds over a shuffled index order. The first N % k folds hold one extra
// datapoint. Every index appears in exactly one test fold.
std::vector<IndexSplit> k_fold(std::size_t n, std::size_t k, Rng& rng);

// Per-feature min-max scaling fitted on a training set.
struct ScalingRecord
{
	std::vector<double> offset; // per-feature minimum
	std::vector<double> range;  // per-feature max - min, 0 for constant features

	Matrix apply(const Matrix& features) const;
	Matrix inverse(const Matrix& scaled) const;
};

std::pair<LabeledDataset, ScalingRecord> minmax_scale(const LabeledDataset& data);

// X uniform in [0,1]^2, y = x0 + x1 + N(0, noise^2).
LabeledDataset synthetic_regression(std::size_t n_samples, double noise, Rng& rng);

// Unit-variance isotropic Gaussian clusters. Class k is centred at
// k * separation along the first axis. Classes are labelled "0".."n_classes-1"
// and sizes differ by at most one.
LabeledDataset synthetic_blobs(std::size_t n_samples, std::size_t n_classes, double separation, Rng& rng, std::size_t n_features = 2);

// Reads a band mask: newline-separated 1-based band indices to discard.
std::vector<std::size_t> load_band_mask(const std::filesystem::path& path);

// Drops the features at the given 1-based positions.
LabeledDataset drop_bands(const LabeledDataset& data, std::span<const std::size_t> one_based_bands);

} // namespace supsom
