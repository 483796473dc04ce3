#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "supsom/dataset.hpp"
#include "supsom/som.hpp"

namespace supsom {

// One scalar target per node.
struct RegressionHead
{
	GridShape shape;
	std::vector<double> values; // row-major

	double operator[](GridIndex i) const { return values[shape.flat(i)]; }
};

// One class per node, stored as an index into class_set.
struct ClassificationHead
{
	GridShape shape;
	std::vector<ClassLabel> class_set;   // sorted by class_less
	std::vector<std::size_t> node_class; // row-major

	const ClassLabel& operator[](GridIndex i) const { return class_set[node_class[shape.flat(i)]]; }
	std::size_t index_of(const ClassLabel& label) const;
};

struct Ratio
{
	std::uint64_t numerator;
	std::uint64_t denominator;
};

// Per-class weight N / (n_classes * N_j) when enabled, 1 otherwise.
// `exact` keeps the unrounded fraction behind each weight.
struct ClassWeightTable
{
	std::map<ClassLabel, double> weight;
	std::map<ClassLabel, Ratio> exact;
	std::map<ClassLabel, std::size_t> count;

	double operator[](const ClassLabel& label) const;
};

// The supervised fits take the BMU of every training datapoint as computed on
// the frozen unsupervised map.
RegressionHead fit_regressor(const WeightGrid& unsup,
                             const LabeledDataset& data,
                             const SomConfig& config,
                             const DistanceMetric& metric,
                             Rng& rng);

std::vector<double> predict_regression(const WeightGrid& unsup, const RegressionHead& head, const Matrix& features, const DistanceMetric& metric);

// Majority vote per node. Ties are drawn uniformly among the tied classes;
// nodes without datapoints receive the dataset's modal class.
ClassificationHead init_classifier(const WeightGrid& unsup, const LabeledDataset& data, const DistanceMetric& metric, Rng& rng);

ClassWeightTable class_weights(std::span<const ClassLabel> labels, bool enabled);

// P_i = clamp(class_weight * alpha * h_i, 0, 1).
std::vector<double> class_change_probability(double class_weight, double alpha, const KernelMatrix& h);

// Same, with alpha(t) and h(t) evaluated from the supervised schedules.
std::vector<double> class_change_probability(GridIndex bmu, std::size_t t, double class_weight, const SomConfig& config);

// For each node (row-major) draw u ~ U[0,1); the node takes class `label`
// when u < P.
void apply_class_update(ClassificationHead& head, std::span<const double> probability, std::size_t label, Rng& rng);

ClassificationHead fit_classifier(const WeightGrid& unsup,
                                  const LabeledDataset& data,
                                  const SomConfig& config,
                                  const DistanceMetric& metric,
                                  Rng& rng);

std::vector<ClassLabel> predict_classification(const WeightGrid& unsup,
                                               const ClassificationHead& head,
                                               const Matrix& features,
                                               const DistanceMetric& metric);

} // namespace supsom
