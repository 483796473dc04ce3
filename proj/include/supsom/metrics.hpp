#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "supsom/dataset.hpp"

namespace supsom {

struct ConfusionMatrix
{
	std::vector<ClassLabel> class_set;          // sorted by class_less
	std::vector<std::vector<std::size_t>> counts; // [true][predicted]

	std::size_t total() const;
};

// 1 - SS_res / SS_tot. Throws UndefinedMetricError for constant y_true.
double r_squared(std::span<const double> y_true, std::span<const double> y_pred);

// class_set is the sorted union of classes seen in either vector.
ConfusionMatrix confusion(std::span<const ClassLabel> y_true, std::span<const ClassLabel> y_pred);

double overall_accuracy(const ConfusionMatrix& cm);

// Mean per-class recall. Throws UndefinedMetricError when a class in the
// matrix has no true instances.
double average_accuracy(const ConfusionMatrix& cm);

// (OA - theta) / (1 - theta), theta = sum_k row_k * col_k / total^2.
double cohens_kappa(const ConfusionMatrix& cm);

} // namespace supsom
