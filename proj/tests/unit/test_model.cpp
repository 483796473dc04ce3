#include <doctest.h>

#include <filesystem>
#include <random>

#include "supsom/errors.hpp"
#include "supsom/model.hpp"

using namespace supsom;
namespace fs = std::filesystem;

namespace {

SomConfig quick_config()
{
	SomConfig config = SomConfig::for_grid(5, 4);
	config.n_iter_unsupervised = 300;
	config.n_iter_supervised = 300;
	config.seed = 11;
	return config;
}

fs::path temp_file(const std::string& name)
{
	return fs::temp_directory_path() / (std::to_string(std::random_device{}()) + name);
}

} // namespace

TEST_CASE("model save/load preserves predictions")
{
	Rng rng{1};
	const LabeledDataset reg = synthetic_regression(80, 0.05, rng);
	const LabeledDataset cls = synthetic_blobs(80, 3, 6.0, rng);

	for (auto metric : {MetricId::euclidean, MetricId::manhattan, MetricId::mahalanobis})
		for (bool scale : {false, true})
		{
			SomConfig config = quick_config();
			config.metric = metric;

			const SomModel r = train_model(reg, config, HeadKind::regression, scale);
			const fs::path rp = temp_file("reg.json");
			save_model(rp, r);
			const SomModel r2 = load_model(rp);
			fs::remove(rp);
			CHECK(r2.head_kind() == HeadKind::regression);
			CHECK(r2.grid.weights() == r.grid.weights());
			CHECK(predict_values(r2, reg) == predict_values(r, reg));
			CHECK(r2.scaling.has_value() == scale);

			const SomModel c = train_model(cls, config, HeadKind::classification, scale);
			const fs::path cp = temp_file("cls.json");
			save_model(cp, c);
			const SomModel c2 = load_model(cp);
			fs::remove(cp);
			CHECK(c2.head_kind() == HeadKind::classification);
			CHECK(predict_classes(c2, cls) == predict_classes(c, cls));
			CHECK(config_to_json(c2.config) == config_to_json(config));
		}
}

TEST_CASE("train_model is reproducible and seed-sensitive")
{
	Rng rng{2};
	const LabeledDataset data = synthetic_blobs(60, 2, 5.0, rng);
	const SomConfig config = quick_config();
	const SomModel a = train_model(data, config, HeadKind::classification, false);
	const SomModel b = train_model(data, config, HeadKind::classification, false);
	CHECK(model_to_json(a).dump() == model_to_json(b).dump());

	SomConfig other = config;
	other.seed = 12;
	CHECK(train_model(data, other, HeadKind::none, false).grid.weights() != a.grid.weights());
}

TEST_CASE("model prepares inputs by feature name")
{
	Rng rng{3};
	LabeledDataset data = synthetic_regression(40, 0.0, rng);
	const SomModel model = train_model(data, quick_config(), HeadKind::regression, false);

	// same columns, swapped order
	LabeledDataset swapped = data;
	swapped.feature_names = {"x1", "x0"};
	swapped.features.col(0) = data.features.col(1);
	swapped.features.col(1) = data.features.col(0);
	CHECK(predict_values(model, swapped) == predict_values(model, data));

	LabeledDataset renamed = data;
	renamed.feature_names = {"a", "b"};
	CHECK_THROWS_AS(predict_values(model, renamed), DataError);
	CHECK_THROWS_AS(predict_classes(model, data), ValidationError);
}

TEST_CASE("config json")
{
	SomConfig config = SomConfig::for_grid(40, 20);
	config.n_iter_unsupervised = 5000;
	config.n_iter_supervised = 20000;
	config.kernel = KernelKind::mexican_hat;
	config.update_mode = UpdateMode::batch;
	config.class_weighting = true;
	config.lr_schedule = {ScheduleKind::exponential, 0.7, 0.1, 1};
	const SomConfig back = config_from_json(config_to_json(config));
	CHECK(config_to_json(back) == config_to_json(config));
	CHECK(back.radius_schedule.start == 20.0);
	CHECK_NOTHROW(back.validate());

	CHECK_THROWS_AS(config_from_json({{"metric", "cosine"}}), ValidationError);
	CHECK_THROWS_AS(config_from_json({{"n_row", "five"}}), ValidationError);

	SomConfig bad = config;
	bad.lr_schedule.start = 1.5;
	CHECK_THROWS_AS(bad.validate(), ValidationError);
	bad = config;
	bad.radius_schedule.kind = ScheduleKind::inverse;
	CHECK_THROWS_AS(bad.validate(), ValidationError);
	bad = config;
	bad.n_row = 0;
	CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("corrupt model files are rejected")
{
	CHECK_THROWS_AS(model_from_json({{"format", "other"}}), DataError);
	CHECK_THROWS_AS(model_from_json({{"format", "supsom-model"}, {"format_version", 99}}), DataError);

	Rng rng{4};
	const LabeledDataset data = synthetic_regression(30, 0.0, rng);
	nlohmann::json j = model_to_json(train_model(data, quick_config(), HeadKind::regression, false));
	j["head"]["values"].erase(0);
	CHECK_THROWS_AS(model_from_json(j), DataError);
	CHECK_THROWS_AS(load_model("/nonexistent/model.json"), DataError);
}
