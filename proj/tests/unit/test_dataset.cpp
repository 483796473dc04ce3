#include <doctest.h>

#include <map>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>

#include "supsom/dataset.hpp"
#include "supsom/errors.hpp"
#include "supsom/metrics.hpp"

using namespace supsom;
namespace fs = std::filesystem;

namespace {

struct TempDir
{
	fs::path path;
	TempDir()
	{
		path = fs::temp_directory_path() / ("supsom-test-" + std::to_string(std::random_device{}()));
		fs::create_directories(path);
	}
	~TempDir() { fs::remove_all(path); }
	fs::path write(const std::string& name, const std::string& content) const
	{
		std::ofstream{path / name} << content;
		return path / name;
	}
};

LabeledDataset iota_dataset(std::size_t n)
{
	LabeledDataset data;
	data.label_kind = LabelKind::continuous;
	data.features.resize(static_cast<Eigen::Index>(n), 1);
	for (std::size_t i = 0; i < n; ++i)
	{
		data.features(static_cast<Eigen::Index>(i), 0) = static_cast<double>(i);
		data.targets.push_back(static_cast<double>(i));
	}
	return data;
}

} // namespace

TEST_CASE("load_csv")
{
	TempDir dir;

	SUBCASE("unlabeled file")
	{
		const auto path = dir.write("a.csv", "x,y\n1,2\n3,4.5\n-1e-3,7\n");
		const LabeledDataset data = load_csv(path);
		CHECK(data.size() == 3);
		CHECK(data.feature_dim() == 2);
		CHECK(data.label_kind == LabelKind::none);
		CHECK(data.feature_names == std::vector<std::string>{"x", "y"});
		CHECK(data.features(2, 0) == -1e-3);
	}
	SUBCASE("label columns")
	{
		const auto path = dir.write("b.csv", "band_1,label,band_2\n0.5,3,1\n0.25,12,2\n");
		const LabeledDataset cls = load_csv(path, "label", LabelKind::categorical);
		CHECK(cls.feature_names == std::vector<std::string>{"band_1", "band_2"});
		CHECK(cls.classes == std::vector<ClassLabel>{"3", "12"});
		const LabeledDataset reg = load_csv(path, "label", LabelKind::continuous);
		CHECK(reg.targets == std::vector<double>{3.0, 12.0});
	}
	SUBCASE("header only")
	{
		CHECK_THROWS_AS(load_csv(dir.write("c.csv", "x,y\n")), DataError);
	}
	SUBCASE("NaN is rejected with its row")
	{
		const auto path = dir.write("d.csv", "x,y\n1,2\n1,2\n1,2\n1,2\n1,NaN\n");
		try
		{
			load_csv(path);
			FAIL("expected an error");
		}
		catch (const DataError& e)
		{
			const std::string message = e.what();
			CHECK(message.find("row 5") != std::string::npos);
			CHECK(message.find("'y'") != std::string::npos);
		}
	}
	SUBCASE("other failures")
	{
		CHECK_THROWS_AS(load_csv(dir.path / "missing.csv"), DataError);
		CHECK_THROWS_AS(load_csv(dir.write("e.csv", "x,y\n1,abc\n")), DataError);
		CHECK_THROWS_AS(load_csv(dir.write("f.csv", "x,y\n1\n")), DataError);
		CHECK_THROWS_AS(load_csv(dir.write("g.csv", "x,y\n1,2\n"), std::string{"label"}, LabelKind::categorical), DataError);
		CHECK_THROWS_AS(load_csv(dir.write("h.csv", "x,y\n1,inf\n")), DataError);
	}
}

TEST_CASE("csv round trip is exact")
{
	TempDir dir;
	Rng rng{4};
	LabeledDataset data = synthetic_regression(50, 0.1, rng);
	write_csv(dir.path / "r.csv", data, "moisture");
	const LabeledDataset back = load_csv(dir.path / "r.csv", std::string{"moisture"}, LabelKind::continuous);
	CHECK(back.features == data.features);
	CHECK(back.targets == data.targets);
	CHECK(back.feature_names == data.feature_names);

	LabeledDataset blobs = synthetic_blobs(30, 3, 4.0, rng);
	blobs.classes[0] = "needs,quote";
	write_csv(dir.path / "c.csv", blobs);
	const LabeledDataset back2 = load_csv(dir.path / "c.csv", std::string{"label"}, LabelKind::categorical);
	CHECK(back2.features == blobs.features);
	CHECK(back2.classes == blobs.classes);
}

TEST_CASE("train_test_split")
{
	Rng rng{1};
	const IndexSplit halves = train_test_split_indices(679, 0.5, rng);
	CHECK(halves.test.size() == 340);
	CHECK(halves.train.size() == 339);

	const IndexSplit tiny = train_test_split_indices(10, 0.01, rng);
	CHECK(tiny.test.size() == 1);

	for (std::size_t n : {2u, 3u, 17u, 100u})
	{
		const IndexSplit split = train_test_split_indices(n, 0.3, rng);
		std::vector<std::size_t> all = split.train;
		all.insert(all.end(), split.test.begin(), split.test.end());
		std::sort(all.begin(), all.end());
		std::vector<std::size_t> expected(n);
		std::iota(expected.begin(), expected.end(), 0);
		CHECK(all == expected);
		CHECK(!split.train.empty());
		CHECK(!split.test.empty());
	}

	Rng a{5}, b{5};
	CHECK(train_test_split_indices(100, 0.5, a).test == train_test_split_indices(100, 0.5, b).test);

	CHECK_THROWS_AS(train_test_split_indices(1, 0.5, rng), ValidationError);
	CHECK_THROWS_AS(train_test_split_indices(10, 1.0, rng), ValidationError);

	const auto [train, test] = train_test_split(iota_dataset(9), 0.5, rng);
	CHECK(train.size() + test.size() == 9);
	for (std::size_t i = 0; i < test.size(); ++i)
		CHECK(test.targets[i] == test.features(static_cast<Eigen::Index>(i), 0));
}

TEST_CASE("k_fold")
{
	Rng rng{2};
	auto folds = k_fold(10, 5, rng);
	REQUIRE(folds.size() == 5);
	for (const auto& f : folds)
	{
		CHECK(f.test.size() == 2);
		CHECK(f.train.size() == 8);
	}

	folds = k_fold(11, 5, rng);
	std::vector<std::size_t> sizes;
	for (const auto& f : folds)
		sizes.push_back(f.test.size());
	CHECK(sizes == std::vector<std::size_t>{3, 2, 2, 2, 2});

	for (std::size_t n : {5u, 11u, 54u, 101u})
		for (std::size_t k : {2u, 3u, 5u})
		{
			folds = k_fold(n, k, rng);
			std::vector<std::size_t> all;
			for (const auto& f : folds)
			{
				all.insert(all.end(), f.test.begin(), f.test.end());
				CHECK(f.train.size() + f.test.size() == n);
				std::vector<std::size_t> overlap;
				std::set_intersection(f.train.begin(), f.train.end(), f.test.begin(), f.test.end(), std::back_inserter(overlap));
				CHECK(overlap.empty());
			}
			std::sort(all.begin(), all.end());
			std::vector<std::size_t> expected(n);
			std::iota(expected.begin(), expected.end(), 0);
			CHECK(all == expected);
		}

	Rng a{3}, b{3};
	CHECK(k_fold(30, 5, a)[2].test == k_fold(30, 5, b)[2].test);
	CHECK_THROWS_AS(k_fold(3, 5, rng), ValidationError);
	CHECK_THROWS_AS(k_fold(10, 1, rng), ValidationError);
}

TEST_CASE("minmax_scale")
{
	LabeledDataset data;
	data.features.resize(3, 2);
	data.features << 25, 7, 42, 7, 30, 7;
	const auto [scaled, record] = minmax_scale(data);
	CHECK(scaled.features(0, 0) == 0.0);
	CHECK(scaled.features(1, 0) == 1.0);
	CHECK(scaled.features.col(1).isZero());

	const auto [rescaled, record2] = minmax_scale(scaled);
	CHECK(rescaled.features == scaled.features);

	Rng rng{6};
	LabeledDataset random = synthetic_blobs(100, 3, 5.0, rng, 4);
	const auto [s, r] = minmax_scale(random);
	CHECK((r.inverse(s.features) - random.features).cwiseAbs().maxCoeff() <= 1e-12);
	CHECK(s.features.minCoeff() >= 0.0);
	CHECK(s.features.maxCoeff() <= 1.0);
}

TEST_CASE("synthetic_regression")
{
	Rng rng{7};
	const LabeledDataset exact = synthetic_regression(200, 0.0, rng);
	std::vector<double> truth;
	for (std::size_t i = 0; i < exact.size(); ++i)
	{
		truth.push_back(exact.features(static_cast<Eigen::Index>(i), 0) + exact.features(static_cast<Eigen::Index>(i), 1));
		CHECK(exact.features(static_cast<Eigen::Index>(i), 0) >= 0.0);
		CHECK(exact.features(static_cast<Eigen::Index>(i), 1) < 1.0);
	}
	CHECK(truth == exact.targets);
	CHECK(r_squared(exact.targets, truth) == 1.0);
	CHECK_THROWS_AS(synthetic_regression(0, 0.1, rng), ValidationError);
}

TEST_CASE("synthetic_blobs")
{
	Rng rng{8};
	const LabeledDataset one = synthetic_blobs(20, 1, 5.0, rng);
	CHECK(class_set_of(one.classes) == std::vector<ClassLabel>{"0"});

	const LabeledDataset blobs = synthetic_blobs(103, 4, 20.0, rng);
	std::map<ClassLabel, std::size_t> counts;
	for (const auto& c : blobs.classes)
		++counts[c];
	CHECK(counts.size() == 4);
	std::size_t lo = 1000, hi = 0;
	for (const auto& [c, n] : counts)
	{
		lo = std::min(lo, n);
		hi = std::max(hi, n);
	}
	CHECK(hi - lo <= 1);

	// nearest-centre classifier on 20-sigma separation
	std::vector<ClassLabel> predicted;
	for (std::size_t i = 0; i < blobs.size(); ++i)
	{
		const double x0 = blobs.features(static_cast<Eigen::Index>(i), 0);
		const auto k = static_cast<long>(std::lround(std::clamp(x0 / 20.0, 0.0, 3.0)));
		predicted.push_back(std::to_string(k));
	}
	CHECK(overall_accuracy(confusion(blobs.classes, predicted)) == 1.0);
}

TEST_CASE("band masks")
{
	TempDir dir;
	const auto mask = dir.write("mask.txt", "# water\n3\n1\n\n3\n");
	CHECK(load_band_mask(mask) == std::vector<std::size_t>{1, 3});
	CHECK_THROWS_AS(load_band_mask(dir.write("bad.txt", "0\n")), DataError);

	LabeledDataset data;
	data.features.resize(1, 4);
	data.features << 10, 20, 30, 40;
	const std::vector<std::size_t> bands{1, 3};
	const LabeledDataset kept = drop_bands(data, bands);
	CHECK(kept.feature_names == std::vector<std::string>{"band_2", "band_4"});
	CHECK(kept.features(0, 0) == 20);
	CHECK(kept.features(0, 1) == 40);
	const std::vector<std::size_t> outside{5};
	CHECK_THROWS_AS(drop_bands(data, outside), ValidationError);
}

TEST_CASE("class ordering")
{
	CHECK(class_less("2", "10"));
	CHECK(class_less("10", "a"));
	CHECK(class_less("a", "b"));
	CHECK(!class_less("b", "b"));
	const std::vector<ClassLabel> labels{"b", "10", "2", "a", "2"};
	CHECK(class_set_of(labels) == std::vector<ClassLabel>{"2", "10", "a", "b"});
}
