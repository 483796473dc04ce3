#include <doctest.h>

#include <optional>

#include <algorithm>
#include <map>

#include "supsom/errors.hpp"
#include "supsom/metrics.hpp"
#include "supsom/rng.hpp"

using namespace supsom;

namespace {

const std::vector<ClassLabel> fixture_true{"A", "A", "B", "B"};
const std::vector<ClassLabel> fixture_pred{"A", "B", "B", "B"};

} // namespace

TEST_CASE("r_squared")
{
	const std::vector<double> y{0, 1, 2};
	CHECK(r_squared(y, y) == 1.0);
	CHECK(r_squared(y, std::vector<double>{1, 1, 1}) == 0.0);
	CHECK(r_squared(y, std::vector<double>{0, 1, 1}) == 0.5);
	CHECK(r_squared(y, std::vector<double>{5, -3, 9}) <= 1.0);

	CHECK_THROWS_AS(r_squared(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3}), UndefinedMetricError);
	CHECK_THROWS_AS(r_squared(y, std::vector<double>{1}), ValidationError);
	CHECK_THROWS_AS(r_squared(std::vector<double>{}, std::vector<double>{}), ValidationError);
}

TEST_CASE("confusion")
{
	const ConfusionMatrix cm = confusion(fixture_true, fixture_pred);
	CHECK(cm.class_set == std::vector<ClassLabel>{"A", "B"});
	CHECK(cm.counts == std::vector<std::vector<std::size_t>>{{1, 1}, {0, 2}});
	CHECK(cm.total() == 4);

	const ConfusionMatrix single = confusion(std::vector<ClassLabel>{"A"}, std::vector<ClassLabel>{"B"});
	CHECK(single.counts == std::vector<std::vector<std::size_t>>{{0, 1}, {0, 0}});

	// numeric labels sort numerically
	const ConfusionMatrix numeric = confusion(std::vector<ClassLabel>{"10", "2", "1"}, std::vector<ClassLabel>{"10", "2", "1"});
	CHECK(numeric.class_set == std::vector<ClassLabel>{"1", "2", "10"});

	CHECK_THROWS_AS(confusion(fixture_true, std::vector<ClassLabel>{"A"}), ValidationError);
}

TEST_CASE("accuracy and kappa hand values")
{
	const ConfusionMatrix cm = confusion(fixture_true, fixture_pred);
	CHECK(overall_accuracy(cm) == 0.75);
	CHECK(average_accuracy(cm) == 0.75);
	CHECK(cohens_kappa(cm) == 0.5);

	const ConfusionMatrix perfect = confusion(fixture_true, fixture_true);
	CHECK(overall_accuracy(perfect) == 1.0);
	CHECK(average_accuracy(perfect) == 1.0);
	CHECK(cohens_kappa(perfect) == 1.0);

	const ConfusionMatrix wrong = confusion(std::vector<ClassLabel>{"A", "B"}, std::vector<ClassLabel>{"B", "A"});
	CHECK(overall_accuracy(wrong) == 0.0);

	// OA = 0.5, marginals (2,2) x (2,2): theta = 8/16 = 0.5 -> kappa 0
	const ConfusionMatrix chance = confusion(std::vector<ClassLabel>{"A", "A", "B", "B"}, std::vector<ClassLabel>{"A", "B", "A", "B"});
	CHECK(cohens_kappa(chance) == 0.0);
	// symmetric errors on a balanced problem: AA = OA
	CHECK(average_accuracy(chance) == overall_accuracy(chance));
}

TEST_CASE("metric errors")
{
	// B only predicted, never true
	const ConfusionMatrix missing = confusion(std::vector<ClassLabel>{"A", "A"}, std::vector<ClassLabel>{"A", "B"});
	CHECK_THROWS_AS(average_accuracy(missing), UndefinedMetricError);
	CHECK(overall_accuracy(missing) == 0.5);

	// all mass in one cell pair: theta = 1
	const ConfusionMatrix one = confusion(std::vector<ClassLabel>{"A", "A"}, std::vector<ClassLabel>{"A", "A"});
	CHECK_THROWS_AS(cohens_kappa(one), UndefinedMetricError);

	CHECK_THROWS_AS(overall_accuracy(ConfusionMatrix{}), UndefinedMetricError);
}

TEST_CASE("metric properties on random label vectors")
{
	Rng rng{55};
	for (int trial = 0; trial < 300; ++trial)
	{
		const std::size_t n = 2 + rng.index(60);
		const std::size_t k = 2 + rng.index(5);
		std::vector<ClassLabel> t(n), p(n);
		for (std::size_t i = 0; i < n; ++i)
		{
			t[i] = std::to_string(rng.index(k));
			p[i] = rng.uniform() < 0.6 ? t[i] : std::to_string(rng.index(k));
		}
		const ConfusionMatrix cm = confusion(t, p);
		const double oa = overall_accuracy(cm);
		CHECK(oa >= 0.0);
		CHECK(oa <= 1.0);

		bool every_class_true = true;
		for (const auto& row : cm.counts)
		{
			std::size_t sum = 0;
			for (auto c : row)
				sum += c;
			every_class_true = every_class_true && sum > 0;
		}
		if (every_class_true)
		{
			const double aa = average_accuracy(cm);
			CHECK(aa >= 0.0);
			CHECK(aa <= 1.0);
		}
		const auto kappa = [](const ConfusionMatrix& m) -> std::optional<double> {
			try
			{
				return cohens_kappa(m);
			}
			catch (const UndefinedMetricError&)
			{
				return std::nullopt;
			}
		};
		if (kappa(cm))
			CHECK(*kappa(cm) <= oa + 1e-12);

		// relabelling classes permutes the matrix but keeps the scores
		std::map<ClassLabel, ClassLabel> rename;
		for (std::size_t c = 0; c < k; ++c)
			rename[std::to_string(c)] = std::string(1, static_cast<char>('z' - c));
		std::vector<ClassLabel> t2(n), p2(n);
		for (std::size_t i = 0; i < n; ++i)
		{
			t2[i] = rename[t[i]];
			p2[i] = rename[p[i]];
		}
		const ConfusionMatrix cm2 = confusion(t2, p2);
		CHECK(overall_accuracy(cm2) == oa);
		if (every_class_true)
			CHECK(average_accuracy(cm2) == doctest::Approx(average_accuracy(cm)).epsilon(1e-12));
		REQUIRE(kappa(cm2).has_value() == kappa(cm).has_value());
		if (kappa(cm))
			CHECK(*kappa(cm2) == doctest::Approx(*kappa(cm)).epsilon(1e-12));

		const ConfusionMatrix diag = confusion(t, t);
		for (std::size_t i = 0; i < diag.counts.size(); ++i)
			for (std::size_t j = 0; j < diag.counts.size(); ++j)
				if (i != j)
					CHECK(diag.counts[i][j] == 0);
	}
}
