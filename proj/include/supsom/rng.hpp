#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace supsom {

// Seeded random stream. Draws are built directly from the 64-bit Mersenne
// Twister output (whose sequence is fixed by the standard) so results are
// reproducible across standard library implementations, which
// std::uniform_real_distribution and friends do not guarantee.
class Rng
{
public:
	explicit Rng(std::uint64_t seed) : _engine{seed} {}

	// Uniform on [0, 1).
	double uniform()
	{
		return static_cast<double>(_engine() >> 11) * 0x1.0p-53;
	}

	// Uniform on [lo, hi]; returns lo exactly when lo == hi.
	double uniform(double lo, double hi)
	{
		return lo + uniform() * (hi - lo);
	}

	// Uniform integer in [0, n). n must be positive.
	std::size_t index(std::size_t n);

	// Standard normal (Box-Muller, one value per call).
	double normal();

	std::uint64_t next() { return _engine(); }

private:
	std::mt19937_64 _engine;
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Sub-seed for a named phase: mix64(master + fnv1a64(tag)).
// Phase tags used by the pipeline: "unsupervised", "supervised", "split",
// "folds", "fold:<i>".
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);

} // namespace supsom
