#include "supsom/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace supsom {

std::size_t Rng::index(std::size_t n)
{
	// rejection sampling removes modulo bias
	const std::uint64_t range = static_cast<std::uint64_t>(n);
	const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
	std::uint64_t draw;
	do
		draw = _engine();
	while (draw >= limit);
	return static_cast<std::size_t>(draw % range);
}

double Rng::normal()
{
	double u1 = uniform();
	while (u1 <= 0.0)
		u1 = uniform();
	const double u2 = uniform();
	return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t mix64(std::uint64_t x)
{
	x += 0x9e3779b97f4a7c15ULL;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag)
{
	std::uint64_t hash = 0xcbf29ce484222325ULL;
	for (const char c : tag)
	{
		hash ^= static_cast<unsigned char>(c);
		hash *= 0x100000001b3ULL;
	}
	return mix64(master + hash);
}

} // namespace supsom
