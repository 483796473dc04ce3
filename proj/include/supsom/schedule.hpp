#pragma once

#include <cstddef>
#include <string_view>

namespace supsom {

enum class ScheduleKind
{
	inverse,     // start / max(t, 1)
	linear,      // start * (1 - t / t_max)
	power,       // start ^ (t / t_max), start in (0, 1]
	exponential, // start * exp(-t / t_max)
	start_end,   // start * (end / start) ^ (t / t_max)
};

std::string_view to_string(ScheduleKind kind);
ScheduleKind parse_schedule_kind(std::string_view name);

// A decreasing rate. `end` is only read by start_end.
struct ScheduleSpec
{
	ScheduleKind kind = ScheduleKind::start_end;
	double start = 1.0;
	double end = 1.0;
	std::size_t t_max = 1;

	ScheduleSpec with_t_max(std::size_t iterations) const
	{
		ScheduleSpec copy = *this;
		copy.t_max = iterations;
		return copy;
	}

	// Throws ValidationError unless start > 0, t_max >= 1, and for start_end
	// 0 < end <= start, for power start <= 1.
	void validate() const;
};

// Smallest neighborhood radius ever returned.
inline constexpr double min_radius = 1e-6;

// Learning rate alpha(t). Accepts 0 <= t <= t_max; t == t_max yields the
// schedule's end point.
double learning_rate(std::size_t t, const ScheduleSpec& spec);

// Neighborhood radius sigma(t), floored at min_radius. Only the linear,
// exponential and start_end kinds are radius schedules.
double neighborhood_radius(std::size_t t, const ScheduleSpec& spec);

bool is_radius_kind(ScheduleKind kind);

} // namespace supsom
