#include "supsom/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supsom/errors.hpp"

namespace supsom {

namespace {

void check_iteration(std::size_t t, const ScheduleSpec& spec)
{
	if (t > spec.t_max)
		throw ValidationError{"iteration " + std::to_string(t) + " is beyond t_max = " + std::to_string(spec.t_max)};
}

double evaluate(std::size_t t, const ScheduleSpec& spec)
{
	const double fraction = static_cast<double>(t) / static_cast<double>(spec.t_max);
	switch (spec.kind)
	{
		case ScheduleKind::inverse:
			return spec.start / static_cast<double>(std::max<std::size_t>(t, 1));
		case ScheduleKind::linear:
			return spec.start * (1.0 - fraction);
		case ScheduleKind::power:
			return std::pow(spec.start, fraction);
		case ScheduleKind::exponential:
			return spec.start * std::exp(-fraction);
		case ScheduleKind::start_end:
			return spec.start * std::pow(spec.end / spec.start, fraction);
	}
	throw ValidationError{"unknown schedule kind"};
}

} // namespace

std::string_view to_string(ScheduleKind kind)
{
	switch (kind)
	{
		case ScheduleKind::inverse: return "inverse";
		case ScheduleKind::linear: return "linear";
		case ScheduleKind::power: return "power";
		case ScheduleKind::exponential: return "exponential";
		case ScheduleKind::start_end: return "start-end";
	}
	return "unknown";
}

ScheduleKind parse_schedule_kind(std::string_view name)
{
	for (auto kind : {ScheduleKind::inverse, ScheduleKind::linear, ScheduleKind::power, ScheduleKind::exponential, ScheduleKind::start_end})
		if (to_string(kind) == name)
			return kind;
	throw ValidationError{"unknown schedule kind '" + std::string{name} + "'"};
}

void ScheduleSpec::validate() const
{
	if (!(start > 0.0) || !std::isfinite(start))
		throw ValidationError{"schedule start value must be positive and finite"};
	if (t_max < 1)
		throw ValidationError{"schedule t_max must be at least 1"};
	if (kind == ScheduleKind::start_end && !(end > 0.0 && end <= start))
		throw ValidationError{"start-end schedule needs 0 < end <= start"};
	if (kind == ScheduleKind::power && start > 1.0)
		throw ValidationError{"power schedule needs start <= 1, otherwise it increases"};
}

bool is_radius_kind(ScheduleKind kind)
{
	return kind == ScheduleKind::linear || kind == ScheduleKind::exponential || kind == ScheduleKind::start_end;
}

double learning_rate(std::size_t t, const ScheduleSpec& spec)
{
	spec.validate();
	check_iteration(t, spec);
	return evaluate(t, spec);
}

double neighborhood_radius(std::size_t t, const ScheduleSpec& spec)
{
	spec.validate();
	if (!is_radius_kind(spec.kind))
		throw ValidationError{"'" + std::string{to_string(spec.kind)} + "' is not a neighborhood radius schedule"};
	check_iteration(t, spec);
	return std::max(evaluate(t, spec), min_radius);
}

} // namespace supsom
