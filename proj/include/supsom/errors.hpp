#pragma once

#include <stdexcept>
#include <string>

namespace supsom {

class Error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

// Bad arguments, inconsistent dimensions or an invalid configuration.
class ValidationError : public Error
{
public:
	using Error::Error;
};

// Unreadable files, malformed or empty datasets.
class DataError : public Error
{
public:
	using Error::Error;
};

// A metric whose value is mathematically undefined for the given input
// (constant reference labels for R², a class without true instances for AA,
// chance agreement of one for kappa).
class UndefinedMetricError : public Error
{
public:
	using Error::Error;
};

} // namespace supsom
