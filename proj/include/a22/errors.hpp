#pragma once

#include <stdexcept>
#include <string>

namespace a22 {

/// Requested a coefficient above the known truncation order.
class PrecisionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Inversion of a series whose leading coefficient is not +1 or -1, or of a
/// series that is zero to its truncation.
class NonUnitError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computation fell below the configured valuation floor.
class RunawayError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid arguments: out-of-range schedule parameters, unknown pair ids,
/// divergent Pochhammer symbols, unsupported bases.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Malformed or inconsistent input data (registry files, serialized records).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace a22
