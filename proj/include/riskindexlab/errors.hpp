#pragma once

#include <stdexcept>
#include <string>

namespace riskindexlab {

// Malformed input data or out-of-domain parameters.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation that has no finite answer for the given inputs
// (zero dispersion in a ratio, negative quadratic form, ...).
class NumericError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An engine was asked to run without the data it needs
// (short history, a missing rate fixing, ...).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace riskindexlab
