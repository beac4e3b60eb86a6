#pragma once

#include <stdexcept>
#include <string>

namespace dform {

/// Invalid or inconsistent run configuration (maps to CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Blow-up, NaN, or another failure of a numerical run (maps to CLI exit code 2).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dform
