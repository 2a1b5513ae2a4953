#pragma once

#include <stdexcept>

namespace hmmboost {

// Bad flags, config values or parameter combinations; CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Missing or unusable dataset content; CLI exit code 3.
struct DatasetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hmmboost
