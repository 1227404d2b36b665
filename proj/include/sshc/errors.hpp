#pragma once

#include <stdexcept>

namespace sshc {

/// Invalid circuit or simulation parameters.
class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A simulation that could not proceed, e.g. a switch phase out of order.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sshc
