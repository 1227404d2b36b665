// Independent transient runs evaluated in parallel. Each run is sequential;
// the batch fans out over configurations.

#pragma once

#include <span>
#include <vector>

#include "sshc/transient_sim.hpp"

namespace sshc {

std::vector<SimResult> run_batch(std::span<const SimConfig> configs);

namespace serial {
std::vector<SimResult> run_batch(std::span<const SimConfig> configs);
}  // namespace serial

}  // namespace sshc
