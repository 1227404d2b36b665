#include "sshc/batch.hpp"

#include "sshc/detail/parallel.hpp"

namespace sshc {

std::vector<SimResult> run_batch(std::span<const SimConfig> configs) {
    std::vector<SimResult> out(configs.size());
    detail::parallel_for(configs.size(), [&](std::size_t i) { out[i] = run(configs[i]); });
    return out;
}

namespace serial {

std::vector<SimResult> run_batch(std::span<const SimConfig> configs) {
    std::vector<SimResult> out;
    out.reserve(configs.size());
    for (const auto& cfg : configs) out.push_back(run(cfg));
    return out;
}

}  // namespace serial

}  // namespace sshc
