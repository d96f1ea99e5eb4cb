#include "ccsim/model.hpp"

#include <cmath>

#include "ccsim/rng.hpp"

namespace ccsim {

ValidatedConfig ValidatedConfig::validate(const NetworkConfig& c) {
    if (c.library_size < 1)
        throw InvalidTopology("library_size must be >= 1, got " +
                              std::to_string(c.library_size));
    if (c.helper_count < 2 || c.users_per_helper < 2)
        throw InvalidTopology("need K1 >= 2 and K2 >= 2, got K1=" +
                              std::to_string(c.helper_count) +
                              " K2=" + std::to_string(c.users_per_helper));
    auto check_mem = [&](double m, const char* name) {
        if (!std::isfinite(m) || m < 0.0 || m > static_cast<double>(c.library_size))
            throw InvalidMemory(std::string(name) + " must lie in [0, N], got " +
                                std::to_string(m));
    };
    check_mem(c.helper_memory, "helper_memory M1");
    check_mem(c.user_memory, "user_memory M2");

    bool eligible = static_cast<int64_t>(c.library_size) >=
                    static_cast<int64_t>(c.helper_count) * c.users_per_helper;
    return ValidatedConfig(c, eligible);
}

std::string NodeId::str() const {
    switch (role) {
        case Role::Server:
            return "S";
        case Role::Helper:
            return "H" + std::to_string(i);
        case Role::User:
            return "U" + std::to_string(i) + "," + std::to_string(j);
    }
    return "?";
}

void validate_sim(const ValidatedConfig& cfg, const SimulationConfig& sim) {
    if (sim.file_bits < cfg.n())
        throw ConfigError("file_bits must be >= N, got F=" + std::to_string(sim.file_bits) +
                          " N=" + std::to_string(cfg.n()));
    if (sim.file_bits > (int64_t{1} << 31))
        throw ConfigError("file_bits above 2^31 is not supported");
    if (static_cast<int>(sim.demands.size()) != cfg.users())
        throw ConfigError("demand profile must list K1*K2 = " + std::to_string(cfg.users()) +
                          " entries, got " + std::to_string(sim.demands.size()));
    for (int d : sim.demands)
        if (d < 1 || d > cfg.n())
            throw ConfigError("demand index " + std::to_string(d) + " outside [1, N]");
}

std::vector<int> uniform_random_demands(const ValidatedConfig& cfg, uint64_t seed) {
    Rng rng{seed, 0x64656d616e647300ull};  // "demands" stream
    std::vector<int> out(static_cast<size_t>(cfg.users()));
    for (auto& d : out) d = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(cfg.n())));
    return out;
}

}  // namespace ccsim
