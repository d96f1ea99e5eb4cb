#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccsim/errors.hpp"

namespace ccsim {

// Network shape and normalized memory sizes. Memories are real-valued, in
// units of files; bit-level cache quotas are derived at simulation time as
// floor(M*F/N) per file.
struct NetworkConfig {
    int library_size = 0;      // N
    int helper_count = 0;      // K1
    int users_per_helper = 0;  // K2
    double helper_memory = 0;  // M1
    double user_memory = 0;    // M2

    bool operator==(const NetworkConfig&) const = default;
};

// A NetworkConfig that passed validation. Downstream operations take this
// type, so invalid parameters cannot reach the algorithms.
class ValidatedConfig {
public:
    static ValidatedConfig validate(const NetworkConfig& c);

    int n() const { return cfg_.library_size; }
    int k1() const { return cfg_.helper_count; }
    int k2() const { return cfg_.users_per_helper; }
    int users() const { return cfg_.helper_count * cfg_.users_per_helper; }
    double m1() const { return cfg_.helper_memory; }
    double m2() const { return cfg_.user_memory; }

    // N >= K1*K2; required by the gap analysis but not by the schemes.
    bool gap_eligible() const { return gap_eligible_; }

    const NetworkConfig& config() const { return cfg_; }

private:
    ValidatedConfig(NetworkConfig c, bool ge) : cfg_(c), gap_eligible_(ge) {}
    NetworkConfig cfg_;
    bool gap_eligible_;
};

struct NodeId {
    enum class Role : uint8_t { Server = 0, Helper = 1, User = 2 };
    Role role = Role::Server;
    int i = 0;  // helper index, 1-based
    int j = 0;  // user column, 1-based

    static NodeId server() { return {}; }
    static NodeId helper(int i) { return {Role::Helper, i, 0}; }
    static NodeId user(int i, int j) { return {Role::User, i, j}; }

    // Stable id used to derive RNG streams.
    uint64_t key() const {
        return (static_cast<uint64_t>(role) << 40) | (static_cast<uint64_t>(i) << 20) |
               static_cast<uint64_t>(j);
    }

    std::string str() const;

    bool operator==(const NodeId&) const = default;
};

struct RatePair {
    double r1 = 0;  // normalized server rate, file units
    double r2 = 0;  // normalized worst-helper rate, file units
};

// Per-run simulation inputs. demands[(i-1)*K2 + (j-1)] is the 1-based index
// of the file requested by user (i, j); repeats across users are allowed.
struct SimulationConfig {
    int64_t file_bits = 0;  // F
    uint64_t seed = 0;
    std::vector<int> demands;
};

// Checks F >= N (so per-file quotas floor(M*F/N) are meaningful), the bit
// index range, and the demand profile shape.
void validate_sim(const ValidatedConfig& cfg, const SimulationConfig& sim);

std::vector<int> uniform_random_demands(const ValidatedConfig& cfg, uint64_t seed);

// Flat user index in [0, K1*K2) for user (i, j), both 1-based.
inline int user_flat(const ValidatedConfig& cfg, int i, int j) {
    return (i - 1) * cfg.k2() + (j - 1);
}

}  // namespace ccsim
