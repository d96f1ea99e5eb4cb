#include "ccsim/placement.hpp"

#include <cmath>

#include "ccsim/rng.hpp"

namespace ccsim {

const BitVector& CacheAllocation::cache_of(const ValidatedConfig& cfg, NodeId node,
                                           int file) const {
    if (file < 1 || file > files)
        throw UnknownNode("file index " + std::to_string(file) + " outside [1, N]");
    switch (node.role) {
        case NodeId::Role::Helper:
            if (node.i < 1 || node.i > cfg.k1())
                throw UnknownNode("no such helper " + node.str());
            return helper_bits[static_cast<size_t>(node.i - 1)][static_cast<size_t>(file - 1)];
        case NodeId::Role::User: {
            if (node.i < 1 || node.i > cfg.k1() || node.j < 1 || node.j > cfg.k2())
                throw UnknownNode("no such user " + node.str());
            int flat = user_flat(cfg, node.i, node.j);
            return user_bits[static_cast<size_t>(flat)][static_cast<size_t>(file - 1)];
        }
        case NodeId::Role::Server:
            break;
    }
    throw UnknownNode("the server has no cache");
}

int64_t cache_quota(double memory_files, int64_t file_bits, int n) {
    return static_cast<int64_t>(std::floor(memory_files * static_cast<double>(file_bits) /
                                           static_cast<double>(n)));
}

CacheAllocation place_window(const ValidatedConfig& cfg, uint64_t seed, int64_t window_bits,
                             int64_t bit_offset, int64_t helper_quota, StreamTag helper_tag,
                             int64_t user_quota, StreamTag user_tag) {
    helper_quota = std::min(helper_quota, window_bits);
    user_quota = std::min(user_quota, window_bits);

    CacheAllocation alloc;
    alloc.files = cfg.n();
    alloc.file_bits = window_bits;
    alloc.bit_offset = bit_offset;
    alloc.helper_bits.resize(static_cast<size_t>(cfg.k1()));
    alloc.user_bits.resize(static_cast<size_t>(cfg.users()));

    auto draw = [&](StreamTag tag, NodeId node, int file, int64_t quota) {
        Rng rng{seed, static_cast<uint64_t>(tag), node.key(), static_cast<uint64_t>(file)};
        return sample_subset(rng, window_bits, quota);
    };
    for (int i = 1; i <= cfg.k1(); ++i) {
        auto& row = alloc.helper_bits[static_cast<size_t>(i - 1)];
        row.reserve(static_cast<size_t>(cfg.n()));
        for (int n = 1; n <= cfg.n(); ++n)
            row.push_back(draw(helper_tag, NodeId::helper(i), n, helper_quota));
    }
    for (int i = 1; i <= cfg.k1(); ++i) {
        for (int j = 1; j <= cfg.k2(); ++j) {
            auto& row = alloc.user_bits[static_cast<size_t>(user_flat(cfg, i, j))];
            row.reserve(static_cast<size_t>(cfg.n()));
            for (int n = 1; n <= cfg.n(); ++n)
                row.push_back(draw(user_tag, NodeId::user(i, j), n, user_quota));
        }
    }
    return alloc;
}

CacheAllocation place(const ValidatedConfig& cfg, const SimulationConfig& sim) {
    validate_sim(cfg, sim);
    return place_window(cfg, sim.seed, sim.file_bits, 0,
                        cache_quota(cfg.m1(), sim.file_bits, cfg.n()), StreamTag::HelperCache,
                        cache_quota(cfg.m2(), sim.file_bits, cfg.n()), StreamTag::UserCache);
}

std::vector<BitVector> library_content(const ValidatedConfig& cfg,
                                       const SimulationConfig& sim) {
    std::vector<BitVector> lib;
    lib.reserve(static_cast<size_t>(cfg.n()));
    for (int n = 1; n <= cfg.n(); ++n) {
        Rng rng{sim.seed, static_cast<uint64_t>(StreamTag::FileContent),
                static_cast<uint64_t>(n)};
        lib.push_back(random_bits(rng, sim.file_bits));
    }
    return lib;
}

}  // namespace ccsim
