#pragma once

#include <vector>

#include "ccsim/bitvec.hpp"
#include "ccsim/model.hpp"

namespace ccsim {

// Stream tags keep every (purpose, node, file) RNG stream disjoint. The
// hybrid's first subsystem reuses the main tags so that alpha=1, beta=1
// reproduces the plain placement bit for bit; its second subsystem draws
// from UserCacheAux.
enum class StreamTag : uint64_t {
    HelperCache = 0x68656c7063616368ull,
    UserCache = 0x7573657263616368ull,
    UserCacheAux = 0x7573657261757863ull,
    FileContent = 0x66696c65636f6e74ull,
};

// Per-node, per-file cached bit sets over one bit window of each file.
// Index sets are public placement metadata; only payload bits count toward
// delivery rates.
struct CacheAllocation {
    int files = 0;           // N
    int64_t file_bits = 0;   // window length
    int64_t bit_offset = 0;  // window start within the full file
    std::vector<std::vector<BitVector>> helper_bits;  // [K1][N]
    std::vector<std::vector<BitVector>> user_bits;    // [K1*K2][N]

    // file is 1-based. Throws UnknownNode for the server or out-of-range ids.
    const BitVector& cache_of(const ValidatedConfig& cfg, NodeId node, int file) const;
};

// floor(M*F/N)
int64_t cache_quota(double memory_files, int64_t file_bits, int n);

// Decentralized placement: every node independently caches a uniform random
// subset of exactly floor(M*F/N) bits of every file, deterministic in
// (seed, node, file) and independent of enumeration order.
CacheAllocation place(const ValidatedConfig&, const SimulationConfig&);

// Window placement with explicit quotas and stream tags (hybrid subsystems).
// Quotas are clamped to the window length.
CacheAllocation place_window(const ValidatedConfig&, uint64_t seed, int64_t window_bits,
                             int64_t bit_offset, int64_t helper_quota, StreamTag helper_tag,
                             int64_t user_quota, StreamTag user_tag);

// Pseudo-random library content, keyed by (seed, file index).
std::vector<BitVector> library_content(const ValidatedConfig&, const SimulationConfig&);

}  // namespace ccsim
